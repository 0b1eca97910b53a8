#include "stackyfan/cli.hpp"
#include "stackyfan/error.hpp"
#include "stackyfan/fan.hpp"
#include "stackyfan/io.hpp"
#include "stackyfan/normal_form.hpp"
#include "stackyfan/orbifold.hpp"
#include "stackyfan/picard.hpp"
#include "stackyfan/polytope.hpp"
#include "stackyfan/prequant.hpp"
#include "stackyfan/reduction.hpp"
#include "stackyfan/svg.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace stackyfan;

namespace {

// Integers cross the boundary as decimal strings, rationals as p/q strings,
// so arbitrarily large values survive in both directions.
Int int_in(py::handle h) { return Int(py::str(h).cast<std::string>()); }
Rat rat_in(py::handle h) { return parse_rat(py::str(h).cast<std::string>()); }

IntVec ivec_in(const py::iterable& v) {
  IntVec out;
  for (auto x : v) out.push_back(int_in(x));
  return out;
}
RatVec rvec_in(const py::iterable& v) {
  RatVec out;
  for (auto x : v) out.push_back(rat_in(x));
  return out;
}
std::vector<IntVec> irows_in(const py::iterable& rows) {
  std::vector<IntVec> out;
  for (auto r : rows) out.push_back(ivec_in(py::reinterpret_borrow<py::iterable>(r)));
  return out;
}

py::object int_out(const Int& x) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}
py::object rat_out(const Rat& x) {
  return py::module_::import("fractions").attr("Fraction")(int_out(x.get_num()), int_out(x.get_den()));
}
py::list ivec_out(const IntVec& v) {
  py::list l;
  for (const auto& x : v) l.append(int_out(x));
  return l;
}
py::list rvec_out(const RatVec& v) {
  py::list l;
  for (const auto& x : v) l.append(rat_out(x));
  return l;
}
template <typename V, typename F>
py::list rows_out(const std::vector<V>& rows, F f) {
  py::list l;
  for (const auto& r : rows) l.append(f(r));
  return l;
}
py::list matrix_out(const IntMatrix& M) { return rows_out(M.row_list(), ivec_out); }

py::list group_out(const FiniteAbelianGroup& g) { return ivec_out(g.invariant_factors); }

IntMatrix matrix_in(const py::iterable& rows) {
  auto r = irows_in(rows);
  return IntMatrix::from_rows(r, r.empty() ? 0 : r[0].size());
}

HPolytope polytope_in(std::size_t rank, const py::iterable& facets) {
  HPolytope P(rank);
  for (auto item : facets) {
    auto t = py::reinterpret_borrow<py::sequence>(item);
    std::optional<Int> w;
    if (t.size() > 2 && !t[2].is_none()) w = int_in(t[2]);
    if (auto f = make_facet(rvec_in(t[0]), rat_in(t[1]), w)) P.add(*f);
  }
  return P;
}

py::list facets_out(const HPolytope& P) {
  py::list l;
  for (const auto& f : P.facets())
    l.append(py::make_tuple(ivec_out(f.normal), rat_out(f.offset), f.weight ? int_out(*f.weight) : py::object(py::none())));
  return l;
}

Subtorus subtorus_in(std::size_t n, const py::iterable& rows) { return Subtorus(n, irows_in(rows)); }

py::dict class_member_out(const ClassMember& m) {
  py::dict d;
  d["l"] = ivec_out(m.bundle.representative);
  d["torsion_shift"] = rvec_out(m.torsion_shift);
  d["h0"] = m.h0;
  return d;
}

py::dict reduced_out(const ReducedOrbifold& r) {
  py::dict d;
  d["alpha"] = rvec_out(r.alpha);
  d["facets"] = facets_out(r.polytope);
  d["rank"] = r.polytope.rank();
  if (r.polytope.rank() > 0) d["fan"] = py::cast(r.fan);
  return d;
}

EnumerationOptions opts_in(std::optional<std::uint64_t> cap) {
  EnumerationOptions o;
  if (cap) o.cap = *cap;
  return o;
}

}  // namespace

PYBIND11_MODULE(_stackyfan, m) {
  m.doc() = "Exact toric orbifold computations on weighted fans and polytopes.";

  // Messages are "<ErrorCode>: <detail>".
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&] { return py::exception<Error>(m, "StackyfanError", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error.get_stored(), (std::string(error_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<WeightedFan>(m, "WeightedFan")
      .def(py::init([](std::size_t rank, py::iterable rays, py::iterable weights, py::iterable cones) {
             std::vector<ConeRef> cs;
             for (auto c : cones) cs.push_back(c.cast<ConeRef>());
             std::vector<Int> ws;
             for (auto w : weights) ws.push_back(int_in(w));
             return WeightedFan(rank, irows_in(rays), ws, cs);
           }),
           py::arg("rank"), py::arg("rays"), py::arg("weights"), py::arg("max_cones"))
      .def_property_readonly("rank", &WeightedFan::rank)
      .def_property_readonly("rays", [](const WeightedFan& f) {
        py::list l;
        for (const auto& r : f.rays()) l.append(ivec_out(r.generator));
        return l;
      })
      .def_property_readonly("weights", [](const WeightedFan& f) {
        py::list l;
        for (const auto& r : f.rays()) l.append(int_out(r.weight));
        return l;
      })
      .def_property_readonly("max_cones", &WeightedFan::max_cones)
      .def("to_json", [](const WeightedFan& f) { return io::fan_to_json(f).dump(); })
      .def_static("from_json", [](const std::string& s) { return io::fan_from_json(io::json::parse(s)); })
      .def("__repr__", [](const WeightedFan& f) {
        return "WeightedFan(rank=" + std::to_string(f.rank()) + ", rays=" + std::to_string(f.num_rays()) +
               ", cones=" + std::to_string(f.max_cones().size()) + ")";
      });

  py::class_<HPolytope>(m, "Polytope")
      .def(py::init(&polytope_in), py::arg("rank"), py::arg("facets"),
           "Facets are (normal, offset[, weight]) for <x, normal> >= offset.")
      .def_property_readonly("rank", &HPolytope::rank)
      .def_property_readonly("facets", &facets_out)
      .def("vertices", [](const HPolytope& P) { return rows_out(vertices(P), rvec_out); })
      .def("lattice_points",
           [](const HPolytope& P, std::optional<std::uint64_t> cap) { return rows_out(lattice_points(P, opts_in(cap)), ivec_out); },
           py::arg("cap") = py::none())
      .def("to_json", [](const HPolytope& P) { return io::polytope_to_json(P).dump(); })
      .def_static("from_json", [](const std::string& s) { return io::polytope_from_json(io::json::parse(s)); });

  m.def("validate", [](const WeightedFan& f) {
    ValidationReport r = validate(f);
    py::dict d;
    d["valid"] = r.valid();
    d["complete"] = r.complete;
    d["problems"] = r.problems();
    return d;
  });

  m.def("hermite_normal_form", [](py::iterable M) {
    HermiteResult h = hermite_normal_form(matrix_in(M));
    return py::make_tuple(matrix_out(h.H), matrix_out(h.U));
  }, "Returns (H, U) with H = U M.");
  m.def("smith_normal_form", [](py::iterable M) {
    SmithResult s = smith_normal_form(matrix_in(M));
    return py::make_tuple(matrix_out(s.D), matrix_out(s.U), matrix_out(s.V));
  }, "Returns (D, U, V) with D = U M V.");

  m.def("cover_lattice", [](const WeightedFan& f, const ConeRef& cone) {
    CoverData c = cover_lattice(f, cone);
    return py::make_tuple(matrix_out(c.lattice.basis()), group_out(c.chart_group));
  }, py::arg("fan"), py::arg("cone"), "Returns (basis, chart group invariant factors).");
  m.def("chart_basis_check", &chart_basis_check);
  m.def("pi1", [](const WeightedFan& f) {
    FundamentalGroup g = orbifold_pi1(f);
    return py::make_tuple(group_out(g.group), matrix_out(g.lattice.basis()));
  }, "Returns (invariant factors, lattice basis).");
  m.def("universal_cover", [](const WeightedFan& f) {
    UniversalCover u = universal_cover(f);
    return py::make_tuple(u.cover_fan, group_out(u.deck_group), matrix_out(u.base_lattice.basis()));
  }, "Returns (cover fan, deck group, base lattice basis).");

  m.def("vertex_characters", [](const WeightedFan& f, py::iterable l) {
    return rows_out(to_vertex_characters(f, ivec_in(l)), rvec_out);
  });
  m.def("ray_data", [](const WeightedFan& f, py::iterable chars) {
    std::vector<RatVec> mv;
    for (auto c : chars) mv.push_back(rvec_in(py::reinterpret_borrow<py::iterable>(c)));
    return ivec_out(to_ray_data(f, mv));
  });
  m.def("newton_polytope", [](const WeightedFan& f, py::iterable l) { return newton_polytope(f, ivec_in(l)); });
  m.def("h0", [](const WeightedFan& f, py::iterable l, std::optional<std::uint64_t> cap) {
    Sections s = h0(f, ivec_in(l), opts_in(cap));
    return py::make_tuple(s.count, rows_out(s.characters, ivec_out));
  }, py::arg("fan"), py::arg("l"), py::arg("cap") = py::none(), "Returns (count, characters).");
  m.def("chern_class", [](const WeightedFan& f, py::iterable l) { return rvec_out(chern_class(f, ivec_in(l)).representative); });
  m.def("rational_class", [](const WeightedFan& f, py::iterable h) { return rvec_out(rational_class(f, rvec_in(h)).representative); });
  m.def("is_orbi_integral", [](const WeightedFan& f, py::iterable h) -> py::object {
    auto l = is_orbi_integral(f, rvec_in(h));
    return l ? py::object(ivec_out(*l)) : py::none();
  });
  m.def("coarse_pullback", [](const WeightedFan& f, py::iterable h) -> py::object {
    auto a = coarse_pullback_witness(f, rvec_in(h));
    return a ? py::object(ivec_out(*a)) : py::none();
  });
  m.def("bundles_equivalent", [](const WeightedFan& f, py::iterable a, py::iterable b) {
    return bundles_equivalent(f, ivec_in(a), ivec_in(b));
  });
  m.def("torsion", [](const WeightedFan& f) {
    TorsionGroup t = torsion_subgroup(f);
    return py::make_tuple(group_out(t.group), rows_out(t.representatives, rvec_out));
  }, "Returns (invariant factors, representatives).");
  m.def("bundles_with_class", [](const WeightedFan& f, py::iterable h, std::optional<std::uint64_t> cap) {
    return rows_out(bundles_with_class(f, rvec_in(h), opts_in(cap)), class_member_out);
  }, py::arg("fan"), py::arg("h"), py::arg("cap") = py::none());

  m.def("prequantize", [](const HPolytope& P) {
    PrequantResult r = prequantize(P);
    py::dict d;
    d["prequantizable"] = r.prequantizable;
    d["fan"] = r.fan;
    if (r.prequantizable) {
      d["translation"] = rvec_out(r.translation);
      d["l"] = ivec_out(r.l);
      d["vertex_characters"] = rows_out(r.vertex_characters, rvec_out);
      d["bundles"] = rows_out(r.bundles, class_member_out);
    }
    return d;
  });

  m.def("critical_values", [](const HPolytope& P, py::iterable rows) {
    return rvec_out(critical_values(P, subtorus_in(P.rank(), rows)));
  });
  m.def("bs_values", [](const HPolytope& P, py::iterable rows) {
    py::list l;
    for (const auto& b : bs_values(P, subtorus_in(P.rank(), rows))) l.append(py::make_tuple(ivec_out(b.alpha), b.regular));
    return l;
  }, "Returns a list of (alpha, regular).");
  m.def("reduce_at", [](const HPolytope& P, py::iterable rows, py::iterable alpha) {
    return reduced_out(reduce_at(P, subtorus_in(P.rank(), rows), rvec_in(alpha)));
  });
  m.def("reduction_report", [](const WeightedFan& f, py::iterable l, py::iterable rows) {
    ReductionReport r = qr_rq_report(f, ivec_in(l), subtorus_in(f.rank(), rows));
    py::dict d;
    d["total_h0"] = r.total_h0;
    d["leaf_sum"] = r.leaf_sum;
    d["total_check"] = r.total_check;
    py::list leaves;
    for (const auto& leaf : r.leaves) {
      py::dict e;
      e["alpha"] = ivec_out(leaf.alpha);
      e["regular"] = leaf.regular;
      e["h0"] = leaf.h0;
      e["reduced"] = leaf.reduced.has_value();
      leaves.append(e);
    }
    d["leaves"] = leaves;
    return d;
  });

  m.def("fan_svg", &render_fan_svg);
  m.def("polytope_svg", [](const HPolytope& P, py::iterable marks) {
    std::vector<RatVec> ms;
    for (auto x : marks) ms.push_back(rvec_in(py::reinterpret_borrow<py::iterable>(x)));
    return render_polytope_svg(P, ms);
  }, py::arg("polytope"), py::arg("marks") = py::list());

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "stackyfan");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Runs the command-line front end in-process; returns (exit code, stdout, stderr).");
}
