#include "stackyfan/cli.hpp"

#include "stackyfan/error.hpp"
#include "stackyfan/fan.hpp"
#include "stackyfan/io.hpp"
#include "stackyfan/orbifold.hpp"
#include "stackyfan/picard.hpp"
#include "stackyfan/prequant.hpp"
#include "stackyfan/reduction.hpp"
#include "stackyfan/svg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace stackyfan::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  json data;
  std::optional<Table> table;
  std::optional<std::string> raw;  // emitted verbatim (SVG)
};

template <typename V>
std::string cell(const V& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string cell(bool b) { return b ? "true" : "false"; }

std::string cell(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_table(std::ostream& os, const Table& t, Format f) {
  if (f == Format::Csv) {
    for (std::size_t i = 0; i < t.headers.size(); ++i) os << (i ? "," : "") << csv_field(t.headers[i]);
    os << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
      os << "\n";
    }
    return;
  }
  std::vector<std::size_t> w(t.headers.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = t.headers[i].size();
  for (const auto& r : t.rows)
    for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s += r[i];
      if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
    }
    os << s << "\n";
  };
  line(t.headers);
  std::vector<std::string> rule;
  for (auto x : w) rule.push_back(std::string(x, '-'));
  line(rule);
  for (const auto& r : t.rows) line(r);
}

// Flat key/value table for outputs without a natural row structure.
Table key_value_table(const json& j) {
  Table t{{"key", "value"}, {}};
  for (const auto& [k, v] : j.items()) t.rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
  return t;
}

// ---------------------------------------------------------------- inputs

struct Context {
  const JobSpec& spec;
  EnumerationOptions opts;
};

const std::string& need(const std::string& value, const char* flag, const std::string& command) {
  if (value.empty()) throw io::InputError("command '" + command + "' needs " + flag);
  return value;
}

WeightedFan load_fan(const Context& c) {
  WeightedFan fan = io::fan_from_json(io::read_json_file(need(c.spec.input, "-i/--input <fan.json>", c.spec.command)));
  require_valid(fan);
  return fan;
}

io::BundleInput load_bundle(const Context& c) {
  const std::string& path = c.spec.bundle.empty() ? c.spec.input : c.spec.bundle;
  need(path, "--bundle <bundle.json>", c.spec.command);
  io::BundleInput b = io::bundle_from_json(io::read_json_file(path), fs::path(path).parent_path());
  require_valid(b.fan);
  return b;
}

HPolytope load_polytope(const Context& c) {
  const std::string& path = c.spec.polytope.empty() ? c.spec.input : c.spec.polytope;
  return io::polytope_from_json(io::read_json_file(need(path, "--polytope <polytope.json>", c.spec.command)));
}

Subtorus load_subtorus(const Context& c, std::size_t rank) {
  const std::string& s = need(c.spec.subtorus, "--subtorus <subtorus.json>", c.spec.command);
  if (fs::exists(s)) return io::subtorus_from_json(io::read_json_file(s), rank);
  // Inline rows separated by ';'.
  std::vector<IntVec> rows;
  std::stringstream ss(s);
  std::string row;
  while (std::getline(ss, row, ';')) {
    IntVec v;
    for (const auto& x : io::parse_rat_list(row)) {
      if (!is_integral(x)) throw io::InputError("--subtorus: entries must be integers");
      v.push_back(x.get_num());
    }
    rows.push_back(v);
  }
  return Subtorus(rank, rows);
}

// Bundle for reduce/bs: --bundle, or the prequantum bundle of --polytope.
io::BundleInput reduction_bundle(const Context& c) {
  if (!c.spec.bundle.empty()) return load_bundle(c);
  PrequantResult r = prequantize(load_polytope(c), c.opts);
  if (!r.prequantizable) throw Error(ErrorCode::NotPrequantizable, "polytope admits no prequantum bundle");
  return {r.fan, r.l};
}

// ---------------------------------------------------------------- commands

Output cmd_validate(const Context& c) {
  WeightedFan fan =
      io::fan_from_json(io::read_json_file(need(c.spec.input, "-i/--input <fan.json>", c.spec.command)));
  ValidationReport rep = validate(fan);
  Output o;
  o.data["valid"] = rep.valid();
  o.data["complete"] = rep.complete;
  o.data["rays"] = fan.num_rays();
  o.data["max_cones"] = fan.max_cones().size();
  o.data["problems"] = rep.problems();
  Table t{{"check", "result"}, {}};
  t.rows.push_back({"valid", cell(rep.valid())});
  t.rows.push_back({"complete", cell(rep.complete)});
  for (const auto& p : rep.problems()) t.rows.push_back({"problem", p});
  o.table = t;
  return o;
}

Output cmd_pi1(const Context& c) {
  FundamentalGroup pi = orbifold_pi1(load_fan(c));
  Output o;
  o.data["invariant_factors"] = io::to_json(pi.group.invariant_factors);
  o.data["order"] = io::to_json(pi.group.order());
  o.data["lattice"] = io::to_json(pi.lattice.basis().row_list());
  o.table = Table{{"invariant_factors", "order"}, {{cell(pi.group.invariant_factors), cell(pi.group.order())}}};
  return o;
}

Output cmd_cover_lattices(const Context& c) {
  WeightedFan fan = load_fan(c);
  Output o;
  o.data = json::array();
  Table t{{"cone", "lattice_basis", "chart_group", "order", "basis_check"}, {}};
  for (const auto& cd : all_cover_lattices(fan)) {
    bool ok = chart_basis_check(fan, cd.cone);
    json e;
    e["cone"] = cd.cone;
    e["lattice"] = io::to_json(cd.lattice.basis().row_list());
    e["chart_group"] = io::to_json(cd.chart_group.invariant_factors);
    e["order"] = io::to_json(cd.chart_group.order());
    e["basis_check"] = ok;
    o.data.push_back(e);
    std::string basis;
    for (const auto& r : cd.lattice.basis().row_list()) basis += cell(r);
    t.rows.push_back({cell(cd.cone), basis, cell(cd.chart_group.invariant_factors), cell(cd.chart_group.order()), cell(ok)});
  }
  o.table = t;
  return o;
}

Output cmd_universal_cover(const Context& c) {
  UniversalCover u = universal_cover(load_fan(c));
  Output o;
  o.data["base_lattice"] = io::to_json(u.base_lattice.basis().row_list());
  o.data["deck_group"] = io::to_json(u.deck_group.invariant_factors);
  o.data["fan"] = io::fan_to_json(u.cover_fan);
  Table t{{"ray", "generator", "weight"}, {}};
  for (std::size_t r = 0; r < u.cover_fan.num_rays(); ++r)
    t.rows.push_back({std::to_string(r), cell(u.cover_fan.rays()[r].generator), cell(u.cover_fan.rays()[r].weight)});
  o.table = t;
  return o;
}

Output cmd_h0(const Context& c) {
  io::BundleInput b = load_bundle(c);
  Sections s = h0(b.fan, b.l, c.opts);
  Output o;
  o.data["h0"] = s.count;
  o.data["characters"] = io::to_json(s.characters);
  Table t{{"index", "character"}, {}};
  for (std::size_t i = 0; i < s.characters.size(); ++i) t.rows.push_back({std::to_string(i + 1), cell(s.characters[i])});
  o.table = t;
  return o;
}

Output cmd_chern(const Context& c) {
  io::BundleInput b = load_bundle(c);
  RationalClass k = chern_class(b.fan, b.l);
  RatVec h;
  for (std::size_t r = 0; r < b.l.size(); ++r) h.push_back(ratio(b.l[r], b.fan.rays()[r].weight));
  Output o;
  o.data["h"] = io::to_json(h);
  o.data["class"] = io::to_json(k.representative);
  o.data["coarse_pullback"] = coarse_pullback_witness(b.fan, h).has_value();
  o.table = Table{{"h", "class"}, {{cell(h), cell(k.representative)}}};
  return o;
}

Output cmd_torsion(const Context& c) {
  TorsionGroup t = torsion_subgroup(load_fan(c));
  Output o;
  o.data["invariant_factors"] = io::to_json(t.group.invariant_factors);
  o.data["order"] = io::to_json(t.group.order());
  o.data["representatives"] = io::to_json(t.representatives);
  Table tab{{"representative"}, {}};
  for (const auto& r : t.representatives) tab.rows.push_back({cell(r)});
  o.table = tab;
  return o;
}

Output cmd_classes(const Context& c) {
  WeightedFan fan;
  RatVec h;
  if (c.spec.c1) {
    if (!c.spec.bundle.empty()) fan = load_bundle(c).fan;
    else fan = load_fan(c);
    h = io::parse_rat_list(*c.spec.c1);
  } else {
    if (c.spec.bundle.empty()) throw io::InputError("command 'classes' needs --c1 <h> or --bundle <bundle.json>");
    io::BundleInput b = load_bundle(c);
    fan = b.fan;
    for (std::size_t r = 0; r < b.l.size(); ++r) h.push_back(ratio(b.l[r], fan.rays()[r].weight));
  }
  if (h.size() != fan.num_rays()) throw io::InputError("--c1: expected one rational per ray");
  std::vector<ClassMember> members = bundles_with_class(fan, h, c.opts);
  Output o;
  o.data["c1"] = io::to_json(h);
  o.data["class"] = io::to_json(rational_class(fan, h).representative);
  o.data["bundles"] = json::array();
  Table t{{"l", "torsion_shift", "h0"}, {}};
  for (const auto& m : members) {
    json e;
    e["l"] = io::to_json(m.bundle.representative);
    e["torsion_shift"] = io::to_json(m.torsion_shift);
    e["h0"] = m.h0;
    o.data["bundles"].push_back(e);
    t.rows.push_back({cell(m.bundle.representative), cell(m.torsion_shift), std::to_string(m.h0)});
  }
  o.table = t;
  return o;
}

Output cmd_prequantize(const Context& c) {
  PrequantResult r = prequantize(load_polytope(c), c.opts);
  Output o;
  o.data["status"] = r.prequantizable ? "prequantizable" : "not_prequantizable";
  o.data["fan"] = io::fan_to_json(r.fan);
  Table t{{"l", "torsion_shift", "h0"}, {}};
  if (r.prequantizable) {
    o.data["translation"] = io::to_json(r.translation);
    o.data["l"] = io::to_json(r.l);
    o.data["vertex_characters"] = io::to_json(r.vertex_characters);
    o.data["bundles"] = json::array();
    for (const auto& m : r.bundles) {
      json e;
      e["l"] = io::to_json(m.bundle.representative);
      e["torsion_shift"] = io::to_json(m.torsion_shift);
      e["h0"] = m.h0;
      o.data["bundles"].push_back(e);
      t.rows.push_back({cell(m.bundle.representative), cell(m.torsion_shift), std::to_string(m.h0)});
    }
  }
  o.table = t;
  return o;
}

json reduced_json(const ReducedOrbifold& r) {
  json e;
  e["polytope"] = io::polytope_to_json(r.polytope);
  if (r.polytope.rank() > 0) e["fan"] = io::fan_to_json(r.fan);
  return e;
}

Output cmd_reduce(const Context& c) {
  io::BundleInput b = reduction_bundle(c);
  Subtorus T = load_subtorus(c, b.fan.rank());
  Output o;
  if (c.spec.alpha) {
    RatVec alpha = io::parse_rat_list(*c.spec.alpha);
    ReducedOrbifold r = reduce_at(newton_polytope(b.fan, b.l), T, alpha);
    o.data["alpha"] = io::to_json(alpha);
    o.data["reduced"] = reduced_json(r);
    if (is_integral(alpha)) o.data["h0"] = leaf_h0(b.fan, b.l, T, to_int(alpha), c.opts);
    o.table = key_value_table(o.data);
    return o;
  }
  ReductionReport rep = qr_rq_report(b.fan, b.l, T, c.opts);
  o.data["subtorus"] = io::subtorus_to_json(T);
  o.data["image"] = io::polytope_to_json(rep.image);
  if (T.dimension() == 1) o.data["critical_values"] = io::to_json(critical_values(newton_polytope(b.fan, b.l), T));
  else o.data["critical_images"] = [&] {
    json a = json::array();
    for (const auto& img : rep.critical) a.push_back(io::to_json(img));
    return a;
  }();
  o.data["total_h0"] = rep.total_h0;
  o.data["leaf_sum"] = rep.leaf_sum;
  o.data["total_check"] = rep.total_check;
  o.data["leaves"] = json::array();
  Table t{{"alpha", "regular", "h0", "reduction"}, {}};
  for (const auto& leaf : rep.leaves) {
    json e;
    e["alpha"] = io::to_json(leaf.alpha);
    e["regular"] = leaf.regular;
    e["h0"] = leaf.h0;
    std::string status;
    if (leaf.reduced) {
      e["reduced"] = reduced_json(*leaf.reduced);
      std::string w;
      for (const auto& f : leaf.reduced->polytope.facets()) w += (w.empty() ? "" : ",") + cell(*f.weight);
      status = leaf.reduced->polytope.rank() == 0 ? "point" : "weights " + w;
    } else {
      e["reduction_error"] = leaf.reduction_error;
      status = leaf.reduction_error.substr(0, leaf.reduction_error.find(':'));
    }
    o.data["leaves"].push_back(e);
    t.rows.push_back({cell(leaf.alpha), cell(leaf.regular), std::to_string(leaf.h0), status});
  }
  o.table = t;
  return o;
}

Output cmd_bs(const Context& c) {
  HPolytope P;
  if (!c.spec.bundle.empty()) {
    io::BundleInput b = load_bundle(c);
    P = newton_polytope(b.fan, b.l);
  } else {
    P = load_polytope(c);
  }
  Subtorus T = load_subtorus(c, P.rank());
  Output o;
  o.data["values"] = json::array();
  Table t{{"alpha", "regular"}, {}};
  for (const auto& v : bs_values(P, T, c.opts)) {
    json e;
    e["alpha"] = io::to_json(v.alpha);
    e["regular"] = v.regular;
    o.data["values"].push_back(e);
    t.rows.push_back({cell(v.alpha), cell(v.regular)});
  }
  o.table = t;
  return o;
}

Output cmd_svg(const Context& c) {
  Output o;
  if (!c.spec.subtorus.empty()) {
    io::BundleInput b = reduction_bundle(c);
    Subtorus T = load_subtorus(c, b.fan.rank());
    o.raw = render_reduction_svg(qr_rq_report(b.fan, b.l, T, c.opts), b.fan.rank());
  } else if (!c.spec.bundle.empty()) {
    io::BundleInput b = load_bundle(c);
    o.raw = render_polytope_svg(newton_polytope(b.fan, b.l), to_vertex_characters(b.fan, b.l));
  } else if (!c.spec.polytope.empty()) {
    o.raw = render_polytope_svg(load_polytope(c));
  } else {
    io::json j = io::read_json_file(need(c.spec.input, "-i/--input <fan.json>", c.spec.command));
    if (j.contains("facets")) o.raw = render_polytope_svg(io::polytope_from_json(j));
    else {
      WeightedFan fan = io::fan_from_json(j);
      require_valid(fan);
      o.raw = render_fan_svg(fan);
    }
  }
  return o;
}

json error_json(const std::string& code, const std::string& message) {
  json e;
  e["error"] = code;
  e["message"] = message;
  return e;
}

std::uint64_t parse_cap(const std::string& s, const char* source) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size() || v < 1 || s.front() == '-') throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw io::InputError(std::string(source) + ": cap must be a positive integer, got '" + s + "'");
  }
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"validate", "pi1",    "cover-lattices", "universal-cover",
                                             "h0",       "chern",  "torsion",        "classes",
                                             "prequantize", "reduce", "bs",          "svg"};
  return c;
}

int run(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    Context c{spec, {}};
    if (spec.cap) {
      if (*spec.cap < 1) throw io::InputError("--cap must be at least 1");
      c.opts.cap = *spec.cap;
    } else if (const char* env = std::getenv("STACKYFAN_CAP")) {
      c.opts.cap = parse_cap(env, "STACKYFAN_CAP");
    }
    Output o;
    const std::string& cmd = spec.command;
    if (cmd == "validate") o = cmd_validate(c);
    else if (cmd == "pi1") o = cmd_pi1(c);
    else if (cmd == "cover-lattices") o = cmd_cover_lattices(c);
    else if (cmd == "universal-cover") o = cmd_universal_cover(c);
    else if (cmd == "h0") o = cmd_h0(c);
    else if (cmd == "chern") o = cmd_chern(c);
    else if (cmd == "torsion") o = cmd_torsion(c);
    else if (cmd == "classes") o = cmd_classes(c);
    else if (cmd == "prequantize") o = cmd_prequantize(c);
    else if (cmd == "reduce") o = cmd_reduce(c);
    else if (cmd == "bs") o = cmd_bs(c);
    else if (cmd == "svg") o = cmd_svg(c);
    else throw io::InputError("unknown command '" + cmd + "'");

    std::ostringstream buf;
    if (o.raw) buf << *o.raw;
    else if (spec.format == Format::Json) buf << o.data.dump(2) << "\n";
    else write_table(buf, o.table ? *o.table : key_value_table(o.data), spec.format);

    if (spec.output.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(spec.output, std::ios::binary);
      if (!f || !(f << buf.str())) throw io::InputError("cannot write '" + spec.output + "'");
    }
    return 0;
  } catch (const Error& e) {
    err << error_json(std::string(error_name(e.code())), e.what()).dump() << "\n";
    return 2;
  } catch (const io::InputError& e) {
    err << error_json("InputError", e.what()).dump() << "\n";
    return 1;
  } catch (const io::json::exception& e) {
    err << error_json("InputError", e.what()).dump() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    err << error_json("InternalError", e.what()).dump() << "\n";
    return 3;
  }
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on weighted fans, toric orbifolds and their orbi-line bundles"};
  JobSpec spec;
  std::string format = "json";
  std::optional<std::uint64_t> cap;
  app.add_option("command", spec.command, "Command to run")->required()->check(CLI::IsMember(commands()));
  app.add_option("-i,--input", spec.input, "Input JSON (fan, bundle or polytope, depending on the command)");
  app.add_option("-o,--output", spec.output, "Write output to this file instead of stdout");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--cap", cap, "Maximum number of lattice-point candidates")->check(CLI::PositiveNumber);
  app.add_option("--alpha", spec.alpha, "Level for reduce, comma-separated");
  app.add_option("--c1", spec.c1, "Class as l/w coordinates per ray, comma-separated");
  app.add_option("--subtorus", spec.subtorus, "Subtorus JSON file or inline rows such as 4,3,6");
  app.add_option("--polytope", spec.polytope, "Weighted polytope JSON");
  app.add_option("--bundle", spec.bundle, "Bundle JSON");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << error_json("UsageError", e.what()).dump() << "\n";
    return 1;
  }
  spec.cap = cap;
  spec.format = format == "csv" ? Format::Csv : format == "table" ? Format::Table : Format::Json;
  return run(spec, out, err);
}

}  // namespace stackyfan::cli
