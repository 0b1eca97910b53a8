#include "stackyfan/io.hpp"

#include "stackyfan/error.hpp"
#include "stackyfan/picard.hpp"

#include <fstream>
#include <sstream>

namespace stackyfan::io {

namespace {

const json& field(const json& j, const char* key, const char* what) {
  if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

std::size_t size_from_json(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw InputError(std::string(what) + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

json to_json(const Int& x) {
  if (x.fits_slong_p()) return json(static_cast<long long>(x.get_si()));
  return json(x.get_str());
}

json to_json(const Rat& x) { return json(x.get_str()); }

json to_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const std::vector<IntVec>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a;
}

json to_json(const std::vector<RatVec>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a;
}

Rat rat_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
    if (j.is_string()) return parse_rat(j.get<std::string>());
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  throw InputError("expected an exact number (integer or \"p/q\" string), got " + j.dump());
}

Int int_from_json(const json& j) {
  Rat r = rat_from_json(j);
  if (!is_integral(r)) throw InputError("expected an integer, got " + j.dump());
  return r.get_num();
}

IntVec int_vec_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of integers, got " + j.dump());
  IntVec v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

RatVec rat_vec_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
  RatVec v;
  for (const auto& x : j) v.push_back(rat_from_json(x));
  return v;
}

RatVec parse_rat_list(const std::string& s) {
  RatVec out;
  std::stringstream ss(s);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  if (out.empty()) throw InputError("empty rational list");
  return out;
}

json fan_to_json(const WeightedFan& fan) {
  json j;
  j["rank"] = fan.rank();
  json rays = json::array(), weights = json::array(), cones = json::array();
  for (const auto& r : fan.rays()) {
    rays.push_back(to_json(r.generator));
    weights.push_back(to_json(r.weight));
  }
  for (const auto& c : fan.max_cones()) cones.push_back(c);
  j["rays"] = rays;
  j["weights"] = weights;
  j["max_cones"] = cones;
  return j;
}

WeightedFan fan_from_json(const json& j) {
  const std::size_t n = size_from_json(field(j, "rank", "fan"), "fan.rank");
  const json& rays = field(j, "rays", "fan");
  if (!rays.is_array()) throw InputError("fan.rays: expected an array");
  std::vector<IntVec> gens;
  for (const auto& r : rays) gens.push_back(int_vec_from_json(r));
  std::vector<Int> weights;
  if (j.contains("weights")) {
    IntVec w = int_vec_from_json(j["weights"]);
    weights.assign(w.begin(), w.end());
  } else {
    weights.assign(gens.size(), Int(1));
  }
  const json& cones = field(j, "max_cones", "fan");
  if (!cones.is_array()) throw InputError("fan.max_cones: expected an array");
  std::vector<ConeRef> cs;
  for (const auto& c : cones) {
    if (!c.is_array()) throw InputError("fan.max_cones: expected arrays of ray indices");
    ConeRef cone;
    for (const auto& i : c) cone.push_back(size_from_json(i, "fan.max_cones"));
    cs.push_back(cone);
  }
  return WeightedFan(n, gens, weights, cs);
}

json polytope_to_json(const HPolytope& P) {
  json j;
  j["rank"] = P.rank();
  json fs = json::array();
  for (const auto& f : P.facets()) {
    json e;
    e["normal"] = to_json(f.normal);
    e["offset"] = to_json(f.offset);
    if (f.weight) e["weight"] = to_json(*f.weight);
    fs.push_back(e);
  }
  j["facets"] = fs;
  return j;
}

HPolytope polytope_from_json(const json& j) {
  const std::size_t n = size_from_json(field(j, "rank", "polytope"), "polytope.rank");
  const json& fs = field(j, "facets", "polytope");
  if (!fs.is_array()) throw InputError("polytope.facets: expected an array");
  HPolytope P(n);
  for (const auto& f : fs) {
    RatVec normal = rat_vec_from_json(field(f, "normal", "facet"));
    if (normal.size() != n) throw InputError("facet normal length differs from polytope rank");
    Rat offset = rat_from_json(field(f, "offset", "facet"));
    std::optional<Int> w;
    if (f.contains("weight")) {
      w = int_from_json(f["weight"]);
      if (*w < 1) throw InputError("facet weight must be positive");
    }
    if (auto g = make_facet(normal, offset, w)) P.add(*g);
  }
  return P;
}

json lattice_to_json(const Lattice& L) {
  json j;
  j["basis"] = to_json(L.basis().row_list());
  j["denominator"] = to_json(L.denominator());
  return j;
}

json group_to_json(const FiniteAbelianGroup& G) {
  json j;
  j["invariant_factors"] = to_json(G.invariant_factors);
  j["order"] = to_json(G.order());
  return j;
}

BundleInput bundle_from_json(const json& j, const std::filesystem::path& base_dir) {
  const json& f = field(j, "fan", "bundle");
  WeightedFan fan = f.is_string() ? fan_from_json(read_json_file(base_dir / f.get<std::string>())) : fan_from_json(f);
  if (j.contains("l")) {
    IntVec l = int_vec_from_json(j["l"]);
    if (l.size() != fan.num_rays()) throw InputError("bundle.l: expected one integer per ray");
    return {fan, l};
  }
  if (j.contains("m")) {
    if (!j["m"].is_array()) throw InputError("bundle.m: expected an array of characters");
    VertexCharacters m;
    for (const auto& x : j["m"]) m.push_back(rat_vec_from_json(x));
    return {fan, to_ray_data(fan, m)};
  }
  throw InputError("bundle: needs 'l' or 'm'");
}

json bundle_to_json(const WeightedFan& fan, const IntVec& l) {
  json j;
  j["fan"] = fan_to_json(fan);
  j["l"] = to_json(l);
  return j;
}

Subtorus subtorus_from_json(const json& j, std::optional<std::size_t> rank) {
  const json& b = field(j, "basis", "subtorus");
  if (!b.is_array()) throw InputError("subtorus.basis: expected an array of rows");
  std::vector<IntVec> rows;
  for (const auto& r : b) rows.push_back(int_vec_from_json(r));
  std::size_t n = 0;
  if (j.contains("rank")) n = size_from_json(j["rank"], "subtorus.rank");
  else if (!rows.empty()) n = rows[0].size();
  else if (rank) n = *rank;
  else throw InputError("subtorus: empty basis needs a 'rank' field");
  return Subtorus(n, rows);
}

json subtorus_to_json(const Subtorus& T) {
  json j;
  j["rank"] = T.ambient_rank();
  j["basis"] = to_json(T.basis().row_list());
  return j;
}

}  // namespace stackyfan::io
