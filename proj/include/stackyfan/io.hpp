#pragma once

// JSON encodings. Integers are written as JSON numbers when they fit in 64
// bits and as decimal strings otherwise; rationals are always "p/q" strings.
// Readers accept numbers or strings for both.

#include "stackyfan/fan.hpp"
#include "stackyfan/lattice.hpp"
#include "stackyfan/polytope.hpp"
#include "stackyfan/reduction.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace stackyfan::io {

using json = nlohmann::ordered_json;

// Unreadable files, malformed JSON and schema violations.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::filesystem::path& path);

json to_json(const Int& x);
json to_json(const Rat& x);
json to_json(const IntVec& v);
json to_json(const RatVec& v);
json to_json(const std::vector<IntVec>& rows);
json to_json(const std::vector<RatVec>& rows);

Int int_from_json(const json& j);
Rat rat_from_json(const json& j);
IntVec int_vec_from_json(const json& j);
RatVec rat_vec_from_json(const json& j);

// Comma-separated rationals, e.g. "-1/3,0,0".
RatVec parse_rat_list(const std::string& s);

json fan_to_json(const WeightedFan& fan);
WeightedFan fan_from_json(const json& j);

json polytope_to_json(const HPolytope& P);
HPolytope polytope_from_json(const json& j);

json lattice_to_json(const Lattice& L);
json group_to_json(const FiniteAbelianGroup& G);

struct BundleInput {
  WeightedFan fan;
  IntVec l;
};

// {"fan": <fan object | path relative to base_dir>, "l": [...]} or with "m"
// (one character per maximal cone) instead of "l".
BundleInput bundle_from_json(const json& j, const std::filesystem::path& base_dir = {});
json bundle_to_json(const WeightedFan& fan, const IntVec& l);

// {"basis": [[...], ...]} with an optional "rank" (needed when basis is empty).
Subtorus subtorus_from_json(const json& j, std::optional<std::size_t> rank = std::nullopt);
json subtorus_to_json(const Subtorus& T);

}  // namespace stackyfan::io
