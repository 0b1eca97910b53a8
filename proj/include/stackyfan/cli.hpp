#pragma once

// Command-line front end. `run` is the whole program minus argument parsing,
// so it can be driven from tests.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace stackyfan::cli {

enum class Format { Json, Csv, Table };

struct JobSpec {
  std::string command;   // validate, pi1, cover-lattices, universal-cover, h0, chern,
                         // torsion, classes, prequantize, reduce, bs, svg
  std::string input;     // -i
  std::string output;    // -o; stdout when empty
  std::string polytope;  // --polytope
  std::string bundle;    // --bundle
  std::string subtorus;  // --subtorus: JSON file or inline rows "4,3,6" / "1,0,0;0,1,1"
  std::optional<std::string> alpha;  // --alpha, comma-separated
  std::optional<std::string> c1;     // --c1, comma-separated l/w coordinates
  Format format = Format::Json;
  std::optional<std::uint64_t> cap;  // --cap; otherwise STACKYFAN_CAP, otherwise the library default
};

const std::vector<std::string>& commands();

// Exit codes: 0 success, 1 input/output errors, 2 domain errors, 3 internal
// consistency failures. Errors are reported as one JSON object on `err`.
int run(const JobSpec& spec, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) and calls run.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace stackyfan::cli
