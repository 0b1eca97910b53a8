#include "stackyfan/cli.hpp"
#include "stackyfan/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace stackyfan;
using cli::JobSpec;
using json = io::json;

namespace {

const std::string kData = STACKYFAN_DATA_DIR;

std::string data_path(const std::string& name) { return kData + "/" + name; }

struct Outcome {
  int code;
  std::string out, err;
  json parsed() const { return json::parse(out); }
  json error() const { return json::parse(err); }
};

Outcome run(JobSpec spec) {
  std::ostringstream out, err;
  int code = cli::run(spec, out, err);
  return {code, out.str(), err.str()};
}

JobSpec job(std::string command, std::string input = {}) {
  JobSpec s;
  s.command = std::move(command);
  if (!input.empty()) s.input = data_path(input);
  return s;
}

Outcome run_argv(std::vector<std::string> args) {
  args.insert(args.begin(), "stackyfan");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  auto p = std::filesystem::temp_directory_path() / ("stackyfan_test_" + name);
  std::ofstream(p) << contents;
  return p;
}

}  // namespace

TEST_CASE("pi1 of the weighted projective line") {
  Outcome o = run(job("pi1", "p1_6_4.json"));
  REQUIRE(o.code == 0);
  CHECK(o.parsed()["invariant_factors"] == json::array({2}));
  CHECK(o.parsed()["order"] == 2);
}

TEST_CASE("h0 of the quadric cone bundles") {
  Outcome a = run(job("h0", "quadric_P1.json"));
  REQUIRE(a.code == 0);
  CHECK(a.parsed()["h0"] == 4);
  CHECK(a.parsed()["characters"] == json::parse("[[-1,0],[0,-1],[0,0],[1,0]]"));
  CHECK(run(job("h0", "quadric_P2.json")).parsed()["h0"] == 6);
  CHECK(run(job("chern", "quadric_P2.json")).parsed()["coarse_pullback"] == false);
  CHECK(run(job("chern", "quadric_P1.json")).parsed()["coarse_pullback"] == true);
}

TEST_CASE("torsion sensitivity through the command line") {
  json a = run(job("chern", "p1_bundle_a.json")).parsed();
  json b = run(job("chern", "p1_bundle_b.json")).parsed();
  CHECK(a["class"] == b["class"]);
  CHECK(run(job("h0", "p1_bundle_a.json")).parsed()["h0"] == 3);
  CHECK(run(job("h0", "p1_bundle_b.json")).parsed()["h0"] == 2);
}

TEST_CASE("classes") {
  JobSpec s = job("classes", "p2_2_2_3.json");
  s.c1 = "-1/2,0,0";
  Outcome o = run(s);
  REQUIRE(o.code == 0);
  auto bundles = o.parsed()["bundles"];
  REQUIRE(bundles.size() == 2);
  CHECK(bundles[0]["h0"] == 1);
  CHECK(bundles[1]["h0"] == 1);

  JobSpec bad = job("classes", "p1_6_4.json");
  bad.c1 = "1/24,0";
  Outcome e = run(bad);
  CHECK(e.code == 2);
  CHECK(e.error()["error"] == "NotIntegral");
  CHECK(e.out.empty());
}

TEST_CASE("prequantize") {
  json r = run(job("prequantize", "simplex3.json")).parsed();
  CHECK(r["status"] == "prequantizable");
  CHECK(r["l"] == json::parse("[0,0,0,-3]"));
  CHECK(r["bundles"].size() == 1);
  CHECK(r["bundles"][0]["h0"] == 20);

  json t = run(job("prequantize", "triangle_2_2_3.json")).parsed();
  std::multiset<int> h0s;
  for (const auto& b : t["bundles"]) h0s.insert(b["h0"].get<int>());
  CHECK(h0s == std::multiset<int>{0, 1});

  Outcome n = run(job("prequantize", "segment_6_4.json"));
  CHECK(n.code == 0);
  CHECK(n.parsed()["status"] == "not_prequantizable");
}

TEST_CASE("reduce on the simplex") {
  JobSpec s = job("reduce");
  s.polytope = data_path("simplex3.json");
  s.subtorus = data_path("subtorus_436.json");
  Outcome o = run(s);
  REQUIRE(o.code == 0);
  json r = o.parsed();
  CHECK(r["critical_values"] == json::parse(R"(["0","9","12","18"])"));
  CHECK(r["total_h0"] == 20);
  CHECK(r["total_check"] == true);
  REQUIRE(r["leaves"].size() == 19);
  std::vector<int> zeros;
  for (const auto& leaf : r["leaves"])
    if (leaf["h0"] == 0) zeros.push_back(leaf["alpha"][0].get<int>());
  CHECK(zeros == std::vector<int>{1, 2, 5, 17});

  s.format = cli::Format::Table;
  Outcome t = run(s);
  std::size_t lines = std::count(t.out.begin(), t.out.end(), '\n');
  CHECK(lines == 19 + 2);

  s.format = cli::Format::Csv;
  Outcome c = run(s);
  CHECK(std::count(c.out.begin(), c.out.end(), '\n') == 20);

  JobSpec inline_rows = job("reduce");
  inline_rows.polytope = data_path("simplex3.json");
  inline_rows.subtorus = "4,3,6";
  CHECK(run(inline_rows).out == o.out);

  JobSpec one = inline_rows;
  one.alpha = "12";
  json single = run(one).parsed();
  CHECK(single.dump().find("\"h0\":3") != std::string::npos);
}

TEST_CASE("reduce with a bundle and a corank-one subtorus") {
  JobSpec s = job("reduce");
  s.bundle = data_path("quadric_P2.json");
  s.subtorus = "1,0";
  Outcome o = run(s);
  REQUIRE(o.code == 0);
  CHECK(o.parsed()["total_h0"] == 6);
  CHECK(o.parsed()["total_check"] == true);
}

TEST_CASE("bs values") {
  JobSpec s = job("bs");
  s.polytope = data_path("simplex3.json");
  s.subtorus = "4,3,6";
  json v = run(s).parsed()["values"];
  REQUIRE(v.size() == 19);
  CHECK(v[9]["regular"] == false);
  CHECK(v[10]["regular"] == true);
}

TEST_CASE("validate, cover lattices and universal cover") {
  CHECK(run(job("validate", "p2_2_2_3.json")).parsed()["valid"] == true);
  json cov = run(job("cover-lattices", "p1_6_4.json")).parsed();
  CHECK(cov[0]["lattice"] == json::parse("[[12]]"));
  json u = run(job("universal-cover", "p1_6_4.json")).parsed();
  CHECK(u["fan"]["weights"] == json::parse("[2,3]"));
  CHECK(u["deck_group"] == json::parse("[2]"));
  CHECK(run(job("torsion", "p1_6_4.json")).parsed()["representatives"] == json::parse(R"([["0"],["1/2"]])"));
}

TEST_CASE("round trip: emitted fans are accepted again") {
  json u = run(job("universal-cover", "p2_2_2_3.json")).parsed();
  auto p = temp_file("cover_fan.json", u["fan"].dump());
  JobSpec s;
  s.command = "pi1";
  s.input = p.string();
  Outcome o = run(s);
  CHECK(o.code == 0);
  CHECK(o.parsed()["order"] == 1);

  json pq = run(job("prequantize", "triangle_2_2_3.json")).parsed();
  json bundle{{"fan", pq["fan"]}, {"l", pq["l"]}};
  auto bp = temp_file("prequant_bundle.json", bundle.dump());
  s.command = "h0";
  s.input = bp.string();
  Outcome h = run(s);
  CHECK(h.code == 0);
  CHECK(h.parsed()["h0"] == pq["bundles"][0]["h0"]);

  JobSpec r6;
  r6.command = "reduce";
  r6.polytope = data_path("simplex3.json");
  r6.subtorus = "4,3,6";
  json rep = run(r6).parsed();
  auto rp = temp_file("reduced_polytope.json", rep["leaves"][6]["reduced"]["polytope"].dump());
  s.command = "prequantize";
  s.input = rp.string();
  Outcome q = run(s);
  CHECK(q.code == 0);
  CHECK(q.parsed().contains("status"));
}

TEST_CASE("deterministic output") {
  for (const char* cmd : {"pi1", "cover-lattices", "svg", "torsion"}) {
    Outcome a = run(job(cmd, "p2_2_2_3.json"));
    Outcome b = run(job(cmd, "p2_2_2_3.json"));
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("svg rendering") {
  Outcome f = run(job("svg", "p2_2_2_3.json"));
  REQUIRE(f.code == 0);
  CHECK(f.out.rfind("<svg", 0) == 0);
  std::size_t polygons = 0;
  for (std::size_t pos = 0; (pos = f.out.find("<polygon", pos)) != std::string::npos; ++pos) ++polygons;
  CHECK(polygons >= 3);

  JobSpec strip = job("svg");
  strip.polytope = data_path("simplex3.json");
  strip.subtorus = "4,3,6";
  Outcome s = run(strip);
  REQUIRE(s.code == 0);
  CHECK(s.out.find("</svg>") != std::string::npos);

  Outcome three = run(job("svg", "simplex3.json"));
  CHECK(three.code == 2);
}

TEST_CASE("error handling and exit codes") {
  Outcome missing = run(job("h0", "does_not_exist.json"));
  CHECK(missing.code == 1);
  CHECK(missing.error().contains("error"));

  auto garbage = temp_file("garbage.json", "{ not json");
  JobSpec g;
  g.command = "pi1";
  g.input = garbage.string();
  CHECK(run(g).code == 1);

  auto wrong = temp_file("wrong_shape.json", R"({"rank": 2, "rays": [[1, 0]], "max_cones": [[0, 3]]})");
  g.input = wrong.string();
  CHECK(run(g).code != 0);

  auto unbounded = temp_file("unbounded.json", R"({"rank": 2, "facets": [{"normal": [1, 0], "offset": "0"}, {"normal": [0, 1], "offset": "0"}]})");
  JobSpec pq;
  pq.command = "prequantize";
  pq.input = unbounded.string();
  Outcome u = run(pq);
  CHECK(u.code == 2);
  CHECK(u.error()["error"] == "Unbounded");

  JobSpec capped = job("h0", "quadric_P2.json");
  capped.cap = 2;
  Outcome c = run(capped);
  CHECK(c.code == 2);
  CHECK(c.error()["error"] == "CapExceeded");
}

TEST_CASE("argument parsing") {
  Outcome a = run_argv({"pi1", "-i", data_path("p1_6_4.json")});
  CHECK(a.code == 0);
  CHECK(a.out == run(job("pi1", "p1_6_4.json")).out);

  Outcome t = run_argv({"h0", "-i", data_path("quadric_P1.json"), "--format", "table"});
  CHECK(t.code == 0);
  CHECK(t.out.find("4      (1,0)") != std::string::npos);

  CHECK(run_argv({"frobnicate"}).code == 1);
  CHECK(run_argv({"h0", "-i", data_path("quadric_P2.json"), "--cap", "2"}).code == 2);
  CHECK(run_argv({"classes", "-i", data_path("p1_6_4.json"), "--c1", "1/24,0"}).code == 2);
}

TEST_CASE("environment cap") {
  setenv("STACKYFAN_CAP", "2", 1);
  Outcome capped = run(job("h0", "quadric_P2.json"));
  JobSpec flag = job("h0", "quadric_P2.json");
  flag.cap = 1000;
  Outcome overridden = run(flag);
  unsetenv("STACKYFAN_CAP");
  CHECK(capped.code == 2);
  CHECK(overridden.code == 0);
}

TEST_CASE("output file") {
  auto p = std::filesystem::temp_directory_path() / "stackyfan_test_out.json";
  std::filesystem::remove(p);
  JobSpec s = job("pi1", "p1_6_4.json");
  s.output = p.string();
  Outcome o = run(s);
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(p);
  CHECK(json::parse(in)["order"] == 2);
}
