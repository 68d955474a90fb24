#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "slocc/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = slocc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(SLOCC_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("rank of GHZ") {
  const Result r = run({"rank", "--ket", "|000>+|111>", "--dims", "2,2,2"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["lower"] == 2);
  CHECK(r.json()["upper"] == 2);
}

TEST_CASE("determinant polynomial equivalence of the diagonal example") {
  const Result r = run({"detpoly-equiv", data("t1.json"), data("t2.json"), "--seed", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["verdict"] == "CandidateFound");
  CHECK(r.json()["residual"].get<double>() < 1e-8);
  const Result f = run({"detpoly", data("t1.json"), "--output", "text"});
  CHECK(f.out == "x*y*z\n");
}

TEST_CASE("product counts") {
  const Result w = run({"product-count", "--ket", "|001>+|010>+|100>", "--dims", "2,2,2", "--traced", "A"});
  REQUIRE(w.code == 0);
  CHECK(w.json()["independent_count"] == 1);
  CHECK(w.json()["exactness"] == "Exact");
  const Result c = run({"range-compare", "--ket", "|000>+|111>", "--ket", "|001>+|010>+|100>", "--dims", "2,2,2",
                        "--traced", "A"});
  CHECK(c.json()["verdict"] == "Inequivalent");
}

TEST_CASE("text output") {
  const Result r = run({"parse", "--ket", "(1/2)(|00>+|11>)|0>", "--dims", "2,2,2", "--output", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "0.5|000>+0.5|110>\n");
  const Result c = run({"classify2mn", "--ket", "|000>+|111>+|022>", "--dims", "2,3,3", "--output", "text"});
  CHECK(c.out == "2x3x3-1\n");
}

TEST_CASE("partial trace") {
  const Result r = run({"ptrace", "--ket", "|000>+|111>", "--dims", "2,2,2", "--normalize", "--traced", "B,C"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["party_dims"] == nlohmann::json::array({2}));
}

TEST_CASE("constructors") {
  const Result l = run({"lhrgm", "--kind", "omega0", "--ket", "|000>+|011>", "--dims", "2,2,2", "--M", "3", "--N", "3",
                        "--output", "text"});
  REQUIRE(l.code == 0);
  CHECK(l.out == "|000>+|011>+|022>+|122>\n");
  const Result b = run({"build335", "--ket", "|000>+|111>", "--dims", "2,2,2", "--alpha", "0,0,0,0,1", "--output",
                        "text"});
  REQUIRE(b.code == 0);
  CHECK(b.out == "|000>+|111>+|204>\n");
  const Result e = run({"catalog", "--id", "2x2x2-w"});
  CHECK(e.json()["rank"] == 3);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"rank", "--ket", "|000>"}).code == 1);
  CHECK(run({"rank", "--ket", "|00x>", "--dims", "2,2,2"}).code == 2);
  CHECK(run({"rank", data("missing.json")}).code == 2);
  CHECK(run({"rank", "--ket", "|000>", "--dims", "2,2,2", "--restarts", "-1"}).code == 1);
  CHECK(run({"catalog", "--id", "nope"}).code == 2);
  CHECK(run({"lhrgm", "--kind", "omega2", "--b", "0", "--ket", "|000>", "--dims", "2,2,2", "--M", "3", "--N", "3"}).code == 2);
  CHECK(run({"rank", "--ket", "|0,0,0>", "--dims", "1000,1000,1000"}).code == 3);
}

TEST_CASE("strict mode turns inconclusive verdicts into exit 4") {
  const std::vector<std::string> same{"range-compare", "--ket", "|000>+|111>", "--ket", "|000>+|111>",
                                      "--dims", "2,2,2", "--traced", "A"};
  CHECK(run(same).code == 0);
  auto strict = same;
  strict.push_back("--strict");
  CHECK(run(strict).code == 4);
  // three-dimensional ranges only give lower bounds
  CHECK(run({"product-count", "--ket", "|000>+|111>+|222>", "--dims", "3,3,3", "--traced", "A", "--strict"}).code == 4);
}

TEST_CASE("seeded commands repeat byte for byte") {
  const std::vector<std::vector<std::string>> cmds{
      {"slocc-apply", "--random", "--ket", "|000>+|111>", "--dims", "2,2,2", "--seed", "5"},
      {"rank", "--ket", "|012>+|021>+|102>+|120>+|201>+|210>", "--dims", "3,3,3", "--seed", "3"},
      {"detpoly-equiv", data("t1.json"), data("t2.json"), "--seed", "7"},
      {"lhrgm", "--kind", "omega3", "--ket", "|000>+|011>", "--dims", "2,2,2", "--M", "3", "--N", "3", "--seed", "2"}};
  for (const auto& c : cmds) {
    const Result a = run(c), b = run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
  CHECK(run(cmds[0]).out != run({"slocc-apply", "--random", "--ket", "|000>+|111>", "--dims", "2,2,2", "--seed", "6"}).out);
}

}  // TEST_SUITE
