#include <doctest.h>
#include <json.hpp>

#include <sstream>

#include "stiet/cli.hpp"

using stiet::run_cli;

namespace {

struct Run {
  int code;
  nlohmann::json doc;
  std::string text;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  Run r{code, nullptr, out.str()};
  if (!r.text.empty() && r.text[0] == '{') r.doc = nlohmann::json::parse(r.text);
  return r;
}

}  // namespace

TEST_CASE("cli: origami info") {
  auto r = run({"origami", "info", "fig1"});
  CHECK(r.code == 0);
  CHECK(r.doc["schema"] == "stiet.origami.info/1");
  CHECK(r.doc["genus"] == 2);
  CHECK(r.doc["stratum"] == "H(2)");
}

TEST_CASE("cli: sturmian table") {
  auto r = run({"coding", "sturmian", "--alpha", "quad:sqrt2-1", "--N", "4"});
  CHECK(r.code == 0);
  CHECK(r.doc["states"][3]["w"] == "lrlrllrlrl");
}

TEST_CASE("cli: scan csv is byte-identical across job counts") {
  auto a = run({"rigidity", "scan", "fig1", "--alpha", "quad:(3-sqrt5)/2", "--Q", "200", "--format", "csv"});
  auto b = run({"rigidity", "scan", "fig1", "--alpha", "quad:(3-sqrt5)/2", "--Q", "200", "--format", "csv", "--jobs", "3"});
  CHECK(a.code == 0);
  CHECK(a.text == b.text);
  CHECK(a.text.rfind("q,atom,defect,exact\n", 0) == 0);
}

TEST_CASE("cli: error codes") {
  auto bad = run({"iet", "power", "fig1", "--alpha", "quad:1/2"});
  CHECK(bad.code == 2);
  CHECK(bad.doc["schema"] == "stiet.error/1");
  CHECK(bad.doc["error"]["code"] == "rational-alpha");
  CHECK(run({"polygon", "gmap", "--d", "4", "--y", "1/4", "--N", "3"}).doc["error"]["code"] == "orbit-escapes");
  CHECK(run({"coding", "ctex", "fig2", "--N", "6"}).code == 2);
  CHECK(run({"no-such"}).code == 2);
  auto lmr = run({"coding", "lmr", "fig1", "--v", "1l.2r", "--vp", "1l.2r.1l"});
  CHECK(lmr.code == 2);
  CHECK(lmr.doc["error"]["code"] == "hypothesis-violation");
  auto finite = run({"iet", "defect", "fig1", "--alpha", "cf:0,3,1,4", "--Q", "50"});
  CHECK(finite.code == 3);
  CHECK(finite.doc["error"]["code"] == "precision-exhausted");
}

TEST_CASE("cli: polygon commands") {
  auto w = run({"polygon", "words", "--d", "4", "--regimes", "1", "--N", "1"});
  CHECK(w.code == 0);
  CHECK(w.doc["levels"][1]["M"][0] == "141");
  CHECK(w.doc["levels"][1]["s"] == "2");
  auto f = run({"polygon", "flowcheck", "--theta", "1/3", "--l", "2", "--p", "7", "--q", "5"});
  CHECK(f.code == 0);
  CHECK(f.doc["escape_bound"] == "0");
  auto g = run({"polygon", "gmap", "--d", "4", "--regimes", "2,1,2,1", "--N", "6", "--format", "csv"});
  CHECK(g.code == 0);
  CHECK(g.text.rfind("n,value,regime\n", 0) == 0);
}

TEST_CASE("cli: lmr on two trajectory windows and ctex") {
  auto r = run({"coding", "lmr", "fig2", "--alpha", "quad:sqrt2-1", "--window", "0,0", "--N", "20", "--C", "1/5"});
  CHECK(r.code == 0);
  CHECK(r.doc["J1"][1] == 20);
  auto c = run({"coding", "ctex", "d4-cycle", "--alpha", "quad:sqrt2-1", "--N", "6"});
  CHECK(c.code == 0);
  CHECK(c.doc["decomposition_fails"] == true);
  CHECK(c.doc["sum_dbar"] == "1/28");
}
