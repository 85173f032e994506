#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "padicmp/cli.hpp"

using padicmp::cli::CommandResult;
using padicmp::cli::run;
using padicmp::json::Json;

namespace {

std::string data(const std::string& name) { return std::string(PADICMP_DATA_DIR) + "/" + name; }

CommandResult call(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  return run(args, in);
}

}  // namespace

TEST(CliPadicTest, Verbs) {
  auto r = call({"padic", "abs", "--p", "3", "--x", "25/18"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.text(), R"({"value":"9"})");
  EXPECT_EQ(call({"padic", "ord", "--p", "3", "--x", "25/18"}).text(), R"({"value":-2})");
  EXPECT_EQ(call({"padic", "dist", "--p", "3", "--x", "1/2", "--y", "1/3"}).text(), R"({"value":"3"})");
  auto d = call({"padic", "digits", "--p", "3", "--x", "17", "--high", "2"});
  EXPECT_EQ(d.text(), R"({"p":3,"low":0,"digits":[2,2,1],"text":"122"})");
}

TEST(CliPadicTest, InputErrorsExitTwo) {
  auto r = call({"padic", "abs", "--p", "4", "--x", "1"});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(r.payload["error"], "NotPrime");
  EXPECT_EQ(call({"padic", "ord", "--p", "3", "--x", "0"}).payload["error"], "OrdOfZero");
  EXPECT_EQ(call({"padic", "abs", "--p", "3", "--x", "1/x"}).payload["error"], "ParseError");
  EXPECT_EQ(call({"padic", "abs", "--p", "3"}).payload["error"], "ParseError");
  EXPECT_EQ(call({"padic", "bogus"}).exit_code, 2);
  EXPECT_EQ(call({}).exit_code, 2);
  EXPECT_EQ(call({"padic", "abs", "--nope", "1"}).payload["error"], "Usage");
}

TEST(CliPadicTest, HelpExitsZero) {
  auto r = call({"--help"});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.text().find("padic"), std::string::npos);
}

TEST(CliFnTest, EvalAndTriplet) {
  EXPECT_EQ(call({"fn", "eval", "--spec", R"({"kind":"power_map","p":2,"q":3})", "--x", "3"}).text(),
            R"({"value":"6"})");
  EXPECT_EQ(call({"fn", "eval", "--file", data("sawtooth.json"), "--x", "3"}).text(), R"({"value":"1/8"})");
  EXPECT_EQ(call({"fn", "triplet", "--triple", "1,1,4"}).text(), R"({"triangle":false,"strong":false})");
  EXPECT_EQ(call({"fn", "triplet", "--triple", "1,1"}).exit_code, 2);
}

TEST(CliFnTest, ChecksReportWitnessesWithExitOne) {
  auto r = call({"fn", "padic-check", "--spec", R"({"kind":"reciprocal"})", "--p", "2", "--window", "-5:5"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.payload["witness"]["m"], -2);
  EXPECT_EQ(r.payload["witness"]["images"].dump(), R"(["1","1","4"])");

  auto u = call({"fn", "padic-ultra-check", "--file", data("sawtooth.json"), "--p", "3", "--window", "-2:2"});
  EXPECT_EQ(u.exit_code, 1);
  EXPECT_EQ(u.payload["witness"]["m"], 0);

  EXPECT_EQ(call({"fn", "padic-check", "--spec", R"({"kind":"canonical"})", "--p", "3"}).exit_code, 0);
  EXPECT_EQ(call({"fn", "padic-check", "--spec", R"({"kind":"canonical"})", "--p", "3", "--window", "2:1"})
                .payload["error"],
            "BadWindow");

  auto e = call({"fn", "euclid", "--spec", R"({"kind":"piecewise_linear","points":[["0","0"],["1","1"]],"tail":"linear"})"});
  EXPECT_EQ(e.exit_code, 0);
  auto sq = call({"fn", "euclid", "--spec", R"({"kind":"tabulated","table":[["0","0"],["1","1"],["2","4"]]})",
                  "--samples", "1"});
  EXPECT_EQ(sq.exit_code, 1);
  EXPECT_EQ(sq.payload["witness"]["images"].dump(), R"(["1","1","4"])");
}

TEST(CliFnTest, ClassifyAndSufficient) {
  auto c = call({"fn", "classify", "--file", data("four_point_fn.json"), "--samples", "0,1,2,3"});
  EXPECT_EQ(c.exit_code, 0);
  EXPECT_EQ(c.payload["ultrametric"]["passed"], false);
  EXPECT_EQ(c.payload["ultrametric"]["witness"]["args"].dump(), R"(["1","2"])");
  EXPECT_FALSE(c.payload.contains("padic_metric"));
  auto cp = call({"fn", "classify", "--spec", R"({"kind":"canonical"})", "--p", "2", "--window", "-3:3"});
  EXPECT_EQ(cp.payload["padic_metric"]["passed"], true);
  auto s = call({"fn", "sufficient", "--spec", R"({"kind":"canonical"})"});
  EXPECT_EQ(s.payload["concave"], true);
}

TEST(CliFnTest, Constructions) {
  EXPECT_EQ(call({"fn", "psi", "--file", data("sawtooth.json"), "--p", "3", "--x", "1/2"}).text(),
            R"({"value":"1/3"})");
  EXPECT_EQ(call({"fn", "prime-swap", "--p", "2", "--q", "3", "--x", "4"}).text(), R"({"value":"9"})");
  EXPECT_EQ(call({"fn", "prime-shift", "--x", "5"}).text(), R"({"value":"7"})");
  EXPECT_EQ(call({"fn", "prime-shift", "--bound", "100"}).payload["ceiling"], "97");
  auto w = call({"fn", "witness", "--p", "3", "--m", "0", "--n", "-1"});
  EXPECT_EQ(w.text(), R"({"triple":["3","-3","1"],"distances":["1","1","1/3"]})");
  EXPECT_EQ(call({"fn", "witness", "--p", "3", "--m", "0", "--n", "0"}).payload["error"], "BadOrder");

  auto g = call({"fn", "extend", "--spec", R"({"kind":"power_map","p":2,"q":3})", "--p", "2", "--window", "-1:1"});
  EXPECT_EQ(g.exit_code, 0);
  EXPECT_EQ(g.text(), R"({"kind":"step","below":"1/3","steps":[["1/2","1/3"],["1","1"],["2","3"]]})");
  EXPECT_EQ(call({"fn", "extend", "--file", data("sawtooth.json"), "--p", "3", "--window", "-2:2"}).payload["error"],
            "NotPreserving");
}

TEST(CliSpaceTest, Verbs) {
  EXPECT_EQ(call({"space", "validate", "--file", data("four_point.json")}).exit_code, 0);
  auto bad = call({"space", "validate", "--file", data("not_ultrametric.json")});
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_EQ(bad.payload["violation"]["at"].dump(), R"(["a","c","b"])");
  EXPECT_EQ(call({"space", "range", "--file", data("four_point.json")}).text(), R"({"range":["0","1","2","3"]})");
  auto a = call({"space", "apply", "--file", data("four_point.json"), "--spec",
                 R"({"kind":"piecewise_linear","points":[["0","0"],["1","2"],["2","1"],["3","3"]]})"});
  EXPECT_EQ(a.payload["ultrametric"], true);
  auto iso = call({"space", "isometry", "--file", data("four_point_isometry.json")});
  EXPECT_EQ(iso.payload["isometric"], true);
  EXPECT_EQ(iso.payload["map"].dump(), R"({"x1":"x2","x2":"x1","x3":"x4","x4":"x3"})");
  EXPECT_EQ(call({"space", "embed-dim", "--file", data("four_point.json")}).text(), R"({"dimension":3,"gram_rank":3})");
  EXPECT_EQ(call({"space", "range", "--file", data("missing.json")}).payload["error"], "ParseError");
}

TEST(CliSpaceTest, StdinInput) {
  auto r = call({"space", "range", "--file", "-"}, R"({"d":[["0","5"],["5","0"]]})");
  EXPECT_EQ(r.text(), R"({"range":["0","5"]})");
  EXPECT_EQ(call({"space", "range", "--file", "-"}, "{nope").payload["error"], "ParseError");
}

TEST(CliClassTest, Verbs) {
  EXPECT_EQ(call({"class", "ran", "--file", data("four_point_class.json")}).text(), R"({"range":["0","1","2","3"]})");
  auto p = call({"class", "poset", "--file", data("four_point_class.json")});
  EXPECT_EQ(p.text(),
            R"({"ground":["0","1","2","3"],"pairs":[["0","1"],["0","2"],["0","3"],["1","3"],["2","3"]],"total":false})");
  EXPECT_EQ(call({"class", "check", "--file", data("four_point_class.json"), "--spec",
                  R"({"kind":"piecewise_linear","points":[["0","0"],["1","2"],["2","1"],["3","3"]]})"})
                .exit_code,
            0);
  auto no = call({"class", "check", "--file", data("four_point_class.json"), "--spec",
                  R"({"kind":"tabulated","table":[["0","0"],["1","2"],["2","1"],["3","1"]]})"});
  EXPECT_EQ(no.exit_code, 1);
  EXPECT_EQ(no.payload["order_witness"]["args"].dump(), R"(["1","3"])");

  auto ce = call({"class", "counterexample", "--file", data("four_point_class.json")});
  EXPECT_EQ(ce.exit_code, 0);
  EXPECT_EQ(ce.payload["function"]["table"].dump(), R"([["0","0"],["1","2"],["2","1"],["3","2"]])");
  auto chain = call({"class", "counterexample", "--file", data("chain.json")});
  EXPECT_EQ(chain.exit_code, 2);
  EXPECT_EQ(chain.payload["error"], "TotallyOrdered");

  auto ext = call({"class", "extend", "--file", data("chain.json"), "--spec",
                   R"({"kind":"tabulated","table":[["0","0"],["1","1"],["2","2"]]})"});
  EXPECT_EQ(ext.text(), R"({"kind":"step","below":"1","steps":[["1","1"],["2","2"]]})");
  EXPECT_EQ(call({"class", "extend", "--file", data("four_point_class.json"), "--spec", R"({"kind":"canonical"})"})
                .payload["error"],
            "NotTotallyOrdered");
  EXPECT_EQ(call({"class", "compare", "--file", data("four_point_compare.json")}).text(),
            R"({"same_range":true,"same_order":true})");
}

TEST(CliExamplesTest, ReproduceNamesEachFixture) {
  auto r = call({"examples", "reproduce"});
  ASSERT_TRUE(r.payload["fixtures"].is_array());
  EXPECT_GT(r.payload["fixtures"].size(), 25U);
  // The sawtooth breaks the Euclid triplet condition at (1, 3); every other
  // worked example reproduces.
  EXPECT_EQ(r.payload["failed"].dump(), R"(["sawtooth.euclid_grid"])");
  EXPECT_EQ(r.exit_code, 1);
}

TEST(CliDeterminismTest, SameInputSameBytes) {
  std::vector<std::string> args{"fn", "classify", "--file", data("sawtooth.json"), "--p", "3", "--window", "-2:2"};
  auto first = call(args).text();
  for (int i = 0; i < 3; ++i) EXPECT_EQ(call(args).text(), first);
}
