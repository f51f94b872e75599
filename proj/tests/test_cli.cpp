// Copyright 2026 The infoagg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// End-to-end tests against the installed binary: every process here is
// spawned through the shell, so argument handling, stream wiring and exit
// codes are exercised exactly as a user would hit them.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace infoagg;
using Catch::Matchers::ContainsSubstring;

namespace {

Json parse_line(const ts::CliResult& r) {
  REQUIRE_FALSE(r.out.empty());
  REQUIRE(r.out.back() == '\n');
  return Json::parse(r.out);
}

// Scratch input scoped to one section; deleted on the way out.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path = "/tmp/infoagg_cli_case." +
           std::to_string(static_cast<long long>(getpid())) + "." +
           std::to_string(counter++) + ".json";
    std::ofstream(path, std::ios::binary) << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

std::string majority_key(int bits) {
  std::string key;
  for (int i = 0; i < 5; ++i) {
    if (i) key += ",";
    key += std::to_string((bits >> (4 - i)) & 1);
  }
  return key;
}

int majority_ones(int bits) {
  int ones = 0;
  for (int i = 0; i < 5; ++i) ones += (bits >> i) & 1;
  return ones;
}

// Outcome files for the majority game: first-best play or its inversion.
std::string majority_outcome_text(bool flipped) {
  std::string text = "{\"o_star\":{";
  for (int bits = 0; bits < 32; ++bits) {
    if (bits) text += ",";
    const bool action0 = majority_ones(bits) <= 2;
    text += "\"" + majority_key(bits) + "\":\"" +
            ((action0 != flipped) ? "1" : "0") + "\"";
  }
  return text + "}}";
}

}  // namespace

TEST_CASE("order command pins the deviation order of the sample game") {
  const std::string g1 = ts::data_path("g1.json");

  SECTION("weak mode, pairs") {
    const ts::CliResult r =
        ts::run_cli({"order", g1, "--k", "2", "--mode", "weak"});
    CHECK(r.exit_code == 0);
    CHECK(r.err.empty());
    CHECK(r.out ==
          "{\"command\":\"order\",\"inputs\":{\"game\":"
          "\"fnv1a64:7e5c3ff62519cd05\"},\"k\":2,\"mode\":\"weak\","
          "\"nodes\":[\"w1\",\"w2\"],\"edges\":[[\"w1\",\"w2\"]],"
          "\"reach\":[[true,true],[false,true]],\"witnesses\":"
          "{\"w1->w2\":{\"type\":\"chain\",\"profile\":"
          "[\"w1\",\"w1\",\"w2\",\"w2\"]}}}\n");

    SECTION("reruns are byte-identical and weak is the default mode") {
      CHECK(ts::run_cli({"order", g1, "--k", "2", "--mode", "weak"}).out ==
            r.out);
      CHECK(ts::run_cli({"order", g1, "--k", "2"}).out == r.out);
    }
  }

  SECTION("strong mode recruits helpers and orients both pairs") {
    const ts::CliResult r =
        ts::run_cli({"order", g1, "--k", "2", "--mode", "strong"});
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "{\"command\":\"order\",\"inputs\":{\"game\":"
          "\"fnv1a64:7e5c3ff62519cd05\"},\"k\":2,\"mode\":\"strong\","
          "\"nodes\":[\"w1\",\"w2\"],\"edges\":[[\"w1\",\"w2\"],"
          "[\"w2\",\"w1\"]],\"reach\":[[true,true],[true,true]],"
          "\"witnesses\":{\"w1->w2\":{\"type\":\"chain\",\"profile\":"
          "[\"w1\",\"w2\",\"w2\",\"w1\"]},\"w2->w1\":{\"type\":\"chain\","
          "\"profile\":[\"w2\",\"w1\",\"w2\",\"w1\"]}}}\n");
  }

  SECTION("lone deviators cannot move this game") {
    const ts::CliResult r =
        ts::run_cli({"order", g1, "--k", "1", "--mode", "weak"});
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "{\"command\":\"order\",\"inputs\":{\"game\":"
          "\"fnv1a64:7e5c3ff62519cd05\"},\"k\":1,\"mode\":\"weak\","
          "\"nodes\":[\"w1\",\"w2\"],\"edges\":[],"
          "\"reach\":[[true,false],[false,true]],\"witnesses\":{}}\n");
  }
}

TEST_CASE("order command handles the majority game") {
  const std::string g2 = ts::data_path("g2.json");

  SECTION("singleton coalitions give the full ones-shedding order") {
    const ts::CliResult r =
        ts::run_cli({"order", g2, "--k", "1", "--mode", "weak"});
    REQUIRE(r.exit_code == 0);
    const Json j = parse_line(r);
    CHECK(j["inputs"]["game"] == "fnv1a64:41a0cc11680bb0be");
    REQUIRE(j["nodes"].size() == 32);
    CHECK(j["nodes"][3] == "0,0,0,1,1");
    CHECK(j["edges"].size() == 160);
    REQUIRE(j["witnesses"].size() == 160);
    CHECK(j["witnesses"]["0,0,0,0,1->0,0,0,0,0"] ==
          Json{{"type", "direct"}});
    const Json& chain = j["witnesses"]["0,0,0,1,1->0,0,0,0,0"];
    CHECK(chain["type"] == "chain");
    CHECK(chain["profile"].size() == 5);
  }

  SECTION("a non-separable request reports the witness and exits 2") {
    const ts::CliResult r =
        ts::run_cli({"order", g2, "--k", "3", "--mode", "weak"});
    REQUIRE(r.exit_code == 2);
    const Json j = parse_line(r);
    CHECK(j["error"] == "not-separable");
    CHECK(j["witness"] ==
          Json{{"sender", 1},
               {"profile", Json::array({"0", "0", "0", "1", "1"})},
               {"coalition_a", Json::array({1, 2, 3})},
               {"coalition_b", Json::array({1, 4, 5})},
               {"pref_a", "zero"},
               {"pref_b", "one"}});
  }
}

TEST_CASE("check command classifies the sample outcomes") {
  const std::string g1 = ts::data_path("g1.json");

  SECTION("the constant half outcome is feasible") {
    const ts::CliResult r =
        ts::run_cli({"check", g1, ts::data_path("g1_outcome_half.json"),
                     "--k", "2", "--mode", "weak"});
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "{\"command\":\"check\",\"inputs\":{\"game\":"
          "\"fnv1a64:7e5c3ff62519cd05\",\"outcome\":"
          "\"fnv1a64:a9f8e2f278225b9a\"},\"k\":2,\"mode\":\"weak\","
          "\"feasible\":true,\"violated_order\":[],"
          "\"violated_receiver\":[]}\n");
  }

  SECTION("an order violation is itemized") {
    const ts::CliResult r =
        ts::run_cli({"check", g1, ts::data_path("g1_outcome_order_bad.json"),
                     "--k", "2", "--mode", "weak"});
    REQUIRE(r.exit_code == 1);
    const Json j = parse_line(r);
    CHECK(j["feasible"] == false);
    CHECK(j["violated_order"] ==
          Json::array({Json{{"from", "w1"},
                            {"to", "w2"},
                            {"o_from", "7/10"},
                            {"o_to", "1/5"}}}));
    CHECK(j["violated_receiver"] == Json::array());
  }

  SECTION("receiver obedience violations list both actions") {
    const ts::CliResult r = ts::run_cli(
        {"check", g1, ts::data_path("g1_outcome_receiver_bad.json"), "--k",
         "2", "--mode", "weak"});
    REQUIRE(r.exit_code == 1);
    const Json j = parse_line(r);
    CHECK(j["feasible"] == false);
    CHECK(j["violated_order"] == Json::array());
    CHECK(j["violated_receiver"] ==
          Json::array({Json{{"action", 0},
                            {"expected", "1/4"},
                            {"baseline", "1/2"}},
                       Json{{"action", 1},
                            {"expected", "1/4"},
                            {"baseline", "1/2"}}}));
  }

  SECTION("the majority outcome is feasible for the majority game") {
    const TempFile outcome(majority_outcome_text(false));
    const ts::CliResult r =
        ts::run_cli({"check", ts::data_path("g2.json"), outcome.path,
                     "--k", "1", "--mode", "weak"});
    CHECK(r.exit_code == 0);
    const Json j = parse_line(r);
    CHECK(j["feasible"] == true);
  }
}

TEST_CASE("optimize command solves the sample game") {
  const std::string g1 = ts::data_path("g1.json");

  SECTION("receiver value and outcome per coalition size") {
    const ts::CliResult pairs = ts::run_cli(
        {"optimize", g1, "--k", "2", "--mode", "weak", "--objective",
         "receiver"});
    REQUIRE(pairs.exit_code == 0);
    const Json j = parse_line(pairs);
    CHECK(j["objective"] == "receiver");
    CHECK(j["value"] == "1/2");
    CHECK(j["outcome"] == Json{{"w1", "0"}, {"w2", "0"}});

    const ts::CliResult single = ts::run_cli(
        {"optimize", g1, "--k", "1", "--mode", "weak", "--objective",
         "receiver"});
    REQUIRE(single.exit_code == 0);
    const Json j1 = parse_line(single);
    CHECK(j1["value"] == "1");
    CHECK(j1["outcome"] == Json{{"w1", "1"}, {"w2", "0"}});
  }

  SECTION("sender and welfare objectives") {
    const ts::CliResult s1 = ts::run_cli(
        {"optimize", g1, "--k", "2", "--mode", "weak", "--objective",
         "sender:1"});
    REQUIRE(s1.exit_code == 0);
    const Json js = parse_line(s1);
    CHECK(js["value"] == "1");
    CHECK(js["outcome"] == Json{{"w1", "1"}, {"w2", "1"}});

    const ts::CliResult wf = ts::run_cli(
        {"optimize", g1, "--k", "2", "--mode", "weak", "--objective",
         "welfare"});
    REQUIRE(wf.exit_code == 0);
    const Json jw = parse_line(wf);
    CHECK(jw["value"] == "5/2");
    CHECK(jw["outcome"] == Json{{"w1", "0"}, {"w2", "0"}});

    const ts::CliResult weighted = ts::run_cli(
        {"optimize", g1, "--k", "2", "--mode", "weak", "--objective",
         "welfare:2,0,0,0,0"});
    REQUIRE(weighted.exit_code == 0);
    const Json jt = parse_line(weighted);
    CHECK(jt["value"] == "1");
    CHECK(jt["outcome"] == Json{{"w1", "0"}, {"w2", "0"}});
  }

  SECTION("objective strings are validated") {
    auto fails_with = [&](const std::string& objective,
                          const std::string& message) {
      const ts::CliResult r = ts::run_cli(
          {"optimize", g1, "--k", "2", "--objective", objective});
      CHECK(r.exit_code == 2);
      CHECK_THAT(r.err, ContainsSubstring(message));
    };
    fails_with("sender:0", "must be a positive integer");
    fails_with("sender:5", "objective sender index out of range");
    fails_with("welfare:1,1", "receiver and every sender");
    fails_with("karma", "unknown objective");
  }

  SECTION("extended games are rejected") {
    const ts::CliResult r = ts::run_cli(
        {"optimize", ts::data_path("g2.json"), "--k", "1"});
    CHECK(r.exit_code == 2);
    CHECK_THAT(r.err,
               ContainsSubstring("optimize expects a base-model game file"));
  }
}

TEST_CASE("mechanism command reports recommendations and bounding sets") {
  const std::string g1 = ts::data_path("g1.json");
  const std::string skew = ts::data_path("g1_outcome_receiver_bad.json");

  SECTION("a split profile lands on the midpoint") {
    const ts::CliResult r = ts::run_cli(
        {"mechanism", g1, skew, "--k", "2", "--mode", "weak", "--messages",
         "w1,w1,w2,w2"});
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "{\"command\":\"mechanism\",\"inputs\":{\"game\":"
          "\"fnv1a64:7e5c3ff62519cd05\",\"outcome\":"
          "\"fnv1a64:ebc47964ecb776d6\"},\"k\":2,\"mode\":\"weak\","
          "\"messages\":[\"w1\",\"w1\",\"w2\",\"w2\"],\"q\":\"9/20\","
          "\"upper_set\":[\"w2\"],\"lower_set\":[\"w1\"]}\n");
  }

  SECTION("unanimous messages read the outcome directly") {
    const ts::CliResult r = ts::run_cli(
        {"mechanism", g1, skew, "--k", "2", "--mode", "weak", "--messages",
         "w2,w2,w2,w2"});
    REQUIRE(r.exit_code == 0);
    const Json j = parse_line(r);
    CHECK(j["q"] == "7/10");
    CHECK_FALSE(j.contains("upper_set"));
    CHECK_FALSE(j.contains("lower_set"));
  }

  SECTION("an unbounded-above profile commits to action 0") {
    const ts::CliResult r = ts::run_cli(
        {"mechanism", g1, skew, "--k", "2", "--mode", "weak", "--messages",
         "w2,w2,w2,w1"});
    REQUIRE(r.exit_code == 0);
    const Json j = parse_line(r);
    CHECK(j["q"] == "1");
    CHECK(j["upper_set"] == Json::array());
    CHECK(j["lower_set"] == Json::array({"w2"}));
  }

  SECTION("strong mode pads the same profile into a midpoint") {
    const ts::CliResult r = ts::run_cli(
        {"mechanism", g1, ts::data_path("g1_outcome_half.json"), "--k", "2",
         "--mode", "strong", "--messages", "w2,w2,w2,w1"});
    REQUIRE(r.exit_code == 0);
    const Json j = parse_line(r);
    CHECK(j["q"] == "1/2");
    CHECK(j["upper_set"] == Json::array({"w2"}));
    CHECK(j["lower_set"] == Json::array({"w2"}));
  }

  SECTION("construction is refused when the outcome breaks the order") {
    const ts::CliResult r = ts::run_cli(
        {"mechanism", g1, skew, "--k", "2", "--mode", "strong", "--messages",
         "w1,w1,w1,w1"});
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());
    CHECK(r.err ==
          "error: outcome violates the deviation order: o*(w2) = 7/10 > "
          "o*(w1) = 1/5\n");
  }

  SECTION("the embedded twin gives the same midpoint") {
    const TempFile outcome(
        "{\"o_star\":{\"w1,w1,w1,w1\":\"1/5\",\"w2,w2,w2,w2\":\"7/10\"}}");
    const ts::CliResult r = ts::run_cli(
        {"mechanism", ts::data_path("g1_embedded.json"), outcome.path,
         "--k", "2", "--mode", "weak", "--messages", "w1,w1,w2,w2"});
    REQUIRE(r.exit_code == 0);
    const Json j = parse_line(r);
    CHECK(j["inputs"]["game"] == "fnv1a64:2a9280e23bcb6225");
    CHECK(j["q"] == "9/20");
    CHECK(j["upper_set"] == Json::array({"w2,w2,w2,w2"}));
    CHECK(j["lower_set"] == Json::array({"w1,w1,w1,w1"}));
  }

  SECTION("message lists are validated") {
    const ts::CliResult count = ts::run_cli(
        {"mechanism", g1, skew, "--k", "2", "--messages", "w1,w2"});
    CHECK(count.exit_code == 2);
    CHECK_THAT(count.err,
               ContainsSubstring("expected one message per sender"));

    const ts::CliResult name = ts::run_cli(
        {"mechanism", g1, skew, "--k", "2", "--messages", "w1,w1,w1,w3"});
    CHECK(name.exit_code == 2);
    CHECK_THAT(name.err,
               ContainsSubstring("unknown state in messages: w3"));
  }
}

TEST_CASE("verify command searches receiver strategies and coalitions") {
  const std::string g1 = ts::data_path("g1.json");

  SECTION("the half outcome passes in both modes") {
    const ts::CliResult weak = ts::run_cli(
        {"verify", g1, ts::data_path("g1_outcome_half.json"), "--k", "2",
         "--mode", "weak"});
    CHECK(weak.exit_code == 0);
    CHECK(weak.out ==
          "{\"command\":\"verify\",\"inputs\":{\"game\":"
          "\"fnv1a64:7e5c3ff62519cd05\",\"outcome\":"
          "\"fnv1a64:a9f8e2f278225b9a\"},\"k\":2,\"mode\":\"weak\","
          "\"passed\":true,\"stats\":{\"coalitions\":10,"
          "\"deviations\":112}}\n");

    const ts::CliResult strong = ts::run_cli(
        {"verify", g1, ts::data_path("g1_outcome_half.json"), "--k", "2",
         "--mode", "strong"});
    CHECK(strong.exit_code == 0);
    const Json j = parse_line(strong);
    CHECK(j["passed"] == true);
    CHECK(j["stats"] == Json{{"coalitions", 10}, {"deviations", 112}});
  }

  SECTION("a receiver violation fails the run but reports coalitions") {
    const ts::CliResult r = ts::run_cli(
        {"verify", g1, ts::data_path("g1_outcome_receiver_bad.json"), "--k",
         "2", "--mode", "weak"});
    REQUIRE(r.exit_code == 1);
    const Json j = parse_line(r);
    CHECK(j["passed"] == false);
    CHECK(j["receiver_violation"] ==
          Json{{"strategy", "always-1"}, {"gain", "1/4"}});
    CHECK_FALSE(j.contains("coalition_violation"));
    CHECK(j["stats"] == Json{{"coalitions", 10}, {"deviations", 112}});
  }

  SECTION("an unverifiable mediator is an input error, not a verdict") {
    const ts::CliResult weak = ts::run_cli(
        {"verify", g1, ts::data_path("g1_outcome_order_bad.json"), "--k",
         "2", "--mode", "weak"});
    CHECK(weak.exit_code == 2);
    CHECK(weak.err ==
          "error: mediator midpoint order violated; outcome is not "
          "monotone along the deviation order\n");

    const ts::CliResult strong = ts::run_cli(
        {"verify", g1, ts::data_path("g1_outcome_receiver_bad.json"), "--k",
         "2", "--mode", "strong"});
    CHECK(strong.exit_code == 2);
    CHECK_THAT(strong.err,
               ContainsSubstring("mediator midpoint order violated"));
  }

  SECTION("the enumeration cap is enforced") {
    const ts::CliResult r = ts::run_cli(
        {"verify", g1, ts::data_path("g1_outcome_half.json"), "--k", "2",
         "--mode", "weak", "--caps", "100"});
    CHECK(r.exit_code == 2);
    CHECK(r.err ==
          "error: coalition deviation search needs 112 steps, "
          "cap is 100\n");
  }

  SECTION("the majority mechanism verifies in both modes") {
    const TempFile outcome(majority_outcome_text(false));
    for (const std::string mode : {"weak", "strong"}) {
      const ts::CliResult r =
          ts::run_cli({"verify", ts::data_path("g2.json"), outcome.path,
                       "--k", "1", "--mode", mode});
      CHECK(r.exit_code == 0);
      const Json j = parse_line(r);
      CHECK(j["passed"] == true);
      CHECK(j["stats"] == Json{{"coalitions", 5}, {"deviations", 20}});
    }
  }

  SECTION("the inverted majority outcome is torn apart") {
    const TempFile outcome(majority_outcome_text(true));
    const ts::CliResult r =
        ts::run_cli({"verify", ts::data_path("g2.json"), outcome.path,
                     "--k", "1", "--mode", "weak"});
    REQUIRE(r.exit_code == 1);
    const Json j = parse_line(r);
    CHECK(j["passed"] == false);
    CHECK(j["receiver_violation"] ==
          Json{{"strategy", "always-1"}, {"gain", "1/2"}});
    REQUIRE(j.contains("coalition_violation"));
    const Json& v = j["coalition_violation"];
    CHECK(v["members"] == Json::array({1}));
    CHECK(v["deviation"] ==
          Json::array({Json{{"member", 1},
                            {"reports", Json{{"0", "0"}, {"1", "0"}}}}}));
    CHECK(v["gains"] == Json::array({"3/16"}));
    CHECK(j["stats"] == Json{{"coalitions", 1}, {"deviations", 1}});
  }
}

TEST_CASE("simulate command is deterministic per seed") {
  const std::string g1 = ts::data_path("g1.json");
  const std::string half = ts::data_path("g1_outcome_half.json");

  SECTION("same seed, same bytes; new seed, new draws") {
    const std::vector<std::string> args = {
        "simulate", g1, half, "--k", "2", "--mode", "weak",
        "--rounds", "10000", "--seed", "42"};
    const ts::CliResult a = ts::run_cli(args);
    const ts::CliResult b = ts::run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);

    const Json j = parse_line(a);
    CHECK(j["rounds"] == 10000);
    CHECK(j["seed"] == 42);
    const long long w1 = j["counts"]["w1"]["rounds"].get<long long>();
    const long long w2 = j["counts"]["w2"]["rounds"].get<long long>();
    CHECK(w1 + w2 == 10000);
    CHECK(w1 > 4000);  // the prior is an even split; 3-sigma is ~150
    CHECK(w2 > 4000);

    const ts::CliResult other = ts::run_cli(
        {"simulate", g1, half, "--k", "2", "--mode", "weak", "--rounds",
         "10000", "--seed", "43"});
    CHECK(parse_line(other)["counts"] != j["counts"]);
  }

  SECTION("honest majority play reproduces the outcome exactly") {
    const TempFile outcome(majority_outcome_text(false));
    const ts::CliResult r = ts::run_cli(
        {"simulate", ts::data_path("g2.json"), outcome.path, "--k", "1",
         "--mode", "weak", "--rounds", "2000", "--seed", "7"});
    REQUIRE(r.exit_code == 0);
    const Json j = parse_line(r);
    long long total = 0;
    for (int bits = 0; bits < 32; ++bits) {
      const std::string key = majority_key(bits);
      const long long rounds = j["counts"][key]["rounds"].get<long long>();
      total += rounds;
      const std::string expected = majority_ones(bits) <= 2 ? "1" : "0";
      if (rounds > 0) CHECK(j["frequencies"][key] == expected);
    }
    CHECK(total == 2000);
  }

  SECTION("simulation refuses an infeasible outcome") {
    const ts::CliResult r = ts::run_cli(
        {"simulate", g1, ts::data_path("g1_outcome_order_bad.json"), "--k",
         "2", "--mode", "weak"});
    CHECK(r.exit_code == 2);
    CHECK_THAT(r.err,
               ContainsSubstring("outcome violates the deviation order"));
  }
}

TEST_CASE("separability command classifies games") {
  SECTION("the majority game splits at three, not at one") {
    const ts::CliResult bad = ts::run_cli(
        {"separability", ts::data_path("g2.json"), "--k", "3"});
    CHECK(bad.exit_code == 1);
    CHECK(bad.out ==
          "{\"command\":\"separability\",\"inputs\":{\"game\":"
          "\"fnv1a64:41a0cc11680bb0be\"},\"k\":3,\"separable\":false,"
          "\"witness\":{\"sender\":1,\"profile\":[\"0\",\"0\",\"0\",\"1\","
          "\"1\"],\"coalition_a\":[1,2,3],\"coalition_b\":[1,4,5],"
          "\"pref_a\":\"zero\",\"pref_b\":\"one\"}}\n");

    const ts::CliResult ok = ts::run_cli(
        {"separability", ts::data_path("g2.json"), "--k", "1"});
    CHECK(ok.exit_code == 0);
    const Json j = parse_line(ok);
    CHECK(j["separable"] == true);
    CHECK_FALSE(j.contains("witness"));
  }

  SECTION("embedded and base games are always separable") {
    const ts::CliResult embedded = ts::run_cli(
        {"separability", ts::data_path("g1_embedded.json"), "--k", "4"});
    CHECK(embedded.exit_code == 0);
    CHECK(parse_line(embedded)["separable"] == true);

    const ts::CliResult base = ts::run_cli(
        {"separability", ts::data_path("g1.json"), "--k", "4"});
    CHECK(base.exit_code == 0);
    CHECK(parse_line(base)["separable"] == true);
  }
}

TEST_CASE("usage and input errors land on stderr with exit code 2") {
  const std::string g1 = ts::data_path("g1.json");

  SECTION("missing game file") {
    const ts::CliResult r =
        ts::run_cli({"order", "/nonexistent/nope.json", "--k", "1"});
    CHECK(r.exit_code == 2);
    CHECK(r.err == "error: cannot read file: /nonexistent/nope.json\n");
  }

  SECTION("a game whose prior does not normalize") {
    const TempFile game(
        "{\"model\":\"base\",\"states\":[\"w1\",\"w2\"],"
        "\"prior\":[\"1/2\",\"1/3\"],\"senders\":1,"
        "\"receiver_utility\":{\"w1\":[\"1\",\"0\"],\"w2\":[\"0\",\"1\"]},"
        "\"sender_utility\":[{\"w1\":[\"1\",\"0\"],\"w2\":[\"0\",\"1\"]}]}");
    const ts::CliResult r = ts::run_cli({"order", game.path, "--k", "1"});
    CHECK(r.exit_code == 2);
    CHECK_THAT(r.err, ContainsSubstring("prior sums to 5/6"));
  }

  SECTION("unknown mode") {
    const ts::CliResult r =
        ts::run_cli({"order", g1, "--k", "2", "--mode", "resilient"});
    CHECK(r.exit_code == 2);
    CHECK_THAT(r.err, ContainsSubstring("unknown mode \"resilient\""));
  }

  SECTION("coalition size out of range") {
    const ts::CliResult low = ts::run_cli({"order", g1, "--k", "0"});
    CHECK(low.exit_code == 2);
    CHECK_THAT(low.err, ContainsSubstring("k must lie in [1, 4], got 0"));
    const ts::CliResult high = ts::run_cli({"order", g1, "--k", "9"});
    CHECK(high.exit_code == 2);
    CHECK_THAT(high.err, ContainsSubstring("k must lie in [1, 4], got 9"));
  }

  SECTION("broken outcome files") {
    auto check_err = [&](const std::string& text, const std::string& msg) {
      const TempFile outcome(text);
      const ts::CliResult r =
          ts::run_cli({"check", g1, outcome.path, "--k", "2"});
      CHECK(r.exit_code == 2);
      CHECK_THAT(r.err, ContainsSubstring(msg));
    };
    check_err("{", "invalid JSON");
    check_err("{\"o_star\":{\"w1\":\"1/2\"}}",
              "outcome does not assign a value to every state");
    check_err("{\"o_star\":{\"w1\":\"1/2\",\"w9\":\"1/2\"}}",
              "outcome mentions unknown state w9");
    check_err("{\"o_star\":{\"w1\":\"3/2\",\"w2\":\"1/2\"}}",
              "outside [0,1]");
  }

  SECTION("command line misuse") {
    const ts::CliResult unknown = ts::run_cli({"frobnicate", g1});
    CHECK(unknown.exit_code == 2);
    CHECK_THAT(unknown.err, ContainsSubstring("error:"));

    const ts::CliResult none = ts::run_cli({});
    CHECK(none.exit_code == 2);
    CHECK_THAT(none.err, ContainsSubstring("error:"));

    const ts::CliResult missing_k = ts::run_cli({"order", g1});
    CHECK(missing_k.exit_code == 2);
    CHECK_THAT(missing_k.err, ContainsSubstring("error:"));
  }

  SECTION("--help prints the command list and exits cleanly") {
    const ts::CliResult r = ts::run_cli({"--help"});
    CHECK(r.exit_code == 0);
    CHECK_THAT(r.out, ContainsSubstring("order"));
    CHECK_THAT(r.out, ContainsSubstring("verify"));
    CHECK_THAT(r.out, ContainsSubstring("simulate"));
  }
}
