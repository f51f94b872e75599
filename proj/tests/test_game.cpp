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

#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace infoagg;

TEST_CASE("four-sender example game loads and matches the builder") {
  const Game file =
      std::get<Game>(parse_game(read_file(ts::data_path("g1.json"))));
  const Game built = ts::g1();

  REQUIRE(file.num_states() == 2);
  REQUIRE(file.num_senders() == 4);
  CHECK(file.states() == std::vector<std::string>{"w1", "w2"});
  CHECK(file.prior() == built.prior());
  for (int player = kReceiver; player < 4; ++player)
    for (int w = 0; w < 2; ++w) {
      CHECK(file.utility(player, w).act0 == built.utility(player, w).act0);
      CHECK(file.utility(player, w).act1 == built.utility(player, w).act1);
    }
}

TEST_CASE("state lookup") {
  const Game g = ts::g1();
  CHECK(g.state_index("w1") == 0);
  CHECK(g.state_index("w2") == 1);
  CHECK(g.state_index("w3") == -1);
}

TEST_CASE("preferences of the four-sender example") {
  const Game g = ts::g1();
  // Sender 1 always prefers action 0; senders 2 and 3 prefer action 1 at
  // w1 and action 0 at w2; sender 4 always prefers action 1.
  CHECK(g.preference(0, 0) == Pref::kZero);
  CHECK(g.preference(0, 1) == Pref::kZero);
  CHECK(g.preference(1, 0) == Pref::kOne);
  CHECK(g.preference(1, 1) == Pref::kZero);
  CHECK(g.preference(2, 0) == Pref::kOne);
  CHECK(g.preference(2, 1) == Pref::kZero);
  CHECK(g.preference(3, 0) == Pref::kOne);
  CHECK(g.preference(3, 1) == Pref::kOne);
}

TEST_CASE("indifference arises from equal utilities") {
  const Game g = ts::g3_decisive();
  CHECK(g.preference(0, 0) == Pref::kZero);
  CHECK(g.preference(0, 1) == Pref::kOne);
  CHECK(g.preference(1, 0) == Pref::kIndifferent);
  CHECK(g.preference(2, 1) == Pref::kIndifferent);
}

TEST_CASE("prior must be positive and sum to one") {
  const std::vector<UtilityPair> recv{ts::up(0, 0), ts::up(0, 0)};
  const std::vector<std::vector<UtilityPair>> send{
      {ts::up(0, 0), ts::up(0, 0)}};
  CHECK_THROWS_WITH(
      Game({"a", "b"}, {Rational(1, 2), Rational(1, 3)}, recv, send),
      Catch::Matchers::ContainsSubstring("prior sums to 5/6"));
  CHECK_THROWS_AS(
      Game({"a", "b"}, {Rational(0), Rational(1)}, recv, send), ValueError);
  CHECK_THROWS_AS(
      Game({"a", "b"}, {Rational(-1, 2), Rational(3, 2)}, recv, send),
      ValueError);
}

TEST_CASE("game shape is validated") {
  const std::vector<UtilityPair> recv{ts::up(0, 0), ts::up(0, 0)};
  const std::vector<std::vector<UtilityPair>> send{
      {ts::up(0, 0), ts::up(0, 0)}};
  // Duplicate state names.
  CHECK_THROWS_AS(
      Game({"a", "a"}, {Rational(1, 2), Rational(1, 2)}, recv, send),
      ValueError);
  // Receiver table covering only one state.
  CHECK_THROWS_AS(Game({"a", "b"}, {Rational(1, 2), Rational(1, 2)},
                       {ts::up(0, 0)}, send),
                  ValueError);
  // Sender table covering three states.
  CHECK_THROWS_AS(
      Game({"a", "b"}, {Rational(1, 2), Rational(1, 2)}, recv,
           {{ts::up(0, 0), ts::up(0, 0), ts::up(0, 0)}}),
      ValueError);
  // No senders at all.
  CHECK_THROWS_AS(Game({"a", "b"}, {Rational(1, 2), Rational(1, 2)}, recv,
                       {}),
                  ValueError);
}

TEST_CASE("outcome validation") {
  const Game g = ts::g1();
  Outcome ok;
  ok.o_star = {Rational(1, 2), Rational(1, 2)};
  CHECK_NOTHROW(validate_outcome(g, ok));

  Outcome short_one;
  short_one.o_star = {Rational(1, 2)};
  CHECK_THROWS_AS(validate_outcome(g, short_one), ValueError);

  Outcome out_of_range;
  out_of_range.o_star = {Rational(1, 2), Rational(3, 2)};
  CHECK_THROWS_AS(validate_outcome(g, out_of_range), ValueError);

  Outcome negative;
  negative.o_star = {Rational(-1, 2), Rational(1, 2)};
  CHECK_THROWS_AS(validate_outcome(g, negative), ValueError);
}

TEST_CASE("receiver baselines of the four-sender example") {
  const Game g = ts::g1();
  CHECK(receiver_baseline(g, 0) == Rational(1, 2));
  CHECK(receiver_baseline(g, 1) == Rational(1, 2));
}

TEST_CASE("expected utility of pinned outcomes") {
  const Game g = ts::g1();
  Outcome honest_best;
  honest_best.o_star = {Rational(1), Rational(0)};
  CHECK(expected_utility(g, kReceiver, honest_best) == 1);

  Outcome half;
  half.o_star = {Rational(1, 2), Rational(1, 2)};
  CHECK(expected_utility(g, kReceiver, half) == Rational(1, 2));
  // Sender 1 always prefers action 0, so it values the constant-half
  // outcome at q * u0 + (1-q) * u1 = 1/2 in both states.
  CHECK(expected_utility(g, 0, half) == Rational(1, 2));
  // Sender 4 always prefers action 1 and gets the complement.
  CHECK(expected_utility(g, 3, half) == Rational(1, 2));
}

TEST_CASE("expected utility is affine in the outcome") {
  ts::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + rng.below(4);
    const int m = 2 + rng.below(2);
    const Game g = ts::random_game(rng, n, m);
    const Outcome a = ts::random_outcome(rng, m);
    const Outcome b = ts::random_outcome(rng, m);
    const Rational alpha(rng.below(65), 64);
    Outcome mix;
    for (int w = 0; w < m; ++w)
      mix.o_star.push_back(alpha * a.o_star[w] +
                           (1 - alpha) * b.o_star[w]);
    for (int player = kReceiver; player < n; ++player) {
      const Rational lhs = expected_utility(g, player, mix);
      const Rational rhs = alpha * expected_utility(g, player, a) +
                           (1 - alpha) * expected_utility(g, player, b);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("expected utility rejects unknown players") {
  const Game g = ts::g1();
  Outcome half;
  half.o_star = {Rational(1, 2), Rational(1, 2)};
  CHECK_THROWS_AS(expected_utility(g, 4, half), ValueError);
  CHECK_THROWS_AS(expected_utility(g, -2, half), ValueError);
}
