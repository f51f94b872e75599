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

#ifndef INFOAGG_GAME_H_
#define INFOAGG_GAME_H_

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infoagg/rational.hpp"

namespace infoagg {

// The receiver picks one of two actions after seeing the mediator's
// recommendation; everything in the library is phrased in terms of the
// probability that action 0 ends up being played.
inline constexpr int kNumActions = 2;

// Player id for expected-utility queries; senders are 0-based indices.
inline constexpr int kReceiver = -1;

enum class Pref { kZero, kOne, kIndifferent };

inline const char* pref_name(Pref p) {
  switch (p) {
    case Pref::kZero: return "zero";
    case Pref::kOne: return "one";
    default: return "indifferent";
  }
}

// Payoff to one player in one state: `act0` if action 0 is taken, `act1` if
// action 1 is taken.
struct UtilityPair {
  Rational act0;
  Rational act1;

  Pref pref() const {
    if (act0 > act1) return Pref::kZero;
    if (act1 > act0) return Pref::kOne;
    return Pref::kIndifferent;
  }
};

// A finite-state aggregation game: every sender observes the realized state
// exactly and reports a state to the mediator.
class Game {
 public:
  Game(std::vector<std::string> states, std::vector<Rational> prior,
       std::vector<UtilityPair> receiver_u,
       std::vector<std::vector<UtilityPair>> sender_u)
      : states_(std::move(states)),
        prior_(std::move(prior)),
        receiver_u_(std::move(receiver_u)),
        sender_u_(std::move(sender_u)) {
    validate();
    cache_prefs();
  }

  int num_states() const { return static_cast<int>(states_.size()); }
  int num_senders() const { return static_cast<int>(sender_u_.size()); }

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<Rational>& prior() const { return prior_; }

  int state_index(std::string_view name) const {
    for (int i = 0; i < num_states(); ++i)
      if (states_[i] == name) return i;
    return -1;
  }

  // player: kReceiver or a 0-based sender index.
  const UtilityPair& utility(int player, int state) const {
    if (player < kReceiver || player >= num_senders())
      throw ValueError("unknown player index " + std::to_string(player));
    if (state < 0 || state >= num_states())
      throw ValueError("unknown state index " + std::to_string(state));
    return player == kReceiver ? receiver_u_[state] : sender_u_[player][state];
  }

  // Strict preference of sender i between the two actions in `state`.
  Pref preference(int sender, int state) const { return prefs_[sender][state]; }

 private:
  void validate() const {
    if (states_.empty()) throw ValueError("game needs at least one state");
    if (sender_u_.empty()) throw ValueError("game needs at least one sender");
    std::set<std::string_view> seen;
    for (const auto& s : states_) {
      if (s.empty()) throw ValueError("empty state name");
      if (!seen.insert(s).second) throw ValueError("duplicate state name: " + s);
    }
    if (prior_.size() != states_.size())
      throw ValueError("prior length does not match the state list");
    Rational total = 0;
    for (const auto& p : prior_) {
      if (p <= 0) throw ValueError("prior entry " + format_rational(p) + " is not positive");
      total += p;
    }
    if (total != 1)
      throw ValueError("prior sums to " + format_rational(total) + " != 1");
    if (receiver_u_.size() != states_.size())
      throw ValueError("receiver utility table does not cover every state");
    for (const auto& row : sender_u_)
      if (row.size() != states_.size())
        throw ValueError("sender utility table does not cover every state");
  }

  void cache_prefs() {
    prefs_.resize(sender_u_.size());
    for (std::size_t i = 0; i < sender_u_.size(); ++i) {
      prefs_[i].reserve(states_.size());
      for (const auto& u : sender_u_[i]) prefs_[i].push_back(u.pref());
    }
  }

  std::vector<std::string> states_;
  std::vector<Rational> prior_;
  std::vector<UtilityPair> receiver_u_;
  std::vector<std::vector<UtilityPair>> sender_u_;
  std::vector<std::vector<Pref>> prefs_;
};

// o_star[w]: probability that action 0 is played when the realized state is w.
struct Outcome {
  std::vector<Rational> o_star;
};

inline void validate_outcome(const Game& g, const Outcome& o) {
  if (static_cast<int>(o.o_star.size()) != g.num_states())
    throw ValueError("outcome does not assign a value to every state");
  for (const auto& v : o.o_star)
    if (!in_unit_interval(v))
      throw ValueError("outcome value " + format_rational(v) + " outside [0,1]");
}

// Expected payoff to the receiver of playing action `action` regardless of
// the recommendation.
inline Rational receiver_baseline(const Game& g, int action) {
  Rational total = 0;
  for (int w = 0; w < g.num_states(); ++w) {
    const UtilityPair& u = g.utility(kReceiver, w);
    total += g.prior()[w] * (action == 0 ? u.act0 : u.act1);
  }
  return total;
}

// Expected payoff to `player` when each state w resolves to action 0 with
// probability o_star[w].
inline Rational expected_utility(const Game& g, int player, const Outcome& o) {
  validate_outcome(g, o);
  Rational total = 0;
  for (int w = 0; w < g.num_states(); ++w) {
    const UtilityPair& u = g.utility(player, w);
    total += g.prior()[w] * (o.o_star[w] * u.act0 + (1 - o.o_star[w]) * u.act1);
  }
  return total;
}

}  // namespace infoagg

#endif  // INFOAGG_GAME_H_
