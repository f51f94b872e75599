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

#ifndef INFOAGG_MEDIATOR_H_
#define INFOAGG_MEDIATOR_H_

#include <string>
#include <utility>
#include <vector>

#include "infoagg/game.hpp"
#include "infoagg/optimize.hpp"
#include "infoagg/order.hpp"

namespace infoagg {

// A concrete mediator: maps any message profile to the probability of
// recommending action 0, reproducing o_star on honest (pure) input.
class MediatorSpec {
 public:
  // Rejects outcomes that are not monotone along the deviation order; the
  // receiver inequalities are deliberately not part of this check.
  static MediatorSpec create(const Game& g, int k, Mode mode, Outcome o) {
    MediatorSpec spec(g, k, mode, std::move(o));
    const FeasibilityReport report = check_outcome(g, spec.order_, spec.outcome_);
    if (!report.violated_order.empty()) {
      const OrderViolation& v = report.violated_order.front();
      throw ValueError("outcome violates the deviation order: o*(" +
                       g.states()[v.from] + ") = " + format_rational(v.value_from) +
                       " > o*(" + g.states()[v.to] + ") = " +
                       format_rational(v.value_to));
    }
    return spec;
  }

  // Skips the order check; evaluation still guards the midpoint rule. Meant
  // for verifying deliberately broken mechanisms.
  static MediatorSpec create_unchecked(const Game& g, int k, Mode mode, Outcome o) {
    return MediatorSpec(g, k, mode, std::move(o));
  }

  const Game& game() const { return game_; }
  int k() const { return k_; }
  Mode mode() const { return mode_; }
  const Outcome& outcome() const { return outcome_; }
  const OrderRelation& order() const { return order_; }

 private:
  MediatorSpec(const Game& g, int k, Mode mode, Outcome o)
      : game_(g), k_(k), mode_(mode), outcome_(std::move(o)),
        order_(build_order(g, k, mode)) {
    validate_outcome(game_, outcome_);
  }

  Game game_;
  int k_;
  Mode mode_;
  Outcome outcome_;
  OrderRelation order_;
};

namespace internal {

// States w such that `profile` relates to pure(w) in the given direction
// under one deviation step. `upper` looks for coalitions preferring action 0
// at w (the relation's pure-target case); `lower` for action 1. In strong
// mode an undersized differing set is padded with honest accomplices: any
// sender's preference counts while fewer than k senders actually deviated.
inline std::vector<int> pure_set(const MediatorSpec& spec,
                                 const MessageProfile& profile, bool upper) {
  const Game& g = spec.game();
  std::vector<int> result;
  for (int w = 0; w < g.num_states(); ++w) {
    int diff = 0;
    bool any = false, all = true;
    const Pref wanted = upper ? Pref::kZero : Pref::kOne;
    for (int i = 0; i < g.num_senders(); ++i) {
      if (profile[i] == w) continue;
      ++diff;
      if (g.preference(i, w) == wanted) any = true;
      else all = false;
    }
    if (diff > spec.k()) continue;
    if (spec.mode() == Mode::kStrong && diff < spec.k()) {
      for (int i = 0; i < g.num_senders() && !any; ++i)
        if (g.preference(i, w) == wanted) any = true;
    }
    if (spec.mode() == Mode::kResilient ? all : any) result.push_back(w);
  }
  return result;
}

}  // namespace internal

// Pure states one deviation step above `profile` (coalition would prefer the
// outcome at such a state to be recommended less often).
inline std::vector<int> upper_pure_set(const MediatorSpec& spec,
                                       const MessageProfile& profile) {
  check_profile(spec.game(), profile);
  if (pure_state(profile))
    throw ValueError("pure profiles resolve directly; no upper set");
  return internal::pure_set(spec, profile, /*upper=*/true);
}

inline std::vector<int> lower_pure_set(const MediatorSpec& spec,
                                       const MessageProfile& profile) {
  check_profile(spec.game(), profile);
  if (pure_state(profile))
    throw ValueError("pure profiles resolve directly; no lower set");
  return internal::pure_set(spec, profile, /*upper=*/false);
}

// Probability of recommending action 0 on an arbitrary message profile.
// Pure input reproduces o_star; otherwise the value is pinned between the
// nearest reachable pure states, defaulting to the action the absent side
// would have wanted.
inline Rational eval_mediator(const MediatorSpec& spec,
                              const MessageProfile& profile) {
  const Game& g = spec.game();
  check_profile(g, profile);
  if (auto w = pure_state(profile)) return spec.outcome().o_star[*w];

  const std::vector<int> upper = internal::pure_set(spec, profile, true);
  if (upper.empty()) return Rational(1);
  const std::vector<int> lower = internal::pure_set(spec, profile, false);
  if (lower.empty()) return Rational(0);

  Rational lowest_above = spec.outcome().o_star[upper.front()];
  for (int w : upper)
    if (spec.outcome().o_star[w] < lowest_above) lowest_above = spec.outcome().o_star[w];
  Rational highest_below = spec.outcome().o_star[lower.front()];
  for (int w : lower)
    if (spec.outcome().o_star[w] > highest_below) highest_below = spec.outcome().o_star[w];

  if (lowest_above < highest_below)
    throw ValueError("mediator midpoint order violated; outcome is not "
                     "monotone along the deviation order");
  return (lowest_above + highest_below) / 2;
}

}  // namespace infoagg

#endif  // INFOAGG_MEDIATOR_H_
