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

#ifndef INFOAGG_OPTIMIZE_H_
#define INFOAGG_OPTIMIZE_H_

#include <string>
#include <utility>
#include <vector>

#include "infoagg/game.hpp"
#include "infoagg/order.hpp"
#include "infoagg/simplex.hpp"

namespace infoagg {

struct OrderViolation {
  int from = 0, to = 0;   // reach pair with o_star[from] > o_star[to]
  Rational value_from, value_to;
};

struct ReceiverICViolation {
  int action = 0;         // constant action that beats following
  Rational expected;      // E_r(o)
  Rational baseline;      // U_action
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<OrderViolation> violated_order;
  std::vector<ReceiverICViolation> violated_receiver;
};

// An outcome is implementable by a truthful mechanism iff it is monotone
// along the deviation order and following the recommendation is at least as
// good for the receiver as either constant action.
inline FeasibilityReport check_outcome(const Game& g, const OrderRelation& rel,
                                       const Outcome& o) {
  validate_outcome(g, o);
  FeasibilityReport report;
  const int m = g.num_states();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j && rel.reach[i][j] && o.o_star[i] > o.o_star[j])
        report.violated_order.push_back({i, j, o.o_star[i], o.o_star[j]});
  const Rational expected = expected_utility(g, kReceiver, o);
  for (int a = 0; a < kNumActions; ++a) {
    const Rational baseline = receiver_baseline(g, a);
    if (expected < baseline)
      report.violated_receiver.push_back({a, expected, baseline});
  }
  report.feasible =
      report.violated_order.empty() && report.violated_receiver.empty();
  return report;
}

inline FeasibilityReport check_outcome(const Game& g, int k, Mode mode,
                                       const Outcome& o) {
  return check_outcome(g, build_order(g, k, mode), o);
}

struct Objective {
  enum class Kind { kReceiver, kSender, kWelfare };
  Kind kind = Kind::kReceiver;
  int sender = -1;                 // kSender only, 0-based
  std::vector<Rational> weights;   // kWelfare only: receiver first, then senders

  static Objective receiver() { return {}; }
  static Objective for_sender(int i) { return {Kind::kSender, i, {}}; }
  static Objective welfare(std::vector<Rational> w) {
    return {Kind::kWelfare, -1, std::move(w)};
  }
};

struct OptimizeResult {
  Outcome outcome;
  Rational value;
};

namespace internal {

// E_player(o) = affine_const + sum_w coef[w] * o_star[w].
struct AffineUtility {
  Rational affine_const;
  std::vector<Rational> coef;
};

inline AffineUtility utility_form(const Game& g, int player) {
  AffineUtility f;
  f.affine_const = 0;
  f.coef.resize(g.num_states());
  for (int w = 0; w < g.num_states(); ++w) {
    const UtilityPair& u = g.utility(player, w);
    f.affine_const += g.prior()[w] * u.act1;
    f.coef[w] = g.prior()[w] * (u.act0 - u.act1);
  }
  return f;
}

inline AffineUtility objective_form(const Game& g, const Objective& obj) {
  switch (obj.kind) {
    case Objective::Kind::kReceiver:
      return utility_form(g, kReceiver);
    case Objective::Kind::kSender:
      if (obj.sender < 0 || obj.sender >= g.num_senders())
        throw ValueError("objective sender index out of range");
      return utility_form(g, obj.sender);
    case Objective::Kind::kWelfare: {
      std::vector<Rational> w = obj.weights;
      if (w.empty()) w.assign(g.num_senders() + 1, Rational(1));
      if (static_cast<int>(w.size()) != g.num_senders() + 1)
        throw ValueError("welfare weights must list the receiver and every sender");
      AffineUtility total;
      total.affine_const = 0;
      total.coef.assign(g.num_states(), Rational(0));
      for (int p = -1; p < g.num_senders(); ++p) {
        const Rational& weight = w[p + 1];
        if (weight == 0) continue;
        AffineUtility f = utility_form(g, p == -1 ? kReceiver : p);
        total.affine_const += weight * f.affine_const;
        for (int s = 0; s < g.num_states(); ++s) total.coef[s] += weight * f.coef[s];
      }
      return total;
    }
  }
  throw ValueError("unknown objective");
}

}  // namespace internal

// Maximizes the objective over outcomes implementable at resilience level k.
// The feasible region is never empty: the better constant action always
// satisfies both receiver inequalities and every order constraint.
inline OptimizeResult optimize(const Game& g, const OrderRelation& rel,
                               const Objective& obj) {
  const int m = g.num_states();
  const internal::AffineUtility target = internal::objective_form(g, obj);
  const internal::AffineUtility receiver = internal::utility_form(g, kReceiver);

  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (const auto& [i, j] : rel.edges) {  // o_star[i] <= o_star[j]
    std::vector<Rational> row(m, Rational(0));
    row[i] = 1;
    row[j] -= 1;
    a.push_back(std::move(row));
    b.emplace_back(0);
  }
  for (int action = 0; action < kNumActions; ++action) {
    std::vector<Rational> row(m);
    for (int w = 0; w < m; ++w) row[w] = -receiver.coef[w];
    a.push_back(std::move(row));
    b.push_back(receiver.affine_const - receiver_baseline(g, action));
  }
  for (int w = 0; w < m; ++w) {  // o_star[w] <= 1
    std::vector<Rational> row(m, Rational(0));
    row[w] = 1;
    a.push_back(std::move(row));
    b.emplace_back(1);
  }

  LpResult lp = solve_lp_max(a, b, target.coef);
  if (!lp.feasible || !lp.bounded)
    throw std::logic_error("optimize: interior LP reported infeasible or unbounded");
  return {Outcome{std::move(lp.x)}, target.affine_const + lp.value};
}

inline OptimizeResult optimize(const Game& g, int k, Mode mode,
                               const Objective& obj) {
  return optimize(g, build_order(g, k, mode), obj);
}

}  // namespace infoagg

#endif  // INFOAGG_OPTIMIZE_H_
