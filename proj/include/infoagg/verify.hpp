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

#ifndef INFOAGG_VERIFY_H_
#define INFOAGG_VERIFY_H_

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "infoagg/game.hpp"
#include "infoagg/mediator.hpp"
#include "infoagg/order.hpp"

namespace infoagg {

struct VerifyCaps {
  long long max_pairs = 1'000'000;  // (coalition, deviation) pairs
};

struct StrategyViolation {
  std::string strategy;  // "always-0", "always-1" or "invert"
  Rational gain;
};

// A deviation that beats honesty for a coalition: per state, the messages
// the members send instead (aligned with `members`, ascending).
struct CoalitionViolation {
  std::vector<int> members;
  std::vector<std::vector<int>> deviation;  // [state][member position]
  std::vector<Rational> gains;              // expected gain per member
};

struct VerifyStats {
  long long coalitions = 0;
  long long deviations = 0;
};

struct VerificationReport {
  bool passed = true;
  std::optional<StrategyViolation> receiver_violation;
  std::optional<CoalitionViolation> coalition_violation;
  VerifyStats stats;
};

// Checks every deterministic response to the recommendation (following it,
// the two constants, inverting it) against honest play of the outcome. The
// constants are checked before invert, mirroring the two cases of the
// incentive argument, and the first strictly gaining strategy is reported.
inline VerificationReport verify_receiver(const Game& g, const Outcome& o) {
  validate_outcome(g, o);
  Rational follow = 0, invert = 0;
  for (int w = 0; w < g.num_states(); ++w) {
    const UtilityPair& u = g.utility(kReceiver, w);
    const Rational& q = o.o_star[w];
    follow += g.prior()[w] * (q * u.act0 + (1 - q) * u.act1);
    invert += g.prior()[w] * (q * u.act1 + (1 - q) * u.act0);
  }

  VerificationReport report;
  const std::pair<std::string, Rational> alternatives[] = {
      {"always-1", receiver_baseline(g, 1)},
      {"always-0", receiver_baseline(g, 0)},
      {"invert", invert},
  };
  for (const auto& [name, value] : alternatives) {
    if (value > follow) {
      report.passed = false;
      report.receiver_violation = StrategyViolation{name, value - follow};
      break;
    }
  }
  return report;
}

namespace internal {

inline BigInt pow_big(long long base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Sum over coalition sizes 1..k of C(n, size) * (m^size)^m.
inline BigInt coalition_search_size(int n, int m, int k) {
  BigInt total = 0;
  BigInt choose = 1;
  for (int s = 1; s <= k; ++s) {
    choose = choose * (n - s + 1) / s;
    BigInt per_state = pow_big(m, s);
    BigInt deviations = 1;
    for (int w = 0; w < m; ++w) deviations *= per_state;
    total += choose * deviations;
  }
  return total;
}

inline void enforce_cap(const BigInt& required, long long cap,
                        const std::string& what) {
  if (required <= cap) return;
  long long reported = required > LLONG_MAX ? LLONG_MAX
                                            : static_cast<long long>(required);
  throw CapExceededError(what + " needs " + required.str() +
                             " steps, cap is " + std::to_string(cap),
                         reported);
}

// First size-s index combination is 0..s-1; steps to the next one in
// lexicographic order. Returns false after the last combination.
inline bool next_combination(std::vector<int>& c, int n) {
  const int s = static_cast<int>(c.size());
  for (int i = s - 1; i >= 0; --i) {
    if (c[i] < n - s + i) {
      ++c[i];
      for (int j = i + 1; j < s; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace internal

// Exhaustive search over coalitions of size at most k and deterministic
// joint deviations (one coalition report vector per state). Honest play of
// every non-member is assumed. Senders observe the state before deviating,
// so profitability is judged at the realized state, and `mode` sets the
// quantifier over members:
//   - kResilient: a plan is profitable when at some state its joint
//     misreport makes every coalition member strictly gain, conditional on
//     that state. States are scanned in order, joint messages
//     lexicographically (lowest member's message most significant), and the
//     first hit is reported as the plan that misreports exactly there and
//     stays honest elsewhere — so each reported member gain, an expected
//     value over states, is strictly positive.
//   - kStrong: a plan is profitable when some member's expected gain across
//     states is strictly positive. Any single-state gain extends to such a
//     plan by playing honestly elsewhere, so the realized-state and
//     expected readings coincide; plans are scanned lexicographically
//     (states major) and the first profitable one is reported.
// Coalitions are scanned by size then lexicographically in both modes, so
// the reported violation is canonical.
//
// A spec whose outcome breaks the deviation order can make some profiles
// unevaluable (the midpoint guard fires). Deviations reaching those are
// skipped: a violation among evaluable deviations is still reported, but a
// clean pass cannot be certified, so the evaluation error resurfaces then.
inline VerificationReport verify_coalitions(const Game& g, int k, Mode mode,
                                            const MediatorSpec& spec,
                                            const VerifyCaps& caps = {}) {
  check_k(g, k);
  const int n = g.num_senders();
  const int m = g.num_states();
  internal::enforce_cap(internal::coalition_search_size(n, m, k),
                        caps.max_pairs, "coalition deviation search");

  VerificationReport report;
  std::optional<ValueError> skipped;
  std::map<MessageProfile, std::optional<Rational>> value_memo;
  auto mediator_value =
      [&](const MessageProfile& p) -> const std::optional<Rational>& {
    auto it = value_memo.find(p);
    if (it == value_memo.end()) {
      std::optional<Rational> value;
      try {
        value = eval_mediator(spec, p);
      } catch (const ValueError& e) {
        if (!skipped) skipped = e;
      }
      it = value_memo.emplace(p, std::move(value)).first;
    }
    return it->second;
  };

  // Pure inputs reproduce the outcome directly; they never fail to evaluate.
  std::vector<Rational> honest(m);
  for (int w = 0; w < m; ++w) honest[w] = *mediator_value(pure_profile(g, w));

  // Expected gain of a deviation is sum_w shift(w) * gain_factor[i][w] where
  // shift(w) is how much the deviation moves the mediator value in state w.
  std::vector<std::vector<Rational>> gain_factor(n, std::vector<Rational>(m));
  for (int i = 0; i < n; ++i)
    for (int w = 0; w < m; ++w) {
      const UtilityPair& u = g.utility(i, w);
      gain_factor[i][w] = g.prior()[w] * (u.act0 - u.act1);
    }

  for (int size = 1; size <= k; ++size) {
    std::vector<int> members(size);
    for (int i = 0; i < size; ++i) members[i] = i;
    long long blocks = 1;  // m^size joint messages for the coalition
    for (int i = 0; i < size; ++i) blocks *= m;

    do {
      ++report.stats.coalitions;
      long long total_deviations = 1;
      for (int w = 0; w < m; ++w) total_deviations *= blocks;
      report.stats.deviations += total_deviations;

      // Per state, the set of distinct mediator-value shifts the coalition
      // can cause; everything else about a deviation is irrelevant. Index
      // -1 marks coalition messages whose profile cannot be evaluated.
      std::vector<std::vector<Rational>> shifts(m);
      std::vector<std::vector<int>> shift_of_block(m, std::vector<int>(blocks));
      for (int w = 0; w < m; ++w) {
        MessageProfile p = pure_profile(g, w);
        for (long long block = 0; block < blocks; ++block) {
          long long rest = block;
          for (int t = size - 1; t >= 0; --t) {
            p[members[t]] = static_cast<int>(rest % m);
            rest /= m;
          }
          const std::optional<Rational>& value = mediator_value(p);
          if (!value) {
            shift_of_block[w][block] = -1;
            continue;
          }
          Rational shift = *value - honest[w];
          auto it = std::find(shifts[w].begin(), shifts[w].end(), shift);
          if (it == shifts[w].end()) {
            shifts[w].push_back(shift);
            shift_of_block[w][block] = static_cast<int>(shifts[w].size()) - 1;
          } else {
            shift_of_block[w][block] =
                static_cast<int>(it - shifts[w].begin());
          }
        }
      }

      if (mode == Mode::kResilient) {
        // Every member must strictly gain at the realized state, so each
        // state is decided on its own and a hit is completed with honest
        // play elsewhere.
        for (int w = 0; w < m; ++w)
          for (long long block = 0; block < blocks; ++block) {
            const int idx = shift_of_block[w][block];
            if (idx < 0) continue;
            const Rational& shift = shifts[w][idx];
            if (shift == 0) continue;
            bool all_gain = true;
            for (int mi = 0; mi < size && all_gain; ++mi)
              all_gain = shift * gain_factor[members[mi]][w] > 0;
            if (!all_gain) continue;
            CoalitionViolation violation;
            violation.members = members;
            violation.deviation.assign(m, std::vector<int>(size));
            for (int w2 = 0; w2 < m; ++w2)
              for (int t = 0; t < size; ++t) violation.deviation[w2][t] = w2;
            long long rest = block;
            for (int t = size - 1; t >= 0; --t) {
              violation.deviation[w][t] = static_cast<int>(rest % m);
              rest /= m;
            }
            violation.gains.resize(size);
            for (int mi = 0; mi < size; ++mi)
              violation.gains[mi] = shift * gain_factor[members[mi]][w];
            report.passed = false;
            report.coalition_violation = std::move(violation);
            return report;
          }
        continue;
      }

      // Strong mode: a deviation's member gains depend only on its
      // per-state shift combination, so decide violations once per
      // combination.
      long long combos = 1;
      for (int w = 0; w < m; ++w) combos *= static_cast<long long>(shifts[w].size());
      std::vector<bool> violating(combos, false);
      bool any = false;
      std::vector<int> combo(m, 0);
      for (long long flat = 0; flat < combos; ++flat) {
        bool ok = false;
        for (int mi = 0; mi < size; ++mi) {
          Rational gain = 0;
          for (int w = 0; w < m; ++w)
            gain += shifts[w][combo[w]] * gain_factor[members[mi]][w];
          if (gain > 0) { ok = true; break; }
        }
        violating[flat] = ok;
        any = any || ok;
        for (int w = m - 1; w >= 0; --w) {
          if (++combo[w] < static_cast<int>(shifts[w].size())) break;
          combo[w] = 0;
        }
      }
      if (!any) continue;

      // Walk deviations in canonical order to report the first violation.
      std::vector<long long> strides(m, 1);
      for (int w = m - 2; w >= 0; --w)
        strides[w] = strides[w + 1] * static_cast<long long>(shifts[w + 1].size());
      std::vector<long long> dev(m, 0);
      for (long long step = 0; step < total_deviations; ++step) {
        long long flat = 0;
        bool evaluable = true;
        for (int w = 0; w < m; ++w) {
          const int idx = shift_of_block[w][dev[w]];
          if (idx < 0) { evaluable = false; break; }
          flat += idx * strides[w];
        }
        if (evaluable && violating[flat]) {
          CoalitionViolation violation;
          violation.members = members;
          violation.deviation.assign(m, std::vector<int>(size));
          for (int w = 0; w < m; ++w) {
            long long rest = dev[w];
            for (int t = size - 1; t >= 0; --t) {
              violation.deviation[w][t] = static_cast<int>(rest % m);
              rest /= m;
            }
          }
          violation.gains.resize(size);
          for (int mi = 0; mi < size; ++mi) {
            Rational gain = 0;
            for (int w = 0; w < m; ++w)
              gain += shifts[w][shift_of_block[w][dev[w]]] *
                      gain_factor[members[mi]][w];
            violation.gains[mi] = gain;
          }
          report.passed = false;
          report.coalition_violation = std::move(violation);
          return report;
        }
        for (int w = m - 1; w >= 0; --w) {
          if (++dev[w] < blocks) break;
          dev[w] = 0;
        }
      }
    } while (internal::next_combination(members, n));
  }
  if (skipped) throw *skipped;
  return report;
}

}  // namespace infoagg

#endif  // INFOAGG_VERIFY_H_
