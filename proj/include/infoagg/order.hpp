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

#ifndef INFOAGG_ORDER_H_
#define INFOAGG_ORDER_H_

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "infoagg/game.hpp"

namespace infoagg {

// A joint report: entries[i] is the state sender i claims to have observed.
using MessageProfile = std::vector<int>;

// kResilient: a coalition deviation counts only if every member strictly
// gains. kStrong: it counts if any member strictly gains.
enum class Mode { kResilient, kStrong };

inline const char* mode_name(Mode m) {
  return m == Mode::kResilient ? "weak" : "strong";
}

// State index if every sender reports the same state, otherwise nullopt.
inline std::optional<int> pure_state(const MessageProfile& p) {
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i] != p[0]) return std::nullopt;
  return p.empty() ? std::nullopt : std::make_optional(p[0]);
}

inline MessageProfile pure_profile(const Game& g, int state) {
  return MessageProfile(static_cast<std::size_t>(g.num_senders()), state);
}

inline void check_k(const Game& g, int k) {
  if (k < 1 || k > g.num_senders())
    throw ValueError("k must lie in [1, " + std::to_string(g.num_senders()) +
                     "], got " + std::to_string(k));
}

inline void check_profile(const Game& g, const MessageProfile& p) {
  if (static_cast<int>(p.size()) != g.num_senders())
    throw ValueError("message profile has wrong length");
  for (int v : p)
    if (v < 0 || v >= g.num_states())
      throw ValueError("message profile entry out of range");
}

// One step of the deviation relation between distinct profiles `a` and `b`:
// the set C of senders whose messages differ must have size at most k, and
// either a is pure with the coalition preferring action 1 there, or b is pure
// with the coalition preferring action 0 there (strictly). kResilient
// quantifies "preferring" over every member of C. kStrong quantifies it over
// any member of the coalitions that could have produced the deviation: C
// itself, padded with arbitrary honest accomplices while |C| < k, since a
// member who reports truthfully can still pocket the gain.
inline bool prec_holds(const Game& g, int k, Mode mode, const MessageProfile& a,
                       const MessageProfile& b) {
  check_k(g, k);
  check_profile(g, a);
  check_profile(g, b);
  if (a == b) throw ValueError("prec_holds needs distinct profiles");

  std::vector<int> diff;
  for (int i = 0; i < g.num_senders(); ++i)
    if (a[i] != b[i]) diff.push_back(i);
  if (static_cast<int>(diff.size()) > k) return false;
  const bool padded = static_cast<int>(diff.size()) < k;

  auto side_ok = [&](int state, Pref wanted) {
    if (mode == Mode::kResilient) {
      for (int i : diff)
        if (g.preference(i, state) != wanted) return false;
      return true;
    }
    if (padded) {
      for (int i = 0; i < g.num_senders(); ++i)
        if (g.preference(i, state) == wanted) return true;
      return false;
    }
    for (int i : diff)
      if (g.preference(i, state) == wanted) return true;
    return false;
  };

  if (auto wa = pure_state(a); wa && side_ok(*wa, Pref::kOne)) return true;
  if (auto wb = pure_state(b); wb && side_ok(*wb, Pref::kZero)) return true;
  return false;
}

// Single-step relation between the two pure profiles of wi and wj. Every
// sender's message differs, so this can only hold when k = n.
inline bool direct_edge(const Game& g, int k, Mode mode, int wi, int wj) {
  check_k(g, k);
  if (wi == wj) throw ValueError("direct_edge needs distinct states");
  if (k != g.num_senders()) return false;
  bool any_one = false, all_one = true, any_zero = false, all_zero = true;
  for (int i = 0; i < g.num_senders(); ++i) {
    if (g.preference(i, wi) == Pref::kOne) any_one = true;
    else all_one = false;
    if (g.preference(i, wj) == Pref::kZero) any_zero = true;
    else all_zero = false;
  }
  return mode == Mode::kResilient ? (all_one || all_zero) : (any_one || any_zero);
}

namespace internal {

// Replays both links of a candidate two-step chain. A degenerate candidate
// (equal to an endpoint or pure) is rejected; those cases are exactly the
// ones the direct test already covers.
inline std::optional<MessageProfile> validate_chain(const Game& g, int k,
                                                    Mode mode, int wi, int wj,
                                                    MessageProfile m) {
  const MessageProfile lo = pure_profile(g, wi), hi = pure_profile(g, wj);
  if (m == lo || m == hi || pure_state(m)) return std::nullopt;
  if (!prec_holds(g, k, mode, lo, m) || !prec_holds(g, k, mode, m, hi))
    return std::nullopt;
  return m;
}

inline std::optional<MessageProfile> chain_witness_resilient(const Game& g,
                                                             int k, int wi,
                                                             int wj) {
  const int n = g.num_senders();
  // Senders split four ways by (strictly prefers 1 at wi) x (strictly
  // prefers 0 at wj); indifference lands on the "may not deviate" side of
  // each coordinate.
  std::vector<int> free_senders;
  int forced_lo = 0, forced_hi = 0;  // must report wi / must report wj
  MessageProfile m(n, -1);
  for (int i = 0; i < n; ++i) {
    const bool one_at_wi = g.preference(i, wi) == Pref::kOne;
    const bool zero_at_wj = g.preference(i, wj) == Pref::kZero;
    if (!one_at_wi && !zero_at_wj) return std::nullopt;  // blocks both links
    if (!one_at_wi) {
      m[i] = wi;
      ++forced_lo;
    } else if (!zero_at_wj) {
      m[i] = wj;
      ++forced_hi;
    } else {
      free_senders.push_back(i);
    }
  }
  if (2 * k < n || forced_lo > k || forced_hi > k) return std::nullopt;
  // Keep the wi-reporting side at size <= k; the remaining free senders fall
  // to the wj side, which the n <= 2k check keeps within bound.
  long long to_lo = std::max(
      0LL, std::min<long long>(static_cast<long long>(free_senders.size()),
                               k - forced_lo));
  for (std::size_t idx = 0; idx < free_senders.size(); ++idx)
    m[free_senders[idx]] = static_cast<long long>(idx) < to_lo ? wi : wj;
  return m;
}

// Builds the strong-mode witness for a given pair of deviating senders, or
// nullopt when the side-size bounds cannot be met. `one_sender` must strictly
// prefer 1 at wi and ends up reporting away from wi; `zero_sender` must
// strictly prefer 0 at wj and reports away from wj. The same sender may play
// both roles by reporting some third state, which costs a slot on each side.
inline std::optional<MessageProfile> strong_witness_for_pair(
    const Game& g, int k, int wi, int wj, int one_sender, int zero_sender) {
  const int n = g.num_senders();
  int dev_wi = 0, dev_wj = 0;  // committed sizes of the sets differing from pure(wi) / pure(wj)
  MessageProfile m(n, -1);
  if (one_sender == zero_sender) {
    int third = -1;
    for (int w = 0; w < g.num_states(); ++w)
      if (w != wi && w != wj) { third = w; break; }
    if (third < 0) return std::nullopt;
    m[one_sender] = third;
    dev_wi = dev_wj = 1;
  } else {
    m[one_sender] = wj;
    m[zero_sender] = wi;
    dev_wi = dev_wj = 1;
  }
  std::vector<int> free_senders;
  for (int i = 0; i < n; ++i)
    if (m[i] < 0) free_senders.push_back(i);
  if (dev_wi > k || dev_wj > k) return std::nullopt;
  if (dev_wi + dev_wj + static_cast<int>(free_senders.size()) > 2 * k)
    return std::nullopt;
  long long to_wj = std::min<long long>(
      static_cast<long long>(free_senders.size()), k - dev_wi);
  for (std::size_t idx = 0; idx < free_senders.size(); ++idx)
    m[free_senders[idx]] = static_cast<long long>(idx) < to_wj ? wj : wi;
  return m;
}

// Strong-mode witness whose anchor sender sits on one side only while the
// other side is kept strictly below k senders. An undersized side can hide an
// honest accomplice with the required preference, so it needs no deviating
// witness of its own. `anchor` reports `anchor_msg`; the side holding the
// anchor may grow to k, the opposite side to k-1, and both stay nonempty.
inline std::optional<MessageProfile> strong_witness_slack(
    const Game& g, int k, int wi, int wj, int anchor, bool anchor_leaves_wi) {
  const int n = g.num_senders();
  if (n < 2 || n > 2 * k - 1) return std::nullopt;
  MessageProfile m(n, -1);
  m[anchor] = anchor_leaves_wi ? wj : wi;
  // Senders reporting wj differ from pure(wi) and vice versa. Fill the
  // anchor's side up to its cap of k while keeping at least one sender for
  // the slack side, which n <= 2k-1 then holds at or below k-1.
  const int target = std::min(k, n - 1);
  int anchor_side = 1;
  for (int i = 0; i < n && anchor_side < target; ++i) {
    if (m[i] >= 0) continue;
    m[i] = m[anchor];
    ++anchor_side;
  }
  if (n - anchor_side > k - 1) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (m[i] < 0) m[i] = anchor_leaves_wi ? wi : wj;
  return m;
}

inline std::optional<MessageProfile> chain_witness_strong(const Game& g, int k,
                                                          int wi, int wj) {
  const int n = g.num_senders();
  for (int i = 0; i < n; ++i) {
    if (g.preference(i, wi) != Pref::kOne) continue;
    for (int j = 0; j < n; ++j) {
      if (g.preference(j, wj) != Pref::kZero) continue;
      if (auto m = strong_witness_for_pair(g, k, wi, wj, i, j)) return m;
    }
  }
  // Both witness roles may fall to one sender with no third state to report;
  // anchor that sender on a single side and leave the other side undersized.
  for (int i = 0; i < n; ++i) {
    if (g.preference(i, wi) != Pref::kOne) continue;
    if (auto m = strong_witness_slack(g, k, wi, wj, i, true)) {
      bool zero_exists = false;
      for (int j = 0; j < n; ++j)
        if (g.preference(j, wj) == Pref::kZero) zero_exists = true;
      if (zero_exists) return m;
    }
    break;
  }
  for (int j = 0; j < n; ++j) {
    if (g.preference(j, wj) != Pref::kZero) continue;
    bool one_exists = false;
    for (int i = 0; i < n; ++i)
      if (g.preference(i, wi) == Pref::kOne) one_exists = true;
    if (!one_exists) break;
    if (auto m = strong_witness_slack(g, k, wi, wj, j, false)) return m;
    break;
  }
  return std::nullopt;
}

}  // namespace internal

// Intermediate profile m with pure(wi) -> m -> pure(wj) under the one-step
// relation, when one exists. Canonical tie-breaks: lowest-index senders fill
// the wi-reporting side first (resilient) or the wj-deviating side first
// (strong), and strong witness pairs are scanned in lexicographic order.
inline std::optional<MessageProfile> chain_witness(const Game& g, int k,
                                                   Mode mode, int wi, int wj) {
  check_k(g, k);
  if (wi == wj) throw ValueError("chain_witness needs distinct states");
  auto m = mode == Mode::kResilient
               ? internal::chain_witness_resilient(g, k, wi, wj)
               : internal::chain_witness_strong(g, k, wi, wj);
  if (!m) return std::nullopt;
  return internal::validate_chain(g, k, mode, wi, wj, std::move(*m));
}

struct Witness {
  bool direct = false;
  MessageProfile via;  // meaningful when !direct
};

// Pure-state deviation order: edges are one- or two-step chains between pure
// profiles, reach is the reflexive-transitive closure over states.
struct OrderRelation {
  int k = 0;
  Mode mode = Mode::kResilient;
  std::vector<std::pair<int, int>> edges;             // row-major (from, to)
  std::vector<std::vector<bool>> reach;               // m x m closure
  std::map<std::pair<int, int>, Witness> witnesses;   // one per edge
};

inline OrderRelation build_order(const Game& g, int k, Mode mode) {
  check_k(g, k);
  const int m = g.num_states();
  OrderRelation rel;
  rel.k = k;
  rel.mode = mode;
  rel.reach.assign(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i) rel.reach[i][i] = true;

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      Witness w;
      if (direct_edge(g, k, mode, i, j)) {
        w.direct = true;
      } else if (auto via = chain_witness(g, k, mode, i, j)) {
        w.via = std::move(*via);
      } else {
        continue;
      }
      rel.edges.emplace_back(i, j);
      rel.reach[i][j] = true;
      rel.witnesses.emplace(std::make_pair(i, j), std::move(w));
    }
  }

  for (int via = 0; via < m; ++via)
    for (int i = 0; i < m; ++i)
      if (rel.reach[i][via])
        for (int j = 0; j < m; ++j)
          if (rel.reach[via][j]) rel.reach[i][j] = true;
  return rel;
}

}  // namespace infoagg

#endif  // INFOAGG_ORDER_H_
