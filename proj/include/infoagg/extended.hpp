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

#ifndef INFOAGG_EXTENDED_H_
#define INFOAGG_EXTENDED_H_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infoagg/game.hpp"
#include "infoagg/optimize.hpp"
#include "infoagg/order.hpp"
#include "infoagg/simulate.hpp"
#include "infoagg/verify.hpp"

namespace infoagg {

// One point of the joint signal distribution: who saw what, how likely, and
// everyone's utilities (receiver first) for the two actions there.
struct SupportEntry {
  std::vector<int> profile;  // signal index per sender
  Rational prob;
  UtilityPair receiver_u;
  std::vector<UtilityPair> sender_u;
};

// Senders observe correlated signals from per-sender alphabets instead of a
// shared state. Utilities may depend on the whole signal profile, so a
// sender's preference is defined only conditionally on what a coalition saw.
class ExtendedGame {
 public:
  ExtendedGame(std::vector<std::vector<std::string>> alphabets,
               std::vector<SupportEntry> support)
      : alphabets_(std::move(alphabets)), support_(std::move(support)) {
    const int n = num_senders();
    if (n == 0) throw ValueError("extended game needs at least one sender");
    for (int i = 0; i < n; ++i) {
      if (alphabets_[i].empty())
        throw ValueError("sender " + std::to_string(i + 1) +
                         " has an empty signal alphabet");
      std::set<std::string> seen;
      for (const std::string& s : alphabets_[i]) {
        if (s.empty()) throw ValueError("empty signal name");
        if (!seen.insert(s).second)
          throw ValueError("duplicate signal name: " + s);
      }
    }
    if (support_.empty())
      throw ValueError("extended game needs a nonempty support");
    Rational total = 0;
    for (size_t t = 0; t < support_.size(); ++t) {
      const SupportEntry& e = support_[t];
      if (static_cast<int>(e.profile.size()) != n)
        throw ValueError("support profile length does not match the senders");
      for (int i = 0; i < n; ++i) {
        if (e.profile[i] < 0 ||
            e.profile[i] >= static_cast<int>(alphabets_[i].size()))
          throw ValueError("support profile uses an unknown signal");
      }
      if (!(e.prob > 0))
        throw ValueError("support probability " + format_rational(e.prob) +
                         " is not positive");
      if (static_cast<int>(e.sender_u.size()) != n)
        throw ValueError("support utilities do not cover every sender");
      if (!index_.emplace(e.profile, static_cast<int>(t)).second)
        throw ValueError("duplicate support profile");
      total += e.prob;
    }
    if (total != 1)
      throw ValueError("support probabilities sum to " +
                       format_rational(total) + " != 1");
    cache_singleton_prefs();
  }

  int num_senders() const { return static_cast<int>(alphabets_.size()); }
  int support_size() const { return static_cast<int>(support_.size()); }
  const std::vector<std::vector<std::string>>& alphabets() const {
    return alphabets_;
  }
  const std::vector<SupportEntry>& support() const { return support_; }

  // Index of a signal profile in the support, or -1 if off-support.
  int support_index(const std::vector<int>& profile) const {
    auto it = index_.find(profile);
    return it == index_.end() ? -1 : it->second;
  }

  // Cached conditional preference of a sender given only its own signal at
  // a support entry. Meaningful as "the" preference under separability.
  Pref singleton_pref(int sender, int entry) const {
    return singleton_prefs_[sender][entry];
  }

 private:
  void cache_singleton_prefs();

  std::vector<std::vector<std::string>> alphabets_;
  std::vector<SupportEntry> support_;
  std::map<std::vector<int>, int> index_;
  std::vector<std::vector<Pref>> singleton_prefs_;
};

// Conditional preference of `sender` at support entry `entry`, conditioning
// on the signals of coalition K (which must contain the sender): compares
// the two actions' expected utilities over support entries that agree with
// the entry on K.
inline Pref coalition_preference(const ExtendedGame& xg, int sender,
                                 const std::vector<int>& coalition,
                                 int entry) {
  if (coalition.empty())
    throw ValueError("coalition must not be empty");
  for (size_t t = 0; t < coalition.size(); ++t) {
    if (coalition[t] < 0 || coalition[t] >= xg.num_senders())
      throw ValueError("coalition member out of range");
    if (t > 0 && coalition[t] <= coalition[t - 1])
      throw ValueError("coalition members must be ascending");
  }
  if (std::find(coalition.begin(), coalition.end(), sender) ==
      coalition.end())
    throw ValueError("coalition must contain the conditioning sender");
  const std::vector<int>& x = xg.support()[entry].profile;
  Rational w0 = 0, w1 = 0;
  for (const SupportEntry& e : xg.support()) {
    bool agrees = true;
    for (int i : coalition) {
      if (e.profile[i] != x[i]) { agrees = false; break; }
    }
    if (!agrees) continue;
    w0 += e.prob * e.sender_u[sender].act0;
    w1 += e.prob * e.sender_u[sender].act1;
  }
  if (w0 > w1) return Pref::kZero;
  if (w1 > w0) return Pref::kOne;
  return Pref::kIndifferent;
}

inline void ExtendedGame::cache_singleton_prefs() {
  singleton_prefs_.assign(num_senders(),
                          std::vector<Pref>(support_size()));
  for (int i = 0; i < num_senders(); ++i)
    for (int t = 0; t < support_size(); ++t)
      singleton_prefs_[i][t] = coalition_preference(*this, i, {i}, t);
}

// Base games are the special case where everyone observes the same state;
// the embedding shares one alphabet (the state names) and puts the diagonal
// profiles on the support with the prior as distribution.
inline ExtendedGame embed_base(const Game& g) {
  std::vector<std::vector<std::string>> alphabets(g.num_senders(),
                                                  g.states());
  std::vector<SupportEntry> support;
  for (int w = 0; w < g.num_states(); ++w) {
    SupportEntry e;
    e.profile.assign(g.num_senders(), w);
    e.prob = g.prior()[w];
    e.receiver_u = g.utility(kReceiver, w);
    for (int i = 0; i < g.num_senders(); ++i)
      e.sender_u.push_back(g.utility(i, w));
    support.push_back(std::move(e));
  }
  return ExtendedGame(std::move(alphabets), std::move(support));
}

struct SeparabilityWitness {
  int sender;
  int entry;  // support index where the preferences disagree
  std::vector<int> coalition_a, coalition_b;
  Pref pref_a, pref_b;
};

struct SeparabilityReport {
  bool separable = true;
  std::optional<SeparabilityWitness> witness;
};

inline void check_k_extended(const ExtendedGame& xg, int k) {
  if (k < 1 || k > xg.num_senders())
    throw ValueError("k must lie in [1, " +
                     std::to_string(xg.num_senders()) + "], got " +
                     std::to_string(k));
}

namespace internal {

// Coalitions containing `sender`, of one size, in lexicographic order.
inline std::vector<std::vector<int>> coalitions_with(int n, int size,
                                                     int sender) {
  std::vector<std::vector<int>> out;
  std::vector<int> members(size);
  for (int i = 0; i < size; ++i) members[i] = i;
  if (size > n) return out;
  do {
    if (std::find(members.begin(), members.end(), sender) != members.end())
      out.push_back(members);
  } while (next_combination(members, n));
  return out;
}

inline BigInt separability_search_size(const ExtendedGame& xg, int k) {
  const int n = xg.num_senders();
  BigInt per_sender = 0;
  BigInt choose = 1;  // C(n-1, size-1) coalitions containing a fixed sender
  for (int size = 1; size <= k; ++size) {
    per_sender += choose;
    choose = choose * (n - size) / size;
  }
  return per_sender * n * xg.support_size();
}

}  // namespace internal

// A game is strictly k-separable when every sender's conditional preference
// at every support point is the same no matter which coalition of size at
// most k (containing the sender) does the conditioning, and is never
// indifferent. The scan visits senders in order, then support entries, then
// coalition sizes from k downward; a strictly opposed pair of preferences
// is preferred as the witness over one involving indifference.
inline SeparabilityReport check_separability(const ExtendedGame& xg, int k,
                                             const VerifyCaps& caps = {}) {
  check_k_extended(xg, k);
  internal::enforce_cap(internal::separability_search_size(xg, k),
                        caps.max_pairs, "separability scan");
  const int n = xg.num_senders();
  SeparabilityReport report;
  std::optional<SeparabilityWitness> weak;

  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < xg.support_size(); ++t) {
      std::vector<std::pair<std::vector<int>, Pref>> seen;
      for (int size = k; size >= 1; --size) {
        for (const std::vector<int>& members :
             internal::coalitions_with(n, size, i)) {
          Pref p = coalition_preference(xg, i, members, t);
          for (const auto& [other, q] : seen) {
            if (q == p) continue;
            const bool strict = q != Pref::kIndifferent &&
                                p != Pref::kIndifferent;
            SeparabilityWitness w{i, t, other, members, q, p};
            if (strict) {
              report.separable = false;
              report.witness = std::move(w);
              return report;
            }
            if (!weak) weak = std::move(w);
          }
          seen.emplace_back(members, p);
        }
      }
    }
  }
  if (weak) {
    report.separable = false;
    report.witness = std::move(weak);
  }
  return report;
}

inline void check_extended_profile(const ExtendedGame& xg,
                                   const std::vector<int>& profile) {
  if (static_cast<int>(profile.size()) != xg.num_senders())
    throw ValueError("message profile length does not match the senders");
  for (int i = 0; i < xg.num_senders(); ++i)
    if (profile[i] < 0 ||
        profile[i] >= static_cast<int>(xg.alphabets()[i].size()))
      throw ValueError("message profile uses an unknown signal");
}

// One-step deviation relation between arbitrary signal profiles. Only the
// singleton preferences enter, so the result is meaningful for separable
// games; the raw relation is still well defined and testable without that.
// In strong mode a differing set smaller than k is padded with honest
// accomplices: any sender's preference counts, not just the deviators'.
inline bool prec_holds_extended(const ExtendedGame& xg, int k, Mode mode,
                                const std::vector<int>& a,
                                const std::vector<int>& b) {
  check_k_extended(xg, k);
  check_extended_profile(xg, a);
  check_extended_profile(xg, b);
  if (a == b) throw ValueError("profiles must differ");
  std::vector<int> diff;
  for (int i = 0; i < xg.num_senders(); ++i)
    if (a[i] != b[i]) diff.push_back(i);
  if (static_cast<int>(diff.size()) > k) return false;
  const bool padded =
      mode == Mode::kStrong && static_cast<int>(diff.size()) < k;

  auto side_ok = [&](int entry, Pref wanted) {
    if (entry < 0) return false;
    if (padded) {
      for (int i = 0; i < xg.num_senders(); ++i)
        if (xg.singleton_pref(i, entry) == wanted) return true;
      return false;
    }
    bool all = true, any = false;
    for (int i : diff) {
      const bool likes = xg.singleton_pref(i, entry) == wanted;
      all = all && likes;
      any = any || likes;
    }
    return mode == Mode::kResilient ? all : any;
  };
  return side_ok(xg.support_index(a), Pref::kOne) ||
         side_ok(xg.support_index(b), Pref::kZero);
}

struct WitnessX {
  bool direct = false;
  std::vector<int> via;
};

struct ExtendedOrderRelation {
  int k = 0;
  Mode mode = Mode::kResilient;
  std::vector<std::pair<int, int>> edges;  // support indices
  std::vector<std::vector<bool>> reach;
  std::map<std::pair<int, int>, WitnessX> witnesses;
};

namespace internal {

inline bool direct_edge_extended(const ExtendedGame& xg, int k, Mode mode,
                                 int sa, int sb) {
  const std::vector<int>& a = xg.support()[sa].profile;
  const std::vector<int>& b = xg.support()[sb].profile;
  std::vector<int> diff;
  for (int i = 0; i < xg.num_senders(); ++i)
    if (a[i] != b[i]) diff.push_back(i);
  if (diff.empty() || static_cast<int>(diff.size()) > k) return false;
  const bool padded =
      mode == Mode::kStrong && static_cast<int>(diff.size()) < k;
  auto side_ok = [&](int entry, Pref wanted) {
    if (padded) {
      for (int i = 0; i < xg.num_senders(); ++i)
        if (xg.singleton_pref(i, entry) == wanted) return true;
      return false;
    }
    bool all = true, any = false;
    for (int i : diff) {
      const bool likes = xg.singleton_pref(i, entry) == wanted;
      all = all && likes;
      any = any || likes;
    }
    return mode == Mode::kResilient ? all : any;
  };
  return side_ok(sa, Pref::kOne) || side_ok(sb, Pref::kZero);
}

inline std::optional<std::vector<int>> validate_chain_extended(
    const ExtendedGame& xg, int k, Mode mode, int sa, int sb,
    std::vector<int> via) {
  if (via == xg.support()[sa].profile || via == xg.support()[sb].profile)
    return std::nullopt;
  if (!prec_holds_extended(xg, k, mode, xg.support()[sa].profile, via))
    return std::nullopt;
  if (!prec_holds_extended(xg, k, mode, via, xg.support()[sb].profile))
    return std::nullopt;
  return via;
}

// Mirrors the base construction: senders wanting action 1 at the source may
// deviate away from it, senders wanting action 0 at the target may deviate
// away from that, a sender offering neither blocks unless its coordinates
// coincide, and free senders are split to keep both differing sets within k.
inline std::optional<std::vector<int>> chain_witness_extended_resilient(
    const ExtendedGame& xg, int k, int sa, int sb) {
  const int n = xg.num_senders();
  const std::vector<int>& a = xg.support()[sa].profile;
  const std::vector<int>& b = xg.support()[sb].profile;
  std::vector<int> via(n, -1);
  long long dev_a = 0, dev_b = 0;  // committed differing counts vs a and b
  std::vector<int> free;
  for (int i = 0; i < n; ++i) {
    const bool may_leave_a = xg.singleton_pref(i, sa) == Pref::kOne;
    const bool may_leave_b = xg.singleton_pref(i, sb) == Pref::kZero;
    if (a[i] == b[i]) {
      if (!may_leave_a && !may_leave_b) { via[i] = a[i]; continue; }
      via[i] = a[i];  // a third value would cost both budgets for nothing
      continue;
    }
    if (!may_leave_a && !may_leave_b) return std::nullopt;
    if (may_leave_a && may_leave_b) { free.push_back(i); continue; }
    if (may_leave_a) {
      via[i] = b[i];
      ++dev_a;
    } else {
      via[i] = a[i];
      ++dev_b;
    }
  }
  const long long f = static_cast<long long>(free.size());
  if (dev_a > k || dev_b > k || dev_a + dev_b + f > 2 * k)
    return std::nullopt;
  // Keep the lowest-indexed free senders on the source's values, as many as
  // the target-side budget allows; the rest move to the target's values.
  long long stay = std::max<long long>(0, std::min<long long>(f, k - dev_b));
  for (long long t = 0; t < f; ++t)
    via[free[t]] = t < stay ? a[free[t]] : b[free[t]];
  return validate_chain_extended(xg, k, Mode::kResilient, sa, sb,
                                 std::move(via));
}

inline std::optional<std::vector<int>> strong_witness_extended_for_pair(
    const ExtendedGame& xg, int k, int sa, int sb, int one_sender,
    int zero_sender) {
  const int n = xg.num_senders();
  const std::vector<int>& a = xg.support()[sa].profile;
  const std::vector<int>& b = xg.support()[sb].profile;
  std::vector<int> via(n, -1);
  long long dev_a = 0, dev_b = 0;
  std::vector<int> free;

  // Picks the lowest signal for a sender that avoids the given values.
  auto third_value = [&](int i, int avoid1, int avoid2) -> int {
    for (int v = 0; v < static_cast<int>(xg.alphabets()[i].size()); ++v)
      if (v != avoid1 && v != avoid2) return v;
    return -1;
  };

  if (one_sender == zero_sender) {
    const int i = one_sender;
    const int v = third_value(i, a[i], b[i]);
    if (v < 0) return std::nullopt;
    via[i] = v;
    dev_a = 1;
    dev_b = 1;
  } else {
    const int i = one_sender, j = zero_sender;
    if (a[i] != b[i]) {
      via[i] = b[i];
      dev_a += 1;
    } else {
      const int v = third_value(i, a[i], a[i]);
      if (v < 0) return std::nullopt;
      via[i] = v;
      dev_a += 1;
      dev_b += 1;
    }
    if (a[j] != b[j]) {
      via[j] = a[j];
      dev_b += 1;
    } else {
      const int v = third_value(j, a[j], a[j]);
      if (v < 0) return std::nullopt;
      via[j] = v;
      dev_a += 1;
      dev_b += 1;
    }
  }

  for (int i = 0; i < n; ++i) {
    if (via[i] >= 0) continue;
    if (a[i] == b[i]) { via[i] = a[i]; continue; }
    free.push_back(i);
  }
  const long long f = static_cast<long long>(free.size());
  if (dev_a > k || dev_b > k || dev_a + dev_b + f > 2 * k)
    return std::nullopt;
  // Low-indexed free senders move with the action-1 mover (taking target
  // values, which deviates from the source) up to that side's budget.
  long long to_b_values =
      std::max<long long>(0, std::min<long long>(f, k - dev_a));
  for (long long t = 0; t < f; ++t)
    via[free[t]] = t < to_b_values ? b[free[t]] : a[free[t]];
  return validate_chain_extended(xg, k, Mode::kStrong, sa, sb,
                                 std::move(via));
}

// Strong-mode witness with a single deviating anchor: the anchor leaves one
// entry's values while the opposite differing set is kept strictly below k,
// small enough that an honest accomplice's preference covers that side.
inline std::optional<std::vector<int>> strong_witness_extended_slack(
    const ExtendedGame& xg, int k, int sa, int sb, int anchor,
    bool anchor_leaves_a) {
  const int n = xg.num_senders();
  const std::vector<int>& a = xg.support()[sa].profile;
  const std::vector<int>& b = xg.support()[sb].profile;
  const std::vector<int>& stay = anchor_leaves_a ? a : b;
  const std::vector<int>& move = anchor_leaves_a ? b : a;
  std::vector<int> via(n, -1);
  long long dev_a = 0, dev_b = 0;
  if (stay[anchor] != move[anchor]) {
    via[anchor] = move[anchor];
    (anchor_leaves_a ? dev_a : dev_b) += 1;
  } else {
    // Equal coordinates force a spare signal, deviating from both entries.
    int v = -1;
    for (int s = 0; s < static_cast<int>(xg.alphabets()[anchor].size()); ++s)
      if (s != a[anchor]) { v = s; break; }
    if (v < 0) return std::nullopt;
    via[anchor] = v;
    dev_a += 1;
    dev_b += 1;
  }
  std::vector<int> free, joinable;
  for (int i = 0; i < n; ++i) {
    if (via[i] >= 0) continue;
    if (a[i] == b[i]) {
      via[i] = a[i];
      if (static_cast<int>(xg.alphabets()[i].size()) >= 2) joinable.push_back(i);
      continue;
    }
    free.push_back(i);
  }
  long long anchored = anchor_leaves_a ? dev_a : dev_b;
  long long slack = anchor_leaves_a ? dev_b : dev_a;
  const long long f = static_cast<long long>(free.size());
  long long to_anchored = std::min<long long>(f, k - anchored);
  if (to_anchored < 0) return std::nullopt;
  if (slack + f - to_anchored == 0) {
    if (to_anchored > 0) {
      --to_anchored;  // hold one sender back so the slack side is nonempty
    } else if (!joinable.empty()) {
      // No differing sender is left for the slack side; a spare signal from
      // an equal-coordinate sender populates both sides instead.
      const int e = joinable.front();
      for (int s = 0; s < static_cast<int>(xg.alphabets()[e].size()); ++s)
        if (s != a[e]) { via[e] = s; break; }
      anchored += 1;
      slack += 1;
    } else {
      return std::nullopt;
    }
  }
  const long long slack_total = slack + f - to_anchored;
  if (anchored + to_anchored > k || slack_total < 1 || slack_total > k - 1)
    return std::nullopt;
  for (long long t = 0; t < f; ++t)
    via[free[t]] = t < to_anchored ? move[free[t]] : stay[free[t]];
  return validate_chain_extended(xg, k, Mode::kStrong, sa, sb,
                                 std::move(via));
}

// Strong-mode witness with no deviating witness at all: both differing sets
// stay strictly below k, so honest accomplices cover both legs.
inline std::optional<std::vector<int>> strong_witness_extended_closure(
    const ExtendedGame& xg, int k, int sa, int sb) {
  const int n = xg.num_senders();
  const std::vector<int>& a = xg.support()[sa].profile;
  const std::vector<int>& b = xg.support()[sb].profile;
  std::vector<int> via(n, -1);
  std::vector<int> diff, joinable;
  for (int i = 0; i < n; ++i) {
    if (a[i] != b[i]) {
      diff.push_back(i);
    } else {
      via[i] = a[i];
      if (static_cast<int>(xg.alphabets()[i].size()) >= 2) joinable.push_back(i);
    }
  }
  const long long r = static_cast<long long>(diff.size());
  if (r >= 2) {
    const long long to_a_side = std::min<long long>(r - 1, k - 1);
    if (r - to_a_side > k - 1) return std::nullopt;
    for (long long t = 0; t < r; ++t)
      via[diff[t]] = t < to_a_side ? b[diff[t]] : a[diff[t]];
    return validate_chain_extended(xg, k, Mode::kStrong, sa, sb,
                                   std::move(via));
  }
  // A single differing sender: it may take a spare signal to sit on both
  // sides, or an equal-coordinate sender joins to populate the second side.
  const int d = diff.front();
  int spare = -1;
  for (int s = 0; s < static_cast<int>(xg.alphabets()[d].size()); ++s)
    if (s != a[d] && s != b[d]) { spare = s; break; }
  if (spare >= 0 && k >= 2) {
    via[d] = spare;
    return validate_chain_extended(xg, k, Mode::kStrong, sa, sb,
                                   std::move(via));
  }
  if (!joinable.empty() && k >= 3) {
    via[d] = b[d];
    const int e = joinable.front();
    for (int s = 0; s < static_cast<int>(xg.alphabets()[e].size()); ++s)
      if (s != a[e]) { via[e] = s; break; }
    return validate_chain_extended(xg, k, Mode::kStrong, sa, sb,
                                   std::move(via));
  }
  return std::nullopt;
}

inline std::optional<std::vector<int>> chain_witness_extended_strong(
    const ExtendedGame& xg, int k, int sa, int sb) {
  const int n = xg.num_senders();
  for (int i = 0; i < n; ++i) {
    if (xg.singleton_pref(i, sa) != Pref::kOne) continue;
    for (int j = 0; j < n; ++j) {
      if (xg.singleton_pref(j, sb) != Pref::kZero) continue;
      if (auto via = strong_witness_extended_for_pair(xg, k, sa, sb, i, j))
        return via;
    }
  }
  bool some_one = false, some_zero = false;
  for (int i = 0; i < n; ++i) {
    some_one = some_one || xg.singleton_pref(i, sa) == Pref::kOne;
    some_zero = some_zero || xg.singleton_pref(i, sb) == Pref::kZero;
  }
  if (!some_one || !some_zero) return std::nullopt;
  for (int i = 0; i < n; ++i) {
    if (xg.singleton_pref(i, sa) != Pref::kOne) continue;
    if (auto via = strong_witness_extended_slack(xg, k, sa, sb, i, true))
      return via;
  }
  for (int j = 0; j < n; ++j) {
    if (xg.singleton_pref(j, sb) != Pref::kZero) continue;
    if (auto via = strong_witness_extended_slack(xg, k, sa, sb, j, false))
      return via;
  }
  return strong_witness_extended_closure(xg, k, sa, sb);
}

}  // namespace internal

// Candidate intermediate profile certifying a two-step path between two
// support entries, or nullopt if no such profile exists.
inline std::optional<std::vector<int>> chain_witness_extended(
    const ExtendedGame& xg, int k, Mode mode, int sa, int sb) {
  check_k_extended(xg, k);
  if (sa == sb) throw ValueError("support entries must differ");
  return mode == Mode::kResilient
             ? internal::chain_witness_extended_resilient(xg, k, sa, sb)
             : internal::chain_witness_extended_strong(xg, k, sa, sb);
}

namespace internal {

inline ExtendedOrderRelation build_order_extended_unchecked(
    const ExtendedGame& xg, int k, Mode mode) {
  const int s = xg.support_size();
  ExtendedOrderRelation rel;
  rel.k = k;
  rel.mode = mode;
  rel.reach.assign(s, std::vector<bool>(s, false));
  for (int i = 0; i < s; ++i) rel.reach[i][i] = true;

  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (i == j) continue;
      if (direct_edge_extended(xg, k, mode, i, j)) {
        rel.edges.emplace_back(i, j);
        rel.reach[i][j] = true;
        rel.witnesses[{i, j}] = WitnessX{true, {}};
        continue;
      }
      if (auto via = chain_witness_extended(xg, k, mode, i, j)) {
        rel.edges.emplace_back(i, j);
        rel.reach[i][j] = true;
        rel.witnesses[{i, j}] = WitnessX{false, std::move(*via)};
      }
    }
  }
  for (int mid = 0; mid < s; ++mid)
    for (int i = 0; i < s; ++i) {
      if (!rel.reach[i][mid]) continue;
      for (int j = 0; j < s; ++j)
        if (rel.reach[mid][j]) rel.reach[i][j] = true;
    }
  return rel;
}

inline std::string describe_witness(const ExtendedGame& xg,
                                    const SeparabilityWitness& w) {
  auto coalition_names = [](const std::vector<int>& c) {
    std::string s = "{";
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i] + 1);
    }
    return s + "}";
  };
  std::string profile;
  for (int i = 0; i < xg.num_senders(); ++i) {
    if (i) profile += ",";
    profile += xg.alphabets()[i][xg.support()[w.entry].profile[i]];
  }
  return "sender " + std::to_string(w.sender + 1) + " at support profile (" +
         profile + "): coalition " + coalition_names(w.coalition_a) +
         " gives " + pref_name(w.pref_a) + ", coalition " +
         coalition_names(w.coalition_b) + " gives " + pref_name(w.pref_b);
}

}  // namespace internal

// Deviation order over the support. Requires strict k-separability, since
// the relation reads preferences off single signals; the thrown error
// carries the disagreeing coalition pair.
inline ExtendedOrderRelation build_order_extended(const ExtendedGame& xg,
                                                  int k, Mode mode) {
  check_k_extended(xg, k);
  SeparabilityReport sep = check_separability(xg, k);
  if (!sep.separable)
    throw ValueError("game is not strictly " + std::to_string(k) +
                     "-separable: " +
                     internal::describe_witness(xg, *sep.witness));
  return internal::build_order_extended_unchecked(xg, k, mode);
}

inline Rational receiver_baseline_extended(const ExtendedGame& xg,
                                           int action) {
  Rational total = 0;
  for (const SupportEntry& e : xg.support())
    total += e.prob * (action == 0 ? e.receiver_u.act0 : e.receiver_u.act1);
  return total;
}

// Outcomes over extended games assign one value per support entry, in
// support order.
inline void validate_outcome_extended(const ExtendedGame& xg,
                                      const Outcome& o) {
  if (static_cast<int>(o.o_star.size()) != xg.support_size())
    throw ValueError("outcome does not assign a value to every support entry");
  for (const Rational& v : o.o_star)
    if (!in_unit_interval(v))
      throw ValueError("outcome value " + format_rational(v) +
                       " outside [0,1]");
}

inline FeasibilityReport check_outcome_extended(
    const ExtendedGame& xg, const ExtendedOrderRelation& rel,
    const Outcome& o) {
  validate_outcome_extended(xg, o);
  FeasibilityReport report;
  report.feasible = true;
  const int s = xg.support_size();
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      if (i == j || !rel.reach[i][j]) continue;
      if (o.o_star[i] > o.o_star[j]) {
        report.feasible = false;
        report.violated_order.push_back(
            OrderViolation{i, j, o.o_star[i], o.o_star[j]});
      }
    }
  Rational follow = 0;
  for (int t = 0; t < s; ++t) {
    const SupportEntry& e = xg.support()[t];
    follow += e.prob * (o.o_star[t] * e.receiver_u.act0 +
                        (1 - o.o_star[t]) * e.receiver_u.act1);
  }
  for (int action = 0; action < kNumActions; ++action) {
    const Rational baseline = receiver_baseline_extended(xg, action);
    if (follow < baseline) {
      report.feasible = false;
      report.violated_receiver.push_back(
          ReceiverICViolation{action, follow, baseline});
    }
  }
  return report;
}

// Mediator over an extended game; fixes the outcome on the support and
// derives off-support behavior from the deviation order. Construction
// demands strict k-separability; `create` additionally checks the outcome
// against the order, `create_unchecked` lets deliberately broken outcomes
// through for verification experiments.
class ExtendedMediatorSpec {
 public:
  static ExtendedMediatorSpec create(const ExtendedGame& xg, int k, Mode mode,
                                     const Outcome& outcome) {
    ExtendedMediatorSpec spec(xg, k, mode, outcome);
    ExtendedOrderRelation rel =
        internal::build_order_extended_unchecked(spec.game_, k, mode);
    for (int i = 0; i < spec.game_.support_size(); ++i)
      for (int j = 0; j < spec.game_.support_size(); ++j) {
        if (i == j || !rel.reach[i][j]) continue;
        if (outcome.o_star[i] > outcome.o_star[j])
          throw ValueError("outcome violates the deviation order: o*(entry " +
                           std::to_string(i) + ") = " +
                           format_rational(outcome.o_star[i]) +
                           " > o*(entry " + std::to_string(j) + ") = " +
                           format_rational(outcome.o_star[j]));
      }
    return spec;
  }

  static ExtendedMediatorSpec create_unchecked(const ExtendedGame& xg, int k,
                                               Mode mode,
                                               const Outcome& outcome) {
    return ExtendedMediatorSpec(xg, k, mode, outcome);
  }

  const ExtendedGame& game() const { return game_; }
  int k() const { return k_; }
  Mode mode() const { return mode_; }
  const Outcome& outcome() const { return outcome_; }

 private:
  ExtendedMediatorSpec(const ExtendedGame& xg, int k, Mode mode,
                       Outcome outcome)
      : game_(xg), k_(k), mode_(mode), outcome_(std::move(outcome)) {
    check_k_extended(game_, k_);
    validate_outcome_extended(game_, outcome_);
    SeparabilityReport sep = check_separability(game_, k_);
    if (!sep.separable)
      throw ValueError("game is not strictly " + std::to_string(k_) +
                       "-separable: " +
                       internal::describe_witness(game_, *sep.witness));
  }

  ExtendedGame game_;
  int k_;
  Mode mode_;
  Outcome outcome_;
};

namespace internal {

inline std::vector<int> bounding_entries(const ExtendedMediatorSpec& spec,
                                         const std::vector<int>& profile,
                                         bool upper) {
  const ExtendedGame& xg = spec.game();
  std::vector<int> out;
  for (int t = 0; t < xg.support_size(); ++t) {
    const std::vector<int>& x = xg.support()[t].profile;
    std::vector<int> diff;
    for (int i = 0; i < xg.num_senders(); ++i)
      if (profile[i] != x[i]) diff.push_back(i);
    if (diff.empty() || static_cast<int>(diff.size()) > spec.k()) continue;
    const Pref wanted = upper ? Pref::kZero : Pref::kOne;
    bool all = true, any = false;
    for (int i : diff) {
      const bool likes = xg.singleton_pref(i, t) == wanted;
      all = all && likes;
      any = any || likes;
    }
    if (spec.mode() == Mode::kStrong &&
        static_cast<int>(diff.size()) < spec.k()) {
      for (int i = 0; i < xg.num_senders() && !any; ++i)
        if (xg.singleton_pref(i, t) == wanted) any = true;
    }
    if (spec.mode() == Mode::kResilient ? all : any) out.push_back(t);
  }
  return out;
}

}  // namespace internal

// Support entries the coalition prefers action 0 at, reachable by changing
// at most k coordinates of an off-support profile; mirrors the base model.
inline std::vector<int> upper_entries(const ExtendedMediatorSpec& spec,
                                      const std::vector<int>& profile) {
  check_extended_profile(spec.game(), profile);
  if (spec.game().support_index(profile) >= 0)
    throw ValueError("support profiles resolve directly; no upper set");
  return internal::bounding_entries(spec, profile, true);
}

inline std::vector<int> lower_entries(const ExtendedMediatorSpec& spec,
                                      const std::vector<int>& profile) {
  check_extended_profile(spec.game(), profile);
  if (spec.game().support_index(profile) >= 0)
    throw ValueError("support profiles resolve directly; no lower set");
  return internal::bounding_entries(spec, profile, false);
}

inline Rational eval_mediator_extended(const ExtendedMediatorSpec& spec,
                                       const std::vector<int>& profile) {
  check_extended_profile(spec.game(), profile);
  const int t = spec.game().support_index(profile);
  if (t >= 0) return spec.outcome().o_star[t];
  const std::vector<int> upper = internal::bounding_entries(spec, profile,
                                                            true);
  if (upper.empty()) return Rational(1);
  const std::vector<int> lower = internal::bounding_entries(spec, profile,
                                                            false);
  if (lower.empty()) return Rational(0);
  Rational lowest_above = spec.outcome().o_star[upper.front()];
  for (int e : upper)
    lowest_above = std::min(lowest_above, spec.outcome().o_star[e]);
  Rational highest_below = spec.outcome().o_star[lower.front()];
  for (int e : lower)
    highest_below = std::max(highest_below, spec.outcome().o_star[e]);
  if (highest_below > lowest_above)
    throw ValueError(
        "mediator midpoint order violated; outcome is not monotone along "
        "the deviation order");
  return (lowest_above + highest_below) / 2;
}

inline VerificationReport verify_receiver_extended(const ExtendedGame& xg,
                                                   const Outcome& o) {
  validate_outcome_extended(xg, o);
  Rational follow = 0, invert = 0;
  for (int t = 0; t < xg.support_size(); ++t) {
    const SupportEntry& e = xg.support()[t];
    const Rational& q = o.o_star[t];
    follow += e.prob * (q * e.receiver_u.act0 + (1 - q) * e.receiver_u.act1);
    invert += e.prob * (q * e.receiver_u.act1 + (1 - q) * e.receiver_u.act0);
  }
  VerificationReport report;
  const std::pair<std::string, Rational> alternatives[] = {
      {"always-1", receiver_baseline_extended(xg, 1)},
      {"always-0", receiver_baseline_extended(xg, 0)},
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

// A deviation that beats honesty in the extended model: each member applies
// a reporting function over its own alphabet.
struct ExtendedCoalitionViolation {
  std::vector<int> members;
  std::vector<std::vector<int>> reports;  // [member position][own signal]
  std::vector<Rational> gains;
};

struct ExtendedVerificationReport {
  bool passed = true;
  std::optional<StrategyViolation> receiver_violation;
  std::optional<ExtendedCoalitionViolation> coalition_violation;
  VerifyStats stats;
};

namespace internal {

inline BigInt extended_search_size(const ExtendedGame& xg, int k) {
  const int n = xg.num_senders();
  BigInt total = 0;
  for (int size = 1; size <= k; ++size) {
    std::vector<int> members(size);
    for (int i = 0; i < size; ++i) members[i] = i;
    do {
      BigInt per = 1;
      for (int i : members) {
        const long long a = static_cast<long long>(xg.alphabets()[i].size());
        per *= pow_big(a, static_cast<int>(a));
      }
      total += per;
    } while (next_combination(members, n));
  }
  return total;
}

}  // namespace internal

// Exhaustive search over coalitions and deterministic per-member reporting
// functions; deviations are lexicographic over the concatenated function
// tables (lowest member first, its alphabet in order).
//
// Profitability mirrors verify_coalitions: weak mode looks for a reporting
// plan with some support entry at which every member strictly gains
// conditional on that entry being realized, strong mode for a plan giving
// some member a strictly positive expected gain (the two readings coincide
// for strong). A weak hit is reported in canonical form — each member's
// table is made honest except on the signal it holds at the violating
// entry — whenever that trimmed plan is fully evaluable, so cross-entry
// cancellation never obscures the reported expected gains.
//
// Deviations touching unevaluable profiles are skipped as in
// verify_coalitions: violations found elsewhere still count, but a pass
// rethrows the evaluation error.
inline ExtendedVerificationReport verify_coalitions_extended(
    const ExtendedGame& xg, int k, Mode mode,
    const ExtendedMediatorSpec& spec, const VerifyCaps& caps = {}) {
  check_k_extended(xg, k);
  const int n = xg.num_senders();
  internal::enforce_cap(internal::extended_search_size(xg, k),
                        caps.max_pairs, "coalition deviation search");

  ExtendedVerificationReport report;
  std::optional<ValueError> skipped;
  std::map<std::vector<int>, std::optional<Rational>> value_memo;
  auto mediator_value =
      [&](const std::vector<int>& p) -> const std::optional<Rational>& {
    auto it = value_memo.find(p);
    if (it == value_memo.end()) {
      std::optional<Rational> value;
      try {
        value = eval_mediator_extended(spec, p);
      } catch (const ValueError& e) {
        if (!skipped) skipped = e;
      }
      it = value_memo.emplace(p, std::move(value)).first;
    }
    return it->second;
  };

  for (int size = 1; size <= k; ++size) {
    std::vector<int> members(size);
    for (int i = 0; i < size; ++i) members[i] = i;
    do {
      ++report.stats.coalitions;
      // reports[t][x] is what member t says on seeing its signal x.
      std::vector<std::vector<int>> reports(size);
      for (int t = 0; t < size; ++t)
        reports[t].assign(xg.alphabets()[members[t]].size(), 0);

      // Expected member gains of a reporting plan, or nothing if the plan
      // reaches an unevaluable profile; fills `hit` (when given) with the
      // first entry at which every member strictly gains conditionally.
      auto plan_gains = [&](const std::vector<std::vector<int>>& plan,
                            int* hit) -> std::optional<std::vector<Rational>> {
        std::vector<Rational> gains(size, 0);
        if (hit) *hit = -1;
        for (int e = 0; e < xg.support_size(); ++e) {
          const SupportEntry& entry = xg.support()[e];
          std::vector<int> deviated = entry.profile;
          for (int t = 0; t < size; ++t)
            deviated[members[t]] = plan[t][entry.profile[members[t]]];
          const std::optional<Rational>& q = mediator_value(deviated);
          if (!q) return std::nullopt;
          const Rational shift = *q - spec.outcome().o_star[e];
          if (shift == 0) continue;
          bool all_gain = true;
          for (int t = 0; t < size; ++t) {
            const UtilityPair& u = entry.sender_u[members[t]];
            gains[t] += entry.prob * shift * (u.act0 - u.act1);
            all_gain = all_gain && shift * (u.act0 - u.act1) > 0;
          }
          if (hit && *hit < 0 && all_gain) *hit = e;
        }
        return gains;
      };

      bool more = true;
      while (more) {
        ++report.stats.deviations;
        int hit = -1;
        std::optional<std::vector<Rational>> gains =
            plan_gains(reports, mode == Mode::kResilient ? &hit : nullptr);
        bool violating = false;
        if (gains) {
          if (mode == Mode::kResilient) {
            violating = hit >= 0;
          } else {
            for (int t = 0; t < size && !violating; ++t)
              violating = (*gains)[t] > 0;
          }
        }
        if (violating) {
          std::vector<std::vector<int>> plan = reports;
          if (mode == Mode::kResilient) {
            // Trim to the canonical form: honest everywhere except on the
            // signals held at the violating entry.
            std::vector<std::vector<int>> canon(size);
            for (int t = 0; t < size; ++t) {
              canon[t].resize(reports[t].size());
              for (int x = 0; x < static_cast<int>(canon[t].size()); ++x)
                canon[t][x] = x;
              const int held = xg.support()[hit].profile[members[t]];
              canon[t][held] = reports[t][held];
            }
            if (std::optional<std::vector<Rational>> canon_gains =
                    plan_gains(canon, nullptr)) {
              plan = std::move(canon);
              gains = std::move(canon_gains);
            }
          }
          report.passed = false;
          report.coalition_violation = ExtendedCoalitionViolation{
              members, std::move(plan), std::move(*gains)};
          return report;
        }
        // Advance the concatenated tables like an odometer, last cell first.
        more = false;
        for (int t = size - 1; t >= 0 && !more; --t)
          for (int x = static_cast<int>(reports[t].size()) - 1;
               x >= 0 && !more; --x) {
            if (++reports[t][x] <
                static_cast<int>(xg.alphabets()[members[t]].size())) {
              more = true;
            } else {
              reports[t][x] = 0;
            }
          }
      }
    } while (internal::next_combination(members, n));
  }
  if (skipped) throw *skipped;
  return report;
}

struct SimulationResultX {
  long long rounds = 0;
  unsigned long long seed = 0;
  std::vector<long long> entry_rounds;
  std::vector<long long> action0_counts;

  Rational frequency(int entry) const {
    if (entry_rounds[entry] == 0) return Rational(0);
    return Rational(action0_counts[entry], entry_rounds[entry]);
  }
};

// Honest-play simulation over an extended game: draws a support entry from
// the signal distribution, then the action from the fixed outcome.
inline SimulationResultX simulate_extended(const ExtendedGame& xg,
                                           const ExtendedMediatorSpec& spec,
                                           long long rounds,
                                           unsigned long long seed) {
  if (rounds < 0) throw ValueError("rounds must be nonnegative");
  const int s = xg.support_size();
  std::vector<Rational> cumulative(s);
  Rational running = 0;
  for (int t = 0; t < s; ++t) {
    running += xg.support()[t].prob;
    cumulative[t] = running;
  }

  SimulationResultX result;
  result.rounds = rounds;
  result.seed = seed;
  result.entry_rounds.assign(s, 0);
  result.action0_counts.assign(s, 0);

  std::mt19937_64 engine(seed);
  for (long long r = 0; r < rounds; ++r) {
    const Rational draw = internal::unit_draw(engine);
    int t = s - 1;
    for (int c = 0; c < s; ++c) {
      if (draw < cumulative[c]) { t = c; break; }
    }
    ++result.entry_rounds[t];
    if (internal::unit_draw(engine) < spec.outcome().o_star[t])
      ++result.action0_counts[t];
  }
  return result;
}

}  // namespace infoagg

#endif  // INFOAGG_EXTENDED_H_
