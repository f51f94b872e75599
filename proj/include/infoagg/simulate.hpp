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

#ifndef INFOAGG_SIMULATE_H_
#define INFOAGG_SIMULATE_H_

#include <random>
#include <vector>

#include "infoagg/game.hpp"
#include "infoagg/mediator.hpp"

namespace infoagg {

struct SimulationResult {
  long long rounds = 0;
  unsigned long long seed = 0;
  std::vector<long long> state_rounds;    // rounds in which each state drew
  std::vector<long long> action0_counts;  // action-0 plays per state

  // Empirical action-0 frequency in a state, exact; 0 for unseen states.
  Rational frequency(int state) const {
    if (state_rounds[state] == 0) return Rational(0);
    return Rational(action0_counts[state], state_rounds[state]);
  }
};

namespace internal {

// Uniform rational in [0, 1) with 53 random bits, so threshold comparisons
// against exact probabilities are themselves exact and reproducible.
inline Rational unit_draw(std::mt19937_64& engine) {
  const unsigned long long bits = engine() >> 11;
  return Rational(BigInt(bits), BigInt(1) << 53);
}

}  // namespace internal

// Plays `rounds` honest rounds: draws a state from the prior, reveals the
// mediator value for the all-honest profile, then draws the receiver's
// action with that probability of action 0. Identical seeds give identical
// tallies on every platform.
inline SimulationResult simulate(const Game& g, const MediatorSpec& spec,
                                 long long rounds, unsigned long long seed) {
  if (rounds < 0) throw ValueError("rounds must be nonnegative");
  const int m = g.num_states();
  std::vector<Rational> cumulative(m);
  Rational running = 0;
  for (int w = 0; w < m; ++w) {
    running += g.prior()[w];
    cumulative[w] = running;
  }
  std::vector<Rational> honest(m);
  for (int w = 0; w < m; ++w)
    honest[w] = eval_mediator(spec, pure_profile(g, w));

  SimulationResult result;
  result.rounds = rounds;
  result.seed = seed;
  result.state_rounds.assign(m, 0);
  result.action0_counts.assign(m, 0);

  std::mt19937_64 engine(seed);
  for (long long r = 0; r < rounds; ++r) {
    const Rational state_draw = internal::unit_draw(engine);
    int w = m - 1;  // the draw is < 1 = last cumulative, so this terminates
    for (int s = 0; s < m; ++s) {
      if (state_draw < cumulative[s]) { w = s; break; }
    }
    ++result.state_rounds[w];
    if (internal::unit_draw(engine) < honest[w]) ++result.action0_counts[w];
  }
  return result;
}

}  // namespace infoagg

#endif  // INFOAGG_SIMULATE_H_
