/*
 * Copyright 2026 The cmpg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "cmpg/errors.hpp"
#include "cmpg/solver.hpp"
#include "cmpg/strategy.hpp"

#include <cstdint>
#include <memory>

namespace cmpg {

/**
 * Mixing weight for the j-th layer below the top of the Y-chain (j >= 2):
 *
 *   n^{-(n^{j-1}-1)/(n-1)} * (m/delta)^{1-(n^j-1)/(n-1)} * eps^{(n^j-1)/(n-1)}
 *
 * For n = 1 the geometric sums are replaced by their limits j-1 and j.
 */
Rational beta(unsigned j, unsigned n, unsigned m, const Rational& delta_min, const Rational& eps);

/// The bound (n*m/(delta*eps))^{n^{n+2}} on the patience of the eps-optimal
/// stationary strategy, compared without materializing it.
bool patience_within_bound(const Rational& patience, unsigned n, unsigned m, const Rational& delta_min, const Rational& eps);

/**
 * Stationary player-1 strategy that keeps play inside X* and secures average
 * at least 1 - eps there. Layer k (states in Y_{l-k} \ Y_{l-k-1}) mixes its
 * good actions with the other allowed actions at weight eps for k = 0 and
 * beta(k+1) below. Uniform outside X*.
 */
StationaryStrategy synth_eps_stationary(const GameStructure& g, const SolveReport& almost, const Rational& eps);

class HorizonExceeded : public BoundExceeded
{
  public:
    HorizonExceeded(std::uint64_t cap, const Rational& best_average)
        : BoundExceeded("horizon cap " + std::to_string(cap) + " reached; best certified average " + to_string(best_average)),
          best_average_(best_average)
    {
    }
    const Rational& best_average() const { return best_average_; }

  private:
    Rational best_average_;
};

struct HorizonOptions
{
    std::uint64_t cap = std::uint64_t(1) << 24;
    unsigned grid_bits = 64; ///< values are rounded down onto this dyadic grid each step
};

/**
 * Smallest T such that T-step value iteration of the minimizing player-2 MDP
 * (sigma fixed) certifies expected average reward >= 1 - 2*eps from every
 * state of X*. Throws HorizonExceeded past the cap.
 */
std::uint64_t compute_horizon(const GameStructure& g, const StationaryStrategy& sigma, const StateSet& Xstar, const Rational& eps,
                              const HorizonOptions& opts = {});

/**
 * Markov player-1 strategy: segment i plays synth_eps_stationary with
 * eps_i = 1/4 * 2^{-(i-1)} for compute_horizon(eps_i) rounds. Segments are
 * built on demand.
 */
RoundIndexedStrategy synth_markov_almost(std::shared_ptr<const GameStructure> g, const SolveReport& almost,
                                         const HorizonOptions& opts = {});

/// (delta_min/m)^{n-1} / m
Rational spoiler_gap(const GameStructure& g);

/**
 * Markov player-2 strategy along the outer chain S = X_0 ⊃ X_1 ⊃ ... ⊃ X_k = X*.
 * On S \ X_1 it plays uniformly over the actions outside Bad2(s,S,X_1); on
 * X_{j-1} \ X_j at round i it plays uniformly over all actions with weight
 * eps/2^i and uniformly outside Bad2(s,X_{j-1},X_j) otherwise. Uniform on X*.
 */
RoundIndexedStrategy synth_spoiler_markov(std::shared_ptr<const GameStructure> g, const SolveReport& almost,
                                          const Rational& eps = make_rational(1, 2));

/// Round-1 layer of synth_spoiler_markov as a stationary strategy (the base
/// layer is round-independent).
StationaryStrategy spoiler_round(const GameStructure& g, const SolveReport& almost, const Rational& eps, std::uint64_t round);

/// On S \ Y*: uniform over actions outside Bad2(s,S,Y*). Uniform elsewhere.
StationaryStrategy synth_positive_spoiler_stationary(const GameStructure& g, const SolveReport& positive);

/// Round-k strategy of synth_positive_markov (k >= 1).
StationaryStrategy positive_round(const GameStructure& g, const SolveReport& positive, std::uint64_t k);

/**
 * Markov player-1 strategy for positive winning: in round k, at a state of
 * Y_i \ Y_{i-1} the good actions for (S, Y_{i-1}, Y_i) share 1 - eps_k and the
 * rest share eps_k, eps_k = 1/4 * 2^{-(k-1)}.
 */
RoundIndexedStrategy synth_positive_markov(std::shared_ptr<const GameStructure> g, const SolveReport& positive);

} // namespace cmpg
