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

#include "cmpg/rational.hpp"

#include <cstdint>
#include <random>

namespace cmpg {

/**
 * Seeded generator with platform-independent draws. std::mt19937_64's output
 * sequence is fixed by the standard; the distributions in <random> are not,
 * so bounded draws are done here by rejection.
 */
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    /// True with probability p (0 <= p <= 1, denominator below 2^64).
    bool chance(const Rational& p)
    {
        if (p <= 0) return false;
        if (p >= 1) return true;
        return below(p.get_den().get_ui()) < p.get_num().get_ui();
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace cmpg
