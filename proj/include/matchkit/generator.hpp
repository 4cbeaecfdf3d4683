// Copyright 2026 The matchkit Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>

#include "matchkit/model.hpp"
#include "matchkit/roadmap.hpp"

namespace matchkit {

/// xorshift64* generator, seeded through one splitmix64 step:
///   x ^= x >> 12; x ^= x << 25; x ^= x >> 27; output x * 0x2545F4914F6CDD1D.
class Xorshift64Star {
 public:
    explicit Xorshift64Star(std::uint64_t seed);

    std::uint64_t next();
    /// Uniform in [0, bound), by rejection. bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi);
    /// True with probability p, compared on 53 bits.
    bool chance(double p);

 private:
    std::uint64_t state_;
};

struct GenParams {
    std::uint64_t seed = 1;
    std::size_t firm_count = 3;
    std::size_t worker_count = 4;
    std::size_t max_acceptable_sets_per_firm = 3;
    std::size_t max_set_size = 2;
    /// Values are n/d with 1 <= d <= max_denominator and value_min <= n/d <= value_max.
    Rational value_min = 0;
    Rational value_max = 10;
    std::size_t max_denominator = 4;
    /// Probability that a worker finds a given firm acceptable.
    double acceptability_density = 1.0;
    /// Roadmap instances only.
    std::size_t technology_count = 6;
};

/// Largest denominator gen_* accept.
inline constexpr std::size_t kMaxDenominator = 8;

/// Throws InputError for impossible parameters and GuardExceeded when the
/// counts exceed `guard`.
void validate_params(const GenParams& p, const SizeGuard& guard = {});

/// Each firm gets between 1 and max_acceptable_sets_per_firm distinct sets
/// (fewer when the workers run out of distinct sets).
TuMarket gen_tu_market(const GenParams& p);
DiscreteMarket gen_discrete_market(const GenParams& p);

enum class MarketKind { tu, discrete };

struct RoadmapInstance {
    Roadmap roadmap;
    std::variant<TuMarket, DiscreteMarket> market;
};

/// Random directed tree; each worker engages along a random directed path,
/// firms own vertex-disjoint random paths and draw their acceptable sets from
/// the nonempty W^v on their own path (max_set_size is not used). Throws
/// InputError when no disjoint carving is found within the retry budget.
RoadmapInstance gen_roadmap_instance(const GenParams& p, MarketKind kind);

}  // namespace matchkit
