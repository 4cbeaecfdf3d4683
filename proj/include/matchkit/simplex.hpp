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
#include <vector>

#include "matchkit/rational.hpp"

namespace matchkit::lp {

enum class Status { optimal, infeasible, unbounded };

/// minimize objectives[0]·x, then objectives[1]·x over the optimal face, and
/// so on, subject to constraints·x = rhs and x >= 0.
struct Problem {
    std::vector<std::vector<Rational>> constraints;
    std::vector<Rational> rhs;
    std::vector<std::vector<Rational>> objectives;
};

struct Solution {
    Status status = Status::infeasible;
    std::vector<Rational> x;
    /// Optimal value of each objective, in order.
    std::vector<Rational> objective_values;
    std::size_t pivots = 0;
};

/// Two-phase dense tableau simplex over exact rationals. Bland's rule picks
/// the lowest-index improving column and breaks ratio ties by the lowest
/// basic variable index, so the pivot sequence is deterministic and cannot
/// cycle. After each objective, nonbasic columns with positive reduced cost
/// are frozen at zero, which restricts later objectives to the optimal face.
Solution solve(const Problem& problem);

}  // namespace matchkit::lp
