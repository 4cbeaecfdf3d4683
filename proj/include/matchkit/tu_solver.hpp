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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "matchkit/model.hpp"

namespace matchkit {

/// min sum_i x(i) s.t. x(S) >= V(S) for every coalition S in I ∪ E.
/// Agents are indexed firms first, then workers.
struct TuLpProblem {
    std::size_t firm_count = 0;
    std::size_t worker_count = 0;
    std::vector<Coalition> coalitions;
    std::vector<Rational> values;

    std::size_t agent_count() const { return firm_count + worker_count; }
    bool covers(std::size_t coalition, std::size_t agent) const;
};

/// Fractional cover: sum_S delta_S chi_S = 1, delta >= 0.
struct DualSolution {
    std::vector<Coalition> coalitions;
    std::vector<Rational> weights;
    Rational value;
};

struct LpSolution {
    /// x~, one entry per agent (firms, then workers).
    std::vector<Rational> primal;
    Rational primal_value;
    DualSolution dual;
};

/// Best integral partition of the agents into coalitions of I ∪ E.
struct Partition {
    Rational value;
    std::vector<std::optional<std::size_t>> assignment;

    WorkerSet staff(std::size_t firm) const;
};

struct TuStabilityReport {
    Rational lp_value;
    Rational partition_value;
    Partition optimal_partition;
    LpSolution lp;
    /// A stable matching when the two values agree, else the fractional
    /// cover whose value exceeds every partition's.
    std::variant<TuMatching, DualSolution> outcome;

    bool stable() const { return std::holds_alternative<TuMatching>(outcome); }
};

struct TuViolation {
    enum class Kind { malformed, unacceptable_pairing, negative_utility, blocking };
    Kind kind = Kind::malformed;
    std::string description;
    std::optional<Coalition> coalition;
    /// V(S) minus the members' total utility, for blocking violations.
    Rational deficit;
};

struct TuStabilityCheck {
    std::vector<TuViolation> violations;
    bool stable() const { return violations.empty(); }
};

/// I (every agent alone, firms first) followed by E, the firm coalitions
/// whose set is acceptable to the firm and whose firm is acceptable to every
/// member, in firm then listing order.
std::vector<Coalition> potential_coalitions(const TuMarket& market);

TuLpProblem make_lp_problem(const TuMarket& market);

/// Exhaustive search over firms in order; each firm tries the empty set and
/// then its acceptable sets in listed order, keeping the first maximiser.
/// Throws GuardExceeded above the guard.
Partition max_partition_value(const TuMarket& market, const SizeGuard& guard = {});

/// Exact primal and dual optima. Among optimal primal points the
/// lexicographically smallest one (firms first, then workers) is returned.
LpSolution solve_lp(const TuLpProblem& problem);

/// Independent re-verification of an LP certificate: primal and dual
/// feasibility, equal objective values, complementary slackness.
std::vector<std::string> certificate_issues(const TuLpProblem& problem, const LpSolution& solution);

TuStabilityReport find_stable_matching_tu(const TuMarket& market, const SizeGuard& guard = {});

/// Individual rationality plus, for every S in E, total member utility at
/// least V(S).
TuStabilityCheck check_stable_tu(const TuMarket& market, const TuMatching& matching);

}  // namespace matchkit
