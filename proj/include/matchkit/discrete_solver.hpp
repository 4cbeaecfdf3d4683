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
#include <utility>
#include <vector>

#include "matchkit/model.hpp"

namespace matchkit {

/// Firm f and set S with f ⪰_w mu(w) for all w in S and S ≻_f mu(f).
struct BlockingCoalition {
    std::size_t firm = 0;
    WorkerSet workers;

    auto operator<=>(const BlockingCoalition&) const = default;
};

struct DiscreteViolation {
    enum class Kind { malformed, worker_irrational, firm_irrational, blocking };
    Kind kind = Kind::malformed;
    std::string description;
    std::optional<AgentId> agent;
    std::optional<BlockingCoalition> coalition;
};

struct DiscreteVerdict {
    std::vector<DiscreteViolation> violations;
    bool holds() const { return violations.empty(); }
};

/// mu(w) ⪰_w ø for all workers and mu(f) = Ch_f(mu(f)) for all firms. A
/// structurally broken matching yields malformed violations only.
DiscreteVerdict is_individually_rational(const DiscreteMarket& market, const DiscreteMatching& matching);

/// Scans firms in index order. For firm f, T_f collects the workers who
/// weakly prefer f to their current match (an unacceptable firm is never
/// weakly preferred unless it is the current match); the first firm whose
/// Ch_f(T_f) differs from mu(f) blocks with that set. Throws InputError for
/// a malformed matching.
std::optional<BlockingCoalition> find_blocking_coalition(const DiscreteMarket& market,
                                                         const DiscreteMatching& matching);

DiscreteVerdict check_stable_discrete(const DiscreteMarket& market, const DiscreteMatching& matching);

/// Every stable matching. Firms are visited in order, each taking the empty
/// set first and then its satisfactory sets in preference order. Throws
/// GuardExceeded above the guard.
std::vector<DiscreteMatching> enumerate_stable_matchings(const DiscreteMarket& market, const SizeGuard& guard = {});

struct DynamicsMove {
    enum class Kind { quit, block };
    Kind kind = Kind::block;
    /// Quitting worker, for quit moves.
    std::size_t worker = 0;
    /// Applied coalition, for block moves.
    BlockingCoalition coalition;
};

/// Sequence of matchings produced by repeatedly resolving the current
/// instability. moves[i] turns states[i] into states[i + 1].
struct DynamicsTrace {
    enum class Outcome { stable, cycle, budget_exhausted };

    std::vector<DiscreteMatching> states;
    std::vector<DynamicsMove> moves;
    Outcome outcome = Outcome::budget_exhausted;
    /// Index of the stable state, for Outcome::stable.
    std::size_t stable_index = 0;
    /// states[first] == states[second] with first < second, for Outcome::cycle.
    std::pair<std::size_t, std::size_t> revisit{0, 0};
};

/// Each step either lets the lowest-index worker matched to an unacceptable
/// firm quit, or applies find_blocking_coalition's block: the firm keeps
/// exactly the coalition, its other workers become unmatched and poached
/// workers leave their old firms. Stops on stability, on revisiting a
/// state, or after max_steps moves.
DynamicsTrace run_blocking_dynamics(const DiscreteMarket& market, const DiscreteMatching& start,
                                    std::size_t max_steps);

}  // namespace matchkit
