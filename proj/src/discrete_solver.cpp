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

#include "matchkit/discrete_solver.hpp"

#include <map>

#include "matchkit/errors.hpp"

namespace matchkit {

namespace {

void require_matching(const DiscreteMarket& market, const DiscreteMatching& matching) {
    if (auto issues = validate_matching(market, matching); !issues.empty()) {
        throw InputError("malformed matching: " + issues.front());
    }
}

// f ⪰_w mu(w)
bool weakly_prefers(const DiscreteMarket& market, std::size_t worker, std::size_t firm,
                    const std::optional<std::size_t>& current) {
    if (current == firm) return true;
    return market.worker_accepts(worker, firm) && worker_prefers(market, worker, firm, current);
}

std::optional<std::size_t> first_unacceptable(const DiscreteMarket& market, const DiscreteMatching& matching) {
    for (std::size_t w = 0; w < market.workers.size(); ++w) {
        const auto& f = matching.assignment[w];
        if (f && !market.worker_accepts(w, *f)) return w;
    }
    return std::nullopt;
}

class StableSearch {
 public:
    explicit StableSearch(const DiscreteMarket& m) : market_(m), current_(DiscreteMatching::unmatched(m.workers.size())) {
        options_.resize(m.firms.size());
        for (std::size_t f = 0; f < m.firms.size(); ++f) {
            for (auto set : satisfactory_sets(m, f)) {
                bool accepted = true;
                for (auto w : set.members()) accepted = accepted && m.worker_accepts(w, f);
                if (accepted) options_[f].push_back(set);
            }
        }
    }

    std::vector<DiscreteMatching> run() {
        recurse(0, WorkerSet{});
        return std::move(found_);
    }

 private:
    void recurse(std::size_t firm, WorkerSet used) {
        if (firm == options_.size()) {
            if (check_stable_discrete(market_, current_).holds()) found_.push_back(current_);
            return;
        }
        recurse(firm + 1, used);
        for (auto set : options_[firm]) {
            if (set.intersects(used)) continue;
            for (auto w : set.members()) current_.assignment[w] = firm;
            recurse(firm + 1, used | set);
            for (auto w : set.members()) current_.assignment[w] = std::nullopt;
        }
    }

    const DiscreteMarket& market_;
    std::vector<std::vector<WorkerSet>> options_;
    DiscreteMatching current_;
    std::vector<DiscreteMatching> found_;
};

}  // namespace

DiscreteVerdict is_individually_rational(const DiscreteMarket& market, const DiscreteMatching& matching) {
    DiscreteVerdict verdict;
    using Kind = DiscreteViolation::Kind;
    for (auto& issue : validate_matching(market, matching)) {
        verdict.violations.push_back({Kind::malformed, std::move(issue), std::nullopt, std::nullopt});
    }
    if (!verdict.holds()) return verdict;
    for (std::size_t w = 0; w < market.workers.size(); ++w) {
        const auto& f = matching.assignment[w];
        if (f && !market.worker_accepts(w, *f)) {
            verdict.violations.push_back({Kind::worker_irrational,
                                          "worker '" + market.workers[w] + "' prefers being unmatched to firm '" +
                                              market.firms[*f] + "'",
                                          AgentId{AgentKind::worker, w}, std::nullopt});
        }
    }
    for (std::size_t f = 0; f < market.firms.size(); ++f) {
        const WorkerSet staff = matching.staff(f);
        const WorkerSet chosen = choice(market, f, staff);
        if (chosen != staff) {
            verdict.violations.push_back({Kind::firm_irrational,
                                          "firm '" + market.firms[f] + "' would keep only " +
                                              describe_set(market.workers, chosen) + " out of " +
                                              describe_set(market.workers, staff),
                                          AgentId{AgentKind::firm, f}, std::nullopt});
        }
    }
    return verdict;
}

std::optional<BlockingCoalition> find_blocking_coalition(const DiscreteMarket& market,
                                                         const DiscreteMatching& matching) {
    require_matching(market, matching);
    for (std::size_t f = 0; f < market.firms.size(); ++f) {
        WorkerSet willing;
        for (std::size_t w = 0; w < market.workers.size(); ++w) {
            if (weakly_prefers(market, w, f, matching.assignment[w])) willing = willing.with(w);
        }
        const WorkerSet chosen = choice(market, f, willing);
        // mu(f) ⊆ T_f, so Ch_f(T_f) ⪰_f mu(f) and any difference is strict.
        if (chosen != matching.staff(f)) return BlockingCoalition{f, chosen};
    }
    return std::nullopt;
}

DiscreteVerdict check_stable_discrete(const DiscreteMarket& market, const DiscreteMatching& matching) {
    DiscreteVerdict verdict = is_individually_rational(market, matching);
    if (!verdict.holds()) return verdict;
    if (auto block = find_blocking_coalition(market, matching)) {
        verdict.violations.push_back({DiscreteViolation::Kind::blocking,
                                      "firm '" + market.firms[block->firm] + "' and " +
                                          describe_set(market.workers, block->workers) + " block",
                                      AgentId{AgentKind::firm, block->firm}, *block});
    }
    return verdict;
}

std::vector<DiscreteMatching> enumerate_stable_matchings(const DiscreteMarket& market, const SizeGuard& guard) {
    require_valid(market);
    enforce_guard(market.firms.size(), market.workers.size(), guard);
    return StableSearch(market).run();
}

DynamicsTrace run_blocking_dynamics(const DiscreteMarket& market, const DiscreteMatching& start,
                                    std::size_t max_steps) {
    require_valid(market);
    require_matching(market, start);
    DynamicsTrace trace;
    trace.states.push_back(start);
    std::map<DiscreteMatching, std::size_t> seen{{start, 0}};

    while (true) {
        const std::size_t index = trace.states.size() - 1;
        DiscreteMatching next = trace.states.back();
        DynamicsMove move;
        if (auto w = first_unacceptable(market, next)) {
            move.kind = DynamicsMove::Kind::quit;
            move.worker = *w;
            next.assignment[*w] = std::nullopt;
        } else if (auto block = find_blocking_coalition(market, next)) {
            move.kind = DynamicsMove::Kind::block;
            move.coalition = *block;
            for (auto w : next.staff(block->firm).members()) next.assignment[w] = std::nullopt;
            for (auto w : block->workers.members()) next.assignment[w] = block->firm;
        } else {
            trace.outcome = DynamicsTrace::Outcome::stable;
            trace.stable_index = index;
            return trace;
        }
        if (trace.moves.size() == max_steps) {
            trace.outcome = DynamicsTrace::Outcome::budget_exhausted;
            return trace;
        }
        trace.moves.push_back(move);
        trace.states.push_back(next);
        auto [it, inserted] = seen.emplace(std::move(next), index + 1);
        if (!inserted) {
            trace.outcome = DynamicsTrace::Outcome::cycle;
            trace.revisit = {it->second, index + 1};
            return trace;
        }
    }
}

}  // namespace matchkit
