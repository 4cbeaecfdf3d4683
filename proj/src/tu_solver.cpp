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

#include "matchkit/tu_solver.hpp"

#include "matchkit/errors.hpp"
#include "matchkit/simplex.hpp"

namespace matchkit {

namespace {

bool acceptable_to_members(const TuMarket& market, std::size_t firm, WorkerSet set) {
    for (auto w : set.members()) {
        if (!market.worker_accepts(w, firm)) return false;
    }
    return true;
}

class PartitionSearch {
 public:
    explicit PartitionSearch(const TuMarket& m) : market_(m) {
        options_.resize(m.firms.size());
        for (std::size_t f = 0; f < m.firms.size(); ++f) {
            for (const auto& entry : m.firm_valuations[f]) {
                if (!acceptable_to_members(m, f, entry.workers)) continue;
                options_[f].push_back({entry.workers, coalition_value(m, Coalition::firm_with(f, entry.workers))});
            }
        }
        current_.assign(m.firms.size(), std::nullopt);
    }

    Partition run() {
        recurse(0, WorkerSet{}, 0);
        Partition out{best_value_, std::vector<std::optional<std::size_t>>(market_.workers.size())};
        for (std::size_t f = 0; f < best_.size(); ++f) {
            if (!best_[f]) continue;
            for (auto w : options_[f][*best_[f]].workers.members()) out.assignment[w] = f;
        }
        return out;
    }

 private:
    struct Option {
        WorkerSet workers;
        Rational value;
    };

    void recurse(std::size_t firm, WorkerSet used, const Rational& value) {
        if (firm == options_.size()) {
            if (!found_ || value > best_value_) {
                found_ = true;
                best_value_ = value;
                best_ = current_;
            }
            return;
        }
        current_[firm] = std::nullopt;
        recurse(firm + 1, used, value);
        for (std::size_t i = 0; i < options_[firm].size(); ++i) {
            const auto& option = options_[firm][i];
            if (option.workers.intersects(used)) continue;
            current_[firm] = i;
            recurse(firm + 1, used | option.workers, value + option.value);
        }
        current_[firm] = std::nullopt;
    }

    const TuMarket& market_;
    std::vector<std::vector<Option>> options_;
    std::vector<std::optional<std::size_t>> current_;
    std::vector<std::optional<std::size_t>> best_;
    Rational best_value_;
    bool found_ = false;
};

}  // namespace

bool TuLpProblem::covers(std::size_t coalition, std::size_t agent) const {
    const auto& c = coalitions.at(coalition);
    if (agent < firm_count) return c.firm == agent;
    return c.workers.contains(agent - firm_count);
}

WorkerSet Partition::staff(std::size_t firm) const {
    WorkerSet out;
    for (std::size_t w = 0; w < assignment.size(); ++w) {
        if (assignment[w] == firm) out = out.with(w);
    }
    return out;
}

std::vector<Coalition> potential_coalitions(const TuMarket& market) {
    std::vector<Coalition> out;
    for (std::size_t f = 0; f < market.firms.size(); ++f) out.push_back(Coalition::of_firm(f));
    for (std::size_t w = 0; w < market.workers.size(); ++w) out.push_back(Coalition::of_worker(w));
    for (std::size_t f = 0; f < market.firms.size(); ++f) {
        for (const auto& entry : market.firm_valuations[f]) {
            if (acceptable_to_members(market, f, entry.workers)) out.push_back(Coalition::firm_with(f, entry.workers));
        }
    }
    return out;
}

TuLpProblem make_lp_problem(const TuMarket& market) {
    TuLpProblem p{market.firms.size(), market.workers.size(), potential_coalitions(market), {}};
    for (const auto& c : p.coalitions) p.values.push_back(coalition_value(market, c));
    return p;
}

Partition max_partition_value(const TuMarket& market, const SizeGuard& guard) {
    require_valid(market);
    enforce_guard(market.firms.size(), market.workers.size(), guard);
    return PartitionSearch(market).run();
}

LpSolution solve_lp(const TuLpProblem& problem) {
    const std::size_t n = problem.agent_count();
    const std::size_t m = problem.coalitions.size();
    if (problem.values.size() != m) throw InputError("coalition values do not match the coalition list");

    // Primal: x(S) - s_S = V(S) with x, s >= 0; x >= 0 is implied by the
    // singleton rows.
    lp::Problem primal;
    primal.constraints.assign(m, std::vector<Rational>(n + m));
    primal.rhs = problem.values;
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            if (problem.covers(c, i)) primal.constraints[c][i] = 1;
        }
        primal.constraints[c][n + c] = -1;
    }
    std::vector<Rational> total(n + m);
    for (std::size_t i = 0; i < n; ++i) total[i] = 1;
    primal.objectives.push_back(total);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> unit(n + m);
        unit[i] = 1;
        primal.objectives.push_back(std::move(unit));
    }
    const auto primal_solution = lp::solve(primal);
    if (primal_solution.status != lp::Status::optimal) {
        throw InternalError("cover LP reported infeasible or unbounded");
    }

    // Dual: maximise V·delta s.t. sum delta_S chi_S = 1, delta >= 0.
    lp::Problem dual;
    dual.constraints.assign(n, std::vector<Rational>(m));
    dual.rhs.assign(n, 1);
    std::vector<Rational> negated(m);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            if (problem.covers(c, i)) dual.constraints[i][c] = 1;
        }
        negated[c] = -problem.values[c];
    }
    dual.objectives.push_back(std::move(negated));
    const auto dual_solution = lp::solve(dual);
    if (dual_solution.status != lp::Status::optimal) {
        throw InternalError("fractional cover LP reported infeasible or unbounded");
    }

    LpSolution out;
    out.primal.assign(primal_solution.x.begin(), primal_solution.x.begin() + static_cast<std::ptrdiff_t>(n));
    out.primal_value = primal_solution.objective_values.front();
    out.dual.coalitions = problem.coalitions;
    out.dual.weights = dual_solution.x;
    out.dual.value = -dual_solution.objective_values.front();
    if (out.primal_value != out.dual.value) throw InternalError("primal and dual optima differ");
    return out;
}

std::vector<std::string> certificate_issues(const TuLpProblem& problem, const LpSolution& s) {
    std::vector<std::string> issues;
    const std::size_t n = problem.agent_count();
    const std::size_t m = problem.coalitions.size();
    if (s.primal.size() != n || s.dual.weights.size() != m) {
        issues.push_back("certificate dimensions do not match the problem");
        return issues;
    }
    Rational primal_value = 0;
    for (const auto& x : s.primal) primal_value += x;
    if (primal_value != s.primal_value) issues.push_back("reported primal value is not sum x(i)");
    std::vector<Rational> coverage(n);
    Rational dual_value = 0;
    for (std::size_t c = 0; c < m; ++c) {
        const Rational& delta = s.dual.weights[c];
        if (delta < 0) issues.push_back("negative dual weight on coalition " + std::to_string(c));
        Rational load = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!problem.covers(c, i)) continue;
            load += s.primal[i];
            coverage[i] += delta;
        }
        if (load < problem.values[c]) issues.push_back("primal constraint violated on coalition " + std::to_string(c));
        if (delta > 0 && load != problem.values[c]) {
            issues.push_back("complementary slackness fails on coalition " + std::to_string(c));
        }
        dual_value += delta * problem.values[c];
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (coverage[i] != 1) issues.push_back("agent " + std::to_string(i) + " is not covered exactly once");
    }
    if (dual_value != s.dual.value) issues.push_back("reported dual value is not sum delta_S V(S)");
    if (primal_value != dual_value) issues.push_back("primal and dual values differ");
    return issues;
}

TuStabilityReport find_stable_matching_tu(const TuMarket& market, const SizeGuard& guard) {
    require_valid(market);
    enforce_guard(market.firms.size(), market.workers.size(), guard);
    const TuLpProblem problem = make_lp_problem(market);
    if (problem.coalitions.size() > guard.max_coalitions) {
        throw GuardExceeded("market has " + std::to_string(problem.coalitions.size()) +
                            " potential coalitions; limit is " + std::to_string(guard.max_coalitions));
    }

    TuStabilityReport report;
    report.optimal_partition = PartitionSearch(market).run();
    report.partition_value = report.optimal_partition.value;
    report.lp = solve_lp(problem);
    report.lp_value = report.lp.primal_value;
    if (report.lp_value < report.partition_value) throw InternalError("LP value below the best partition");

    if (report.lp_value > report.partition_value) {
        report.outcome = report.lp.dual;
        return report;
    }

    const std::size_t firms = market.firms.size();
    TuMatching matching{report.optimal_partition.assignment, std::vector<Rational>(market.workers.size())};
    for (std::size_t w = 0; w < market.workers.size(); ++w) {
        const Rational& x = report.lp.primal[firms + w];
        if (const auto& f = matching.assignment[w]) {
            matching.prices[w] = x - *market.worker_value(w, *f);
        } else if (x != 0) {
            throw InternalError("unmatched worker has positive LP payoff at a tight optimum");
        }
    }
    const auto utilities = tu_utilities(market, matching);
    for (std::size_t f = 0; f < firms; ++f) {
        if (utilities.firms[f] != report.lp.primal[f]) {
            throw InternalError("firm payoff disagrees with its binding coalition constraint");
        }
    }
    if (!check_stable_tu(market, matching).stable()) {
        throw InternalError("constructed matching failed the stability check");
    }
    report.outcome = std::move(matching);
    return report;
}

TuStabilityCheck check_stable_tu(const TuMarket& market, const TuMatching& matching) {
    TuStabilityCheck check;
    using Kind = TuViolation::Kind;
    for (auto& issue : validate_matching(market, matching)) {
        check.violations.push_back({Kind::malformed, std::move(issue), std::nullopt, 0});
    }
    if (!check.stable()) return check;

    for (std::size_t w = 0; w < market.workers.size(); ++w) {
        const auto& f = matching.assignment[w];
        if (f && !market.worker_accepts(w, *f)) {
            check.violations.push_back({Kind::unacceptable_pairing,
                                        "worker '" + market.workers[w] + "' is matched with unacceptable firm '" +
                                            market.firms[*f] + "'",
                                        Coalition::of_worker(w), 0});
        }
    }
    for (std::size_t f = 0; f < market.firms.size(); ++f) {
        const WorkerSet staff = matching.staff(f);
        if (!staff.empty() && market.firm_value(f, staff) == nullptr) {
            check.violations.push_back({Kind::unacceptable_pairing,
                                        "firm '" + market.firms[f] + "' is matched with unacceptable set " +
                                            describe_set(market.workers, staff),
                                        Coalition::firm_with(f, staff), 0});
        }
    }
    if (!check.stable()) return check;

    const auto u = tu_utilities(market, matching);
    for (std::size_t f = 0; f < market.firms.size(); ++f) {
        if (u.firms[f] < 0) {
            check.violations.push_back({Kind::negative_utility,
                                        "firm '" + market.firms[f] + "' has utility " + to_string(u.firms[f]),
                                        Coalition::of_firm(f), -u.firms[f]});
        }
    }
    for (std::size_t w = 0; w < market.workers.size(); ++w) {
        if (u.workers[w] < 0) {
            check.violations.push_back({Kind::negative_utility,
                                        "worker '" + market.workers[w] + "' has utility " + to_string(u.workers[w]),
                                        Coalition::of_worker(w), -u.workers[w]});
        }
    }
    for (const auto& c : potential_coalitions(market)) {
        if (c.is_singleton()) continue;
        Rational total = u.firms[*c.firm];
        for (auto w : c.workers.members()) total += u.workers[w];
        const Rational value = coalition_value(market, c);
        if (total < value) {
            const Rational deficit = value - total;
            check.violations.push_back({Kind::blocking,
                                        "coalition " + describe_coalition(market.firms, market.workers, c) +
                                            " can share " + to_string(value) + " but its members hold " +
                                            to_string(total),
                                        c, deficit});
        }
    }
    return check;
}

}  // namespace matchkit
