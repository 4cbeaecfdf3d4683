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

#include "matchkit/model.hpp"

#include <algorithm>
#include <set>

#include "matchkit/errors.hpp"

namespace matchkit {

namespace {

void check_names(const std::vector<std::string>& firms, const std::vector<std::string>& workers,
                 std::vector<std::string>& issues) {
    std::set<std::string> seen_firms;
    for (const auto& name : firms) {
        if (name.empty()) issues.push_back("firm with empty name");
        else if (!seen_firms.insert(name).second) issues.push_back("duplicate firm id '" + name + "'");
    }
    std::set<std::string> seen_workers;
    for (const auto& name : workers) {
        if (name.empty()) issues.push_back("worker with empty name");
        else if (!seen_workers.insert(name).second) issues.push_back("duplicate worker id '" + name + "'");
        if (seen_firms.contains(name)) issues.push_back("id '" + name + "' names both a firm and a worker");
    }
    if (workers.size() > kMaxWorkers) {
        issues.push_back("at most " + std::to_string(kMaxWorkers) + " workers are supported");
    }
}

void check_set(WorkerSet set, std::size_t worker_count, const std::string& owner,
               std::vector<std::string>& issues) {
    if (set.empty()) issues.push_back(owner + " lists the empty set");
    if (!set.subset_of(WorkerSet::first(worker_count))) {
        issues.push_back(owner + " references an unknown worker");
    }
}

void require_clean(const std::vector<std::string>& issues, const char* what) {
    if (issues.empty()) return;
    std::string message = std::string("invalid ") + what + ":";
    for (const auto& issue : issues) message += "\n  - " + issue;
    throw InputError(message);
}

// Listed position, then the empty set, then everything else.
std::size_t firm_rank_key(const DiscreteMarket& m, std::size_t firm, WorkerSet set) {
    const auto& prefs = m.firm_prefs[firm];
    if (auto r = m.firm_rank(firm, set)) return *r;
    return set.empty() ? prefs.size() : prefs.size() + 1;
}

std::size_t worker_rank_key(const DiscreteMarket& m, std::size_t worker, std::optional<std::size_t> f) {
    const auto& prefs = m.worker_prefs[worker];
    if (!f) return prefs.size();
    if (auto r = m.worker_rank(worker, *f)) return *r;
    return prefs.size() + 1;
}

}  // namespace

const Rational* TuMarket::firm_value(std::size_t firm, WorkerSet set) const {
    for (const auto& entry : firm_valuations.at(firm)) {
        if (entry.workers == set) return &entry.value;
    }
    return nullptr;
}

const Rational* TuMarket::worker_value(std::size_t worker, std::size_t firm) const {
    const auto& values = worker_valuations.at(worker);
    auto it = values.find(firm);
    return it == values.end() ? nullptr : &it->second;
}

std::optional<std::size_t> DiscreteMarket::firm_rank(std::size_t firm, WorkerSet set) const {
    const auto& prefs = firm_prefs.at(firm);
    auto it = std::find(prefs.begin(), prefs.end(), set);
    if (it == prefs.end()) return std::nullopt;
    return static_cast<std::size_t>(it - prefs.begin());
}

std::optional<std::size_t> DiscreteMarket::worker_rank(std::size_t worker, std::size_t firm) const {
    const auto& prefs = worker_prefs.at(worker);
    auto it = std::find(prefs.begin(), prefs.end(), firm);
    if (it == prefs.end()) return std::nullopt;
    return static_cast<std::size_t>(it - prefs.begin());
}

WorkerSet TuMatching::staff(std::size_t firm) const {
    WorkerSet out;
    for (std::size_t w = 0; w < assignment.size(); ++w) {
        if (assignment[w] == firm) out = out.with(w);
    }
    return out;
}

TuMatching TuMatching::unmatched(std::size_t worker_count) {
    return {std::vector<std::optional<std::size_t>>(worker_count), std::vector<Rational>(worker_count)};
}

WorkerSet DiscreteMatching::staff(std::size_t firm) const {
    WorkerSet out;
    for (std::size_t w = 0; w < assignment.size(); ++w) {
        if (assignment[w] == firm) out = out.with(w);
    }
    return out;
}

DiscreteMatching DiscreteMatching::unmatched(std::size_t worker_count) {
    return {std::vector<std::optional<std::size_t>>(worker_count)};
}

std::vector<std::string> validate_market(const TuMarket& m) {
    std::vector<std::string> issues;
    check_names(m.firms, m.workers, issues);
    if (m.firm_valuations.size() != m.firms.size()) {
        issues.push_back("firm valuation table does not match the firm list");
        return issues;
    }
    if (m.worker_valuations.size() != m.workers.size()) {
        issues.push_back("worker valuation table does not match the worker list");
        return issues;
    }
    for (std::size_t f = 0; f < m.firms.size(); ++f) {
        const std::string owner = "firm '" + m.firms[f] + "'";
        std::set<WorkerSet> seen;
        for (const auto& entry : m.firm_valuations[f]) {
            check_set(entry.workers, m.workers.size(), owner, issues);
            if (!seen.insert(entry.workers).second) {
                issues.push_back(owner + " values the set " + describe_set(m.workers, entry.workers) + " twice");
            }
        }
    }
    for (std::size_t w = 0; w < m.workers.size(); ++w) {
        for (const auto& [firm, value] : m.worker_valuations[w]) {
            if (firm >= m.firms.size()) issues.push_back("worker '" + m.workers[w] + "' values an unknown firm");
        }
    }
    return issues;
}

std::vector<std::string> validate_market(const DiscreteMarket& m) {
    std::vector<std::string> issues;
    check_names(m.firms, m.workers, issues);
    if (m.firm_prefs.size() != m.firms.size()) {
        issues.push_back("firm preference table does not match the firm list");
        return issues;
    }
    if (m.worker_prefs.size() != m.workers.size()) {
        issues.push_back("worker preference table does not match the worker list");
        return issues;
    }
    for (std::size_t f = 0; f < m.firms.size(); ++f) {
        const std::string owner = "firm '" + m.firms[f] + "'";
        std::set<WorkerSet> seen;
        for (auto set : m.firm_prefs[f]) {
            check_set(set, m.workers.size(), owner, issues);
            if (!seen.insert(set).second) {
                issues.push_back(owner + " ranks the set " + describe_set(m.workers, set) + " twice");
            }
        }
    }
    for (std::size_t w = 0; w < m.workers.size(); ++w) {
        const std::string owner = "worker '" + m.workers[w] + "'";
        std::set<std::size_t> seen;
        for (auto f : m.worker_prefs[w]) {
            if (f >= m.firms.size()) issues.push_back(owner + " ranks an unknown firm");
            else if (!seen.insert(f).second) issues.push_back(owner + " ranks firm '" + m.firms[f] + "' twice");
        }
    }
    return issues;
}

void require_valid(const TuMarket& market) { require_clean(validate_market(market), "market"); }
void require_valid(const DiscreteMarket& market) { require_clean(validate_market(market), "market"); }

std::vector<std::string> validate_matching(const TuMarket& m, const TuMatching& mu) {
    std::vector<std::string> issues;
    if (mu.assignment.size() != m.workers.size() || mu.prices.size() != m.workers.size()) {
        issues.push_back("matching does not cover exactly the market's workers");
        return issues;
    }
    for (std::size_t w = 0; w < m.workers.size(); ++w) {
        if (mu.assignment[w] && *mu.assignment[w] >= m.firms.size()) {
            issues.push_back("worker '" + m.workers[w] + "' assigned to an unknown firm");
        }
        if (!mu.assignment[w] && mu.prices[w] != 0) {
            issues.push_back("unmatched worker '" + m.workers[w] + "' has a non-zero wage");
        }
    }
    return issues;
}

std::vector<std::string> validate_matching(const DiscreteMarket& m, const DiscreteMatching& mu) {
    std::vector<std::string> issues;
    if (mu.assignment.size() != m.workers.size()) {
        issues.push_back("matching does not cover exactly the market's workers");
        return issues;
    }
    for (std::size_t w = 0; w < m.workers.size(); ++w) {
        if (mu.assignment[w] && *mu.assignment[w] >= m.firms.size()) {
            issues.push_back("worker '" + m.workers[w] + "' assigned to an unknown firm");
        }
    }
    return issues;
}

void enforce_guard(std::size_t firm_count, std::size_t worker_count, const SizeGuard& guard) {
    if (firm_count > guard.max_firms || worker_count > guard.max_workers) {
        throw GuardExceeded("market has " + std::to_string(firm_count) + " firms and " +
                            std::to_string(worker_count) + " workers; limit is " + std::to_string(guard.max_firms) +
                            " and " + std::to_string(guard.max_workers));
    }
}

WorkerSet choice(const DiscreteMarket& market, std::size_t firm, WorkerSet offered) {
    if (firm >= market.firms.size()) throw InputError("unknown firm index " + std::to_string(firm));
    for (auto set : market.firm_prefs[firm]) {
        if (set.subset_of(offered)) return set;
    }
    return {};
}

std::vector<WorkerSet> satisfactory_sets(const DiscreteMarket& market, std::size_t firm) {
    if (firm >= market.firms.size()) throw InputError("unknown firm index " + std::to_string(firm));
    std::vector<WorkerSet> out;
    for (auto set : market.firm_prefs[firm]) {
        if (choice(market, firm, set) == set) out.push_back(set);
    }
    return out;
}

bool firm_prefers(const DiscreteMarket& market, std::size_t firm, WorkerSet s, WorkerSet t) {
    if (s == t) return false;
    return firm_rank_key(market, firm, s) < firm_rank_key(market, firm, t);
}

bool worker_prefers(const DiscreteMarket& market, std::size_t worker, std::optional<std::size_t> f,
                    std::optional<std::size_t> g) {
    if (f == g) return false;
    return worker_rank_key(market, worker, f) < worker_rank_key(market, worker, g);
}

Rational coalition_value(const TuMarket& market, const Coalition& c) {
    if (c.is_singleton()) {
        if (!c.firm && c.workers.size() != 1) throw InputError("a worker coalition must be a singleton");
        return 0;
    }
    const std::size_t f = *c.firm;
    if (f >= market.firms.size()) throw InputError("unknown firm index " + std::to_string(f));
    const Rational* firm_value = market.firm_value(f, c.workers);
    if (firm_value == nullptr) throw InputError("coalition is not acceptable to its firm");
    Rational total = *firm_value;
    for (auto w : c.workers.members()) {
        const Rational* wv = market.worker_value(w, f);
        if (wv == nullptr) throw InputError("coalition contains a worker who rejects its firm");
        total += *wv;
    }
    return total;
}

TuUtilities tu_utilities(const TuMarket& market, const TuMatching& matching) {
    if (auto issues = validate_matching(market, matching); !issues.empty()) {
        throw InputError("malformed matching: " + issues.front());
    }
    TuUtilities out{std::vector<Rational>(market.firms.size()), std::vector<Rational>(market.workers.size())};
    for (std::size_t f = 0; f < market.firms.size(); ++f) {
        const WorkerSet staff = matching.staff(f);
        if (staff.empty()) continue;
        const Rational* v = market.firm_value(f, staff);
        if (v == nullptr) {
            throw InputError("firm '" + market.firms[f] + "' is matched with an unacceptable set");
        }
        Rational u = *v;
        for (auto w : staff.members()) u -= matching.prices[w];
        out.firms[f] = u;
    }
    for (std::size_t w = 0; w < market.workers.size(); ++w) {
        const auto& f = matching.assignment[w];
        if (!f) continue;
        const Rational* v = market.worker_value(w, *f);
        if (v == nullptr) {
            throw InputError("worker '" + market.workers[w] + "' is matched with an unacceptable firm");
        }
        out.workers[w] = *v + matching.prices[w];
    }
    return out;
}

std::string describe_set(const std::vector<std::string>& worker_names, WorkerSet set) {
    std::string out = "{";
    bool first = true;
    for (auto w : set.members()) {
        if (!first) out += ",";
        out += w < worker_names.size() ? worker_names[w] : "#" + std::to_string(w);
        first = false;
    }
    return out + "}";
}

std::string describe_coalition(const std::vector<std::string>& firm_names,
                               const std::vector<std::string>& worker_names, const Coalition& c) {
    if (!c.firm) return describe_set(worker_names, c.workers);
    std::string out = "{" + firm_names.at(*c.firm);
    for (auto w : c.workers.members()) out += "," + worker_names.at(w);
    return out + "}";
}

}  // namespace matchkit
