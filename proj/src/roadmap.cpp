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

#include "matchkit/roadmap.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "matchkit/errors.hpp"

namespace matchkit {

namespace {

std::vector<std::vector<WorkerSet>> acceptable_sets(const TuMarket& market) {
    std::vector<std::vector<WorkerSet>> out;
    for (const auto& sets : market.firm_valuations) {
        auto& row = out.emplace_back();
        for (const auto& s : sets) row.push_back(s.workers);
    }
    return out;
}

std::vector<std::vector<WorkerSet>> acceptable_sets(const DiscreteMarket& market) { return market.firm_prefs; }

// Every acceptable set equals W^v for some vertex on the path.
bool covers(const Roadmap& r, const std::vector<WorkerSet>& sets, const TechnologyPath& p) {
    return std::all_of(sets.begin(), sets.end(), [&](WorkerSet s) {
        return std::any_of(p.vertices.begin(), p.vertices.end(), [&](std::size_t v) { return r.demanded[v] == s; });
    });
}

class PathAssignment {
 public:
    PathAssignment(const std::vector<std::vector<WorkerSet>>& acceptable, const Roadmap& r, std::size_t limit)
        : limit_(limit), used_(r.technologies.size(), false), current_(acceptable.size()) {
        const auto paths = technology_paths(r);
        candidates_.resize(acceptable.size());
        for (std::size_t f = 0; f < acceptable.size(); ++f) {
            if (acceptable[f].empty()) continue;
            for (const auto& p : paths) {
                if (covers(r, acceptable[f], p)) candidates_[f].push_back(p);
            }
            if (candidates_[f].empty() && uncovered_ < 0) uncovered_ = static_cast<long>(f);
        }
        active_ = std::vector<bool>(acceptable.size());
        for (std::size_t f = 0; f < acceptable.size(); ++f) active_[f] = !acceptable[f].empty();
    }

    std::vector<std::vector<std::optional<TechnologyPath>>> run() {
        if (uncovered_ < 0 && limit_ > 0) recurse(0);
        return std::move(found_);
    }

    std::optional<std::size_t> uncovered_firm() const {
        if (uncovered_ < 0) return std::nullopt;
        return static_cast<std::size_t>(uncovered_);
    }

 private:
    bool recurse(std::size_t firm) {
        if (firm == current_.size()) {
            found_.push_back(current_);
            return found_.size() < limit_;
        }
        if (!active_[firm]) return recurse(firm + 1);
        for (const auto& p : candidates_[firm]) {
            if (std::any_of(p.vertices.begin(), p.vertices.end(), [&](std::size_t v) { return used_[v]; })) continue;
            for (auto v : p.vertices) used_[v] = true;
            current_[firm] = p;
            const bool more = recurse(firm + 1);
            current_[firm].reset();
            for (auto v : p.vertices) used_[v] = false;
            if (!more) return false;
        }
        return true;
    }

    std::size_t limit_;
    std::vector<std::vector<TechnologyPath>> candidates_;
    std::vector<bool> active_;
    std::vector<bool> used_;
    std::vector<std::optional<TechnologyPath>> current_;
    std::vector<std::vector<std::optional<TechnologyPath>>> found_;
    long uncovered_ = -1;
};

template <typename Market>
Specialization specialize(const Market& market, const Roadmap& r) {
    require_valid(market);
    require_valid(r);
    if (r.workers != market.workers) throw InputError("roadmap and market list different workers");
    const auto acceptable = acceptable_sets(market);
    PathAssignment search(acceptable, r, 1);
    auto found = search.run();
    Specialization out;
    if (!found.empty()) {
        out.specialized = true;
        out.paths = std::move(found.front());
    } else if (auto f = search.uncovered_firm()) {
        out.reason = "no technology path covers every acceptable set of firm '" + market.firms[*f] + "'";
    } else {
        out.reason = "no choice of covering paths is vertex-disjoint";
    }
    return out;
}

template <typename Market>
std::vector<std::vector<std::optional<TechnologyPath>>> specializations(const Market& market, const Roadmap& r,
                                                                        std::size_t limit) {
    require_valid(market);
    require_valid(r);
    if (r.workers != market.workers) throw InputError("roadmap and market list different workers");
    return PathAssignment(acceptable_sets(market), r, limit).run();
}

template <typename Market>
Theorem3Report report(const Market& market, const Roadmap& r, std::uint64_t budget) {
    Theorem3Report out;
    out.specialization = specialize(market, r);
    for (std::size_t w = 0; w < r.workers.size(); ++w) {
        if (!is_specialist(r, w)) out.non_specialists.push_back(w);
    }
    out.balance = check_balanced(build_hypergraph(market), budget);
    return out;
}

}  // namespace

std::vector<std::string> validate_roadmap(const Roadmap& r) {
    std::vector<std::string> issues;
    const std::size_t n = r.technologies.size();
    if (n == 0) issues.push_back("roadmap has no technologies");
    if (r.demanded.size() != n) issues.push_back("demanded sets do not match the technology list");
    if (r.workers.size() > kMaxWorkers) issues.push_back("more than 64 workers");
    std::set<std::string> names;
    for (const auto& t : r.technologies) {
        if (t.empty()) issues.push_back("empty technology name");
        if (!names.insert(t).second) issues.push_back("duplicate technology '" + t + "'");
    }
    const WorkerSet known = WorkerSet::first(r.workers.size());
    for (std::size_t v = 0; v < std::min(n, r.demanded.size()); ++v) {
        if (!r.demanded[v].subset_of(known)) issues.push_back("technology '" + r.technologies[v] + "' demands an unknown worker");
    }

    // Union-find over the undirected edges: a tree has n - 1 edges and no cycle.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    bool cyclic = false;
    bool out_of_range = false;
    for (const auto& [from, to] : r.edges) {
        if (from >= n || to >= n) {
            out_of_range = true;
            continue;
        }
        if (from == to) {
            issues.push_back("self-loop at '" + r.technologies[from] + "'");
            cyclic = true;
            continue;
        }
        const auto a = find(from);
        const auto b = find(to);
        if (a == b) {
            cyclic = true;
        } else {
            parent[a] = b;
        }
    }
    if (out_of_range) issues.push_back("edge refers to an unknown technology");
    if (cyclic) issues.push_back("underlying undirected graph has a cycle");
    if (!out_of_range && !cyclic && n > 0) {
        std::set<std::size_t> roots;
        for (std::size_t v = 0; v < n; ++v) roots.insert(find(v));
        if (roots.size() > 1) issues.push_back("roadmap is disconnected");
    }
    return issues;
}

void require_valid(const Roadmap& r) {
    const auto issues = validate_roadmap(r);
    if (issues.empty()) return;
    std::string msg = "invalid roadmap:";
    for (const auto& i : issues) msg += "\n  " + i;
    throw InputError(msg);
}

WorkerSubgraph worker_subgraph(const Roadmap& r, std::size_t worker) {
    if (worker >= r.workers.size()) throw InputError("unknown worker index " + std::to_string(worker));
    WorkerSubgraph g;
    for (std::size_t v = 0; v < r.technologies.size(); ++v) {
        if (r.demanded[v].contains(worker)) g.vertices.push_back(v);
    }
    for (std::size_t e = 0; e < r.edges.size(); ++e) {
        const auto& [from, to] = r.edges[e];
        if (r.demanded[from].contains(worker) && r.demanded[to].contains(worker)) g.edges.push_back(e);
    }
    return g;
}

bool is_specialist(const Roadmap& r, std::size_t worker) {
    const WorkerSubgraph g = worker_subgraph(r, worker);
    if (g.vertices.empty()) return true;
    // A subforest of a tree is a directed path iff it is connected and no
    // vertex has two incoming or two outgoing edges.
    if (g.edges.size() + 1 != g.vertices.size()) return false;
    std::vector<int> in(r.technologies.size(), 0);
    std::vector<int> out(r.technologies.size(), 0);
    for (auto e : g.edges) {
        if (++out[r.edges[e].first] > 1 || ++in[r.edges[e].second] > 1) return false;
    }
    return true;
}

std::vector<TechnologyPath> technology_paths(const Roadmap& r) {
    std::vector<std::vector<std::size_t>> outgoing(r.technologies.size());
    for (std::size_t e = 0; e < r.edges.size(); ++e) outgoing[r.edges[e].first].push_back(e);

    std::vector<TechnologyPath> paths;
    for (std::size_t start = 0; start < r.technologies.size(); ++start) {
        std::vector<TechnologyPath> stack{{{start}, {}}};
        while (!stack.empty()) {
            TechnologyPath p = std::move(stack.back());
            stack.pop_back();
            for (auto e : outgoing[p.vertices.back()]) {
                TechnologyPath longer = p;
                longer.vertices.push_back(r.edges[e].second);
                longer.edges.push_back(e);
                stack.push_back(std::move(longer));
            }
            paths.push_back(std::move(p));
        }
    }
    std::sort(paths.begin(), paths.end(), [](const TechnologyPath& a, const TechnologyPath& b) {
        return std::tuple(a.edges.size(), a.vertices.front(), a.vertices.back()) <
               std::tuple(b.edges.size(), b.vertices.front(), b.vertices.back());
    });
    return paths;
}

Specialization check_specialized(const TuMarket& market, const Roadmap& r) { return specialize(market, r); }
Specialization check_specialized(const DiscreteMarket& market, const Roadmap& r) { return specialize(market, r); }

std::vector<std::vector<std::optional<TechnologyPath>>> all_specializations(const TuMarket& market, const Roadmap& r,
                                                                            std::size_t limit) {
    return specializations(market, r, limit);
}

std::vector<std::vector<std::optional<TechnologyPath>>> all_specializations(const DiscreteMarket& market,
                                                                            const Roadmap& r, std::size_t limit) {
    return specializations(market, r, limit);
}

bool verify_specialization(const std::vector<std::vector<WorkerSet>>& acceptable, const Roadmap& r,
                           const std::vector<std::optional<TechnologyPath>>& paths) {
    if (paths.size() != acceptable.size()) return false;
    std::vector<bool> used(r.technologies.size(), false);
    for (std::size_t f = 0; f < paths.size(); ++f) {
        if (!paths[f]) {
            if (!acceptable[f].empty()) return false;
            continue;
        }
        const auto& p = *paths[f];
        if (p.vertices.empty() || p.edges.size() + 1 != p.vertices.size()) return false;
        for (std::size_t i = 0; i < p.edges.size(); ++i) {
            if (p.edges[i] >= r.edges.size()) return false;
            if (r.edges[p.edges[i]] != std::pair(p.vertices[i], p.vertices[i + 1])) return false;
        }
        for (auto v : p.vertices) {
            if (v >= used.size() || used[v]) return false;
            used[v] = true;
        }
        if (!covers(r, acceptable[f], p)) return false;
    }
    return true;
}

Theorem3Report theorem3_report(const TuMarket& market, const Roadmap& r, std::uint64_t budget) {
    return report(market, r, budget);
}

Theorem3Report theorem3_report(const DiscreteMarket& market, const Roadmap& r, std::uint64_t budget) {
    return report(market, r, budget);
}

std::string describe_path(const Roadmap& r, const TechnologyPath& p) {
    std::string out;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        if (i > 0) out += " -> ";
        out += r.technologies.at(p.vertices[i]);
    }
    return out;
}

}  // namespace matchkit
