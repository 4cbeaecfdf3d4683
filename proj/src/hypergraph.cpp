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

#include "matchkit/hypergraph.hpp"

#include <algorithm>
#include <set>

#include "matchkit/errors.hpp"

namespace matchkit {

AgentId FirmWorkerHypergraph::agent(std::size_t vertex) const {
    if (vertex < firm_count()) return {AgentKind::firm, vertex};
    if (vertex < vertex_count()) return {AgentKind::worker, vertex - firm_count()};
    throw InputError("vertex index out of range");
}

std::size_t FirmWorkerHypergraph::vertex_of(AgentId id) const {
    return id.kind == AgentKind::firm ? id.index : firm_count() + id.index;
}

bool FirmWorkerHypergraph::contains(std::size_t edge, std::size_t vertex) const {
    const auto& e = edges[edge];
    if (vertex < firm_count()) return e.firm == vertex;
    return e.workers.contains(vertex - firm_count());
}

const std::string& FirmWorkerHypergraph::vertex_name(std::size_t vertex) const {
    return vertex < firm_count() ? firm_names.at(vertex) : worker_names.at(vertex - firm_count());
}

std::string FirmWorkerHypergraph::edge_name(std::size_t edge) const {
    const auto& e = edges.at(edge);
    return describe_coalition(firm_names, worker_names, Coalition::firm_with(e.firm, e.workers));
}

IntMatrix IntMatrix::zeros(std::size_t rows, std::size_t cols) {
    IntMatrix m;
    m.row_labels.assign(rows, "");
    m.col_labels.assign(cols, "");
    m.entries.assign(rows, std::vector<std::int64_t>(cols, 0));
    return m;
}

FirmWorkerHypergraph build_hypergraph(const TuMarket& market) {
    FirmWorkerHypergraph h{market.firms, market.workers, {}};
    for (std::size_t f = 0; f < market.firms.size(); ++f) {
        for (const auto& entry : market.firm_valuations[f]) h.edges.push_back({f, entry.workers});
    }
    return h;
}

FirmWorkerHypergraph build_hypergraph(const DiscreteMarket& market) {
    FirmWorkerHypergraph h{market.firms, market.workers, {}};
    for (std::size_t f = 0; f < market.firms.size(); ++f) {
        for (auto set : satisfactory_sets(market, f)) h.edges.push_back({f, set});
    }
    return h;
}

bool is_cycle(const FirmWorkerHypergraph& h, const HyperCycle& c) {
    for (auto e : c.edges) {
        if (e >= h.edges.size()) throw InputError("cycle edge index out of range");
    }
    for (auto v : c.vertices) {
        if (v >= h.vertex_count()) throw InputError("cycle vertex index out of range");
    }
    const std::size_t k = c.edges.size();
    if (k < 2 || c.vertices.size() != k) return false;
    if (std::set(c.vertices.begin(), c.vertices.end()).size() != k) return false;
    if (std::set(c.edges.begin(), c.edges.end()).size() != k) return false;
    for (std::size_t i = 0; i < k; ++i) {
        if (!h.contains(c.edges[i], c.vertices[i]) || !h.contains(c.edges[i], c.vertices[(i + 1) % k])) {
            return false;
        }
    }
    return true;
}

bool is_nontrivial_odd(const FirmWorkerHypergraph& h, const HyperCycle& c) {
    if (c.length() % 2 == 0) return false;
    for (auto e : c.edges) {
        std::size_t inside = 0;
        for (auto v : c.vertices) inside += h.contains(e, v) ? 1 : 0;
        if (inside != 2) return false;
    }
    return true;
}

HyperCycle canonical_form(const HyperCycle& c) {
    const std::size_t k = c.edges.size();
    if (k == 0 || c.vertices.size() != k) return c;
    HyperCycle best = c;
    for (std::size_t r = 0; r < k; ++r) {
        HyperCycle fwd, bwd;
        for (std::size_t i = 0; i < k; ++i) {
            fwd.vertices.push_back(c.vertices[(i + r) % k]);
            fwd.edges.push_back(c.edges[(i + r) % k]);
            // Reverse traversal starting at vertex r.
            bwd.vertices.push_back(c.vertices[(r + k - i) % k]);
            bwd.edges.push_back(c.edges[(r + 2 * k - i - 1) % k]);
        }
        best = std::min({best, fwd, bwd});
    }
    return best;
}

namespace {

class CycleSearch {
 public:
    CycleSearch(const FirmWorkerHypergraph& h, CycleFilter filter, std::size_t max_len, std::uint64_t budget,
                const std::function<bool(const HyperCycle&)>& visit)
        : h_(h), filter_(filter), max_len_(max_len), budget_(budget), visit_(visit),
          incident_(h.vertex_count()), on_path_(h.vertex_count(), 0), edge_used_(h.edges.size(), 0) {
        for (std::size_t e = 0; e < h.edges.size(); ++e) {
            for (std::size_t v = 0; v < h.vertex_count(); ++v) {
                if (h.contains(e, v)) incident_[v].push_back(e);
            }
        }
    }

    bool run() {
        if (max_len_ < 2) return true;
        for (std::size_t s = 0; s < h_.vertex_count() && !stopped_; ++s) {
            vertices_ = {s};
            on_path_[s] = 1;
            extend();
            on_path_[s] = 0;
        }
        return !stopped_;
    }

 private:
    void tick() {
        if (++steps_ > budget_) {
            throw BudgetExhausted("cycle search exceeded its budget of " + std::to_string(budget_) + " steps");
        }
    }

    // True if edge e meets a path vertex other than the current end and the start.
    bool meets_interior(std::size_t e) const {
        for (std::size_t i = 1; i + 1 < vertices_.size(); ++i) {
            if (h_.contains(e, vertices_[i])) return true;
        }
        return false;
    }

    // True if v lies in an edge placed before the most recent one.
    bool in_earlier_edge(std::size_t v) const {
        for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
            if (h_.contains(edges_[i], v)) return true;
        }
        return false;
    }

    void extend() {
        const std::size_t s = vertices_.front();
        const std::size_t u = vertices_.back();
        const std::size_t k = vertices_.size();
        for (auto e : incident_[u]) {
            if (stopped_) return;
            if (edge_used_[e]) continue;
            tick();
            if (filter_.nontrivial_only && meets_interior(e)) continue;
            const bool has_start = k >= 2 && h_.contains(e, s);
            if (has_start) try_close(e);
            if (stopped_) return;
            if (k + 1 > max_len_) continue;
            if (filter_.nontrivial_only && has_start) continue;
            edge_used_[e] = 1;
            edges_.push_back(e);
            for (std::size_t v = s + 1; v < h_.vertex_count(); ++v) {
                if (on_path_[v] || !h_.contains(e, v)) continue;
                if (filter_.nontrivial_only && in_earlier_edge(v)) continue;
                tick();
                vertices_.push_back(v);
                on_path_[v] = 1;
                extend();
                on_path_[v] = 0;
                vertices_.pop_back();
                if (stopped_) break;
            }
            edges_.pop_back();
            edge_used_[e] = 0;
        }
    }

    void try_close(std::size_t e) {
        const std::size_t k = vertices_.size();
        if (k > max_len_) return;
        if (filter_.odd_only && k % 2 == 0) return;
        if (k == 2 ? !(edges_[0] < e) : !(vertices_[1] < vertices_[k - 1])) return;
        HyperCycle c{vertices_, edges_};
        c.edges.push_back(e);
        if (!visit_(c)) stopped_ = true;
    }

    const FirmWorkerHypergraph& h_;
    CycleFilter filter_;
    std::size_t max_len_;
    std::uint64_t budget_;
    const std::function<bool(const HyperCycle&)>& visit_;
    std::vector<std::vector<std::size_t>> incident_;
    std::vector<char> on_path_;
    std::vector<char> edge_used_;
    std::vector<std::size_t> vertices_;
    std::vector<std::size_t> edges_;
    std::uint64_t steps_ = 0;
    bool stopped_ = false;
};

}  // namespace

bool for_each_cycle(const FirmWorkerHypergraph& h, CycleFilter filter, std::size_t max_len, std::uint64_t budget,
                    const std::function<bool(const HyperCycle&)>& visit) {
    CycleSearch search(h, filter, max_len, budget, visit);
    return search.run();
}

std::vector<HyperCycle> enumerate_cycles(const FirmWorkerHypergraph& h, bool odd_only, bool nontrivial_only,
                                         std::size_t max_len, std::uint64_t budget) {
    if (max_len < 2) throw InputError("maximum cycle length must be at least 2");
    std::vector<HyperCycle> out;
    for_each_cycle(h, {odd_only, nontrivial_only}, max_len, budget, [&](const HyperCycle& c) {
        out.push_back(c);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

BalanceVerdict check_balanced(const FirmWorkerHypergraph& h, std::uint64_t budget) {
    BalanceVerdict verdict;
    for_each_cycle(h, {true, true}, h.vertex_count(), budget, [&](const HyperCycle& c) {
        verdict.balanced = false;
        verdict.witness = canonical_form(c);
        return false;
    });
    return verdict;
}

IntMatrix incidence_matrix(const FirmWorkerHypergraph& h) {
    IntMatrix m = IntMatrix::zeros(h.vertex_count(), h.edges.size());
    for (std::size_t v = 0; v < h.vertex_count(); ++v) m.row_labels[v] = h.vertex_name(v);
    for (std::size_t e = 0; e < h.edges.size(); ++e) {
        m.col_labels[e] = h.edge_name(e);
        for (std::size_t v = 0; v < h.vertex_count(); ++v) m.entries[v][e] = h.contains(e, v) ? 1 : 0;
    }
    return m;
}

std::string describe_cycle(const FirmWorkerHypergraph& h, const HyperCycle& c) {
    std::string out = "(";
    for (std::size_t i = 0; i < c.length(); ++i) {
        out += h.vertex_name(c.vertices[i]) + ", " + h.edge_name(c.edges[i]) + ", ";
    }
    if (!c.vertices.empty()) out += h.vertex_name(c.vertices.front());
    return out + ")";
}

}  // namespace matchkit
