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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "matchkit/model.hpp"

namespace matchkit {

/// Default number of extension steps a cycle search may take.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// One hyperedge {f} ∪ S.
struct HyperEdge {
    std::size_t firm = 0;
    WorkerSet workers;

    auto operator<=>(const HyperEdge&) const = default;
};

/// Vertices are numbered firms first (0..F-1), then workers (F..F+W-1).
/// Isolated vertices are kept so incidence rows line up with the agents.
struct FirmWorkerHypergraph {
    std::vector<std::string> firm_names;
    std::vector<std::string> worker_names;
    std::vector<HyperEdge> edges;

    std::size_t firm_count() const { return firm_names.size(); }
    std::size_t worker_count() const { return worker_names.size(); }
    std::size_t vertex_count() const { return firm_count() + worker_count(); }

    AgentId agent(std::size_t vertex) const;
    std::size_t vertex_of(AgentId id) const;
    bool contains(std::size_t edge, std::size_t vertex) const;
    /// Number of vertices in the edge.
    std::size_t edge_size(std::size_t edge) const { return edges.at(edge).workers.size() + 1; }

    const std::string& vertex_name(std::size_t vertex) const;
    std::string edge_name(std::size_t edge) const;
};

/// Cyclic alternating sequence (j1, E1, j2, E2, ..., jk, Ek, j1): edge
/// edges[i] joins vertices[i] and vertices[(i+1) % k].
struct HyperCycle {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;

    std::size_t length() const { return edges.size(); }
    auto operator<=>(const HyperCycle&) const = default;
};

struct BalanceVerdict {
    bool balanced = true;
    std::optional<HyperCycle> witness;
};

/// Dense integer matrix with row and column labels.
struct IntMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<std::int64_t>> entries;

    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return entries.empty() ? col_labels.size() : entries.front().size(); }
    std::int64_t at(std::size_t r, std::size_t c) const { return entries.at(r).at(c); }

    bool operator==(const IntMatrix&) const = default;

    /// Unlabelled matrix of the given size filled with zeros.
    static IntMatrix zeros(std::size_t rows, std::size_t cols);
};

/// TU markets: one edge per acceptable set. Discrete markets: one edge per
/// satisfactory set. Edges are ordered by firm, then by the market's listing.
FirmWorkerHypergraph build_hypergraph(const TuMarket& market);
FirmWorkerHypergraph build_hypergraph(const DiscreteMarket& market);

/// Throws InputError when an edge or vertex index is out of range.
bool is_cycle(const FirmWorkerHypergraph& h, const HyperCycle& c);

/// Odd length and every cycle edge meets exactly two cycle vertices.
bool is_nontrivial_odd(const FirmWorkerHypergraph& h, const HyperCycle& c);

/// The rotation/reflection with the lexicographically smallest vertex
/// sequence (edge sequence breaks ties, which only happens for k = 2).
HyperCycle canonical_form(const HyperCycle& c);

struct CycleFilter {
    bool odd_only = false;
    bool nontrivial_only = false;
};

/// Visits each cycle of length <= max_len exactly once, in canonical form.
/// The visitor returns false to stop early. Throws BudgetExhausted once
/// more than `budget` extension steps are taken. Returns false if stopped.
bool for_each_cycle(const FirmWorkerHypergraph& h, CycleFilter filter, std::size_t max_len,
                    std::uint64_t budget, const std::function<bool(const HyperCycle&)>& visit);

/// All cycles up to rotation/reflection, sorted by canonical form.
std::vector<HyperCycle> enumerate_cycles(const FirmWorkerHypergraph& h, bool odd_only, bool nontrivial_only,
                                         std::size_t max_len, std::uint64_t budget = kDefaultBudget);

/// Balanced iff no nontrivial odd cycle exists; otherwise the first one found.
BalanceVerdict check_balanced(const FirmWorkerHypergraph& h, std::uint64_t budget = kDefaultBudget);

/// Rows are vertices, columns are edges; entry 1 iff the vertex is in the edge.
IntMatrix incidence_matrix(const FirmWorkerHypergraph& h);

/// "(w1, {f1,w1,w2}, w2, ...)" rendering.
std::string describe_cycle(const FirmWorkerHypergraph& h, const HyperCycle& c);

}  // namespace matchkit
