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

#include "matchkit/hypergraph.hpp"
#include "matchkit/model.hpp"

namespace matchkit {

/// Directed tree of technologies; technology v demands the worker set W^v.
/// Worker indices refer to `workers`, the companion market's worker list.
struct Roadmap {
    std::vector<std::string> technologies;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<WorkerSet> demanded;
    std::vector<std::string> workers;

    bool operator==(const Roadmap&) const = default;
};

/// A directed path, or a single vertex when `edges` is empty.
struct TechnologyPath {
    std::vector<std::size_t> vertices;
    /// Indices into Roadmap::edges.
    std::vector<std::size_t> edges;

    bool operator==(const TechnologyPath&) const = default;
};

/// Subgraph induced by {v : w ∈ W^v}; vertices and edges in index order.
struct WorkerSubgraph {
    std::vector<std::size_t> vertices;
    std::vector<std::size_t> edges;
};

/// Empty when the underlying undirected graph is a tree and every demanded
/// set names known workers.
std::vector<std::string> validate_roadmap(const Roadmap& r);
void require_valid(const Roadmap& r);

/// Throws InputError for an unknown worker.
WorkerSubgraph worker_subgraph(const Roadmap& r, std::size_t worker);

/// True when the worker's subgraph is empty, one vertex or one directed path.
bool is_specialist(const Roadmap& r, std::size_t worker);

/// Every directed path and single vertex, ordered by length, then start
/// vertex, then end vertex.
std::vector<TechnologyPath> technology_paths(const Roadmap& r);

struct Specialization {
    bool specialized = false;
    /// One path per firm; firms without acceptable sets get none.
    std::vector<std::optional<TechnologyPath>> paths;
    std::string reason;
};

/// Looks for pairwise vertex-disjoint paths, one per firm, such that each of
/// the firm's acceptable sets equals W^v for a vertex v on its path. Firms are
/// assigned in index order and try paths in technology_paths order; the first
/// complete assignment is returned.
Specialization check_specialized(const TuMarket& market, const Roadmap& r);
Specialization check_specialized(const DiscreteMarket& market, const Roadmap& r);

/// Up to `limit` complete assignments in the same search order.
std::vector<std::vector<std::optional<TechnologyPath>>> all_specializations(const TuMarket& market, const Roadmap& r,
                                                                            std::size_t limit);
std::vector<std::vector<std::optional<TechnologyPath>>> all_specializations(const DiscreteMarket& market,
                                                                            const Roadmap& r, std::size_t limit);

/// Re-checks both clauses for a proposed assignment.
bool verify_specialization(const std::vector<std::vector<WorkerSet>>& acceptable, const Roadmap& r,
                           const std::vector<std::optional<TechnologyPath>>& paths);

struct Theorem3Report {
    std::vector<std::size_t> non_specialists;
    Specialization specialization;
    BalanceVerdict balance;

    bool all_specialists() const { return non_specialists.empty(); }
    bool holds() const { return all_specialists() && specialization.specialized && balance.balanced; }
    /// Specialist workers and specialized firms with an unbalanced hypergraph
    /// contradict the theory and are reported as a finding.
    bool falsified() const { return all_specialists() && specialization.specialized && !balance.balanced; }
};

/// Throws InputError when the roadmap's worker list differs from the market's.
Theorem3Report theorem3_report(const TuMarket& market, const Roadmap& r, std::uint64_t budget = kDefaultBudget);
Theorem3Report theorem3_report(const DiscreteMarket& market, const Roadmap& r,
                               std::uint64_t budget = kDefaultBudget);

std::string describe_path(const Roadmap& r, const TechnologyPath& p);

}  // namespace matchkit
