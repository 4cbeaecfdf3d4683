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
#include <optional>
#include <string>
#include <vector>

#include "matchkit/hypergraph.hpp"
#include "matchkit/model.hpp"

namespace matchkit {

/// True iff for every firm and every pair of its cycle edges {f} ∪ S and
/// {f} ∪ S', Ch_f(S ∪ S') is S or S'.
bool satisfies_pair_condition(const DiscreteMarket& market, const FirmWorkerHypergraph& h, const HyperCycle& c);

struct Prop1Verdict {
    bool guaranteed = true;
    /// A nontrivial odd cycle satisfying the pair condition, in canonical form.
    std::optional<HyperCycle> witness;
};

/// Searches the satisfactory-set hypergraph for a nontrivial odd cycle that
/// satisfies the pair condition. Throws BudgetExhausted or GuardExceeded.
Prop1Verdict prop1_check(const DiscreteMarket& market, const SizeGuard& guard = {},
                         std::uint64_t budget = kDefaultBudget);

/// Entries indexed by worker.
using DemandVector = std::vector<std::int64_t>;

struct DemandType {
    std::vector<std::vector<DemandVector>> per_firm;
    std::vector<DemandVector> all;
};

/// Nonzero vectors chi(Ch_f(S)) - chi(Ch_f(S')) over S' ⊂ S ⊆ W. Each list is
/// deduplicated and sorted in decreasing lexicographic order.
DemandType demand_type(const DiscreteMarket& market, const SizeGuard& guard = {});

/// Rows are workers, columns the given vectors.
IntMatrix demand_matrix(const std::vector<std::string>& worker_names, const std::vector<DemandVector>& vectors);

std::string describe_vector(const DemandVector& v);

/// Fraction-free (Bareiss) determinant of a square matrix.
std::int64_t determinant(const std::vector<std::vector<std::int64_t>>& square);

struct TuVerdict {
    bool unimodular = true;
    /// Violating submatrix, when not unimodular.
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    std::int64_t det = 0;
};

/// Largest smaller dimension (after dropping zero and repeated columns or
/// rows) that is_totally_unimodular accepts.
inline constexpr std::size_t kMaxTuDimension = 24;

/// Decides total unimodularity. When the matrix is not totally unimodular,
/// returns the first square submatrix whose determinant lies outside
/// {-1, 0, 1}, scanning by increasing order, then row indices, then column
/// indices (both lexicographically). Throws GuardExceeded above the limit.
TuVerdict is_totally_unimodular(const IntMatrix& m);

/// Decision only, without locating a violating submatrix.
bool totally_unimodular(const IntMatrix& m);

/// Construction that turns a qualifying cycle into a square submatrix of the
/// demand-type matrix with determinant ±2.
struct CycleCertificate {
    /// Incidence of cycle vertices (rows, in cycle order) and cycle edges.
    IntMatrix m;
    /// Each firm's columns after subtracting its least preferred column.
    IntMatrix m_prime;
    /// m_prime without the rows of cycle firms and their first columns.
    IntMatrix m_double_prime;
    /// Full demand vectors whose restriction to the rows of m_double_prime
    /// gives its columns.
    std::vector<DemandVector> columns;
    std::int64_t det = 0;
};

/// Throws InputError when c is not a nontrivial odd cycle of the market's
/// hypergraph or fails the pair condition.
CycleCertificate tu_cycle_certificate(const DiscreteMarket& market, const HyperCycle& c);

struct Prop2Report {
    DemandType demand;
    TuVerdict tu;
    Prop1Verdict prop1;

    /// A unimodular demand type with an unguaranteed market contradicts the
    /// theory and is reported as a finding.
    bool falsified() const { return tu.unimodular && !prop1.guaranteed; }
};

Prop2Report prop2_relation(const DiscreteMarket& market, const SizeGuard& guard = {},
                           std::uint64_t budget = kDefaultBudget);

}  // namespace matchkit
