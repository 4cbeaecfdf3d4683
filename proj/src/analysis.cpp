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

#include "matchkit/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>

#include "matchkit/errors.hpp"

namespace matchkit {

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

// Firm -> positions of its edges along the cycle, firms in order of first appearance.
std::vector<std::pair<std::size_t, std::vector<std::size_t>>> edges_by_firm(const FirmWorkerHypergraph& h,
                                                                           const HyperCycle& c) {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> groups;
    for (std::size_t pos = 0; pos < c.edges.size(); ++pos) {
        const std::size_t firm = h.edges.at(c.edges[pos]).firm;
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == firm; });
        if (it == groups.end()) {
            groups.push_back({firm, {pos}});
        } else {
            it->second.push_back(pos);
        }
    }
    return groups;
}

DemandVector indicator_difference(std::size_t worker_count, WorkerSet plus, WorkerSet minus) {
    DemandVector v(worker_count, 0);
    for (auto w : plus.members()) v[w] += 1;
    for (auto w : minus.members()) v[w] -= 1;
    return v;
}

bool is_zero(const std::vector<std::int64_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

bool parallel(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    bool same = true;
    bool opposite = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        same = same && a[i] == b[i];
        opposite = opposite && a[i] == -b[i];
    }
    return same || opposite;
}

// Indices of the vectors that are nonzero and not ± an earlier kept vector.
std::vector<std::size_t> distinct_up_to_sign(const std::vector<std::vector<std::int64_t>>& vectors) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (is_zero(vectors[i])) continue;
        bool repeated = false;
        for (auto k : kept) repeated = repeated || parallel(vectors[k], vectors[i]);
        if (!repeated) kept.push_back(i);
    }
    return kept;
}

Matrix transpose(const Matrix& a, std::size_t cols) {
    Matrix t(cols, std::vector<std::int64_t>(a.size()));
    for (std::size_t r = 0; r < a.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) t[c][r] = a[r][c];
    }
    return t;
}

// Ghouila-Houri: every subset of rows admits a ±1 signing whose signed sum
// lies in {-1, 0, 1} in every column.
class EquitableSigning {
 public:
    explicit EquitableSigning(const Matrix& rows) : rows_(rows), cols_(rows.empty() ? 0 : rows.front().size()) {}

    bool all_subsets() {
        const std::size_t k = rows_.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
            if (!signable(mask)) return false;
        }
        return true;
    }

 private:
    bool signable(std::uint64_t mask) {
        members_.clear();
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if ((mask >> r) & 1U) members_.push_back(r);
        }
        sum_.assign(cols_, 0);
        remaining_.assign(cols_, 0);
        for (auto r : members_) {
            for (std::size_t c = 0; c < cols_; ++c) remaining_[c] += std::abs(rows_[r][c]);
        }
        return assign(0);
    }

    bool assign(std::size_t depth) {
        if (depth == members_.size()) return true;
        const auto& row = rows_[members_[depth]];
        // The first member's sign is fixed by symmetry.
        const int signs = depth == 0 ? 1 : 2;
        for (int s = 0; s < signs; ++s) {
            const std::int64_t sign = s == 0 ? 1 : -1;
            bool feasible = true;
            for (std::size_t c = 0; c < cols_; ++c) {
                sum_[c] += sign * row[c];
                remaining_[c] -= std::abs(row[c]);
                if (std::abs(sum_[c]) - remaining_[c] > 1) feasible = false;
            }
            if (feasible && assign(depth + 1)) return true;
            for (std::size_t c = 0; c < cols_; ++c) {
                sum_[c] -= sign * row[c];
                remaining_[c] += std::abs(row[c]);
            }
        }
        return false;
    }

    const Matrix& rows_;
    std::size_t cols_;
    std::vector<std::size_t> members_;
    std::vector<std::int64_t> sum_;
    std::vector<std::int64_t> remaining_;
};

// Steps through k-subsets of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::size_t> first_combination(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    return idx;
}

struct Reduced {
    Matrix entries;
    std::vector<std::size_t> row_map;
    std::vector<std::size_t> col_map;
};

Reduced reduce(const IntMatrix& m) {
    Reduced out;
    out.row_map = distinct_up_to_sign(m.entries);
    Matrix rows;
    for (auto r : out.row_map) rows.push_back(m.entries[r]);
    const Matrix cols = transpose(rows, m.cols());
    out.col_map = distinct_up_to_sign(cols);
    out.entries.assign(rows.size(), {});
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (auto c : out.col_map) out.entries[r].push_back(rows[r][c]);
    }
    return out;
}

std::optional<TuVerdict> entry_violation(const IntMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (std::abs(m.at(r, c)) > 1) return TuVerdict{false, {r}, {c}, m.at(r, c)};
        }
    }
    return std::nullopt;
}

bool decide(const Reduced& red) {
    const std::size_t rows = red.entries.size();
    const std::size_t cols = red.col_map.size();
    if (std::min(rows, cols) > kMaxTuDimension) {
        throw GuardExceeded("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " after reduction; total unimodularity check is limited to a smaller dimension of " +
                            std::to_string(kMaxTuDimension));
    }
    if (rows <= cols) return EquitableSigning(red.entries).all_subsets();
    const Matrix t = transpose(red.entries, cols);
    return EquitableSigning(t).all_subsets();
}

std::optional<TuVerdict> first_violation(const Reduced& red) {
    const std::size_t rows = red.entries.size();
    const std::size_t cols = red.col_map.size();
    for (std::size_t k = 2; k <= std::min(rows, cols); ++k) {
        auto row_idx = first_combination(k);
        do {
            // Columns that are zero or repeated on these rows cannot start an
            // earlier violation than their first representative.
            Matrix restricted;
            for (std::size_t c = 0; c < cols; ++c) {
                std::vector<std::int64_t> v;
                for (auto r : row_idx) v.push_back(red.entries[r][c]);
                restricted.push_back(std::move(v));
            }
            const auto candidates = distinct_up_to_sign(restricted);
            if (candidates.size() < k) continue;
            auto col_idx = first_combination(k);
            Matrix square(k, std::vector<std::int64_t>(k));
            do {
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = 0; j < k; ++j) square[i][j] = restricted[candidates[col_idx[j]]][i];
                }
                const std::int64_t det = determinant(square);
                if (std::abs(det) > 1) {
                    TuVerdict v{false, {}, {}, det};
                    for (auto r : row_idx) v.rows.push_back(red.row_map[r]);
                    for (auto j : col_idx) v.cols.push_back(red.col_map[candidates[j]]);
                    return v;
                }
            } while (next_combination(col_idx, candidates.size()));
        } while (next_combination(row_idx, rows));
    }
    return std::nullopt;
}

}  // namespace

bool satisfies_pair_condition(const DiscreteMarket& market, const FirmWorkerHypergraph& h, const HyperCycle& c) {
    for (const auto& [firm, positions] : edges_by_firm(h, c)) {
        for (std::size_t a = 0; a < positions.size(); ++a) {
            for (std::size_t b = a + 1; b < positions.size(); ++b) {
                const WorkerSet s = h.edges[c.edges[positions[a]]].workers;
                const WorkerSet t = h.edges[c.edges[positions[b]]].workers;
                const WorkerSet chosen = choice(market, firm, s | t);
                if (chosen != s && chosen != t) return false;
            }
        }
    }
    return true;
}

Prop1Verdict prop1_check(const DiscreteMarket& market, const SizeGuard& guard, std::uint64_t budget) {
    require_valid(market);
    enforce_guard(market.firms.size(), market.workers.size(), guard);
    const FirmWorkerHypergraph h = build_hypergraph(market);
    Prop1Verdict verdict;
    for_each_cycle(h, CycleFilter{true, true}, h.vertex_count(), budget, [&](const HyperCycle& c) {
        if (!satisfies_pair_condition(market, h, c)) return true;
        verdict.guaranteed = false;
        verdict.witness = c;
        return false;
    });
    return verdict;
}

DemandType demand_type(const DiscreteMarket& market, const SizeGuard& guard) {
    require_valid(market);
    enforce_guard(market.firms.size(), market.workers.size(), guard);
    const std::size_t n = market.workers.size();
    const std::uint64_t subsets = std::uint64_t{1} << n;
    DemandType out;
    std::set<DemandVector, std::greater<>> all;
    std::vector<WorkerSet> chosen(subsets);
    for (std::size_t f = 0; f < market.firms.size(); ++f) {
        for (std::uint64_t s = 0; s < subsets; ++s) chosen[s] = choice(market, f, WorkerSet(s));
        std::set<std::pair<WorkerSet, WorkerSet>> diffs;
        for (std::uint64_t s = 1; s < subsets; ++s) {
            // Proper submasks of s, including the empty set.
            for (std::uint64_t sub = (s - 1) & s;; sub = (sub - 1) & s) {
                const WorkerSet plus = chosen[s].minus(chosen[sub]);
                const WorkerSet minus = chosen[sub].minus(chosen[s]);
                if (!plus.empty() || !minus.empty()) diffs.insert({plus, minus});
                if (sub == 0) break;
            }
        }
        std::set<DemandVector, std::greater<>> firm_vectors;
        for (const auto& [plus, minus] : diffs) firm_vectors.insert(indicator_difference(n, plus, minus));
        out.per_firm.emplace_back(firm_vectors.begin(), firm_vectors.end());
        all.insert(firm_vectors.begin(), firm_vectors.end());
    }
    out.all.assign(all.begin(), all.end());
    return out;
}

std::string describe_vector(const DemandVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(v[i]);
    }
    return out + ")";
}

IntMatrix demand_matrix(const std::vector<std::string>& worker_names, const std::vector<DemandVector>& vectors) {
    IntMatrix m = IntMatrix::zeros(worker_names.size(), vectors.size());
    m.row_labels = worker_names;
    for (std::size_t c = 0; c < vectors.size(); ++c) {
        if (vectors[c].size() != worker_names.size()) throw InputError("demand vector has the wrong length");
        m.col_labels[c] = describe_vector(vectors[c]);
        for (std::size_t r = 0; r < worker_names.size(); ++r) m.entries[r][c] = vectors[c][r];
    }
    return m;
}

std::int64_t determinant(const std::vector<std::vector<std::int64_t>>& square) {
    const std::size_t n = square.size();
    std::vector<std::vector<__int128>> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (square[i].size() != n) throw InputError("determinant of a non-square matrix");
        a[i].assign(square[i].begin(), square[i].end());
    }
    __int128 sign = 1;
    __int128 prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && a[pivot][k] == 0) ++pivot;
            if (pivot == n) return 0;
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return n == 0 ? 1 : static_cast<std::int64_t>(sign * a[n - 1][n - 1]);
}

TuVerdict is_totally_unimodular(const IntMatrix& m) {
    if (auto v = entry_violation(m)) return *v;
    const Reduced red = reduce(m);
    if (decide(red)) return TuVerdict{};
    if (auto v = first_violation(red)) return *v;
    throw InternalError("signing test rejected a matrix whose square submatrices are all unimodular");
}

bool totally_unimodular(const IntMatrix& m) {
    if (entry_violation(m)) return false;
    return decide(reduce(m));
}

CycleCertificate tu_cycle_certificate(const DiscreteMarket& market, const HyperCycle& c) {
    require_valid(market);
    const FirmWorkerHypergraph h = build_hypergraph(market);
    if (!is_cycle(h, c) || !is_nontrivial_odd(h, c)) {
        throw InputError("not a nontrivial odd-length cycle of the market's hypergraph");
    }
    if (!satisfies_pair_condition(market, h, c)) {
        throw InputError("cycle fails the pair condition on some firm's edges");
    }
    const std::size_t k = c.length();
    const std::size_t n = market.workers.size();

    CycleCertificate cert;
    cert.m = IntMatrix::zeros(k, k);
    for (std::size_t i = 0; i < k; ++i) cert.m.row_labels[i] = h.vertex_name(c.vertices[i]);
    for (std::size_t j = 0; j < k; ++j) {
        cert.m.col_labels[j] = h.edge_name(c.edges[j]);
        for (std::size_t i = 0; i < k; ++i) cert.m.entries[i][j] = h.contains(c.edges[j], c.vertices[i]) ? 1 : 0;
    }

    cert.m_prime = cert.m;
    std::vector<DemandVector> full(k);
    std::vector<bool> drop_row(k, false);
    std::vector<bool> drop_col(k, false);
    for (auto [firm, positions] : edges_by_firm(h, c)) {
        // Least preferred first: each later set is chosen over every earlier one.
        auto rank = [&, f = firm](std::size_t pos) { return *market.firm_rank(f, h.edges[c.edges[pos]].workers); };
        std::sort(positions.begin(), positions.end(), [&](std::size_t a, std::size_t b) { return rank(a) > rank(b); });
        const std::size_t first = positions.front();
        const WorkerSet base = h.edges[c.edges[first]].workers;
        full[first] = indicator_difference(n, base, {});
        for (std::size_t p = 1; p < positions.size(); ++p) {
            const std::size_t pos = positions[p];
            for (std::size_t i = 0; i < k; ++i) cert.m_prime.entries[i][pos] -= cert.m.entries[i][first];
            const WorkerSet s = h.edges[c.edges[pos]].workers;
            full[pos] = indicator_difference(n, s.minus(base), base.minus(s));
        }
        const std::size_t firm_vertex = h.vertex_of(AgentId{AgentKind::firm, firm});
        for (std::size_t i = 0; i < k; ++i) {
            if (c.vertices[i] == firm_vertex) {
                drop_row[i] = true;
                drop_col[first] = true;
            }
        }
    }

    for (std::size_t i = 0; i < k; ++i) {
        if (drop_row[i]) continue;
        cert.m_double_prime.row_labels.push_back(cert.m.row_labels[i]);
        std::vector<std::int64_t> row;
        for (std::size_t j = 0; j < k; ++j) {
            if (!drop_col[j]) row.push_back(cert.m_prime.entries[i][j]);
        }
        cert.m_double_prime.entries.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (drop_col[j]) continue;
        cert.m_double_prime.col_labels.push_back(describe_vector(full[j]));
        cert.columns.push_back(full[j]);
    }
    if (cert.m_double_prime.rows() != cert.columns.size()) {
        throw InternalError("reduced cycle matrix is not square");
    }
    cert.det = determinant(cert.m_double_prime.entries);
    return cert;
}

Prop2Report prop2_relation(const DiscreteMarket& market, const SizeGuard& guard, std::uint64_t budget) {
    Prop2Report report;
    report.demand = demand_type(market, guard);
    report.tu = is_totally_unimodular(demand_matrix(market.workers, report.demand.all));
    report.prop1 = prop1_check(market, guard, budget);
    return report;
}

}  // namespace matchkit
