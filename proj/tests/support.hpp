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

// Fixture loading and brute-force reference implementations shared by the
// unit tests and the acceptance binary. Nothing here calls the library's
// solvers; the oracles work straight from the market definitions.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "matchkit/hypergraph.hpp"
#include "matchkit/io.hpp"
#include "matchkit/model.hpp"

namespace matchkit::testing {

inline std::string fixture_path(const std::string& name) {
    return std::string(MATCHKIT_FIXTURES) + "/" + name;
}

inline TuMarket load_tu(const std::string& name) {
    return std::get<TuMarket>(parse_market(read_file(fixture_path(name))));
}

inline DiscreteMarket load_discrete(const std::string& name) {
    return std::get<DiscreteMarket>(parse_market(read_file(fixture_path(name))));
}

inline WorkerSet set_of(std::initializer_list<std::size_t> workers) {
    WorkerSet s;
    for (auto w : workers) s = s.with(w);
    return s;
}

// ---------------------------------------------------------------------------
// Discrete markets

// First listed set contained in `offered`.
inline WorkerSet oracle_choice(const DiscreteMarket& m, std::size_t f, WorkerSet offered) {
    for (auto s : m.firm_prefs[f]) {
        if ((s.bits() & ~offered.bits()) == 0) return s;
    }
    return WorkerSet{};
}

inline int oracle_firm_rank(const DiscreteMarket& m, std::size_t f, WorkerSet s) {
    if (s.empty()) return static_cast<int>(m.firm_prefs[f].size());  // between listed and unlisted
    for (std::size_t i = 0; i < m.firm_prefs[f].size(); ++i) {
        if (m.firm_prefs[f][i] == s) return static_cast<int>(i);
    }
    return -1;
}

inline int oracle_worker_rank(const DiscreteMarket& m, std::size_t w, std::optional<std::size_t> f) {
    if (!f) return static_cast<int>(m.worker_prefs[w].size());
    for (std::size_t i = 0; i < m.worker_prefs[w].size(); ++i) {
        if (m.worker_prefs[w][i] == *f) return static_cast<int>(i);
    }
    return -1;
}

inline WorkerSet staff_of(const std::vector<std::optional<std::size_t>>& assignment, std::size_t f) {
    WorkerSet s;
    for (std::size_t w = 0; w < assignment.size(); ++w) {
        if (assignment[w] == f) s = s.with(w);
    }
    return s;
}

// Stability straight from the definition: individual rationality, then every
// (f, S) with S ≠ ∅ checked as a potential block.
inline bool oracle_stable(const DiscreteMarket& m, const std::vector<std::optional<std::size_t>>& a) {
    const std::size_t nf = m.firms.size();
    const std::size_t nw = m.workers.size();
    for (std::size_t w = 0; w < nw; ++w) {
        if (a[w] && oracle_worker_rank(m, w, a[w]) < 0) return false;
    }
    for (std::size_t f = 0; f < nf; ++f) {
        auto mine = staff_of(a, f);
        if (oracle_choice(m, f, mine) != mine) return false;
    }
    for (std::size_t f = 0; f < nf; ++f) {
        auto mine = staff_of(a, f);
        int mine_rank = oracle_firm_rank(m, f, mine);
        for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << nw); ++bits) {
            WorkerSet s(bits);
            if (s == mine) continue;
            int r = oracle_firm_rank(m, f, s);
            bool firm_better = r >= 0 && (mine_rank < 0 || r < mine_rank);
            if (!firm_better) continue;
            bool all_weakly = true;
            for (auto w : s.members()) {
                if (a[w] == f) continue;
                int rf = oracle_worker_rank(m, w, f);
                int rc = oracle_worker_rank(m, w, a[w]);
                if (rf < 0 || (rc >= 0 && rf > rc)) {
                    all_weakly = false;
                    break;
                }
            }
            if (all_weakly) return false;
        }
    }
    return true;
}

// Calls visit on every assignment of workers to firms or to nobody.
inline void for_each_assignment(std::size_t firms, std::size_t workers,
                                const std::function<void(const std::vector<std::optional<std::size_t>>&)>& visit) {
    std::vector<std::optional<std::size_t>> a(workers);
    std::function<void(std::size_t)> rec = [&](std::size_t w) {
        if (w == workers) {
            visit(a);
            return;
        }
        a[w] = std::nullopt;
        rec(w + 1);
        for (std::size_t f = 0; f < firms; ++f) {
            a[w] = f;
            rec(w + 1);
        }
    };
    rec(0);
}

inline std::vector<std::vector<std::optional<std::size_t>>> oracle_stable_matchings(const DiscreteMarket& m) {
    std::vector<std::vector<std::optional<std::size_t>>> out;
    for_each_assignment(m.firms.size(), m.workers.size(), [&](const auto& a) {
        if (oracle_stable(m, a)) out.push_back(a);
    });
    return out;
}

// Every nonzero difference of chosen sets over nested offers, from the raw lists.
inline std::set<std::vector<std::int64_t>> oracle_demand(const DiscreteMarket& m) {
    std::set<std::vector<std::int64_t>> out;
    const std::uint64_t full = std::uint64_t{1} << m.workers.size();
    for (std::size_t f = 0; f < m.firms.size(); ++f) {
        for (std::uint64_t s = 0; s < full; ++s) {
            for (std::uint64_t t = 0; t < full; ++t) {
                if ((t & ~s) != 0 || t == s) continue;
                auto a = testing::oracle_choice(m, f, WorkerSet(s));
                auto b = testing::oracle_choice(m, f, WorkerSet(t));
                std::vector<std::int64_t> d(m.workers.size());
                bool nonzero = false;
                for (std::size_t w = 0; w < d.size(); ++w) {
                    d[w] = static_cast<std::int64_t>(a.contains(w)) - static_cast<std::int64_t>(b.contains(w));
                    nonzero = nonzero || d[w] != 0;
                }
                if (nonzero) out.insert(d);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// TU markets

// Best total value over all assignments in which every matched pair is
// mutually acceptable and each firm's staff is acceptable (or empty).
inline Rational oracle_partition_value(const TuMarket& m) {
    Rational best = 0;
    for_each_assignment(m.firms.size(), m.workers.size(), [&](const auto& a) {
        Rational total = 0;
        for (std::size_t w = 0; w < a.size(); ++w) {
            if (!a[w]) continue;
            auto it = m.worker_valuations[w].find(*a[w]);
            if (it == m.worker_valuations[w].end()) return;
            total += it->second;
        }
        for (std::size_t f = 0; f < m.firms.size(); ++f) {
            auto s = staff_of(a, f);
            if (s.empty()) continue;
            bool found = false;
            for (const auto& entry : m.firm_valuations[f]) {
                if (entry.workers == s) {
                    total += entry.value;
                    found = true;
                }
            }
            if (!found) return;
        }
        if (total > best) best = total;
    });
    return best;
}

// Individual rationality plus no profitable coalition, evaluated from the
// raw valuations.
inline bool oracle_tu_stable(const TuMarket& m, const TuMatching& mu) {
    const std::size_t nf = m.firms.size();
    const std::size_t nw = m.workers.size();
    std::vector<Rational> uf(nf, 0);
    std::vector<Rational> uw(nw, 0);
    for (std::size_t w = 0; w < nw; ++w) {
        if (!mu.assignment[w]) {
            if (mu.prices[w] != 0) return false;
            continue;
        }
        auto it = m.worker_valuations[w].find(*mu.assignment[w]);
        if (it == m.worker_valuations[w].end()) return false;
        uw[w] = it->second + mu.prices[w];
    }
    for (std::size_t f = 0; f < nf; ++f) {
        auto s = staff_of(mu.assignment, f);
        if (s.empty()) continue;
        const Rational* v = nullptr;
        for (const auto& entry : m.firm_valuations[f]) {
            if (entry.workers == s) v = &entry.value;
        }
        if (v == nullptr) return false;
        Rational wages = 0;
        for (auto w : s.members()) wages += mu.prices[w];
        uf[f] = *v - wages;
    }
    for (auto u : uf) if (u < 0) return false;
    for (auto u : uw) if (u < 0) return false;
    for (std::size_t f = 0; f < nf; ++f) {
        for (const auto& entry : m.firm_valuations[f]) {
            Rational total = entry.value;
            bool feasible = true;
            for (auto w : entry.workers.members()) {
                auto it = m.worker_valuations[w].find(f);
                if (it == m.worker_valuations[w].end()) {
                    feasible = false;
                    break;
                }
                total += it->second;
            }
            if (!feasible) continue;
            Rational have = uf[f];
            for (auto w : entry.workers.members()) have += uw[w];
            if (have < total) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Matrices

inline std::int64_t cofactor_det(const std::vector<std::vector<std::int64_t>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    std::int64_t total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c] == 0) continue;
        std::vector<std::vector<std::int64_t>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<std::int64_t> row;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != c) row.push_back(a[r][k]);
            }
            minor.push_back(row);
        }
        std::int64_t term = a[0][c] * cofactor_det(minor);
        total += (c % 2 == 0) ? term : -term;
    }
    return total;
}

// Calls visit(rows, cols) for every k-subset pair, lexicographic in rows then
// columns. Stops when visit returns false.
inline bool for_each_square(std::size_t nrows, std::size_t ncols, std::size_t k,
                            const std::function<bool(const std::vector<std::size_t>&,
                                                     const std::vector<std::size_t>&)>& visit) {
    std::vector<std::vector<std::size_t>> row_sets;
    std::vector<std::vector<std::size_t>> col_sets;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, std::size_t, std::vector<std::vector<std::size_t>>&)> pick =
        [&](std::size_t start, std::size_t n, std::vector<std::vector<std::size_t>>& out) {
            if (cur.size() == k) {
                out.push_back(cur);
                return;
            }
            for (std::size_t i = start; i < n; ++i) {
                cur.push_back(i);
                pick(i + 1, n, out);
                cur.pop_back();
            }
        };
    pick(0, nrows, row_sets);
    pick(0, ncols, col_sets);
    for (const auto& rs : row_sets) {
        for (const auto& cs : col_sets) {
            if (!visit(rs, cs)) return false;
        }
    }
    return true;
}

inline std::vector<std::vector<std::int64_t>> submatrix(const std::vector<std::vector<std::int64_t>>& a,
                                                        const std::vector<std::size_t>& rows,
                                                        const std::vector<std::size_t>& cols) {
    std::vector<std::vector<std::int64_t>> out;
    for (auto r : rows) {
        std::vector<std::int64_t> row;
        for (auto c : cols) row.push_back(a[r][c]);
        out.push_back(row);
    }
    return out;
}

// Every square submatrix up to order max_order has determinant in {-1,0,1}.
inline bool oracle_unimodular(const std::vector<std::vector<std::int64_t>>& a, std::size_t max_order) {
    const std::size_t nr = a.size();
    const std::size_t nc = nr == 0 ? 0 : a[0].size();
    for (std::size_t k = 1; k <= std::min({nr, nc, max_order}); ++k) {
        bool ok = for_each_square(nr, nc, k, [&](const auto& rs, const auto& cs) {
            auto d = cofactor_det(submatrix(a, rs, cs));
            return d >= -1 && d <= 1;
        });
        if (!ok) return false;
    }
    return true;
}

// A 0/1 matrix is balanced iff it has no odd square submatrix with exactly
// two ones in every row and every column.
inline bool oracle_balanced(const IntMatrix& incidence) {
    const auto& a = incidence.entries;
    const std::size_t nr = a.size();
    const std::size_t nc = nr == 0 ? 0 : a[0].size();
    for (std::size_t k = 3; k <= std::min(nr, nc); k += 2) {
        bool ok = for_each_square(nr, nc, k, [&](const auto& rs, const auto& cs) {
            for (auto r : rs) {
                int ones = 0;
                for (auto c : cs) ones += a[r][c] != 0;
                if (ones != 2) return true;
            }
            for (auto c : cs) {
                int ones = 0;
                for (auto r : rs) ones += a[r][c] != 0;
                if (ones != 2) return true;
            }
            return false;
        });
        if (!ok) return false;
    }
    return true;
}

}  // namespace matchkit::testing
