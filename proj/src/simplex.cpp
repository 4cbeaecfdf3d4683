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

#include "matchkit/simplex.hpp"

#include <optional>

#include "matchkit/errors.hpp"

namespace matchkit::lp {

namespace {

class Tableau {
 public:
    Tableau(const Problem& p) : rows_(p.constraints.size()), cols_(0) {
        if (p.rhs.size() != rows_) throw InputError("right-hand side does not match the constraint count");
        if (p.objectives.empty()) throw InputError("at least one objective is required");
        cols_ = rows_ == 0 ? p.objectives.front().size() : p.constraints.front().size();
        for (const auto& row : p.constraints) {
            if (row.size() != cols_) throw InputError("ragged constraint matrix");
        }
        for (const auto& c : p.objectives) {
            if (c.size() != cols_) throw InputError("objective length does not match the variable count");
        }
        // Original columns, then one artificial per row.
        table_.assign(rows_, std::vector<Rational>(cols_ + rows_));
        rhs_.resize(rows_);
        basis_.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            const bool flip = p.rhs[i] < 0;
            for (std::size_t j = 0; j < cols_; ++j) table_[i][j] = flip ? Rational(-p.constraints[i][j]) : p.constraints[i][j];
            table_[i][cols_ + i] = 1;
            rhs_[i] = flip ? Rational(-p.rhs[i]) : p.rhs[i];
            basis_[i] = cols_ + i;
        }
        allowed_.assign(cols_ + rows_, 1);
    }

    Solution run(const Problem& p) {
        Solution out;
        // Phase 1: minimise the sum of artificials.
        std::vector<Rational> phase1(cols_ + rows_);
        for (std::size_t i = 0; i < rows_; ++i) phase1[cols_ + i] = 1;
        if (optimise(phase1) != Status::optimal) throw InternalError("phase 1 cannot be unbounded");
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] >= cols_ && rhs_[i] != 0) {
                out.status = Status::infeasible;
                out.pivots = pivots_;
                return out;
            }
        }
        drive_out_artificials();
        for (std::size_t j = cols_; j < cols_ + rows_; ++j) allowed_[j] = 0;

        for (const auto& objective : p.objectives) {
            std::vector<Rational> cost(objective);
            cost.resize(cols_ + rows_);
            const Status status = optimise(cost);
            if (status != Status::optimal) {
                out.status = status;
                out.pivots = pivots_;
                return out;
            }
            Rational value = 0;
            for (std::size_t i = 0; i < table_.size(); ++i) value += cost[basis_[i]] * rhs_[i];
            out.objective_values.push_back(value);
            const auto reduced = reduced_costs(cost);
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!is_basic(j) && reduced[j] > 0) allowed_[j] = 0;
            }
        }
        out.status = Status::optimal;
        out.x.assign(cols_, 0);
        for (std::size_t i = 0; i < table_.size(); ++i) {
            if (basis_[i] < cols_) out.x[basis_[i]] = rhs_[i];
        }
        out.pivots = pivots_;
        return out;
    }

 private:
    bool is_basic(std::size_t j) const {
        for (auto b : basis_) {
            if (b == j) return true;
        }
        return false;
    }

    std::vector<Rational> reduced_costs(const std::vector<Rational>& cost) const {
        std::vector<Rational> d(cost);
        for (std::size_t i = 0; i < table_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j < d.size(); ++j) {
                if (table_[i][j] != 0) d[j] -= cb * table_[i][j];
            }
        }
        return d;
    }

    Status optimise(const std::vector<Rational>& cost) {
        while (true) {
            const auto d = reduced_costs(cost);
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < d.size(); ++j) {
                if (allowed_[j] && d[j] < 0 && !is_basic(j)) {
                    entering = j;
                    break;
                }
            }
            if (!entering) return Status::optimal;
            std::optional<std::size_t> leaving;
            Rational best_ratio;
            for (std::size_t i = 0; i < table_.size(); ++i) {
                const Rational& a = table_[i][*entering];
                if (a <= 0) continue;
                Rational ratio = rhs_[i] / a;
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (!leaving) return Status::unbounded;
            pivot(*leaving, *entering);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        ++pivots_;
        const Rational inv = 1 / table_[r][c];
        auto& prow = table_[r];
        for (auto& v : prow) {
            if (v != 0) v *= inv;
        }
        rhs_[r] *= inv;
        for (std::size_t i = 0; i < table_.size(); ++i) {
            if (i == r) continue;
            const Rational factor = table_[i][c];
            if (factor == 0) continue;
            auto& row = table_[i];
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (prow[j] != 0) row[j] -= factor * prow[j];
            }
            rhs_[i] -= factor * rhs_[r];
        }
        basis_[r] = c;
    }

    // Zero-valued artificials left in the basis after phase 1 are pivoted
    // out; rows with no remaining original entry are redundant and dropped.
    void drive_out_artificials() {
        for (std::size_t i = 0; i < table_.size();) {
            if (basis_[i] < cols_) {
                ++i;
                continue;
            }
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (table_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col) {
                pivot(i, *col);
                ++i;
            } else {
                table_.erase(table_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::vector<Rational>> table_;
    std::vector<Rational> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<char> allowed_;
    std::size_t pivots_ = 0;
};

}  // namespace

Solution solve(const Problem& problem) {
    Tableau tableau(problem);
    return tableau.run(problem);
}

}  // namespace matchkit::lp
