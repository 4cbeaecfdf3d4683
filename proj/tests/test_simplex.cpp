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

#include "catch2/catch_amalgamated.hpp"

#include <optional>

#include "matchkit/generator.hpp"
#include "matchkit/simplex.hpp"

using namespace matchkit;
using R = Rational;

namespace {

R dot(const std::vector<R>& a, const std::vector<R>& b) {
    R s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void require_feasible(const lp::Problem& p, const lp::Solution& s) {
    for (const auto& x : s.x) REQUIRE(x >= 0);
    for (std::size_t r = 0; r < p.constraints.size(); ++r) REQUIRE(dot(p.constraints[r], s.x) == p.rhs[r]);
}

// Two equality rows: try every pair of basic columns and keep the best
// feasible basic solution.
std::optional<R> best_basic_value(const lp::Problem& p) {
    const auto& a = p.constraints;
    const std::size_t n = a[0].size();
    std::optional<R> best;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            R det = a[0][i] * a[1][j] - a[0][j] * a[1][i];
            if (det == 0) continue;
            R xi = (p.rhs[0] * a[1][j] - a[0][j] * p.rhs[1]) / det;
            R xj = (a[0][i] * p.rhs[1] - p.rhs[0] * a[1][i]) / det;
            if (xi < 0 || xj < 0) continue;
            R value = p.objectives[0][i] * xi + p.objectives[0][j] * xj;
            if (!best || value < *best) best = value;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("simple covering LP", "[simplex]") {
    lp::Problem p{{{1, 1, -1}}, {1}, {{1, 1, 0}}};
    auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::optimal);
    CHECK(s.objective_values[0] == 1);
    require_feasible(p, s);
}

TEST_CASE("infeasible and unbounded programs", "[simplex]") {
    CHECK(lp::solve({{{1, 0}}, {-1}, {{1, 0}}}).status == lp::Status::infeasible);
    CHECK(lp::solve({{{1, 1}, {1, 1}}, {1, 2}, {{0, 0}}}).status == lp::Status::infeasible);
    CHECK(lp::solve({{{1, -1}}, {0}, {{-1, 0}}}).status == lp::Status::unbounded);
}

TEST_CASE("later objectives optimise over the earlier optimal face", "[simplex]") {
    lp::Problem p{{{1, 1}}, {1}, {{0, 0}, {1, 0}}};
    auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::optimal);
    CHECK(s.x == std::vector<R>{0, 1});

    p.objectives = {{1, 1}, {0, 1}};
    s = lp::solve(p);
    CHECK(s.x == std::vector<R>{1, 0});
    CHECK(s.objective_values == std::vector<R>{1, 0});
}

TEST_CASE("degenerate program that cycles under the textbook rule", "[simplex]") {
    // Beale's example with slacks x1..x3 in front.
    lp::Problem p;
    p.constraints = {
        {1, 0, 0, R(1, 4), -60, R(-1, 25), 9},
        {0, 1, 0, R(1, 2), -90, R(-1, 50), 3},
        {0, 0, 1, 0, 0, 1, 0},
    };
    p.rhs = {0, 0, 1};
    p.objectives = {{0, 0, 0, R(-3, 4), 150, R(-1, 50), 6}};
    auto s = lp::solve(p);
    REQUIRE(s.status == lp::Status::optimal);
    CHECK(s.objective_values[0] == R(-1, 20));
    require_feasible(p, s);
}

TEST_CASE("random two-row programs match basis enumeration", "[simplex]") {
    Xorshift64Star rng(99);
    auto draw = [&](int lo, int hi) {
        return R(static_cast<long long>(rng.between(0, static_cast<std::uint64_t>(hi - lo))) + lo,
                 static_cast<long long>(rng.between(1, 3)));
    };
    int optimal = 0;
    for (int trial = 0; trial < 300; ++trial) {
        lp::Problem p;
        p.constraints.assign(2, std::vector<R>(5));
        for (auto& row : p.constraints) {
            for (auto& x : row) x = draw(-3, 3);
        }
        p.rhs = {draw(-2, 4), draw(-2, 4)};
        // Non-negative costs keep the program bounded below.
        p.objectives = {std::vector<R>(5)};
        for (auto& c : p.objectives[0]) c = draw(0, 5);
        auto s = lp::solve(p);
        auto expected = best_basic_value(p);
        INFO("trial " << trial);
        if (expected) {
            REQUIRE(s.status == lp::Status::optimal);
            CHECK(s.objective_values[0] == *expected);
            require_feasible(p, s);
            ++optimal;
        } else {
            // A rank-deficient system may still be feasible through a single column.
            if (s.status == lp::Status::optimal) require_feasible(p, s);
        }
    }
    CHECK(optimal > 50);
}
