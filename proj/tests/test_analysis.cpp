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

#include <algorithm>

#include "matchkit/analysis.hpp"
#include "matchkit/errors.hpp"
#include "matchkit/generator.hpp"
#include "support.hpp"

using namespace matchkit;
using matchkit::testing::load_discrete;
using Matrix = std::vector<std::vector<std::int64_t>>;

namespace {

// f1 f2 w1 w2 = 0..3, edges {f1,w1,w2} {f2,w1} {f2,w2}.
const HyperCycle kIntroCycle{{1, 2, 3}, {1, 0, 2}};

IntMatrix unlabelled(const Matrix& entries) {
    IntMatrix m = IntMatrix::zeros(entries.size(), entries.empty() ? 0 : entries[0].size());
    m.entries = entries;
    return m;
}

Matrix random_matrix(Xorshift64Star& rng, std::size_t rows, std::size_t cols, double zero_bias) {
    Matrix a(rows, std::vector<std::int64_t>(cols));
    for (auto& row : a) {
        for (auto& x : row) x = rng.chance(zero_bias) ? 0 : (rng.chance(0.5) ? 1 : -1);
    }
    return a;
}

}  // namespace

TEST_CASE("pair condition", "[analysis]") {
    auto intro = load_discrete("intro_discrete.json");
    CHECK(satisfies_pair_condition(intro, build_hypergraph(intro), kIntroCycle));

    // f1 f2 w1 w2; edges {f1,w1,w2} {f2,w1,w2} {f2,w1} {f2,w2}.
    auto ex3 = load_discrete("example3_discrete.json");
    HyperCycle odd{{1, 3, 2}, {3, 0, 2}};
    auto h = build_hypergraph(ex3);
    REQUIRE(is_nontrivial_odd(h, odd));
    CHECK_FALSE(satisfies_pair_condition(ex3, h, odd));
}

TEST_CASE("cycle-based guarantee", "[analysis]") {
    CHECK(prop1_check(load_discrete("example3_discrete.json")).guaranteed);

    auto intro = prop1_check(load_discrete("intro_discrete.json"));
    CHECK_FALSE(intro.guaranteed);
    REQUIRE(intro.witness);
    CHECK(*intro.witness == canonical_form(kIntroCycle));

    auto marriage = load_discrete("marriage.json");
    REQUIRE(check_balanced(build_hypergraph(marriage)).balanced);
    CHECK(prop1_check(marriage).guaranteed);
}

TEST_CASE("demand types", "[analysis]") {
    auto intro = demand_type(load_discrete("intro_discrete.json"));
    CHECK(intro.all == std::vector<DemandVector>{{1, 1}, {1, 0}, {1, -1}, {0, 1}});

    auto ex3 = demand_type(load_discrete("example3_discrete.json"));
    CHECK(ex3.per_firm[1] == std::vector<DemandVector>{{1, 1}, {1, 0}, {0, 1}});
    CHECK(ex3.all == std::vector<DemandVector>{{1, 1}, {1, 0}, {0, 1}});

    DiscreteMarket idle{{"f"}, {"w"}, {{}}, {{0}}};
    CHECK(demand_type(idle).per_firm[0].empty());

    CHECK(describe_vector({1, -1}) == "(1,-1)");
}

TEST_CASE("demand types match the pairwise definition", "[analysis]") {
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        GenParams p;
        p.seed = seed;
        p.firm_count = 2;
        p.worker_count = 4;
        p.max_set_size = 3;
        p.max_acceptable_sets_per_firm = 4;
        auto m = gen_discrete_market(p);
        auto got = demand_type(m).all;
        auto expected = testing::oracle_demand(m);
        INFO("seed " << seed);
        CHECK(std::set<DemandVector>(got.begin(), got.end()) == expected);
        CHECK(std::is_sorted(got.rbegin(), got.rend()));
    }
}

TEST_CASE("determinants", "[analysis]") {
    CHECK(determinant({}) == 1);
    CHECK(determinant({{-4}}) == -4);
    CHECK(determinant({{1, 1}, {1, -1}}) == -2);
    CHECK(determinant({{0, 1}, {1, 0}}) == -1);
    Xorshift64Star rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        auto n = static_cast<std::size_t>(rng.between(1, 6));
        auto a = random_matrix(rng, n, n, 0.3);
        CHECK(determinant(a) == testing::cofactor_det(a));
    }
}

TEST_CASE("total unimodularity on small demand matrices", "[analysis]") {
    std::vector<std::string> workers{"w1", "w2"};
    auto good = is_totally_unimodular(demand_matrix(workers, {{1, 1}, {1, 0}, {0, 1}}));
    CHECK(good.unimodular);

    auto bad = is_totally_unimodular(demand_matrix(workers, {{1, 1}, {1, 0}, {0, 1}, {1, -1}}));
    REQUIRE_FALSE(bad.unimodular);
    CHECK(bad.rows == std::vector<std::size_t>{0, 1});
    CHECK(bad.cols == std::vector<std::size_t>{0, 3});
    CHECK(bad.det == -2);

    for (std::size_t n = 1; n <= 6; ++n) {
        Matrix eye(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i) eye[i][i] = 1;
        CHECK(totally_unimodular(unlabelled(eye)));
    }

    CHECK_FALSE(is_totally_unimodular(unlabelled({{2}})).unimodular);
    CHECK(is_totally_unimodular(unlabelled({})).unimodular);
}

TEST_CASE("total unimodularity agrees with exhaustive minors", "[analysis]") {
    Xorshift64Star rng(17);
    int accepted = 0;
    int rejected = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto rows = static_cast<std::size_t>(rng.between(1, 5));
        auto cols = static_cast<std::size_t>(rng.between(1, 6));
        auto a = random_matrix(rng, rows, cols, trial % 2 == 0 ? 0.7 : 0.4);
        auto verdict = is_totally_unimodular(unlabelled(a));
        bool expected = testing::oracle_unimodular(a, std::min(rows, cols));
        INFO("trial " << trial);
        REQUIRE(verdict.unimodular == expected);
        CHECK(totally_unimodular(unlabelled(a)) == expected);
        if (expected) {
            ++accepted;
            continue;
        }
        ++rejected;
        // The reported minor is the first bad one in (order, rows, columns) order.
        std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> first;
        for (std::size_t k = 1; k <= std::min(rows, cols) && !first; ++k) {
            testing::for_each_square(rows, cols, k, [&](const auto& rs, const auto& cs) {
                auto d = testing::cofactor_det(testing::submatrix(a, rs, cs));
                if (d >= -1 && d <= 1) return true;
                first.emplace(rs, cs);
                return false;
            });
        }
        REQUIRE(first);
        CHECK(verdict.rows == first->first);
        CHECK(verdict.cols == first->second);
        CHECK(verdict.det == testing::cofactor_det(testing::submatrix(a, verdict.rows, verdict.cols)));
    }
    CHECK(accepted > 40);
    CHECK(rejected > 40);
}

TEST_CASE("total unimodularity on larger structured matrices", "[analysis]") {
    // Interval matrices (consecutive ones in each column) are totally unimodular.
    Xorshift64Star rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 8;
        std::size_t cols = 10;
        Matrix a(rows, std::vector<std::int64_t>(cols, 0));
        for (std::size_t c = 0; c < cols; ++c) {
            auto lo = rng.below(rows);
            auto hi = rng.between(lo, rows - 1);
            for (auto r = lo; r <= hi; ++r) a[r][c] = 1;
        }
        CHECK(totally_unimodular(unlabelled(a)));
        // An odd cycle matrix appended in a corner breaks it.
        a[0] = std::vector<std::int64_t>(cols, 0);
        a[1] = std::vector<std::int64_t>(cols, 0);
        a[2] = std::vector<std::int64_t>(cols, 0);
        a[0][0] = a[0][1] = 1;
        a[1][1] = a[1][2] = 1;
        a[2][0] = a[2][2] = 1;
        CHECK_FALSE(totally_unimodular(unlabelled(a)));
    }
}

TEST_CASE("cycle certificate", "[analysis]") {
    auto intro = load_discrete("intro_discrete.json");
    auto cert = tu_cycle_certificate(intro, canonical_form(kIntroCycle));
    CHECK(cert.m_double_prime.row_labels == std::vector<std::string>{"w1", "w2"});
    CHECK(cert.m_double_prime.entries == Matrix{{1, 1}, {-1, 1}});
    CHECK(cert.columns == std::vector<DemandVector>{{1, -1}, {1, 1}});
    CHECK(std::abs(cert.det) == 2);
    CHECK(cert.det == testing::cofactor_det(cert.m_double_prime.entries));

    auto ex3 = load_discrete("example3_discrete.json");
    CHECK_THROWS_AS(tu_cycle_certificate(ex3, HyperCycle{{1, 3, 2}, {3, 0, 2}}), InputError);
}

TEST_CASE("certificates on random unguaranteed markets", "[analysis]") {
    int certified = 0;
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        GenParams p;
        p.seed = seed;
        p.firm_count = 3;
        p.worker_count = 4;
        p.max_set_size = 3;
        auto m = gen_discrete_market(p);
        auto verdict = prop1_check(m);
        if (verdict.guaranteed) continue;
        INFO("seed " << seed);
        auto cert = tu_cycle_certificate(m, *verdict.witness);
        auto d = demand_type(m).all;
        for (const auto& col : cert.columns) CHECK(std::find(d.begin(), d.end(), col) != d.end());
        CHECK(std::abs(cert.det) == 2);
        CHECK(cert.det == testing::cofactor_det(cert.m_double_prime.entries));
        CHECK_FALSE(totally_unimodular(demand_matrix(m.workers, d)));
        ++certified;
    }
    CHECK(certified > 10);
}

TEST_CASE("demand type and guarantee together", "[analysis]") {
    auto ex3 = prop2_relation(load_discrete("example3_discrete.json"));
    CHECK(ex3.tu.unimodular);
    CHECK(ex3.prop1.guaranteed);

    auto intro = prop2_relation(load_discrete("intro_discrete.json"));
    CHECK_FALSE(intro.tu.unimodular);
    CHECK_FALSE(intro.prop1.guaranteed);
    CHECK_FALSE(intro.falsified());

    auto empty = prop2_relation(DiscreteMarket{});
    CHECK(empty.tu.unimodular);
    CHECK(empty.prop1.guaranteed);
}
