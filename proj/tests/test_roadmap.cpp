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

#include <functional>

#include "matchkit/errors.hpp"
#include "matchkit/generator.hpp"
#include "matchkit/io.hpp"
#include "matchkit/roadmap.hpp"
#include "support.hpp"

using namespace matchkit;
using matchkit::testing::load_discrete;
using matchkit::testing::set_of;
using Indices = std::vector<std::size_t>;

namespace {

Roadmap load_roadmap(const std::string& name, const std::vector<std::string>& workers) {
    return parse_roadmap(read_file(testing::fixture_path(name)), workers);
}

// Vertex sets of every directed path, found by walking edges from each start.
std::vector<Indices> oracle_paths(const Roadmap& r) {
    std::vector<Indices> out;
    std::function<void(Indices&)> walk = [&](Indices& path) {
        out.push_back(path);
        for (const auto& [from, to] : r.edges) {
            if (from != path.back()) continue;
            path.push_back(to);
            walk(path);
            path.pop_back();
        }
    };
    for (std::size_t v = 0; v < r.technologies.size(); ++v) {
        Indices path{v};
        walk(path);
    }
    return out;
}

// Tries every combination of one path per firm.
bool oracle_specialized(const std::vector<std::vector<WorkerSet>>& acceptable, const Roadmap& r) {
    const auto paths = oracle_paths(r);
    std::vector<bool> used(r.technologies.size(), false);
    std::function<bool(std::size_t)> assign = [&](std::size_t f) {
        if (f == acceptable.size()) return true;
        if (acceptable[f].empty()) return assign(f + 1);
        for (const auto& p : paths) {
            bool ok = true;
            for (auto v : p) ok = ok && !used[v];
            for (auto s : acceptable[f]) {
                bool covered = false;
                for (auto v : p) covered = covered || r.demanded[v] == s;
                ok = ok && covered;
            }
            if (!ok) continue;
            for (auto v : p) used[v] = true;
            bool rest = assign(f + 1);
            for (auto v : p) used[v] = false;
            if (rest) return true;
        }
        return false;
    };
    return assign(0);
}

}  // namespace

TEST_CASE("roadmap validation", "[roadmap]") {
    auto m = load_discrete("profile13.json");
    CHECK(validate_roadmap(load_roadmap("example4_roadmap.json", m.workers)).empty());

    Roadmap two{{"v1", "v2"}, {{0, 1}}, {set_of({0}), set_of({0})}, {"w"}};
    CHECK(validate_roadmap(two).empty());

    auto intro = load_discrete("intro_discrete.json");
    auto cyclic = load_roadmap("cyclic_roadmap.json", intro.workers);
    CHECK_FALSE(validate_roadmap(cyclic).empty());
    CHECK_THROWS_AS(require_valid(cyclic), InputError);

    Roadmap split{{"v1", "v2", "v3"}, {{0, 1}}, {{}, {}, {}}, {"w"}};
    CHECK_FALSE(validate_roadmap(split).empty());

    Roadmap loop{{"v1"}, {{0, 0}}, {{}}, {"w"}};
    CHECK_FALSE(validate_roadmap(loop).empty());

    Roadmap stray{{"v1"}, {}, {set_of({3})}, {"w"}};
    CHECK_FALSE(validate_roadmap(stray).empty());
}

TEST_CASE("worker subgraphs and specialists", "[roadmap]") {
    auto m = load_discrete("profile13.json");
    auto r = load_roadmap("example4_roadmap.json", m.workers);
    auto w1 = worker_subgraph(r, 0);
    CHECK(w1.vertices == Indices{0, 2, 4});
    CHECK(w1.edges == Indices{0, 3});
    for (std::size_t w = 0; w < 5; ++w) CHECK(is_specialist(r, w));
    CHECK_THROWS_AS(worker_subgraph(r, 9), InputError);

    auto intro = load_discrete("intro_discrete.json");
    auto counter = load_roadmap("counter_roadmap1.json", intro.workers);
    auto split = worker_subgraph(counter, 0);
    CHECK(split.vertices == Indices{0, 2});
    CHECK(split.edges.empty());
    CHECK_FALSE(is_specialist(counter, 0));
    CHECK(is_specialist(counter, 1));

    Roadmap idle{{"v1", "v2"}, {{0, 1}}, {set_of({0}), {}}, {"w", "x"}};
    CHECK(worker_subgraph(idle, 1).vertices.empty());
    CHECK(is_specialist(idle, 1));
    CHECK(is_specialist(idle, 0));

    // Two paths meeting at a vertex are not one directed path.
    Roadmap fork{{"v1", "v2", "v3"}, {{0, 1}, {2, 1}}, {set_of({0}), set_of({0}), set_of({0})}, {"w"}};
    CHECK_FALSE(is_specialist(fork, 0));
}

TEST_CASE("technology paths", "[roadmap]") {
    Roadmap chain{{"a", "b", "c"}, {{0, 1}, {1, 2}}, {{}, {}, {}}, {}};
    auto paths = technology_paths(chain);
    REQUIRE(paths.size() == 6);
    CHECK(paths[0].vertices == Indices{0});
    CHECK(paths[3].vertices == Indices{0, 1});
    CHECK(paths[5].vertices == Indices{0, 1, 2});
    CHECK(paths[5].edges == Indices{0, 1});
    CHECK(describe_path(chain, paths[5]) == "a -> b -> c");

    auto m = load_discrete("profile13.json");
    auto r = load_roadmap("example4_roadmap.json", m.workers);
    CHECK(technology_paths(r).size() == oracle_paths(r).size());
}

TEST_CASE("specialized firms", "[roadmap]") {
    auto m = load_discrete("profile13.json");
    auto r = load_roadmap("example4_roadmap.json", m.workers);
    auto s = check_specialized(m, r);
    REQUIRE(s.specialized);
    REQUIRE(s.paths.size() == 3);
    CHECK(s.paths[0]->vertices == Indices{0, 2, 3});
    CHECK(s.paths[1]->vertices == Indices{1});
    CHECK(s.paths[2]->vertices == Indices{5, 4});
    CHECK(verify_specialization(m.firm_prefs, r, s.paths));

    // One firm, one set, two technologies demanding it.
    DiscreteMarket solo{{"f"}, {"w"}, {{set_of({0})}}, {{0}}};
    Roadmap twin{{"v1", "v2"}, {{0, 1}}, {set_of({0}), set_of({0})}, {"w"}};
    auto first = check_specialized(solo, twin);
    REQUIRE(first.specialized);
    CHECK(first.paths[0]->vertices == Indices{0});
    CHECK(all_specializations(solo, twin, 10).size() == 3);

    auto intro = load_discrete("intro_discrete.json");
    auto counter = load_roadmap("counter_roadmap2.json", intro.workers);
    auto no = check_specialized(intro, counter);
    CHECK_FALSE(no.specialized);
    CHECK_FALSE(no.reason.empty());

    DiscreteMarket other{{"f"}, {"a", "b"}, {{set_of({0})}}, {{0}, {0}}};
    CHECK_THROWS_AS(check_specialized(other, twin), InputError);
}

TEST_CASE("specialization check against exhaustive assignment", "[roadmap]") {
    int yes = 0;
    int no = 0;
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        GenParams p;
        p.seed = seed;
        p.firm_count = 2 + seed % 2;
        p.worker_count = 4;
        p.technology_count = 7;
        auto inst = gen_roadmap_instance(p, MarketKind::discrete);
        const auto& r = inst.roadmap;
        // Reassign sets at random so that some firms lose their disjoint paths.
        auto market = std::get<DiscreteMarket>(inst.market);
        Xorshift64Star rng(seed);
        for (auto& prefs : market.firm_prefs) {
            prefs.clear();
            auto count = rng.between(1, 2);
            for (std::uint64_t i = 0; i < count; ++i) {
                auto s = r.demanded[rng.below(r.technologies.size())];
                if (!s.empty() && std::find(prefs.begin(), prefs.end(), s) == prefs.end()) prefs.push_back(s);
            }
        }
        INFO("seed " << seed);
        auto verdict = check_specialized(market, r);
        CHECK(verdict.specialized == oracle_specialized(market.firm_prefs, r));
        if (verdict.specialized) {
            CHECK(verify_specialization(market.firm_prefs, r, verdict.paths));
            ++yes;
        } else {
            ++no;
        }
    }
    CHECK(yes > 10);
    CHECK(no > 10);
}

TEST_CASE("roadmap hypotheses report", "[roadmap]") {
    auto m = load_discrete("profile13.json");
    auto good = theorem3_report(m, load_roadmap("example4_roadmap.json", m.workers));
    CHECK(good.all_specialists());
    CHECK(good.specialization.specialized);
    CHECK(good.balance.balanced);
    CHECK(good.holds());

    auto intro = load_discrete("intro_discrete.json");
    auto bad = theorem3_report(intro, load_roadmap("counter_roadmap1.json", intro.workers));
    CHECK(bad.non_specialists == Indices{0});
    CHECK_FALSE(bad.balance.balanced);
    CHECK_FALSE(bad.holds());
    CHECK_FALSE(bad.falsified());

    DiscreteMarket empty;
    Roadmap lone{{"v1"}, {}, {{}}, {}};
    auto vacuous = theorem3_report(empty, lone);
    CHECK(vacuous.holds());
}

TEST_CASE("generated instances satisfy the hypotheses", "[roadmap]") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        GenParams p;
        p.seed = seed;
        p.firm_count = 3;
        p.worker_count = 5;
        p.technology_count = 8;
        auto kind = seed % 2 == 0 ? MarketKind::tu : MarketKind::discrete;
        auto inst = gen_roadmap_instance(p, kind);
        INFO("seed " << seed);
        REQUIRE(validate_roadmap(inst.roadmap).empty());
        auto report = std::visit([&](const auto& market) { return theorem3_report(market, inst.roadmap); },
                                 inst.market);
        CHECK(report.holds());
    }
}
