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

#include "matchkit/generator.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

#include "matchkit/errors.hpp"

namespace matchkit {

namespace {

using boost::multiprecision::cpp_int;

constexpr int kCarveAttempts = 200;
constexpr int kSetAttempts = 64;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

cpp_int floor_div(const cpp_int& a, const cpp_int& b) {
    cpp_int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Integer numerator bounds [lo, hi] for denominator d.
std::pair<cpp_int, cpp_int> numerator_range(const GenParams& p, std::size_t d) {
    const Rational lo = p.value_min * d;
    const Rational hi = p.value_max * d;
    const cpp_int lo_n = -floor_div(-numerator(lo), denominator(lo));
    const cpp_int hi_n = floor_div(numerator(hi), denominator(hi));
    return {lo_n, hi_n};
}

std::vector<std::string> names(char prefix, std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= count; ++i) out.push_back(std::string(1, prefix) + std::to_string(i));
    return out;
}

class Sampler {
 public:
    Sampler(const GenParams& p) : p_(p), rng_(p.seed) {
        for (std::size_t d = 1; d <= p.max_denominator; ++d) {
            auto [lo, hi] = numerator_range(p, d);
            if (lo <= hi) denominators_.push_back(d);
        }
    }

    Rational value() {
        const std::size_t d = denominators_[rng_.below(denominators_.size())];
        auto [lo, hi] = numerator_range(p_, d);
        const cpp_int span = hi - lo + 1;
        cpp_int offset;
        if (span > cpp_int(std::numeric_limits<std::uint64_t>::max())) {
            offset = rng_.next();
        } else {
            offset = rng_.below(static_cast<std::uint64_t>(span));
        }
        return Rational(lo + offset, cpp_int(d));
    }

    WorkerSet subset(std::size_t size) {
        std::vector<std::size_t> pool(p_.worker_count);
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
        WorkerSet s;
        for (std::size_t i = 0; i < size; ++i) {
            const std::size_t j = i + rng_.below(pool.size() - i);
            std::swap(pool[i], pool[j]);
            s = s.with(pool[i]);
        }
        return s;
    }

    // Between 1 and the configured maximum distinct sets, in sampling order.
    std::vector<WorkerSet> firm_sets() {
        std::vector<WorkerSet> sets;
        if (p_.worker_count == 0 || p_.max_acceptable_sets_per_firm == 0) return sets;
        const std::size_t want = rng_.between(1, p_.max_acceptable_sets_per_firm);
        for (int attempt = 0; attempt < kSetAttempts && sets.size() < want; ++attempt) {
            const WorkerSet s = subset(rng_.between(1, p_.max_set_size));
            if (std::find(sets.begin(), sets.end(), s) == sets.end()) sets.push_back(s);
        }
        return sets;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng_.below(i)]);
    }

    Xorshift64Star& rng() { return rng_; }

 private:
    const GenParams& p_;
    Xorshift64Star rng_;
    std::vector<std::size_t> denominators_;
};

std::vector<std::map<std::size_t, Rational>> tu_worker_valuations(Sampler& s, const GenParams& p) {
    std::vector<std::map<std::size_t, Rational>> out(p.worker_count);
    for (auto& row : out) {
        for (std::size_t f = 0; f < p.firm_count; ++f) {
            if (s.rng().chance(p.acceptability_density)) row[f] = s.value();
        }
    }
    return out;
}

std::vector<std::vector<std::size_t>> discrete_worker_prefs(Sampler& s, const GenParams& p) {
    std::vector<std::vector<std::size_t>> out(p.worker_count);
    for (auto& row : out) {
        for (std::size_t f = 0; f < p.firm_count; ++f) {
            if (s.rng().chance(p.acceptability_density)) row.push_back(f);
        }
        s.shuffle(row);
    }
    return out;
}

Roadmap random_tree(Sampler& s, const GenParams& p) {
    Roadmap r;
    r.technologies = names('v', p.technology_count);
    r.workers = names('w', p.worker_count);
    r.demanded.assign(p.technology_count, WorkerSet{});
    for (std::size_t v = 1; v < p.technology_count; ++v) {
        const std::size_t parent = s.rng().below(v);
        if (s.rng().chance(0.5)) {
            r.edges.push_back({parent, v});
        } else {
            r.edges.push_back({v, parent});
        }
    }
    return r;
}

}  // namespace

Xorshift64Star::Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
}

std::uint64_t Xorshift64Star::below(std::uint64_t bound) {
    if (bound == 0) throw InternalError("empty sampling range");
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        const std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

std::uint64_t Xorshift64Star::between(std::uint64_t lo, std::uint64_t hi) {
    if (hi == std::numeric_limits<std::uint64_t>::max() && lo == 0) return next();
    return lo + below(hi - lo + 1);
}

bool Xorshift64Star::chance(double p) {
    constexpr std::uint64_t kScale = std::uint64_t{1} << 53;
    const std::uint64_t threshold = p >= 1.0 ? kScale : static_cast<std::uint64_t>(p * static_cast<double>(kScale));
    return (next() >> 11) < threshold;
}

void validate_params(const GenParams& p, const SizeGuard& guard) {
    enforce_guard(p.firm_count, p.worker_count, guard);
    if (!(p.acceptability_density >= 0.0 && p.acceptability_density <= 1.0)) {
        throw InputError("acceptability density must lie in [0, 1]");
    }
    if (p.max_set_size > p.worker_count) throw InputError("max set size exceeds the worker count");
    if (p.max_set_size == 0 && p.max_acceptable_sets_per_firm > 0 && p.worker_count > 0) {
        throw InputError("max set size must be positive");
    }
    if (p.value_min > p.value_max) throw InputError("value range is empty");
    if (p.max_denominator < 1 || p.max_denominator > kMaxDenominator) {
        throw InputError("max denominator must lie in [1, " + std::to_string(kMaxDenominator) + "]");
    }
    bool representable = false;
    for (std::size_t d = 1; d <= p.max_denominator; ++d) {
        auto [lo, hi] = numerator_range(p, d);
        representable = representable || lo <= hi;
    }
    if (!representable) throw InputError("value range holds no fraction with an allowed denominator");
}

TuMarket gen_tu_market(const GenParams& p) {
    validate_params(p);
    Sampler s(p);
    TuMarket m;
    m.firms = names('f', p.firm_count);
    m.workers = names('w', p.worker_count);
    for (std::size_t f = 0; f < p.firm_count; ++f) {
        auto& row = m.firm_valuations.emplace_back();
        for (auto set : s.firm_sets()) row.push_back({set, s.value()});
    }
    m.worker_valuations = tu_worker_valuations(s, p);
    return m;
}

DiscreteMarket gen_discrete_market(const GenParams& p) {
    validate_params(p);
    Sampler s(p);
    DiscreteMarket m;
    m.firms = names('f', p.firm_count);
    m.workers = names('w', p.worker_count);
    for (std::size_t f = 0; f < p.firm_count; ++f) m.firm_prefs.push_back(s.firm_sets());
    m.worker_prefs = discrete_worker_prefs(s, p);
    return m;
}

RoadmapInstance gen_roadmap_instance(const GenParams& p, MarketKind kind) {
    validate_params(p);
    if (p.technology_count == 0) throw InputError("a roadmap needs at least one technology");
    if (p.technology_count < p.firm_count) throw InputError("fewer technologies than firms");
    Sampler s(p);
    Roadmap r = random_tree(s, p);
    const auto paths = technology_paths(r);

    for (std::size_t w = 0; w < p.worker_count; ++w) {
        for (auto v : paths[s.rng().below(paths.size())].vertices) r.demanded[v] = r.demanded[v].with(w);
    }

    std::vector<TechnologyPath> owned;
    for (int attempt = 0; attempt < kCarveAttempts && owned.size() < p.firm_count; ++attempt) {
        owned.clear();
        std::vector<bool> used(p.technology_count, false);
        for (std::size_t f = 0; f < p.firm_count; ++f) {
            std::vector<const TechnologyPath*> free;
            for (const auto& path : paths) {
                if (std::none_of(path.vertices.begin(), path.vertices.end(), [&](std::size_t v) { return used[v]; })) {
                    free.push_back(&path);
                }
            }
            if (free.empty()) break;
            const TechnologyPath& pick = *free[s.rng().below(free.size())];
            for (auto v : pick.vertices) used[v] = true;
            owned.push_back(pick);
        }
    }
    if (owned.size() < p.firm_count) throw InputError("could not carve vertex-disjoint firm paths");

    std::vector<std::vector<WorkerSet>> sets(p.firm_count);
    for (std::size_t f = 0; f < p.firm_count; ++f) {
        std::vector<WorkerSet> pool;
        for (auto v : owned[f].vertices) {
            const WorkerSet d = r.demanded[v];
            if (!d.empty() && std::find(pool.begin(), pool.end(), d) == pool.end()) pool.push_back(d);
        }
        s.shuffle(pool);
        if (pool.empty() || p.max_acceptable_sets_per_firm == 0) continue;
        const std::size_t take = s.rng().between(1, std::min(pool.size(), p.max_acceptable_sets_per_firm));
        sets[f].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
    }

    RoadmapInstance out{r, TuMarket{}};
    if (kind == MarketKind::tu) {
        TuMarket m;
        m.firms = names('f', p.firm_count);
        m.workers = names('w', p.worker_count);
        for (const auto& row : sets) {
            auto& vals = m.firm_valuations.emplace_back();
            for (auto set : row) vals.push_back({set, s.value()});
        }
        m.worker_valuations = tu_worker_valuations(s, p);
        out.market = std::move(m);
    } else {
        DiscreteMarket m;
        m.firms = names('f', p.firm_count);
        m.workers = names('w', p.worker_count);
        m.firm_prefs = sets;
        m.worker_prefs = discrete_worker_prefs(s, p);
        out.market = std::move(m);
    }
    return out;
}

}  // namespace matchkit
