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

#include "matchkit/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "matchkit/errors.hpp"

namespace matchkit {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

// Type mismatches deep inside a document surface as library exceptions.
template <typename F>
auto guarded(F&& parse) {
    try {
        return parse();
    } catch (const Json::exception& e) {
        throw InputError(std::string("unexpected JSON structure: ") + e.what());
    }
}

const Json& member(const Json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return obj.at(key);
}

const Json& object_member(const Json& obj, const char* key) {
    const Json& v = member(obj, key);
    if (!v.is_object()) throw InputError(std::string("field '") + key + "' must be an object");
    return v;
}

std::string as_name(const Json& v, const std::string& what) {
    if (!v.is_string()) throw InputError(what + " must be a string");
    return v.get<std::string>();
}

Rational as_rational(const Json& v, const std::string& what) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw InputError(what + " must be an integer or a rational string");
}

std::size_t index_of(const std::map<std::string, std::size_t>& index, const std::string& name,
                     const std::string& kind) {
    auto it = index.find(name);
    if (it == index.end()) throw InputError("unknown " + kind + " '" + name + "'");
    return it->second;
}

std::map<std::string, std::size_t> index_names(const std::vector<std::string>& names, const std::string& kind) {
    std::map<std::string, std::size_t> out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!out.emplace(names[i], i).second) throw InputError("duplicate " + kind + " '" + names[i] + "'");
    }
    return out;
}

WorkerSet as_worker_set(const Json& v, const std::map<std::string, std::size_t>& workers) {
    if (!v.is_array()) throw InputError("worker set must be an array");
    WorkerSet s;
    for (const auto& name : v) s = s.with(index_of(workers, as_name(name, "worker name"), "worker"));
    return s;
}

Json worker_set_json(const std::vector<std::string>& names, WorkerSet s) {
    Json out = Json::array();
    for (auto w : s.members()) out.push_back(names[w]);
    return out;
}

std::vector<std::string> keys(const Json& obj) {
    std::vector<std::string> out;
    for (auto it = obj.begin(); it != obj.end(); ++it) out.push_back(it.key());
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

TuMarket parse_tu(const Json& root) {
    const Json& firms = object_member(root, "firms");
    const Json& workers = object_member(root, "workers");
    TuMarket m;
    m.firms = keys(firms);
    m.workers = keys(workers);
    if (m.workers.size() > kMaxWorkers) throw InputError("more than 64 workers");
    const auto firm_index = index_names(m.firms, "firm");
    const auto worker_index = index_names(m.workers, "worker");
    for (const auto& name : m.firms) {
        const Json& sets = firms.at(name);
        if (!sets.is_array()) throw InputError("acceptable sets of firm '" + name + "' must be an array");
        auto& row = m.firm_valuations.emplace_back();
        for (const auto& entry : sets) {
            row.push_back({as_worker_set(member(entry, "set"), worker_index),
                           as_rational(member(entry, "value"), "value")});
        }
    }
    for (const auto& name : m.workers) {
        const Json& vals = workers.at(name);
        if (!vals.is_object()) throw InputError("valuations of worker '" + name + "' must be an object");
        auto& row = m.worker_valuations.emplace_back();
        for (auto it = vals.begin(); it != vals.end(); ++it) {
            row[index_of(firm_index, it.key(), "firm")] = as_rational(it.value(), "value");
        }
    }
    return m;
}

DiscreteMarket parse_discrete(const Json& root) {
    const Json& firms = object_member(root, "firms");
    const Json& workers = object_member(root, "workers");
    DiscreteMarket m;
    m.firms = keys(firms);
    m.workers = keys(workers);
    if (m.workers.size() > kMaxWorkers) throw InputError("more than 64 workers");
    const auto firm_index = index_names(m.firms, "firm");
    const auto worker_index = index_names(m.workers, "worker");
    for (const auto& name : m.firms) {
        const Json& sets = firms.at(name);
        if (!sets.is_array()) throw InputError("preferences of firm '" + name + "' must be an array");
        auto& row = m.firm_prefs.emplace_back();
        for (const auto& s : sets) row.push_back(as_worker_set(s, worker_index));
    }
    for (const auto& name : m.workers) {
        const Json& prefs = workers.at(name);
        if (!prefs.is_array()) throw InputError("preferences of worker '" + name + "' must be an array");
        auto& row = m.worker_prefs.emplace_back();
        for (const auto& f : prefs) row.push_back(index_of(firm_index, as_name(f, "firm name"), "firm"));
    }
    return m;
}

std::vector<std::optional<std::size_t>> parse_assignment(const Json& root, const std::vector<std::string>& firms,
                                                         const std::vector<std::string>& workers) {
    const auto firm_index = index_names(firms, "firm");
    const auto worker_index = index_names(workers, "worker");
    std::vector<std::optional<std::size_t>> out(workers.size());
    const Json& assignment = object_member(root, "assignment");
    for (auto it = assignment.begin(); it != assignment.end(); ++it) {
        const std::size_t w = index_of(worker_index, it.key(), "worker");
        if (it.value().is_null()) continue;
        out[w] = index_of(firm_index, as_name(it.value(), "firm name"), "firm");
    }
    return out;
}

Json assignment_json(const std::vector<std::string>& firms, const std::vector<std::string>& workers,
                     const std::vector<std::optional<std::size_t>>& assignment) {
    Json out = Json::object();
    for (std::size_t w = 0; w < assignment.size(); ++w) {
        if (assignment[w]) out[workers.at(w)] = firms.at(*assignment[w]);
    }
    return out;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

AnyMarket parse_market(const std::string& text) {
    return guarded([&]() -> AnyMarket {
        const Json root = parse_json(text);
        const std::string kind = as_name(member(root, "kind"), "kind");
        AnyMarket market;
        if (kind == "tu") {
            market = parse_tu(root);
        } else if (kind == "discrete") {
            market = parse_discrete(root);
        } else {
            throw InputError("kind must be \"tu\" or \"discrete\", got '" + kind + "'");
        }
        std::visit([](const auto& m) { require_valid(m); }, market);
        return market;
    });
}

MarketKind market_kind(const AnyMarket& market) {
    return std::holds_alternative<TuMarket>(market) ? MarketKind::tu : MarketKind::discrete;
}

std::string serialize_market(const TuMarket& market) {
    Json firms = Json::object();
    for (std::size_t f = 0; f < market.firms.size(); ++f) {
        Json sets = Json::array();
        for (const auto& s : market.firm_valuations.at(f)) {
            sets.push_back({{"set", worker_set_json(market.workers, s.workers)}, {"value", to_string(s.value)}});
        }
        firms[market.firms[f]] = sets;
    }
    Json workers = Json::object();
    for (std::size_t w = 0; w < market.workers.size(); ++w) {
        Json vals = Json::object();
        for (const auto& [f, v] : market.worker_valuations.at(w)) vals[market.firms.at(f)] = to_string(v);
        workers[market.workers[w]] = vals;
    }
    return dump({{"kind", "tu"}, {"firms", firms}, {"workers", workers}});
}

std::string serialize_market(const DiscreteMarket& market) {
    Json firms = Json::object();
    for (std::size_t f = 0; f < market.firms.size(); ++f) {
        Json sets = Json::array();
        for (auto s : market.firm_prefs.at(f)) sets.push_back(worker_set_json(market.workers, s));
        firms[market.firms[f]] = sets;
    }
    Json workers = Json::object();
    for (std::size_t w = 0; w < market.workers.size(); ++w) {
        Json prefs = Json::array();
        for (auto f : market.worker_prefs.at(w)) prefs.push_back(market.firms.at(f));
        workers[market.workers[w]] = prefs;
    }
    return dump({{"kind", "discrete"}, {"firms", firms}, {"workers", workers}});
}

std::string serialize_market(const AnyMarket& market) {
    return std::visit([](const auto& m) { return serialize_market(m); }, market);
}

TuMatching parse_tu_matching(const std::string& text, const TuMarket& market) {
    return guarded([&] {
        const Json root = parse_json(text);
        TuMatching out;
        out.assignment = parse_assignment(root, market.firms, market.workers);
        out.prices.assign(market.workers.size(), Rational(0));
        if (root.contains("prices")) {
            const auto worker_index = index_names(market.workers, "worker");
            const Json& prices = object_member(root, "prices");
            for (auto it = prices.begin(); it != prices.end(); ++it) {
                out.prices[index_of(worker_index, it.key(), "worker")] = as_rational(it.value(), "price");
            }
        }
        return out;
    });
}

DiscreteMatching parse_discrete_matching(const std::string& text, const DiscreteMarket& market) {
    return guarded([&] {
        const Json root = parse_json(text);
        return DiscreteMatching{parse_assignment(root, market.firms, market.workers)};
    });
}

std::string serialize_matching(const TuMarket& market, const TuMatching& matching) {
    Json prices = Json::object();
    for (std::size_t w = 0; w < matching.prices.size(); ++w) {
        if (matching.prices[w] != 0) prices[market.workers.at(w)] = to_string(matching.prices[w]);
    }
    return dump({{"assignment", assignment_json(market.firms, market.workers, matching.assignment)},
                 {"prices", prices}});
}

std::string serialize_matching(const DiscreteMarket& market, const DiscreteMatching& matching) {
    return dump({{"assignment", assignment_json(market.firms, market.workers, matching.assignment)}});
}

Roadmap parse_roadmap(const std::string& text, const std::vector<std::string>& workers) {
    return guarded([&] {
        const Json root = parse_json(text);
        const Json& techs = object_member(root, "technologies");
        const Json& edges = member(root, "edges");
        if (!edges.is_array()) throw InputError("field 'edges' must be an array");
        Roadmap r;
        r.workers = workers;
        r.technologies = keys(techs);
        const auto worker_index = index_names(workers, "worker");
        const auto tech_index = index_names(r.technologies, "technology");
        for (const auto& name : r.technologies) r.demanded.push_back(as_worker_set(techs.at(name), worker_index));
        for (const auto& e : edges) {
            if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a [from, to] pair");
            r.edges.push_back({index_of(tech_index, as_name(e[0], "technology name"), "technology"),
                               index_of(tech_index, as_name(e[1], "technology name"), "technology")});
        }
        return r;
    });
}

std::string serialize_roadmap(const Roadmap& r) {
    Json techs = Json::object();
    for (std::size_t v = 0; v < r.technologies.size(); ++v) {
        techs[r.technologies[v]] = worker_set_json(r.workers, r.demanded.at(v));
    }
    Json edges = Json::array();
    for (const auto& [from, to] : r.edges) edges.push_back(Json::array({r.technologies.at(from), r.technologies.at(to)}));
    return dump({{"technologies", techs}, {"edges", edges}});
}

}  // namespace matchkit
