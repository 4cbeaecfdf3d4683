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

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matchkit/rational.hpp"
#include "matchkit/worker_set.hpp"

namespace matchkit {

enum class AgentKind { firm, worker };

/// A firm or worker, by index into the owning market's name list.
struct AgentId {
    AgentKind kind = AgentKind::firm;
    std::size_t index = 0;

    auto operator<=>(const AgentId&) const = default;
};

/// One entry of a firm's acceptable-set collection together with its value.
struct AcceptableSet {
    WorkerSet workers;
    Rational value;

    bool operator==(const AcceptableSet&) const = default;
};

/// Many-to-one market with transferable utility.
///
/// firm_valuations[f] lists the acceptable sets of firm f (never the empty
/// set, whose value is 0 implicitly). worker_valuations[w] maps every firm
/// acceptable to worker w to the worker's value for it; the null firm has
/// value 0 and is never stored.
struct TuMarket {
    std::vector<std::string> firms;
    std::vector<std::string> workers;
    std::vector<std::vector<AcceptableSet>> firm_valuations;
    std::vector<std::map<std::size_t, Rational>> worker_valuations;

    bool operator==(const TuMarket&) const = default;

    /// v_f(S), or nullptr when S is not acceptable to f.
    const Rational* firm_value(std::size_t firm, WorkerSet set) const;
    /// v_w(f), or nullptr when f is not acceptable to w.
    const Rational* worker_value(std::size_t worker, std::size_t firm) const;
    bool worker_accepts(std::size_t worker, std::size_t firm) const {
        return worker_value(worker, firm) != nullptr;
    }
};

/// Many-to-one market with ordinal preferences.
///
/// firm_prefs[f] ranks the sets f prefers to the empty set, best first; every
/// unlisted set is worse than the empty set. worker_prefs[w] ranks the firms
/// w prefers to staying unmatched, best first.
struct DiscreteMarket {
    std::vector<std::string> firms;
    std::vector<std::string> workers;
    std::vector<std::vector<WorkerSet>> firm_prefs;
    std::vector<std::vector<std::size_t>> worker_prefs;

    bool operator==(const DiscreteMarket&) const = default;

    /// Position of `set` in firm_prefs[firm], if listed.
    std::optional<std::size_t> firm_rank(std::size_t firm, WorkerSet set) const;
    /// Position of `firm` in worker_prefs[worker], if listed.
    std::optional<std::size_t> worker_rank(std::size_t worker, std::size_t firm) const;
    bool worker_accepts(std::size_t worker, std::size_t firm) const {
        return worker_rank(worker, firm).has_value();
    }
};

/// Either a singleton {i} or a firm together with a non-empty worker set.
struct Coalition {
    std::optional<std::size_t> firm;
    WorkerSet workers;

    static Coalition of_firm(std::size_t firm) { return {firm, {}}; }
    static Coalition of_worker(std::size_t worker) { return {std::nullopt, WorkerSet::singleton(worker)}; }
    static Coalition firm_with(std::size_t firm, WorkerSet workers) { return {firm, workers}; }

    bool is_singleton() const { return !firm.has_value() || workers.empty(); }
    bool contains_firm(std::size_t f) const { return firm == f; }

    auto operator<=>(const Coalition&) const = default;
};

/// Assignment of workers to firms (nullopt = unmatched) plus a wage for
/// every worker.
struct TuMatching {
    std::vector<std::optional<std::size_t>> assignment;
    std::vector<Rational> prices;

    bool operator==(const TuMatching&) const = default;

    /// mu(f) = {w : mu(w) = f}
    WorkerSet staff(std::size_t firm) const;
    static TuMatching unmatched(std::size_t worker_count);
};

struct DiscreteMatching {
    std::vector<std::optional<std::size_t>> assignment;

    auto operator<=>(const DiscreteMatching&) const = default;

    WorkerSet staff(std::size_t firm) const;
    static DiscreteMatching unmatched(std::size_t worker_count);
};

/// Instance-size limits for the exhaustive routines.
struct SizeGuard {
    std::size_t max_firms = 8;
    std::size_t max_workers = 12;
    std::size_t max_coalitions = 4096;
};

/// Throws GuardExceeded when the agent counts exceed the guard.
void enforce_guard(std::size_t firm_count, std::size_t worker_count, const SizeGuard& guard);

/// Per-agent utilities under a TU matching.
struct TuUtilities {
    std::vector<Rational> firms;
    std::vector<Rational> workers;
};

/// Lists every invariant violation; empty means valid.
std::vector<std::string> validate_market(const TuMarket& market);
std::vector<std::string> validate_market(const DiscreteMarket& market);

/// Throws InputError carrying all diagnostics when the market is invalid.
void require_valid(const TuMarket& market);
void require_valid(const DiscreteMarket& market);

/// Structural checks of a matching against its market (sizes, indices, and
/// zero wages for unmatched workers in the TU case).
std::vector<std::string> validate_matching(const TuMarket& market, const TuMatching& matching);
std::vector<std::string> validate_matching(const DiscreteMarket& market, const DiscreteMatching& matching);

/// Ch_f(S): the highest-ranked listed set contained in `offered`, or the
/// empty set when none is.
WorkerSet choice(const DiscreteMarket& market, std::size_t firm, WorkerSet offered);

/// Y_f: listed sets S with Ch_f(S) = S, in preference order.
std::vector<WorkerSet> satisfactory_sets(const DiscreteMarket& market, std::size_t firm);

/// S strictly preferred to T by the firm. Listed sets beat the empty set,
/// which beats every unlisted set; two distinct unlisted sets are
/// incomparable and yield false.
bool firm_prefers(const DiscreteMarket& market, std::size_t firm, WorkerSet s, WorkerSet t);

/// f strictly preferred to g by the worker (nullopt = unmatched). Unlisted
/// firms are worse than being unmatched and incomparable among themselves.
bool worker_prefers(const DiscreteMarket& market, std::size_t worker,
                    std::optional<std::size_t> f, std::optional<std::size_t> g);

/// Aggregate value V of a coalition in I or E. Throws InputError for a
/// coalition outside both families.
Rational coalition_value(const TuMarket& market, const Coalition& coalition);

/// U_f(mu(f), p) and U_w(mu(w), p). Throws InputError when a pairing is
/// unacceptable to either side, since the utility is then undefined.
TuUtilities tu_utilities(const TuMarket& market, const TuMatching& matching);

/// "{w1,w2}" using the market's worker names.
std::string describe_set(const std::vector<std::string>& worker_names, WorkerSet set);
std::string describe_coalition(const std::vector<std::string>& firm_names,
                               const std::vector<std::string>& worker_names, const Coalition& c);

}  // namespace matchkit
