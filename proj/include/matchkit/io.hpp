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

#include <string>
#include <variant>
#include <vector>

#include "matchkit/generator.hpp"
#include "matchkit/model.hpp"
#include "matchkit/roadmap.hpp"

namespace matchkit {

using AnyMarket = std::variant<TuMarket, DiscreteMarket>;

/// Whole file contents. Throws InputError when unreadable.
std::string read_file(const std::string& path);

/// Market JSON:
///   {"kind": "tu", "firms": {"f1": [{"set": ["w1"], "value": "3/2"}]},
///    "workers": {"w1": {"f1": "0"}}}
///   {"kind": "discrete", "firms": {"f1": [["w1", "w2"], ["w1"]]},
///    "workers": {"w1": ["f1"]}}
/// Key order fixes agent order. Values are integer or "p/q" strings (JSON
/// integers are also read). Worker sets are deduplicated. Throws InputError
/// for malformed text and for markets that fail validate_market.
AnyMarket parse_market(const std::string& text);
MarketKind market_kind(const AnyMarket& market);

std::string serialize_market(const TuMarket& market);
std::string serialize_market(const DiscreteMarket& market);
std::string serialize_market(const AnyMarket& market);

/// {"assignment": {"w1": "f1"}, "prices": {"w1": "2"}}; unlisted workers are
/// unmatched and unlisted prices are zero.
TuMatching parse_tu_matching(const std::string& text, const TuMarket& market);
DiscreteMatching parse_discrete_matching(const std::string& text, const DiscreteMarket& market);
std::string serialize_matching(const TuMarket& market, const TuMatching& matching);
std::string serialize_matching(const DiscreteMarket& market, const DiscreteMatching& matching);

/// {"technologies": {"v1": ["w1"]}, "edges": [["v1", "v2"]]}; worker names
/// resolve against `workers`. Throws InputError on unknown names. Tree
/// structure is checked separately by validate_roadmap.
Roadmap parse_roadmap(const std::string& text, const std::vector<std::string>& workers);
std::string serialize_roadmap(const Roadmap& r);

}  // namespace matchkit
