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

#include "json.hpp"

namespace matchkit {

/// One command's outcome. Both renderings are produced from this value.
struct Report {
    std::string command;
    /// "sha256:<hex>" over the input files' bytes, in argument order.
    std::string input_digest;
    std::string verdict;
    int exit_code = 0;
    double seconds = 0.0;
    nlohmann::ordered_json facts = nlohmann::ordered_json::object();

    bool operator==(const Report&) const = default;
};

std::string sha256_hex(const std::string& data);

nlohmann::ordered_json report_to_json(const Report& r);
/// Throws InputError on a missing or mistyped field.
Report report_from_json(const nlohmann::ordered_json& j);

std::string render_json(const Report& r);
/// Indented "key: value" text carrying the same fields as render_json.
std::string render_human(const Report& r);

}  // namespace matchkit
