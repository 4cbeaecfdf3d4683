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

#include "matchkit/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <sstream>

#include "matchkit/errors.hpp"

namespace matchkit {

namespace {

using Json = nlohmann::ordered_json;

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "none";
    return v.dump();
}

bool flat_array(const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& item : v) {
        if (!is_scalar(item)) return false;
    }
    return true;
}

std::string join(const Json& array) {
    if (array.empty()) return "(none)";
    std::string out;
    for (const auto& item : array) {
        if (!out.empty()) out += ", ";
        out += scalar_text(item);
    }
    return out;
}

void render(std::ostream& out, const Json& v, int indent);

void render_entry(std::ostream& out, const std::string& key, const Json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (is_scalar(v)) {
        out << pad << key << ": " << scalar_text(v) << "\n";
    } else if (flat_array(v)) {
        out << pad << key << ": " << join(v) << "\n";
    } else if (v.empty()) {
        out << pad << key << ": (none)\n";
    } else {
        out << pad << key << ":\n";
        render(out, v, indent + 2);
    }
}

// Structured list items start with "- " on their first line.
void render_item(std::ostream& out, const Json& item, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (is_scalar(item) || flat_array(item) || item.empty()) {
        out << pad << "- " << (item.is_array() ? join(item) : scalar_text(item)) << "\n";
        return;
    }
    std::ostringstream nested;
    render(nested, item, indent + 2);
    std::string text = nested.str();
    text.replace(static_cast<std::size_t>(indent), 2, "- ");
    out << text;
}

void render(std::ostream& out, const Json& v, int indent) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) render_entry(out, it.key(), it.value(), indent);
    } else {
        for (const auto& item : v) render_item(out, item, indent);
    }
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw InternalError("SHA-256 digest failed");
    }
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < length; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

Json report_to_json(const Report& r) {
    return Json{{"command", r.command}, {"input", r.input_digest}, {"verdict", r.verdict},
                {"exit_code", r.exit_code}, {"seconds", r.seconds}, {"facts", r.facts}};
}

Report report_from_json(const Json& j) {
    try {
        Report r;
        r.command = j.at("command").get<std::string>();
        r.input_digest = j.at("input").get<std::string>();
        r.verdict = j.at("verdict").get<std::string>();
        r.exit_code = j.at("exit_code").get<int>();
        r.seconds = j.at("seconds").get<double>();
        r.facts = j.at("facts");
        return r;
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed report: ") + e.what());
    }
}

std::string render_json(const Report& r) { return report_to_json(r).dump(2) + "\n"; }

std::string render_human(const Report& r) {
    std::ostringstream out;
    out << "command: " << r.command << "\n";
    out << "input: " << r.input_digest << "\n";
    out << "verdict: " << r.verdict << "\n";
    render(out, r.facts, 0);
    out << "exit_code: " << r.exit_code << "\n";
    out << "seconds: " << Json(r.seconds).dump() << "\n";
    return out.str();
}

}  // namespace matchkit
