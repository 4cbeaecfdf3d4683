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
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace matchkit {

/// Exact rational number. All valuations, prices and LP quantities use it.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "n", "-n" or "n/d" (d > 0 after sign normalisation). Whitespace
/// and decimal points are rejected. Throws InputError.
Rational parse_rational(std::string_view text);

/// Canonical text form: "n" for integers, "n/d" otherwise (lowest terms).
std::string to_string(const Rational& value);

}  // namespace matchkit
