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

#include <stdexcept>
#include <string>

namespace matchkit {

/// Malformed or invalid input: bad files, invariant violations, unmet
/// preconditions on user-supplied objects.
class InputError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// An instance is larger than the configured size guard.
class GuardExceeded : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// A search ran out of its work budget before reaching a verdict.
class BudgetExhausted : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Something that the mathematics rules out happened anyway.
class InternalError : public std::logic_error {
 public:
    using std::logic_error::logic_error;
};

}  // namespace matchkit
