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

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace matchkit {

/// Maximum number of workers a single market may hold.
inline constexpr std::size_t kMaxWorkers = 64;

/// A set of workers, identified by their index in the market's worker list.
class WorkerSet {
 public:
    constexpr WorkerSet() = default;
    constexpr explicit WorkerSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr WorkerSet singleton(std::size_t worker) {
        return WorkerSet(std::uint64_t{1} << worker);
    }
    /// {0, 1, ..., count-1}
    static constexpr WorkerSet first(std::size_t count) {
        return WorkerSet(count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    constexpr bool contains(std::size_t worker) const {
        return worker < 64 && ((bits_ >> worker) & 1U) != 0;
    }
    constexpr bool subset_of(WorkerSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(WorkerSet other) const { return (bits_ & other.bits_) != 0; }

    constexpr WorkerSet operator|(WorkerSet o) const { return WorkerSet(bits_ | o.bits_); }
    constexpr WorkerSet operator&(WorkerSet o) const { return WorkerSet(bits_ & o.bits_); }
    constexpr WorkerSet minus(WorkerSet o) const { return WorkerSet(bits_ & ~o.bits_); }
    constexpr WorkerSet with(std::size_t worker) const { return *this | singleton(worker); }

    /// Worker indices in increasing order.
    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (auto b = bits_; b != 0; b &= b - 1) {
            out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
        }
        return out;
    }

    constexpr auto operator<=>(const WorkerSet&) const = default;

 private:
    std::uint64_t bits_ = 0;
};

}  // namespace matchkit
