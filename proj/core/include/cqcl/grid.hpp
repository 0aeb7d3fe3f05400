// Copyright 2026 The cqcl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>

namespace cqcl
{
//! Uniformly spaced samples: value(i) = start + i * step, i in [0, count).
struct UniformGrid
{
    double start = 0.0;
    double step = 0.0;
    std::size_t count = 0;

    double value(std::size_t i) const { return start + static_cast<double>(i) * step; }
    double back() const { return value(count - 1); }
    double span() const { return step * static_cast<double>(count - 1); }

    static UniformGrid linspace(double first, double last, std::size_t count)
    {
        return {first, (last - first) / static_cast<double>(count - 1), count};
    }

    friend bool operator==(UniformGrid const&, UniformGrid const&) = default;
};

constexpr bool is_power_of_two(std::size_t n)
{
    return n != 0 && (n & (n - 1)) == 0;
}
} // namespace cqcl
