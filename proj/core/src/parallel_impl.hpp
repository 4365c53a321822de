// Copyright 2026 The gqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gqc::detail {

inline constexpr std::size_t kReductionChunk = 4096;

/// Sum of f(i) over [0, n), reduced chunk by chunk in index order so the
/// result is independent of the thread count.
template <typename T, typename F>
T chunked_sum(std::size_t n, F&& f) {
    const std::size_t chunks = (n + kReductionChunk - 1) / kReductionChunk;
    std::vector<T> partial(chunks, T{});
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * kReductionChunk;
        const std::size_t hi = lo + kReductionChunk < n ? lo + kReductionChunk : n;
        T acc{};
        for (std::size_t i = lo; i < hi; ++i) acc += f(i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    T total{};
    for (const auto& v : partial) total += v;
    return total;
}

}  // namespace gqc::detail
