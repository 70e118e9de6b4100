// Copyright Contributors to the gsavatar Project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

namespace gsav {

// Global worker count. Results never depend on it: work is split into
// chunks whose boundaries depend only on the problem size, and any
// reduction is merged in chunk order.
void set_thread_count(int n);
int thread_count();

// Runs f(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
// Chunk boundaries are a function of (n, chunk_size) only.
void parallel_chunks(std::int64_t n, std::int64_t chunk_size,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& f);

// Element-parallel loop; f(i) must only touch state owned by index i.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& f);

// Number of chunks parallel_chunks will produce for (n, chunk_size).
std::int64_t chunk_count(std::int64_t n, std::int64_t chunk_size);

}  // namespace gsav
