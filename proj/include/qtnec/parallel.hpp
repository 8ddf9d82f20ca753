// Copyright 2026 The qtnec Authors
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
#include <utility>
#include <vector>

#ifdef QTNEC_HAVE_OPENMP
#include <omp.h>
#endif

namespace qtnec {

/// Execution policy for the data-parallel kernels. `Serial` is the reference
/// path; `Parallel` distributes independent terms over OpenMP threads.
enum class Exec { Serial, Parallel };

inline int max_threads() {
#ifdef QTNEC_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Sum of f(0) + f(1) + ... + f(n-1), always accumulated left to right.
///
/// The parallel path evaluates terms concurrently into a buffer and reduces in
/// index order, so both policies give bit-identical results.
template <typename T, typename F>
T ordered_sum(std::size_t n, T zero, F&& f, Exec exec = Exec::Parallel) {
  T acc = std::move(zero);
  if (exec == Exec::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) acc += f(i);
    return acc;
  }
  std::vector<T> terms(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < count; ++i) terms[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  for (auto& t : terms) acc += t;
  return acc;
}

/// Evaluates f(i) for every i, storing results by index.
template <typename T, typename F>
std::vector<T> indexed_map(std::size_t n, F&& f, Exec exec = Exec::Parallel) {
  std::vector<T> out(n);
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  return out;
}

}  // namespace qtnec
