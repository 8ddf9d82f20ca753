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

#include <cstdint>
#include <random>

#include "qtnec/types.hpp"

namespace qtnec {

using Rng = std::mt19937_64;

/// Engine seeded from (seed, stream) so independent consumers of one seed
/// (optimizer restarts, sample indices) get decorrelated sequences.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// rows×cols matrix with orthonormal columns, Haar-distributed (QR of a
/// complex Gaussian matrix with the R-diagonal phases absorbed).
ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng);
inline ComplexMatrix haar_unitary(std::size_t n, Rng& rng) { return haar_isometry(n, n, rng); }

}  // namespace qtnec
