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

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qtnec/channels.hpp"
#include "qtnec/qmath.hpp"
#include "qtnec/random.hpp"

namespace testing {

inline double max_abs(const qtnec::ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline qtnec::ComplexMatrix pauli_x() {
  qtnec::ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

inline qtnec::ComplexMatrix ket(std::size_t dim, std::size_t i) {
  qtnec::ComplexMatrix v = qtnec::ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), 1);
  v(static_cast<Eigen::Index>(i), 0) = 1.0;
  return v;
}

inline qtnec::DensityMatrix basis_state(std::size_t dim, std::size_t i) {
  const auto k = ket(dim, i);
  return qtnec::DensityMatrix(k * k.adjoint());
}

inline qtnec::ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  auto rng = qtnec::make_rng(seed, 0x7e57);
  return qtnec::gaussian_matrix(r, c, rng);
}

}  // namespace testing
