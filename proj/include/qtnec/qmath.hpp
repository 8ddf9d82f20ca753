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

// Dense linear and tensor algebra over small Hilbert spaces, plus the
// state-level utilities used everywhere else: Schmidt decomposition,
// Uhlmann fidelity and seeded Haar sampling.
//
// Tensor factors are ordered left to right with the rightmost factor varying
// fastest, i.e. |i>⊗|j> has flat index i*dimB + j.

#include <cstdint>
#include <span>
#include <vector>

#include "qtnec/types.hpp"

namespace qtnec {

// ---------------------------------------------------------------------------
// Matrix helpers

/// Kronecker product a ⊗ b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduces `m` (acting on ⊗_k dims[k]) to the factors listed in `keep`.
/// `keep` must be strictly increasing; the result keeps that order.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Lifts `op`, acting on the factors `targets` (in the given order), to the
/// full space ⊗_k dims[k], with identity on all other factors.
ComplexMatrix embed(const ComplexMatrix& op, std::span<const std::size_t> dims,
                    std::span<const std::size_t> targets);

ComplexMatrix identity(std::size_t n);
ComplexMatrix projector(const ComplexVector& v);

/// Max-abs deviation from hermiticity.
double hermiticity_error(const ComplexMatrix& m);
/// Frobenius norm of U U† − I.
double unitarity_error(const ComplexMatrix& u);
bool all_finite(const ComplexMatrix& m);

/// Ascending eigenvalues of the Hermitian part of `m`.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// exp(i·h) for Hermitian `h`.
ComplexMatrix expi_hermitian(const ComplexMatrix& h);

/// Hermitian matrix whose exponential exp(i·h) equals the unitary `u`.
/// Eigenphases are taken in (−π, π].
ComplexMatrix log_unitary(const ComplexMatrix& u);

/// Hermitian d×d matrix from d² reals: the diagonal first, then (re, im)
/// pairs of the strict upper triangle in row-major order.
ComplexMatrix hermitian_from_params(std::span<const double> params, std::size_t d);
std::vector<double> params_from_hermitian(const ComplexMatrix& h);

// ---------------------------------------------------------------------------
// States

class PureState {
 public:
  /// Normalized within `tol`; otherwise throws InvariantError.
  explicit PureState(ComplexVector amplitudes, double tol = 1e-12);

  /// Rescales `v` to unit norm. Throws RangeError on the zero vector.
  static PureState normalized(const ComplexVector& v);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const ComplexVector& amplitudes() const noexcept { return amps_; }
  ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }

  /// Copy with the largest-magnitude amplitude rotated to be real and
  /// non-negative (first such entry on ties).
  PureState phase_aligned() const;

 private:
  ComplexVector amps_;
};

/// True when a and b agree up to a global phase within `tol` (max abs).
bool equal_up_to_phase(const PureState& a, const PureState& b, double tol = kStructuralTol);

class DensityMatrix {
 public:
  /// Validates hermiticity (max abs ≤ tol), unit trace (≤ tol) and
  /// minimum eigenvalue ≥ −negTol.
  explicit DensityMatrix(ComplexMatrix m, double tol = 1e-12, double negTol = 1e-10);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(std::size_t n);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
};

/// Hermitizes a numerically computed state before validating it. The checks
/// are the same as the constructor's; only the rounding-level anti-Hermitian
/// part is dropped.
DensityMatrix make_density(const ComplexMatrix& m, double tol = 1e-9);

struct SchmidtForm {
  RealVector coefficients;      // μ_i, descending
  ComplexMatrix basisA;         // column i is |a_i>
  ComplexMatrix basisB;         // column i is |b_i>
  std::size_t localDim = 0;     // number of Schmidt terms, min(dimA, dimB)

  /// Σ μ_i |a_i>⊗|b_i>.
  ComplexVector reconstruct() const;
};

SchmidtForm schmidt(const PureState& psi, std::size_t dimA, std::size_t dimB);

/// Uhlmann fidelity, squared convention: (Tr √(√ρ σ √ρ))².
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// (1/√N) Σ_i |i>⊗|i>.
PureState maximally_entangled(std::size_t n);

/// Haar-random pure state (normalized complex Gaussian amplitudes).
PureState random_pure(std::size_t n, std::uint64_t seed);
/// Reduced state of a Haar-random pure state on n⊗n.
DensityMatrix random_state(std::size_t n, std::uint64_t seed);

}  // namespace qtnec
