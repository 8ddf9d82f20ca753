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

// Quantum channels in Kraus and Choi form.
//
// Choi convention: R = (ε ⊗ I)[Ψ₀] with the *normalized* maximally entangled
// projector Ψ₀, so Tr R = 1 (not N). The matrix acts on out⊗in, the channel
// output factor first. Nothing in this library reorders those factors
// implicitly.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qtnec/qmath.hpp"

namespace qtnec {

class KrausChannel {
 public:
  /// Validates Σ K†K = I within `tol` (Frobenius) and non-emptiness.
  explicit KrausChannel(std::vector<ComplexMatrix> kraus, double tol = kStructuralTol);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

  /// Frobenius norm of Σ K†K − I.
  double trace_preservation_error() const;

 private:
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> kraus_;
};

class ChoiMatrix {
 public:
  /// Validates positivity (min eigenvalue ≥ −tol), unit trace and
  /// Tr_out R = I/N_in, each within `tol`.
  ChoiMatrix(ComplexMatrix m, std::size_t dimOut, std::size_t dimIn, double tol = kStructuralTol);

  std::size_t dim_out() const noexcept { return dimOut_; }
  std::size_t dim_in() const noexcept { return dimIn_; }
  const ComplexMatrix& matrix() const noexcept { return m_; }

  /// Eigenvalues, descending.
  const RealVector& eigenvalues() const noexcept { return eigenvalues_; }
  /// Column k belongs to eigenvalues()[k].
  const ComplexMatrix& eigenvectors() const noexcept { return eigenvectors_; }

 private:
  ComplexMatrix m_;
  std::size_t dimOut_;
  std::size_t dimIn_;
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
};

/// Σ_k K X K†. Accepts any operator, not only states, so the map can be
/// probed on operator bases.
ComplexMatrix apply_kraus(const KrausChannel& ch, const ComplexMatrix& x);
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// (I ⊗ ε ⊗ I) on the tensor factor `which` of ⊗_k dims[k].
ComplexMatrix apply_on_factor(const KrausChannel& ch, const ComplexMatrix& x,
                              std::span<const std::size_t> dims, std::size_t which);
DensityMatrix apply_on_factor(const KrausChannel& ch, const DensityMatrix& rho,
                              std::span<const std::size_t> dims, std::size_t which);

ChoiMatrix choi(const KrausChannel& ch);

/// Choi state of an arbitrary linear map on N×N operators, by evaluating it on
/// the matrix units |x><y|: R = (1/N) Σ_{x,y} map(|x><y|) ⊗ |x><y|.
ComplexMatrix choi_of_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& map,
                          std::size_t dimIn);

/// Count of Choi eigenvalues above tol·λ_max.
std::size_t rank(const KrausChannel& ch, double tol = 1e-10);
std::size_t rank(const ChoiMatrix& c, double tol = 1e-10);

/// Canonical Kraus set K_k = √(N λ_k) · unvec(v_k), ordered by descending
/// eigenvalue, eigenvalues ≤ tol·λ_max dropped, each operator phase-fixed so
/// its largest-magnitude entry is real and non-negative.
KrausChannel kraus_from_choi(const ChoiMatrix& c, double tol = 1e-10);

KrausChannel identity_channel(std::size_t n);
KrausChannel unitary_channel(const ComplexMatrix& u);

/// ε[ρ] = p·I/N + (1−p)·ρ, realized with the N² Weyl (clock-shift) operators.
KrausChannel depolarizing(double p, std::size_t n = 2);

/// Stinespring channel from a Haar-random isometry into an environment of
/// dimension `rank`. Deterministic per seed.
KrausChannel random_channel(std::size_t n, std::size_t rank, std::uint64_t seed);

/// Whether the qubit depolarizing channel can be simulated by measure-and-
/// prepare, i.e. p ≥ 2/3.
bool depolarizing_locc_simulable(double p);

/// Weyl operator X^m Z^n on C^N; X|k> = |k+1>, Z|k> = ω^k|k>.
ComplexMatrix weyl(std::size_t n, std::size_t shift, std::size_t phase);

}  // namespace qtnec
