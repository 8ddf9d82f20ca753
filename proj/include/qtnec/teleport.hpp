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

// Standard N-level teleportation.
//
// Global layout during the protocol is A⊗a⊗b (input, sender half of the
// shared pair, receiver half). The channel acts on the A factor only; its
// output B then takes the place of A, and the correction U_η acts on B⊗b.
// Branch index η = n·N + m with n = η div N (phase) and m = η mod N (shift).

#include <vector>

#include "qtnec/channels.hpp"
#include "qtnec/parallel.hpp"

namespace qtnec {

struct BellBasis {
  std::size_t n = 0;
  std::vector<ComplexVector> vectors;      // |ψ_η> on A⊗a
  std::vector<ComplexMatrix> projectors;   // Ψ_η = |ψ_η><ψ_η|
};

struct CorrectionUnitary {
  std::size_t n = 0;
  std::size_t eta = 0;
  ComplexMatrix matrix;  // on B⊗b
};

/// |ψ_η> = (1/√N) Σ_k e^{2πi k n/N} |k>⊗|(k+m) mod N>.
ComplexVector bell_vector(std::size_t n, std::size_t eta);
BellBasis bell_basis(std::size_t n);

/// U_η = SWAP · Σ_k e^{2πi k n/N} I ⊗ |k><(k+m) mod N|.
CorrectionUnitary correction_unitary(std::size_t n, std::size_t eta);

/// Unnormalized B-side output of each measurement branch, before summing.
/// `resource` is the shared a⊗b pure state (local dimension N).
std::vector<ComplexMatrix> teleport_branches(const ComplexMatrix& rho, const KrausChannel& ch,
                                             const PureState& resource, Exec exec = Exec::Parallel);

/// Tr(Ψ_η^{Aa} ρ⊗ρ_a) for each branch.
std::vector<double> branch_probabilities(const DensityMatrix& rho, const PureState& resource);

DensityMatrix teleport(const DensityMatrix& rho, const KrausChannel& ch, Exec exec = Exec::Parallel);
DensityMatrix teleport_with_resource(const DensityMatrix& rho, const KrausChannel& ch, const PureState& resource,
                                     Exec exec = Exec::Parallel);

/// Operator-level map X ↦ teleport output, for probing on operator bases.
ComplexMatrix teleport_operator(const ComplexMatrix& x, const KrausChannel& ch, const PureState& resource,
                                Exec exec = Exec::Parallel);

/// Σ_i μ_i |i>⊗|i> with local dimension n, μ zero-padded to n entries.
PureState schmidt_resource(std::span<const double> mu, std::size_t n);

}  // namespace qtnec
