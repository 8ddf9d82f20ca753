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

// General one-way resource protocols and their Choi-level control map.
//
// A protocol shares the pure ancilla state Σ_i μ_i |i>_a|i>_b (Schmidt bases
// are the computational bases of a and b, each of dimension P). For every
// classical message η the sender applies L_η = Π_η U_η on A⊗a, A traverses
// the channel, and the receiver applies the unitary V_η on B⊗b. Ancillas are
// discarded and branches summed:
//
//   ε̃[ρ] = Σ_η Tr_ab V_η ε[L_η (ρ ⊗ ψ) L_η†] V_η†
//
// On Choi states this is R ↦ Σ_{η,k,l} Λ^η_{kl} R Λ^η_{kl}† with
// Λ^η_{kl} = Σ_i μ_i B^η_{ki} ⊗ (A^η_{li})ᵀ, where A^η_{ij} = <i|_a L_η |j>_a
// and B^η_{ij} = <i|_b V_η |j>_b are N×N blocks.

#include <vector>

#include "qtnec/channels.hpp"
#include "qtnec/parallel.hpp"

namespace qtnec {

class AncillaResource {
 public:
  /// Requires μ_i ≥ 0 and Σ μ_i² = 1 within `tol`.
  explicit AncillaResource(RealVector mu, double tol = kStructuralTol);
  static AncillaResource uniform(std::size_t p);
  /// (cos θ, sin θ).
  static AncillaResource qubit(double theta);

  std::size_t p() const noexcept { return static_cast<std::size_t>(mu_.size()); }
  const RealVector& mu() const noexcept { return mu_; }
  /// Copy zero-padded to `p` coefficients.
  AncillaResource padded(std::size_t p) const;
  PureState state() const;

 private:
  RealVector mu_;
};

struct SenderBranch {
  ComplexMatrix projector;  // Π_η on A⊗a
  ComplexMatrix unitary;    // U_η on A⊗a
  ComplexMatrix op() const { return projector * unitary; }
};

class ResourceProtocol {
 public:
  /// Checks shapes only (every operator N·P square, one receiver per branch).
  /// Determinism is a property of the assembled family; see determinism().
  ResourceProtocol(std::size_t n, AncillaResource resource, std::vector<SenderBranch> sender,
                   std::vector<ComplexMatrix> receiver);

  std::size_t n() const noexcept { return n_; }
  std::size_t p() const noexcept { return resource_.p(); }
  std::size_t m() const noexcept { return sender_.size(); }
  const AncillaResource& resource() const noexcept { return resource_; }
  const std::vector<SenderBranch>& sender() const noexcept { return sender_; }
  const std::vector<ComplexMatrix>& receiver() const noexcept { return receiver_; }

 private:
  std::size_t n_;
  AncillaResource resource_;
  std::vector<SenderBranch> sender_;
  std::vector<ComplexMatrix> receiver_;
};

struct DeterminismReport {
  double senderCompleteness = 0.0;    // ‖Σ L†L − I‖_F
  double senderCoCompleteness = 0.0;  // ‖Σ LL† − I‖_F
  double receiverUnitarity = 0.0;     // max_η ‖V V† − I‖_F
  double max() const;
  bool ok(double tol = kStructuralTol) const { return max() <= tol; }
};

DeterminismReport determinism(const ResourceProtocol& p);

/// Throws InvariantError naming the first violated determinism condition.
void require_deterministic(const ResourceProtocol& p, double tol = kStructuralTol);

/// QT as a resource protocol: P = N, uniform μ, Bell-projector branches and
/// swap-composed corrections (M = N²).
ResourceProtocol qt_protocol(std::size_t n);

/// Single branch, identity operations: the channel used as is.
ResourceProtocol bare_protocol(std::size_t n, AncillaResource resource = AncillaResource::uniform(1));

class BlockOperators {
 public:
  BlockOperators(std::size_t m, std::size_t p, std::size_t n);

  std::size_t m() const noexcept { return m_; }
  std::size_t p() const noexcept { return p_; }
  std::size_t n() const noexcept { return n_; }

  ComplexMatrix& a(std::size_t eta, std::size_t i, std::size_t j) { return a_[index(eta, i, j)]; }
  const ComplexMatrix& a(std::size_t eta, std::size_t i, std::size_t j) const { return a_[index(eta, i, j)]; }
  ComplexMatrix& b(std::size_t eta, std::size_t i, std::size_t j) { return b_[index(eta, i, j)]; }
  const ComplexMatrix& b(std::size_t eta, std::size_t i, std::size_t j) const { return b_[index(eta, i, j)]; }

 private:
  std::size_t index(std::size_t eta, std::size_t i, std::size_t j) const { return (eta * p_ + i) * p_ + j; }

  std::size_t m_, p_, n_;
  std::vector<ComplexMatrix> a_;
  std::vector<ComplexMatrix> b_;
};

/// Blocks of an operator on X⊗ancilla (ancilla factor second): block(i,j) = <i|op|j>.
ComplexMatrix ancilla_block(const ComplexMatrix& op, std::size_t n, std::size_t p, std::size_t i, std::size_t j);

BlockOperators block_operators(const ResourceProtocol& p);

struct LambdaOperators {
  std::size_t m = 0, p = 0, n = 0;
  std::vector<ComplexMatrix> ops;  // index (η·P + k)·P + l, each on B⊗A
  const ComplexMatrix& at(std::size_t eta, std::size_t k, std::size_t l) const { return ops[(eta * p + k) * p + l]; }
};

LambdaOperators lambda_operators(const ResourceProtocol& p);
LambdaOperators lambda_operators(const BlockOperators& blocks, const AncillaResource& resource);

/// Σ Λ R Λ† for an arbitrary operator R on B⊗A.
ComplexMatrix control_map_matrix(const LambdaOperators& lambda, const ComplexMatrix& r, Exec exec = Exec::Parallel);

/// Controlled Choi state; validated as a Choi state with tolerance 1e-9.
ChoiMatrix control_map(const ResourceProtocol& p, const ChoiMatrix& r, Exec exec = Exec::Parallel);

/// ε̃ applied to an arbitrary operator (no determinism check).
ComplexMatrix apply_protocol_operator(const ResourceProtocol& p, const KrausChannel& ch, const ComplexMatrix& x,
                                      Exec exec = Exec::Parallel);

/// ε̃[ρ]. Requires a deterministic protocol.
DensityMatrix apply_protocol(const ResourceProtocol& p, const KrausChannel& ch, const DensityMatrix& rho,
                             Exec exec = Exec::Parallel);

/// ‖control_map(p, choi(ch)) − Ψ₀‖_F.
double residual(const ResourceProtocol& p, const KrausChannel& ch);

/// <ψ₀| control_map(p, choi(ch)) |ψ₀>.
double entanglement_fidelity(const ResourceProtocol& p, const KrausChannel& ch);
double entanglement_fidelity(const LambdaOperators& lambda, const ComplexMatrix& choiMatrix);

/// Fidelity averaged over pure inputs, from the entanglement fidelity.
inline double average_fidelity_from_entanglement(double fe, std::size_t n) {
  const double d = static_cast<double>(n);
  return (d * fe + 1.0) / (d + 1.0);
}

}  // namespace qtnec
