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

// Numeric renditions of the necessity argument: the determinism relations on
// protocol blocks, the no-communication contradiction, the Cauchy–Schwarz
// step, the entanglement bound Σμ_i ≥ √N and Nielsen majorization.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtnec/protocol.hpp"

namespace qtnec {

struct ProofReport {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t m = 0;
  double relation13MaxResidual = 0.0;
  /// Σ_{n,k,l} |Σ_i μ_i <n|A_{l,i} B_{k,i}|m>|², averaged over m. Equals
  /// Σμ_i² = 1 for every deterministic single-branch protocol. Set only when M = 1.
  std::optional<double> contradictionLHS;
  /// N·P: what the same sum must equal if the branch faithfully corrected a
  /// full-rank channel. Set only when M = 1.
  std::optional<double> contradictionRHS;
  double entanglementSum = 0.0;  // Σ μ_i
  double bound = 0.0;            // √N
  std::vector<Complex> branchScalars;  // β_η
  double cauchySchwarzViolation = 0.0;
  std::map<std::string, bool> verdicts;
};

/// Max Frobenius residual over the four block relations implied by
/// Σ L†L = Σ LL† = I and unitarity of every receiver operation.
double check_relations_13(const BlockOperators& blocks);

/// X^η_{kl} = Σ_i μ_i A^η_{l,i} B^η_{k,i} as an N×N matrix; entry (n, m) is the
/// matrix element tested against √N β_η δ_km δ_ln.
ComplexMatrix correction_overlap(const BlockOperators& blocks, const AncillaResource& resource, std::size_t eta,
                                 std::size_t k, std::size_t l);

/// Least-squares β_η for X^η_{kl}(n,m) ≈ √N β_η δ_km δ_ln.
std::vector<Complex> branch_scalars(const BlockOperators& blocks, const AncillaResource& resource);

/// Requires M = 1 (RangeError otherwise) and a deterministic protocol.
ProofReport no_cc_contradiction(const ResourceProtocol& p);

/// All quantities for a protocol of any M; contradiction fields only for M = 1.
ProofReport proof_report(const ResourceProtocol& p);

struct BoundResult {
  double sum = 0.0;
  bool satisfied = false;
};

/// Σ μ_i and whether it reaches √N (within `tol`).
BoundResult entanglement_bound(const AncillaResource& mu, std::size_t n, double tol = 1e-12);

/// Largest value of |X^η_{kl}(n,m)|² − Σ_{ij} μ_i|<n|A^η_{li}|j>|² · Σ_{pq} μ_p|<m|B^η_{kp}†|q>|²
/// over all indices. Cauchy–Schwarz makes this ≤ 0 for any protocol.
double cauchy_schwarz_check(const ResourceProtocol& p);

/// Whether the source Schmidt vector can be converted to the target by LOCC:
/// sorted squared source coefficients majorized by the target's. The shorter
/// vector is zero-padded.
bool nielsen_convertible(const AncillaResource& source, const AncillaResource& target, double tol = 1e-12);

}  // namespace qtnec
