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

#include "qtnec/teleport.hpp"

#include <cmath>

namespace qtnec {

namespace {

void check_eta(std::size_t n, std::size_t eta) {
  if (n < 2) throw RangeError("teleport: N must be at least 2");
  if (eta >= n * n) throw RangeError("teleport: eta must lie in [0, N²), got " + std::to_string(eta));
}

Complex root_of_unity(std::size_t k, std::size_t n) {
  return std::polar(1.0, 2.0 * M_PI * static_cast<double>(k % n) / static_cast<double>(n));
}

ComplexMatrix swap_operator(std::size_t n) {
  const auto dn = static_cast<Eigen::Index>(n);
  ComplexMatrix s = ComplexMatrix::Zero(dn * dn, dn * dn);
  for (Eigen::Index i = 0; i < dn; ++i)
    for (Eigen::Index j = 0; j < dn; ++j) s(j * dn + i, i * dn + j) = 1.0;
  return s;
}

}  // namespace

ComplexVector bell_vector(std::size_t n, std::size_t eta) {
  check_eta(n, eta);
  const std::size_t phase = eta / n;
  const std::size_t shift = eta % n;
  const auto dn = static_cast<Eigen::Index>(n);
  ComplexVector v = ComplexVector::Zero(dn * dn);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k)
    v(static_cast<Eigen::Index>(k * n + (k + shift) % n)) = amp * root_of_unity(k * phase, n);
  return v;
}

BellBasis bell_basis(std::size_t n) {
  if (n < 2) throw RangeError("bell_basis: N must be at least 2");
  BellBasis basis;
  basis.n = n;
  for (std::size_t eta = 0; eta < n * n; ++eta) {
    basis.vectors.push_back(bell_vector(n, eta));
    basis.projectors.push_back(projector(basis.vectors.back()));
  }
  return basis;
}

CorrectionUnitary correction_unitary(std::size_t n, std::size_t eta) {
  check_eta(n, eta);
  const std::size_t phase = eta / n;
  const std::size_t shift = eta % n;
  const auto dn = static_cast<Eigen::Index>(n);
  ComplexMatrix onB = ComplexMatrix::Zero(dn, dn);
  for (std::size_t k = 0; k < n; ++k)
    onB(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>((k + shift) % n)) = root_of_unity(k * phase, n);
  return {n, eta, swap_operator(n) * tensor(identity(n), onB)};
}

std::vector<ComplexMatrix> teleport_branches(const ComplexMatrix& rho, const KrausChannel& ch,
                                             const PureState& resource, Exec exec) {
  const std::size_t n = ch.dim();
  require_dim(rho.rows() == rho.cols() && static_cast<std::size_t>(rho.rows()) == n,
              "teleport: state dimension " + std::to_string(rho.rows()) + " does not match channel dimension " +
                  std::to_string(n));
  require_dim(resource.dim() == n * n, "teleport: resource must be a pure state on N⊗N");
  if (n < 2) throw RangeError("teleport: N must be at least 2");

  const std::size_t dims[] = {n, n, n};
  const std::size_t measured[] = {0, 1};
  const std::size_t corrected[] = {0, 2};
  const std::size_t keepB[] = {0};
  const ComplexMatrix joint = tensor(rho, resource.projector());

  return indexed_map<ComplexMatrix>(
      n * n,
      [&](std::size_t eta) {
        const ComplexMatrix pi = embed(projector(bell_vector(n, eta)), dims, measured);
        const ComplexMatrix afterChannel = apply_on_factor(ch, ComplexMatrix(pi * joint * pi), dims, 0);
        const ComplexMatrix u = embed(correction_unitary(n, eta).matrix, dims, corrected);
        return partial_trace(u * afterChannel * u.adjoint(), dims, keepB);
      },
      exec);
}

std::vector<double> branch_probabilities(const DensityMatrix& rho, const PureState& resource) {
  const std::size_t n = rho.dim();
  require_dim(resource.dim() == n * n, "branch_probabilities: resource must be a pure state on N⊗N");
  const std::size_t dims[] = {n, n};
  const std::size_t keepA[] = {0};
  const ComplexMatrix rhoA = partial_trace(resource.projector(), dims, keepA);
  const ComplexMatrix joint = tensor(rho.matrix(), rhoA);
  std::vector<double> probs;
  for (std::size_t eta = 0; eta < n * n; ++eta) {
    const ComplexVector v = bell_vector(n, eta);
    probs.push_back(v.dot(joint * v).real());
  }
  return probs;
}

ComplexMatrix teleport_operator(const ComplexMatrix& x, const KrausChannel& ch, const PureState& resource,
                                Exec exec) {
  const auto branches = teleport_branches(x, ch, resource, exec);
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  // Summed in η order regardless of policy.
  for (const auto& b : branches) out += b;
  return out;
}

DensityMatrix teleport_with_resource(const DensityMatrix& rho, const KrausChannel& ch, const PureState& resource,
                                     Exec exec) {
  return make_density(teleport_operator(rho.matrix(), ch, resource, exec));
}

DensityMatrix teleport(const DensityMatrix& rho, const KrausChannel& ch, Exec exec) {
  return teleport_with_resource(rho, ch, maximally_entangled(ch.dim()), exec);
}

PureState schmidt_resource(std::span<const double> mu, std::size_t n) {
  require_dim(mu.size() <= n, "schmidt_resource: more coefficients than the local dimension");
  const auto dn = static_cast<Eigen::Index>(n);
  ComplexVector v = ComplexVector::Zero(dn * dn);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] < 0.0) throw RangeError("schmidt_resource: coefficients must be non-negative");
    v(static_cast<Eigen::Index>(i * n + i)) = mu[i];
  }
  return PureState::normalized(v);
}

}  // namespace qtnec
