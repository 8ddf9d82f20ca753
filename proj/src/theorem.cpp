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

#include "qtnec/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qtnec {

double check_relations_13(const BlockOperators& blocks) {
  const std::size_t m = blocks.m(), p = blocks.p(), n = blocks.n();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix zero = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  double worst = 0.0;
  auto track = [&](const ComplexMatrix& s, std::size_t i, std::size_t j) {
    worst = std::max(worst, (s - (i == j ? id : zero)).norm());
  };

  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      ComplexMatrix rowSum = zero;  // Σ_η Σ_k A_{ik} A_{jk}†
      ComplexMatrix colSum = zero;  // Σ_η Σ_k A_{ki}† A_{kj}
      for (std::size_t eta = 0; eta < m; ++eta)
        for (std::size_t k = 0; k < p; ++k) {
          rowSum += blocks.a(eta, i, k) * blocks.a(eta, j, k).adjoint();
          colSum += blocks.a(eta, k, i).adjoint() * blocks.a(eta, k, j);
        }
      track(rowSum, i, j);
      track(colSum, i, j);

      for (std::size_t eta = 0; eta < m; ++eta) {
        ComplexMatrix bRow = zero;
        ComplexMatrix bCol = zero;
        for (std::size_t k = 0; k < p; ++k) {
          bRow += blocks.b(eta, i, k) * blocks.b(eta, j, k).adjoint();
          bCol += blocks.b(eta, k, i).adjoint() * blocks.b(eta, k, j);
        }
        track(bRow, i, j);
        track(bCol, i, j);
      }
    }
  return worst;
}

ComplexMatrix correction_overlap(const BlockOperators& blocks, const AncillaResource& resource, std::size_t eta,
                                 std::size_t k, std::size_t l) {
  const auto dn = static_cast<Eigen::Index>(blocks.n());
  ComplexMatrix x = ComplexMatrix::Zero(dn, dn);
  for (std::size_t i = 0; i < blocks.p(); ++i) {
    const double mu = resource.mu()(static_cast<Eigen::Index>(i));
    if (mu != 0.0) x += mu * blocks.a(eta, l, i) * blocks.b(eta, k, i);
  }
  return x;
}

std::vector<Complex> branch_scalars(const BlockOperators& blocks, const AncillaResource& resource) {
  // Target pattern d = δ_km δ_ln is 1 on (k = m, l = n), m,n < min(N, P).
  const std::size_t diag = std::min(blocks.n(), blocks.p());
  const double scale = std::sqrt(static_cast<double>(blocks.n())) * static_cast<double>(diag * diag);
  std::vector<Complex> beta;
  for (std::size_t eta = 0; eta < blocks.m(); ++eta) {
    Complex s{0.0, 0.0};
    for (std::size_t mm = 0; mm < diag; ++mm)
      for (std::size_t nn = 0; nn < diag; ++nn)
        s += correction_overlap(blocks, resource, eta, mm, nn)(static_cast<Eigen::Index>(nn),
                                                               static_cast<Eigen::Index>(mm));
    beta.push_back(s / scale);
  }
  return beta;
}

namespace {

double contradiction_lhs(const BlockOperators& blocks, const AncillaResource& resource) {
  const std::size_t n = blocks.n(), p = blocks.p();
  double total = 0.0;
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = 0; l < p; ++l)
      // Summing |X(n,m)|² over n and averaging over m is ‖X‖²_F / N.
      total += correction_overlap(blocks, resource, 0, k, l).squaredNorm();
  return total / static_cast<double>(n);
}

}  // namespace

ProofReport proof_report(const ResourceProtocol& p) {
  const BlockOperators blocks = block_operators(p);
  ProofReport rep;
  rep.n = p.n();
  rep.p = p.p();
  rep.m = p.m();
  rep.relation13MaxResidual = check_relations_13(blocks);
  const BoundResult bound = entanglement_bound(p.resource(), p.n());
  rep.entanglementSum = bound.sum;
  rep.bound = std::sqrt(static_cast<double>(p.n()));
  rep.branchScalars = branch_scalars(blocks, p.resource());
  rep.cauchySchwarzViolation = cauchy_schwarz_check(p);

  rep.verdicts["deterministic"] = rep.relation13MaxResidual < kStructuralTol;
  rep.verdicts["entanglementBoundSatisfied"] = bound.satisfied;
  rep.verdicts["cauchySchwarzHolds"] = rep.cauchySchwarzViolation <= 1e-9;
  if (p.m() == 1) {
    rep.contradictionLHS = contradiction_lhs(blocks, p.resource());
    rep.contradictionRHS = static_cast<double>(p.n() * p.p());
    rep.verdicts["faithfulCorrectionPossible"] = std::abs(*rep.contradictionLHS - *rep.contradictionRHS) <= 1e-9;
  }
  return rep;
}

ProofReport no_cc_contradiction(const ResourceProtocol& p) {
  if (p.m() != 1)
    throw RangeError("no_cc_contradiction: requires a single-branch protocol (M = 1), got M = " +
                     std::to_string(p.m()));
  require_deterministic(p);
  return proof_report(p);
}

BoundResult entanglement_bound(const AncillaResource& mu, std::size_t n, double tol) {
  const double sum = mu.mu().sum();
  return {sum, sum >= std::sqrt(static_cast<double>(n)) - tol};
}

double cauchy_schwarz_check(const ResourceProtocol& p) {
  const BlockOperators blocks = block_operators(p);
  const RealVector& mu = p.resource().mu();
  const std::size_t m = blocks.m(), pp = blocks.p();
  const auto dn = static_cast<Eigen::Index>(blocks.n());

  double worst = -INFINITY;
  for (std::size_t eta = 0; eta < m; ++eta) {
    // aWeight(l)(n) = Σ_{i,j} μ_i |<n|A_{li}|j>|²; bWeight(k)(m) = Σ_{p,q} μ_p |<q|B_{kp}|m>|².
    std::vector<RealVector> aWeight(pp, RealVector::Zero(dn));
    std::vector<RealVector> bWeight(pp, RealVector::Zero(dn));
    for (std::size_t idx = 0; idx < pp; ++idx)
      for (std::size_t i = 0; i < pp; ++i) {
        const double w = mu(static_cast<Eigen::Index>(i));
        aWeight[idx] += w * blocks.a(eta, idx, i).cwiseAbs2().rowwise().sum();
        bWeight[idx] += w * blocks.b(eta, idx, i).cwiseAbs2().colwise().sum().transpose();
      }
    for (std::size_t k = 0; k < pp; ++k)
      for (std::size_t l = 0; l < pp; ++l) {
        const ComplexMatrix x = correction_overlap(blocks, p.resource(), eta, k, l);
        for (Eigen::Index nn = 0; nn < dn; ++nn)
          for (Eigen::Index mm = 0; mm < dn; ++mm)
            worst = std::max(worst, std::norm(x(nn, mm)) - aWeight[l](nn) * bWeight[k](mm));
      }
  }
  return worst;
}

bool nielsen_convertible(const AncillaResource& source, const AncillaResource& target, double tol) {
  const std::size_t len = std::max(source.p(), target.p());
  auto sorted_squares = [len](const AncillaResource& r) {
    std::vector<double> v(len, 0.0);
    for (std::size_t i = 0; i < r.p(); ++i) v[i] = r.mu()(static_cast<Eigen::Index>(i)) * r.mu()(static_cast<Eigen::Index>(i));
    std::sort(v.begin(), v.end(), std::greater<>{});
    return v;
  };
  const auto s = sorted_squares(source);
  const auto t = sorted_squares(target);
  double ps = 0.0, pt = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    ps += s[i];
    pt += t[i];
    if (ps > pt + tol) return false;
  }
  return true;
}

}  // namespace qtnec
