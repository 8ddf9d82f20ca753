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

#include "qtnec/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "qtnec/teleport.hpp"

namespace qtnec {

AncillaResource::AncillaResource(RealVector mu, double tol) : mu_(std::move(mu)) {
  require_dim(mu_.size() > 0, "AncillaResource: empty Schmidt vector");
  for (Eigen::Index i = 0; i < mu_.size(); ++i) {
    if (!std::isfinite(mu_(i))) throw InvariantError("finite coefficients", INFINITY, "AncillaResource");
    if (mu_(i) < 0.0) throw InvariantError("non-negative coefficients", -mu_(i), "AncillaResource");
  }
  const double dev = std::abs(mu_.squaredNorm() - 1.0);
  if (dev > tol) throw InvariantError("sum of squared coefficients equals 1", dev, "AncillaResource");
}

AncillaResource AncillaResource::uniform(std::size_t p) {
  require_dim(p >= 1, "AncillaResource: P must be at least 1");
  return AncillaResource(RealVector::Constant(static_cast<Eigen::Index>(p), 1.0 / std::sqrt(static_cast<double>(p))));
}

AncillaResource AncillaResource::qubit(double theta) {
  RealVector mu(2);
  mu << std::abs(std::cos(theta)), std::abs(std::sin(theta));
  return AncillaResource(mu);
}

AncillaResource AncillaResource::padded(std::size_t p) const {
  require_dim(p >= this->p(), "AncillaResource: cannot pad to fewer coefficients");
  RealVector out = RealVector::Zero(static_cast<Eigen::Index>(p));
  out.head(mu_.size()) = mu_;
  return AncillaResource(out);
}

PureState AncillaResource::state() const {
  const auto dp = static_cast<Eigen::Index>(p());
  ComplexVector v = ComplexVector::Zero(dp * dp);
  for (Eigen::Index i = 0; i < dp; ++i) v(i * dp + i) = mu_(i);
  return PureState(v, 1e-9);
}

ResourceProtocol::ResourceProtocol(std::size_t n, AncillaResource resource, std::vector<SenderBranch> sender,
                                   std::vector<ComplexMatrix> receiver)
    : n_(n), resource_(std::move(resource)), sender_(std::move(sender)), receiver_(std::move(receiver)) {
  if (n_ < 1) throw RangeError("ResourceProtocol: N must be at least 1");
  require_dim(!sender_.empty(), "ResourceProtocol: at least one branch is required");
  require_dim(sender_.size() == receiver_.size(),
              "ResourceProtocol: sender has " + std::to_string(sender_.size()) + " branches but receiver has " +
                  std::to_string(receiver_.size()));
  const auto d = static_cast<Eigen::Index>(n_ * resource_.p());
  auto square = [d](const ComplexMatrix& m) { return m.rows() == d && m.cols() == d; };
  for (const auto& s : sender_)
    require_dim(square(s.projector) && square(s.unitary), "ResourceProtocol: sender operators must be N*P square");
  for (const auto& r : receiver_) require_dim(square(r), "ResourceProtocol: receiver operators must be N*P square");
}

double DeterminismReport::max() const {
  return std::max({senderCompleteness, senderCoCompleteness, receiverUnitarity});
}

DeterminismReport determinism(const ResourceProtocol& p) {
  const std::size_t d = p.n() * p.p();
  ComplexMatrix ldl = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  ComplexMatrix lld = ldl;
  for (const auto& s : p.sender()) {
    const ComplexMatrix l = s.op();
    ldl += l.adjoint() * l;
    lld += l * l.adjoint();
  }
  DeterminismReport rep;
  rep.senderCompleteness = (ldl - identity(d)).norm();
  rep.senderCoCompleteness = (lld - identity(d)).norm();
  for (const auto& r : p.receiver()) rep.receiverUnitarity = std::max(rep.receiverUnitarity, unitarity_error(r));
  return rep;
}

void require_deterministic(const ResourceProtocol& p, double tol) {
  const auto rep = determinism(p);
  if (rep.senderCompleteness > tol)
    throw InvariantError("determinism: sum L^dag L = I", rep.senderCompleteness, "ResourceProtocol");
  if (rep.senderCoCompleteness > tol)
    throw InvariantError("determinism: sum L L^dag = I", rep.senderCoCompleteness, "ResourceProtocol");
  if (rep.receiverUnitarity > tol)
    throw InvariantError("determinism: receiver operations unitary", rep.receiverUnitarity, "ResourceProtocol");
}

ResourceProtocol qt_protocol(std::size_t n) {
  if (n < 2) throw RangeError("qt_protocol: N must be at least 2");
  std::vector<SenderBranch> sender;
  std::vector<ComplexMatrix> receiver;
  for (std::size_t eta = 0; eta < n * n; ++eta) {
    sender.push_back({projector(bell_vector(n, eta)), identity(n * n)});
    receiver.push_back(correction_unitary(n, eta).matrix);
  }
  return ResourceProtocol(n, AncillaResource::uniform(n), std::move(sender), std::move(receiver));
}

ResourceProtocol bare_protocol(std::size_t n, AncillaResource resource) {
  const std::size_t d = n * resource.p();
  return ResourceProtocol(n, std::move(resource), {SenderBranch{identity(d), identity(d)}}, {identity(d)});
}

// ---------------------------------------------------------------------------

BlockOperators::BlockOperators(std::size_t m, std::size_t p, std::size_t n)
    : m_(m), p_(p), n_(n), a_(m * p * p), b_(m * p * p) {}

ComplexMatrix ancilla_block(const ComplexMatrix& op, std::size_t n, std::size_t p, std::size_t i, std::size_t j) {
  const auto dn = static_cast<Eigen::Index>(n);
  const auto dp = static_cast<Eigen::Index>(p);
  ComplexMatrix out(dn, dn);
  for (Eigen::Index r = 0; r < dn; ++r)
    for (Eigen::Index c = 0; c < dn; ++c)
      out(r, c) = op(r * dp + static_cast<Eigen::Index>(i), c * dp + static_cast<Eigen::Index>(j));
  return out;
}

BlockOperators block_operators(const ResourceProtocol& p) {
  BlockOperators blocks(p.m(), p.p(), p.n());
  for (std::size_t eta = 0; eta < p.m(); ++eta) {
    const ComplexMatrix l = p.sender()[eta].op();
    const ComplexMatrix& v = p.receiver()[eta];
    for (std::size_t i = 0; i < p.p(); ++i)
      for (std::size_t j = 0; j < p.p(); ++j) {
        blocks.a(eta, i, j) = ancilla_block(l, p.n(), p.p(), i, j);
        blocks.b(eta, i, j) = ancilla_block(v, p.n(), p.p(), i, j);
      }
  }
  return blocks;
}

LambdaOperators lambda_operators(const BlockOperators& blocks, const AncillaResource& resource) {
  require_dim(resource.p() == blocks.p(), "lambda_operators: resource and blocks disagree on P");
  LambdaOperators out{blocks.m(), blocks.p(), blocks.n(), {}};
  const auto n2 = static_cast<Eigen::Index>(blocks.n() * blocks.n());
  out.ops.reserve(blocks.m() * blocks.p() * blocks.p());
  for (std::size_t eta = 0; eta < blocks.m(); ++eta)
    for (std::size_t k = 0; k < blocks.p(); ++k)
      for (std::size_t l = 0; l < blocks.p(); ++l) {
        ComplexMatrix lam = ComplexMatrix::Zero(n2, n2);
        for (std::size_t i = 0; i < blocks.p(); ++i) {
          const double mu = resource.mu()(static_cast<Eigen::Index>(i));
          if (mu == 0.0) continue;
          lam += mu * tensor(blocks.b(eta, k, i), blocks.a(eta, l, i).transpose());
        }
        out.ops.push_back(std::move(lam));
      }
  return out;
}

LambdaOperators lambda_operators(const ResourceProtocol& p) {
  return lambda_operators(block_operators(p), p.resource());
}

ComplexMatrix control_map_matrix(const LambdaOperators& lambda, const ComplexMatrix& r, Exec exec) {
  const auto d = static_cast<Eigen::Index>(lambda.n * lambda.n);
  require_dim(r.rows() == d && r.cols() == d, "control_map: Choi matrix dimension does not match protocol");
  return ordered_sum(
      lambda.ops.size(), ComplexMatrix(ComplexMatrix::Zero(d, d)),
      [&](std::size_t t) -> ComplexMatrix { return lambda.ops[t] * r * lambda.ops[t].adjoint(); }, exec);
}

ChoiMatrix control_map(const ResourceProtocol& p, const ChoiMatrix& r, Exec exec) {
  require_dim(r.dim_in() == p.n() && r.dim_out() == p.n(), "control_map: channel dimension does not match protocol");
  return ChoiMatrix(control_map_matrix(lambda_operators(p), r.matrix(), exec), p.n(), p.n(), 1e-9);
}

ComplexMatrix apply_protocol_operator(const ResourceProtocol& p, const KrausChannel& ch, const ComplexMatrix& x,
                                      Exec exec) {
  const std::size_t n = p.n();
  require_dim(ch.dim() == n, "apply_protocol: channel dimension " + std::to_string(ch.dim()) +
                                 " does not match protocol dimension " + std::to_string(n));
  require_dim(x.rows() == x.cols() && static_cast<std::size_t>(x.rows()) == n,
              "apply_protocol: state dimension does not match protocol dimension");
  const std::size_t dims[] = {n, p.p(), p.p()};
  const std::size_t senderSide[] = {0, 1};
  const std::size_t receiverSide[] = {0, 2};
  const std::size_t keepB[] = {0};
  const ComplexMatrix joint = tensor(x, p.resource().state().projector());
  const auto dn = static_cast<Eigen::Index>(n);

  return ordered_sum(
      p.m(), ComplexMatrix(ComplexMatrix::Zero(dn, dn)),
      [&](std::size_t eta) -> ComplexMatrix {
        const ComplexMatrix l = embed(p.sender()[eta].op(), dims, senderSide);
        const ComplexMatrix sent = apply_on_factor(ch, ComplexMatrix(l * joint * l.adjoint()), dims, 0);
        const ComplexMatrix v = embed(p.receiver()[eta], dims, receiverSide);
        return partial_trace(v * sent * v.adjoint(), dims, keepB);
      },
      exec);
}

DensityMatrix apply_protocol(const ResourceProtocol& p, const KrausChannel& ch, const DensityMatrix& rho, Exec exec) {
  require_deterministic(p);
  return make_density(apply_protocol_operator(p, ch, rho.matrix(), exec));
}

double residual(const ResourceProtocol& p, const KrausChannel& ch) {
  require_dim(ch.dim() == p.n(), "residual: channel dimension does not match protocol");
  const ComplexMatrix out = control_map_matrix(lambda_operators(p), choi(ch).matrix(), Exec::Serial);
  return (out - maximally_entangled(p.n()).projector()).norm();
}

double entanglement_fidelity(const LambdaOperators& lambda, const ComplexMatrix& choiMatrix) {
  // <ψ₀|Σ Λ R Λ†|ψ₀> = Σ w† R w with w = Λ†|ψ₀>.
  const ComplexVector psi0 = maximally_entangled(lambda.n).amplitudes();
  double f = 0.0;
  for (const auto& lam : lambda.ops) {
    const ComplexVector w = lam.adjoint() * psi0;
    f += w.dot(choiMatrix * w).real();
  }
  return f;
}

double entanglement_fidelity(const ResourceProtocol& p, const KrausChannel& ch) {
  require_dim(ch.dim() == p.n(), "entanglement_fidelity: channel dimension does not match protocol");
  return entanglement_fidelity(lambda_operators(p), choi(ch).matrix());
}

}  // namespace qtnec
