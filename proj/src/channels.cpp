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

#include "qtnec/channels.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qtnec/random.hpp"

namespace qtnec {

namespace {

// Row-major flattening of K scaled by 1/√N: the vector (K ⊗ I)|Φ⟩.
ComplexVector choi_vector(const ComplexMatrix& k) {
  const double s = 1.0 / std::sqrt(static_cast<double>(k.cols()));
  ComplexVector v(k.rows() * k.cols());
  for (Eigen::Index b = 0; b < k.rows(); ++b)
    for (Eigen::Index x = 0; x < k.cols(); ++x) v(b * k.cols() + x) = s * k(b, x);
  return v;
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus, double tol) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InvariantError("non-empty Kraus list", 0.0, "KrausChannel");
  dim_ = static_cast<std::size_t>(kraus_.front().rows());
  for (const auto& k : kraus_) {
    require_dim(k.rows() == k.cols() && static_cast<std::size_t>(k.rows()) == dim_,
                "KrausChannel: all Kraus operators must be square of the same dimension");
    if (!all_finite(k)) throw InvariantError("finite entries", INFINITY, "KrausChannel");
  }
  const double tp = trace_preservation_error();
  if (tp > tol) throw InvariantError("trace preserving (sum K^dag K = I)", tp, "KrausChannel");
}

double KrausChannel::trace_preservation_error() const {
  ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& k : kraus_) s += k.adjoint() * k;
  return (s - identity(dim_)).norm();
}

ChoiMatrix::ChoiMatrix(ComplexMatrix m, std::size_t dimOut, std::size_t dimIn, double tol)
    : m_(std::move(m)), dimOut_(dimOut), dimIn_(dimIn) {
  require_dim(m_.rows() == m_.cols() && static_cast<std::size_t>(m_.rows()) == dimOut * dimIn,
              "ChoiMatrix: matrix dimension must be dimOut*dimIn");
  if (!all_finite(m_)) throw InvariantError("finite entries", INFINITY, "ChoiMatrix");
  const double herm = hermiticity_error(m_);
  if (herm > tol) throw InvariantError("hermitian", herm, "ChoiMatrix");
  m_ = 0.5 * (m_ + m_.adjoint());

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_);
  // Eigen sorts ascending; store descending.
  eigenvalues_ = es.eigenvalues().reverse();
  eigenvectors_ = es.eigenvectors().rowwise().reverse();

  const double minEig = eigenvalues_(eigenvalues_.size() - 1);
  if (minEig < -tol) throw InvariantError("positive semidefinite", -minEig, "ChoiMatrix");
  const double tr = std::abs(m_.trace() - Complex{1.0, 0.0});
  if (tr > tol) throw InvariantError("unit trace", tr, "ChoiMatrix");
  const std::size_t dims[] = {dimOut, dimIn};
  const std::size_t keepIn[] = {1};
  const double marg =
      (partial_trace(m_, dims, keepIn) - identity(dimIn) / static_cast<double>(dimIn)).norm();
  if (marg > tol) throw InvariantError("input marginal equals I/N (trace preservation)", marg, "ChoiMatrix");
}

ComplexMatrix apply_kraus(const KrausChannel& ch, const ComplexMatrix& x) {
  require_dim(x.rows() == x.cols() && static_cast<std::size_t>(x.rows()) == ch.dim(),
              "apply: operator dimension " + std::to_string(x.rows()) + " does not match channel dimension " +
                  std::to_string(ch.dim()));
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& k : ch.kraus()) out.noalias() += k * x * k.adjoint();
  return out;
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  return make_density(apply_kraus(ch, rho.matrix()));
}

ComplexMatrix apply_on_factor(const KrausChannel& ch, const ComplexMatrix& x,
                              std::span<const std::size_t> dims, std::size_t which) {
  require_dim(which < dims.size(), "apply_on_factor: factor index out of range");
  require_dim(dims[which] == ch.dim(), "apply_on_factor: factor dimension " + std::to_string(dims[which]) +
                                           " does not match channel dimension " + std::to_string(ch.dim()));
  const std::size_t target[] = {which};
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const auto& k : ch.kraus()) {
    const ComplexMatrix big = embed(k, dims, target);
    require_dim(big.rows() == x.rows(), "apply_on_factor: dims do not match operator dimension");
    out.noalias() += big * x * big.adjoint();
  }
  return out;
}

DensityMatrix apply_on_factor(const KrausChannel& ch, const DensityMatrix& rho,
                              std::span<const std::size_t> dims, std::size_t which) {
  return make_density(apply_on_factor(ch, rho.matrix(), dims, which));
}

ChoiMatrix choi(const KrausChannel& ch) {
  const auto d = static_cast<Eigen::Index>(ch.dim());
  ComplexMatrix r = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& k : ch.kraus()) {
    const ComplexVector v = choi_vector(k);
    r.noalias() += v * v.adjoint();
  }
  return ChoiMatrix(std::move(r), ch.dim(), ch.dim());
}

ComplexMatrix choi_of_map(const std::function<ComplexMatrix(const ComplexMatrix&)>& map, std::size_t dimIn) {
  const auto n = static_cast<Eigen::Index>(dimIn);
  ComplexMatrix r;
  for (Eigen::Index x = 0; x < n; ++x)
    for (Eigen::Index y = 0; y < n; ++y) {
      ComplexMatrix unit = ComplexMatrix::Zero(n, n);
      unit(x, y) = 1.0;
      const ComplexMatrix out = map(unit);
      if (r.size() == 0) r = ComplexMatrix::Zero(out.rows() * n, out.cols() * n);
      r += tensor(out, unit);
    }
  return r / static_cast<double>(dimIn);
}

std::size_t rank(const ChoiMatrix& c, double tol) {
  const RealVector& w = c.eigenvalues();
  const double cutoff = tol * w(0);
  std::size_t count = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) > cutoff) ++count;
  return count;
}

std::size_t rank(const KrausChannel& ch, double tol) { return rank(choi(ch), tol); }

KrausChannel kraus_from_choi(const ChoiMatrix& c, double tol) {
  const RealVector& w = c.eigenvalues();
  const auto dOut = static_cast<Eigen::Index>(c.dim_out());
  const auto dIn = static_cast<Eigen::Index>(c.dim_in());
  require_dim(dOut == dIn, "kraus_from_choi: only square channels are supported");
  const double cutoff = tol * w(0);

  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    if (w(k) <= cutoff) break;
    const double scale = std::sqrt(static_cast<double>(dIn) * w(k));
    ComplexMatrix op(dOut, dIn);
    for (Eigen::Index b = 0; b < dOut; ++b)
      for (Eigen::Index x = 0; x < dIn; ++x) op(b, x) = scale * c.eigenvectors()(b * dIn + x, k);

    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < op.size(); ++i)
      if (std::abs(op.data()[i]) > std::abs(op.data()[best]) + 1e-14) best = i;
    // data() is column-major; any fixed scan order gives a canonical choice.
    const Complex lead = op.data()[best];
    if (std::abs(lead) > 0.0) op *= std::conj(lead) / std::abs(lead);
    ops.push_back(std::move(op));
  }
  // Truncating eigenvalues below the cutoff perturbs Σ K†K by at most
  // N·Σ(dropped λ); validate against a tolerance that admits that.
  double dropped = 0.0;
  for (Eigen::Index k = static_cast<Eigen::Index>(ops.size()); k < w.size(); ++k) dropped += std::abs(w(k));
  return KrausChannel(std::move(ops), kStructuralTol + static_cast<double>(dIn) * dropped);
}

KrausChannel identity_channel(std::size_t n) { return KrausChannel({identity(n)}); }

KrausChannel unitary_channel(const ComplexMatrix& u) {
  const double err = unitarity_error(u);
  if (err > kStructuralTol) throw InvariantError("unitary", err, "unitary_channel");
  return KrausChannel({u});
}

ComplexMatrix weyl(std::size_t n, std::size_t shift, std::size_t phase) {
  const auto dn = static_cast<Eigen::Index>(n);
  ComplexMatrix w = ComplexMatrix::Zero(dn, dn);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * M_PI * static_cast<double>((k * phase) % n) / static_cast<double>(n);
    w(static_cast<Eigen::Index>((k + shift) % n), static_cast<Eigen::Index>(k)) = std::polar(1.0, angle);
  }
  return w;
}

KrausChannel depolarizing(double p, std::size_t n) {
  if (!(p >= 0.0 && p <= 1.0)) throw RangeError("depolarizing: p must lie in [0, 1]");
  if (n < 2) throw RangeError("depolarizing: N must be at least 2");
  // (1/N²) Σ_W W ρ W† = Tr(ρ)·I/N over all N² Weyl operators W.
  const double n2 = static_cast<double>(n * n);
  std::vector<ComplexMatrix> ops;
  ops.push_back(std::sqrt(1.0 - p + p / n2) * identity(n));
  if (p > 0.0) {
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t ph = 0; ph < n; ++ph)
        if (s != 0 || ph != 0) ops.push_back(std::sqrt(p / n2) * weyl(n, s, ph));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel random_channel(std::size_t n, std::size_t rank, std::uint64_t seed) {
  if (n < 1) throw RangeError("random_channel: N must be at least 1");
  if (rank < 1 || rank > n * n)
    throw RangeError("random_channel: rank must lie in [1, N²], got " + std::to_string(rank));
  auto rng = make_rng(seed, 0xC4A7'0000 + rank);
  const ComplexMatrix v = haar_isometry(n * rank, n, rng);
  const auto dn = static_cast<Eigen::Index>(n);
  std::vector<ComplexMatrix> ops;
  for (std::size_t j = 0; j < rank; ++j) ops.push_back(v.block(static_cast<Eigen::Index>(j) * dn, 0, dn, dn));
  return KrausChannel(std::move(ops));
}

bool depolarizing_locc_simulable(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw RangeError("depolarizing_locc_simulable: p must lie in [0, 1]");
  return p >= 2.0 / 3.0;
}

}  // namespace qtnec
