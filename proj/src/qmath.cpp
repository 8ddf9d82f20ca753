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

#include "qtnec/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qtnec/random.hpp"

namespace qtnec {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

// Flat offsets in the full space for every multi-index over `factors`, the
// last listed factor varying fastest.
std::vector<std::size_t> offsets_over(std::span<const std::size_t> dims,
                                      const std::vector<std::size_t>& strides,
                                      const std::vector<std::size_t>& factors) {
  std::vector<std::size_t> out{0};
  for (std::size_t f : factors) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * dims[f]);
    for (std::size_t base : out)
      for (std::size_t d = 0; d < dims[f]; ++d) next.push_back(base + d * strides[f]);
    out = std::move(next);
  }
  return out;
}

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> chosen) {
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < n; ++k)
    if (std::find(chosen.begin(), chosen.end(), k) == chosen.end()) rest.push_back(k);
  return rest;
}

}  // namespace

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t total = product(dims);
  require_dim(m.rows() == m.cols() && static_cast<std::size_t>(m.rows()) == total,
              "partial_trace: product of factor dims " + std::to_string(total) +
                  " does not match matrix dimension " + std::to_string(m.rows()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    require_dim(keep[k] < dims.size(), "partial_trace: kept factor out of range");
    require_dim(k == 0 || keep[k] > keep[k - 1], "partial_trace: kept factors must be increasing");
  }
  const auto strides = strides_of(dims);
  const std::vector<std::size_t> kept(keep.begin(), keep.end());
  const auto keptOff = offsets_over(dims, strides, kept);
  const auto tracedOff = offsets_over(dims, strides, complement(dims.size(), keep));

  const auto n = static_cast<Eigen::Index>(keptOff.size());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      Complex s{0.0, 0.0};
      for (std::size_t t : tracedOff)
        s += m(static_cast<Eigen::Index>(keptOff[r] + t), static_cast<Eigen::Index>(keptOff[c] + t));
      out(r, c) = s;
    }
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, std::span<const std::size_t> dims,
                    std::span<const std::size_t> targets) {
  const std::vector<std::size_t> tgt(targets.begin(), targets.end());
  std::size_t opDim = 1;
  for (std::size_t t : tgt) {
    require_dim(t < dims.size(), "embed: target factor out of range");
    opDim *= dims[t];
  }
  require_dim(op.rows() == op.cols() && static_cast<std::size_t>(op.rows()) == opDim,
              "embed: operator dimension does not match target factors");
  const auto strides = strides_of(dims);
  const auto tOff = offsets_over(dims, strides, tgt);
  const auto rOff = offsets_over(dims, strides, complement(dims.size(), targets));

  const auto total = static_cast<Eigen::Index>(product(dims));
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  for (std::size_t s : rOff)
    for (std::size_t r = 0; r < tOff.size(); ++r)
      for (std::size_t c = 0; c < tOff.size(); ++c)
        out(static_cast<Eigen::Index>(tOff[r] + s), static_cast<Eigen::Index>(tOff[c] + s)) =
            op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  return out;
}

ComplexMatrix identity(std::size_t n) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return (u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) return false;
  return true;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

ComplexMatrix expi_hermitian(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
  const RealVector& w = es.eigenvalues();
  ComplexVector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::polar(1.0, w(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix log_unitary(const ComplexMatrix& u) {
  // A unitary is normal, so its complex Schur form is diagonal and the Schur
  // vectors are an orthonormal eigenbasis even for degenerate spectra.
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();
  ComplexVector angles(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) angles(i) = std::arg(t(i, i));
  ComplexMatrix h = q * angles.asDiagonal() * q.adjoint();
  return 0.5 * (h + h.adjoint());
}

ComplexMatrix hermitian_from_params(std::span<const double> params, std::size_t d) {
  require_dim(params.size() == d * d, "hermitian_from_params: expected d² parameters");
  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  std::size_t p = 0;
  for (std::size_t i = 0; i < d; ++i) h(i, i) = params[p++];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex z{params[p], params[p + 1]};
      p += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  return h;
}

std::vector<double> params_from_hermitian(const ComplexMatrix& h) {
  const auto d = static_cast<std::size_t>(h.rows());
  std::vector<double> out;
  out.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) out.push_back(h(i, i).real());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      out.push_back(h(i, j).real());
      out.push_back(h(i, j).imag());
    }
  return out;
}

// ---------------------------------------------------------------------------

PureState::PureState(ComplexVector amplitudes, double tol) : amps_(std::move(amplitudes)) {
  require_dim(amps_.size() > 0, "PureState: empty amplitude vector");
  if (!all_finite(amps_)) throw InvariantError("finite amplitudes", INFINITY, "PureState");
  const double dev = std::abs(amps_.squaredNorm() - 1.0);
  if (dev > tol) throw InvariantError("unit norm", dev, "PureState");
}

PureState PureState::normalized(const ComplexVector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw RangeError("PureState: cannot normalize a zero vector");
  return PureState(v / n);
}

PureState PureState::phase_aligned() const {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < amps_.size(); ++i)
    if (std::abs(amps_(i)) > std::abs(amps_(best)) + 1e-14) best = i;
  const double mag = std::abs(amps_(best));
  if (mag == 0.0) return *this;
  return PureState(amps_ * (std::conj(amps_(best)) / mag), 1e-10);
}

bool equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
  if (a.dim() != b.dim()) return false;
  // Align b to a via their overlap rather than by per-vector rules, which
  // would be fragile when two amplitudes have nearly equal magnitude.
  const Complex ov = b.amplitudes().dot(a.amplitudes());
  const double mag = std::abs(ov);
  const Complex phase = mag > 0.0 ? ov / mag : Complex{1.0, 0.0};
  return (a.amplitudes() - phase * b.amplitudes()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(ComplexMatrix m, double tol, double negTol) : m_(std::move(m)) {
  require_dim(m_.rows() == m_.cols() && m_.rows() > 0, "DensityMatrix: matrix must be square");
  if (!all_finite(m_)) throw InvariantError("finite entries", INFINITY, "DensityMatrix");
  const double herm = hermiticity_error(m_);
  if (herm > tol) throw InvariantError("hermitian", herm, "DensityMatrix");
  const double tr = std::abs(m_.trace() - Complex{1.0, 0.0});
  if (tr > tol) throw InvariantError("unit trace", tr, "DensityMatrix");
  const double minEig = hermitian_eigenvalues(m_).minCoeff();
  if (minEig < -negTol) throw InvariantError("positive semidefinite", -minEig, "DensityMatrix");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
  return DensityMatrix(identity(n) / static_cast<double>(n));
}

DensityMatrix make_density(const ComplexMatrix& m, double tol) {
  if (m.rows() == m.cols()) {
    const double herm = hermiticity_error(m);
    if (herm > tol) throw InvariantError("hermitian", herm, "DensityMatrix");
  }
  return DensityMatrix(0.5 * (m + m.adjoint()), tol);
}

ComplexVector SchmidtForm::reconstruct() const {
  ComplexVector out = ComplexVector::Zero(basisA.rows() * basisB.rows());
  for (Eigen::Index i = 0; i < coefficients.size(); ++i)
    out += coefficients(i) * tensor(basisA.col(i), basisB.col(i)).col(0);
  return out;
}

SchmidtForm schmidt(const PureState& psi, std::size_t dimA, std::size_t dimB) {
  require_dim(dimA * dimB == psi.dim(), "schmidt: dimA*dimB = " + std::to_string(dimA * dimB) +
                                            " does not match state dimension " + std::to_string(psi.dim()));
  const auto da = static_cast<Eigen::Index>(dimA);
  const auto db = static_cast<Eigen::Index>(dimB);
  ComplexMatrix coeff(da, db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) coeff(i, j) = psi.amplitudes()(i * db + j);

  // C = U S V†  ⇒  ψ = Σ s_k u_k ⊗ conj(v_k). JacobiSVD returns the singular
  // values in decreasing order.
  Eigen::JacobiSVD<ComplexMatrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtForm form;
  form.coefficients = svd.singularValues();
  form.basisA = svd.matrixU();
  form.basisB = svd.matrixV().conjugate();
  form.localDim = static_cast<std::size_t>(form.coefficients.size());
  return form;
}

namespace {

// A with m = A A†, keeping only eigenvalues above numerical noise. Noise-level
// eigenvalues would otherwise enter the fidelity through their square roots.
ComplexMatrix psd_factor(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  const double floor = 1e-13 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > floor) kept.push_back(i);
  ComplexMatrix a(m.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c)
    a.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(kept[c]) * std::sqrt(es.eigenvalues()(kept[c]));
  return a;
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_dim(rho.dim() == sigma.dim(), "fidelity: dimension mismatch");
  // Tr√(√ρ σ √ρ) is the nuclear norm of A†B when ρ = AA† and σ = BB†.
  const ComplexMatrix a = psd_factor(rho.matrix());
  const ComplexMatrix b = psd_factor(sigma.matrix());
  if (a.cols() == 0 || b.cols() == 0) return 0.0;
  const ComplexMatrix ab = a.adjoint() * b;
  const double tr = Eigen::JacobiSVD<ComplexMatrix>(ab).singularValues().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_dim(a.rows() == b.rows() && a.cols() == b.cols(), "trace_distance: dimension mismatch");
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

PureState maximally_entangled(std::size_t n) {
  if (n < 2) throw RangeError("maximally_entangled: N must be at least 2");
  const auto dn = static_cast<Eigen::Index>(n);
  ComplexVector v = ComplexVector::Zero(dn * dn);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index i = 0; i < dn; ++i) v(i * dn + i) = amp;
  return PureState(std::move(v));
}

PureState random_pure(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw RangeError("random_pure: N must be at least 1");
  auto rng = make_rng(seed, 0x5eed'0001);
  return PureState::normalized(gaussian_matrix(n, 1, rng).col(0));
}

DensityMatrix random_state(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw RangeError("random_state: N must be at least 1");
  auto rng = make_rng(seed, 0x5eed'0002);
  const PureState joint = PureState::normalized(gaussian_matrix(n * n, 1, rng).col(0));
  const std::size_t dims[] = {n, n};
  const std::size_t keep[] = {0};
  return make_density(partial_trace(joint.projector(), dims, keep));
}

// ---------------------------------------------------------------------------

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex{re, im};
    }
  return g;
}

ComplexMatrix haar_isometry(std::size_t rows, std::size_t cols, Rng& rng) {
  require_dim(cols <= rows, "haar_isometry: needs cols <= rows");
  const ComplexMatrix g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
  const ComplexMatrix r = qr.matrixQR().topRows(g.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

}  // namespace qtnec
