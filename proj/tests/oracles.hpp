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

// Brute-force reference computations for the tests. Everything here is
// written with explicit index loops and avoids the library's tensor and trace
// helpers, so agreement is evidence rather than tautology.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <set>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Mat eye(Eigen::Index n) { return Mat::Identity(n, n); }

// Mixed-radix digits, most significant factor first.
inline std::vector<std::size_t> digits(std::size_t idx, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t f = dims.size(); f-- > 0;) {
    d[f] = idx % dims[f];
    idx /= dims[f];
  }
  return d;
}

inline std::size_t flat(const std::vector<std::size_t>& d, const std::vector<std::size_t>& dims) {
  std::size_t idx = 0;
  for (std::size_t f = 0; f < dims.size(); ++f) idx = idx * dims[f] + d[f];
  return idx;
}

// Keeps the factors flagged in `keep`, sums the rest.
inline Mat ptrace(const Mat& m, const std::vector<std::size_t>& dims, const std::vector<bool>& keep) {
  std::vector<std::size_t> kd;
  for (std::size_t f = 0; f < dims.size(); ++f)
    if (keep[f]) kd.push_back(dims[f]);
  std::size_t outDim = 1;
  for (auto d : kd) outDim *= d;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(outDim), static_cast<Eigen::Index>(outDim));
  const auto total = static_cast<std::size_t>(m.rows());
  for (std::size_t r = 0; r < total; ++r) {
    const auto dr = digits(r, dims);
    for (std::size_t c = 0; c < total; ++c) {
      const auto dc = digits(c, dims);
      bool diag = true;
      std::vector<std::size_t> kr, kc;
      for (std::size_t f = 0; f < dims.size(); ++f) {
        if (keep[f]) {
          kr.push_back(dr[f]);
          kc.push_back(dc[f]);
        } else if (dr[f] != dc[f]) {
          diag = false;
          break;
        }
      }
      if (diag)
        out(static_cast<Eigen::Index>(flat(kr, kd)), static_cast<Eigen::Index>(flat(kc, kd))) +=
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

// Permutation matrix mapping factor order `dims` to order `perm` (new factor f
// is old factor perm[f]).
inline Mat permutation(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> nd(dims.size());
  for (std::size_t f = 0; f < dims.size(); ++f) nd[f] = dims[perm[f]];
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  Mat pm = Mat::Zero(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  for (std::size_t i = 0; i < total; ++i) {
    const auto d = digits(i, dims);
    std::vector<std::size_t> e(dims.size());
    for (std::size_t f = 0; f < dims.size(); ++f) e[f] = d[perm[f]];
    pm(static_cast<Eigen::Index>(flat(e, nd)), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return pm;
}

inline Mat apply_kraus(const std::vector<Mat>& kraus, const Mat& x) {
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (const auto& k : kraus) out += k * x * k.adjoint();
  return out;
}

// (1/N) Σ_ij map(|i><j|) ⊗ |i><j|, output factor first.
inline Mat choi_by_tomography(const std::function<Mat(const Mat&)>& map, Eigen::Index n) {
  Mat r = Mat::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Mat e = Mat::Zero(n, n);
      e(i, j) = 1.0;
      r += kron(map(e), e);
    }
  return r / static_cast<double>(n);
}

inline Vec max_entangled(Eigen::Index n) {
  Vec v = Vec::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) v(i * n + i) = 1.0 / std::sqrt(static_cast<double>(n));
  return v;
}

// |ψ_η> = N^{-1/2} Σ_k e^{2πikn/N} |k>|k+m>, η = nN + m.
inline Vec bell(std::size_t n, std::size_t eta) {
  const std::size_t nn = eta / n, m = eta % n;
  Vec v = Vec::Zero(static_cast<Eigen::Index>(n * n));
  for (std::size_t k = 0; k < n; ++k)
    v(static_cast<Eigen::Index>(k * n + (k + m) % n)) =
        std::polar(1.0 / std::sqrt(static_cast<double>(n)), 2.0 * std::numbers::pi * double(k * nn) / double(n));
  return v;
}

// Swap followed by Σ_k e^{2πikn/N}|k><k+m| on the second factor.
inline Mat correction(std::size_t n, std::size_t eta) {
  const std::size_t nn = eta / n, m = eta % n;
  const auto d = static_cast<Eigen::Index>(n);
  Mat s = Mat::Zero(d, d);
  for (std::size_t k = 0; k < n; ++k)
    s(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>((k + m) % n)) =
        std::polar(1.0, 2.0 * std::numbers::pi * double(k * nn) / double(n));
  return permutation({n, n}, {1, 0}) * kron(eye(d), s);
}

// Teleportation with an arbitrary a⊗b resource, written on the full A⊗a⊗b space.
inline Mat teleport(const Mat& rho, const std::vector<Mat>& kraus, const Vec& resource) {
  const auto n = static_cast<std::size_t>(rho.rows());
  const auto d = rho.rows();
  const Mat full = kron(rho, resource * resource.adjoint());
  std::vector<Mat> big;
  for (const auto& k : kraus) big.push_back(kron(k, eye(d * d)));
  Mat out = Mat::Zero(d, d);
  for (std::size_t eta = 0; eta < n * n; ++eta) {
    const Vec b = bell(n, eta);
    const Mat proj = kron(b * b.adjoint(), eye(d));
    Mat sigma = apply_kraus(big, proj * full * proj);
    Mat onAb = ptrace(sigma, {n, n, n}, {true, false, true});
    const Mat u = correction(n, eta);
    onAb = u * onAb * u.adjoint();
    out += ptrace(onAb, {n, n}, {true, false});
  }
  return out;
}

// General protocol: ρ ⊗ |ψ><ψ|, sender op on A⊗a, channel on A, receiver on A⊗b.
inline Mat apply_protocol(std::size_t n, std::size_t p, const std::vector<double>& mu, const std::vector<Mat>& sender,
                          const std::vector<Mat>& receiver, const std::vector<Mat>& kraus, const Mat& rho) {
  const auto pn = static_cast<Eigen::Index>(p);
  const auto dn = static_cast<Eigen::Index>(n);
  Vec psi = Vec::Zero(pn * pn);
  for (Eigen::Index i = 0; i < pn; ++i) psi(i * pn + i) = mu[static_cast<std::size_t>(i)];
  const Mat full = kron(rho, psi * psi.adjoint());
  const Mat swapAb = permutation({n, p, p}, {0, 2, 1});
  std::vector<Mat> big;
  for (const auto& k : kraus) big.push_back(kron(k, eye(pn * pn)));
  Mat out = Mat::Zero(dn, dn);
  for (std::size_t eta = 0; eta < sender.size(); ++eta) {
    const Mat l = kron(sender[eta], eye(pn));
    Mat sigma = apply_kraus(big, l * full * l.adjoint());
    sigma = swapAb * sigma * swapAb.transpose();  // now A⊗b⊗a
    const Mat v = kron(receiver[eta], eye(pn));
    sigma = v * sigma * v.adjoint();
    out += ptrace(sigma, {n, p, p}, {true, false, false});
  }
  return out;
}

// Uhlmann fidelity for a pure first argument.
inline double pure_fidelity(const Vec& psi, const Mat& sigma) { return (psi.adjoint() * sigma * psi)(0, 0).real(); }

// x ≺ y for 3-vectors by testing whether x lies in the convex hull of the
// permutations of y (Birkhoff), in barycentric coordinates of the simplex.
inline bool in_permutohedron(std::array<double, 3> x, std::array<double, 3> y, double tol = 1e-12) {
  std::array<int, 3> idx{0, 1, 2};
  std::vector<std::array<double, 2>> pts;
  do {
    pts.push_back({y[static_cast<std::size_t>(idx[0])], y[static_cast<std::size_t>(idx[1])]});
  } while (std::next_permutation(idx.begin(), idx.end()));
  const std::array<double, 2> q{x[0], x[1]};
  auto near = [&](const std::array<double, 2>& a) { return std::hypot(a[0] - q[0], a[1] - q[1]) <= tol * 10; };
  for (const auto& a : pts)
    if (near(a)) return true;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double ex = pts[j][0] - pts[i][0], ey = pts[j][1] - pts[i][1];
      const double len2 = ex * ex + ey * ey;
      if (len2 < 1e-30) continue;
      const double t = ((q[0] - pts[i][0]) * ex + (q[1] - pts[i][1]) * ey) / len2;
      if (t < -tol || t > 1 + tol) continue;
      const double px = pts[i][0] + t * ex - q[0], py = pts[i][1] + t * ey - q[1];
      if (std::hypot(px, py) <= tol * 10) return true;
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const double fx = pts[k][0] - pts[i][0], fy = pts[k][1] - pts[i][1];
        const double det = ex * fy - ey * fx;
        if (std::abs(det) < 1e-14) continue;
        const double gx = q[0] - pts[i][0], gy = q[1] - pts[i][1];
        const double s = (gx * fy - gy * fx) / det;
        const double u = (ex * gy - ey * gx) / det;
        if (s >= -tol && u >= -tol && s + u <= 1 + tol) return true;
      }
    }
  return false;
}

// Normalized squared-coefficient triples from {0, 1/4, 1/2, 3/4, 1}³.
inline std::vector<std::array<double, 3>> grid_triples() {
  std::set<std::array<long, 3>> seen;
  std::vector<std::array<double, 3>> out;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c) {
        const int s = a + b + c;
        if (s == 0) continue;
        // dedupe by the normalized value
        const std::array<long, 3> key{lround(1e9 * a / s), lround(1e9 * b / s), lround(1e9 * c / s)};
        if (!seen.insert(key).second) continue;
        out.push_back({double(a) / s, double(b) / s, double(c) / s});
      }
  return out;
}

}  // namespace oracle
