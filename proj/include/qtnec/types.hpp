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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qtnec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default tolerance for structural checks (hermiticity, trace, orthonormality).
inline constexpr double kStructuralTol = 1e-10;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside its admissible range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A value violates a named invariant. Carries the invariant's name and the
/// magnitude of the violation so loaders can report both.
class InvariantError : public Error {
 public:
  InvariantError(std::string invariant, double magnitude, const std::string& context = {})
      : Error(compose(invariant, magnitude, context)),
        invariant_(std::move(invariant)),
        magnitude_(magnitude) {}

  const std::string& invariant() const noexcept { return invariant_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  static std::string compose(const std::string& inv, double mag, const std::string& ctx) {
    std::string msg = ctx.empty() ? std::string{} : ctx + ": ";
    msg += "invariant '" + inv + "' violated (magnitude " + std::to_string(mag) + ")";
    return msg;
  }

  std::string invariant_;
  double magnitude_;
};

inline void require_dim(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace qtnec
