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

#include "qtnec/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "qtnec/random.hpp"
#include "qtnec/teleport.hpp"

namespace qtnec {

const char* to_string(Measured m) {
  switch (m) {
    case Measured::None: return "none";
    case Measured::Ancilla: return "ancilla";
    case Measured::Full: return "full";
  }
  return "none";
}

Measured measured_from_string(const std::string& s) {
  if (s == "none") return Measured::None;
  if (s == "ancilla") return Measured::Ancilla;
  if (s == "full") return Measured::Full;
  throw RangeError("unknown measured-subsystems value '" + s + "' (expected none, ancilla or full)");
}

std::size_t ProtocolParameterization::m() const {
  switch (measured) {
    case Measured::None: return 1;
    case Measured::Ancilla: return p;
    case Measured::Full: return n * p;
  }
  return 1;
}

ProtocolParameterization ProtocolParameterization::zeros(std::size_t n, std::size_t p, Measured measured) {
  if (n < 2) throw RangeError("parameterization: N must be at least 2");
  if (p < 1) throw RangeError("parameterization: P must be at least 1");
  ProtocolParameterization out;
  out.n = n;
  out.p = p;
  out.measured = measured;
  const std::size_t d = n * p;
  out.sender.assign(d * d, 0.0);
  out.receivers.assign(out.m(), std::vector<double>(d * d, 0.0));
  out.muParams.assign(p - 1, 0.0);
  return out;
}

std::size_t ProtocolParameterization::free_count() const {
  const std::size_t d = local_dim();
  return d * d * (1 + m()) + (muFixed ? 0 : p - 1);
}

std::vector<double> ProtocolParameterization::flatten() const {
  std::vector<double> flat;
  flat.reserve(free_count());
  flat.insert(flat.end(), sender.begin(), sender.end());
  for (const auto& r : receivers) flat.insert(flat.end(), r.begin(), r.end());
  if (!muFixed) flat.insert(flat.end(), muParams.begin(), muParams.end());
  return flat;
}

void ProtocolParameterization::assign(const std::vector<double>& flat) {
  require_dim(flat.size() == free_count(), "parameterization: wrong number of free coordinates");
  auto it = flat.begin();
  std::copy_n(it, sender.size(), sender.begin());
  it += static_cast<std::ptrdiff_t>(sender.size());
  for (auto& r : receivers) {
    std::copy_n(it, r.size(), r.begin());
    it += static_cast<std::ptrdiff_t>(r.size());
  }
  if (!muFixed) std::copy_n(it, muParams.size(), muParams.begin());
}

AncillaResource decode_mu(const ProtocolParameterization& params) {
  if (params.muFixed) {
    require_dim(static_cast<std::size_t>(params.muFixed->size()) <= params.p,
                "parameterization: fixed mu has more than P coefficients");
    return AncillaResource(*params.muFixed).padded(params.p);
  }
  require_dim(params.muParams.size() + 1 == params.p, "parameterization: expected P-1 mu logits");
  std::vector<double> logits(params.muParams);
  logits.push_back(0.0);
  const double top = *std::max_element(logits.begin(), logits.end());
  RealVector w(static_cast<Eigen::Index>(params.p));
  for (std::size_t i = 0; i < params.p; ++i) w(static_cast<Eigen::Index>(i)) = std::exp(logits[i] - top);
  w /= w.sum();
  return AncillaResource(w.cwiseSqrt());
}

ResourceProtocol decode(const ProtocolParameterization& params) {
  const std::size_t d = params.local_dim();
  require_dim(params.sender.size() == d * d, "parameterization: sender generator needs (NP)^2 reals");
  require_dim(params.receivers.size() == params.m(), "parameterization: one receiver generator per message");
  const ComplexMatrix u = expi_hermitian(hermitian_from_params(params.sender, d));

  std::vector<SenderBranch> sender;
  std::vector<ComplexMatrix> receiver;
  const auto dd = static_cast<Eigen::Index>(d);
  for (std::size_t eta = 0; eta < params.m(); ++eta) {
    ComplexMatrix proj = ComplexMatrix::Zero(dd, dd);
    switch (params.measured) {
      case Measured::None:
        proj.setIdentity();
        break;
      case Measured::Ancilla:
        for (std::size_t alpha = 0; alpha < params.n; ++alpha) {
          const auto idx = static_cast<Eigen::Index>(alpha * params.p + eta);
          proj(idx, idx) = 1.0;
        }
        break;
      case Measured::Full:
        proj(static_cast<Eigen::Index>(eta), static_cast<Eigen::Index>(eta)) = 1.0;
        break;
    }
    sender.push_back({std::move(proj), u});
    receiver.push_back(expi_hermitian(hermitian_from_params(params.receivers[eta], d)));
  }
  return ResourceProtocol(params.n, decode_mu(params), std::move(sender), std::move(receiver));
}

ProtocolParameterization qt_parameterization(std::size_t n) {
  ProtocolParameterization params = ProtocolParameterization::zeros(n, n, Measured::Full);
  const auto d = static_cast<Eigen::Index>(n * n);
  // Rotate the Bell basis onto the computational basis: U = Σ_η |η><ψ_η|.
  ComplexMatrix rotate(d, d);
  for (Eigen::Index eta = 0; eta < d; ++eta)
    rotate.row(eta) = bell_vector(n, static_cast<std::size_t>(eta)).adjoint();
  params.sender = params_from_hermitian(log_unitary(rotate));
  for (std::size_t eta = 0; eta < n * n; ++eta)
    params.receivers[eta] = params_from_hermitian(log_unitary(correction_unitary(n, eta).matrix));
  return params;
}

double objective(const ProtocolParameterization& params, const ComplexMatrix& choiMatrix) {
  return entanglement_fidelity(lambda_operators(decode(params)), choiMatrix);
}

double objective(const ProtocolParameterization& params, const KrausChannel& ch) {
  require_dim(ch.dim() == params.n, "objective: channel dimension does not match parameterization");
  return objective(params, choi(ch).matrix());
}

void validate(const OptimizationConfig& cfg) {
  if (cfg.evaluationBudget < 1) throw RangeError("optimize: evaluationBudget must be at least 1");
  if (cfg.restarts < 1) throw RangeError("optimize: restarts must be at least 1");
  if (!(cfg.stepInit > 0.0)) throw RangeError("optimize: stepInit must be positive");
  if (!(cfg.stepDecay > 0.0 && cfg.stepDecay <= 1.0)) throw RangeError("optimize: stepDecay must lie in (0, 1]");
  if (!(cfg.perturbInit > 0.0)) throw RangeError("optimize: perturbInit must be positive");
  if (!(cfg.stopDelta >= 0.0)) throw RangeError("optimize: stopDelta must be non-negative");
}

namespace {

struct RestartOutcome {
  double best = -INFINITY;
  std::vector<double> bestFlat;
  std::vector<double> trace;
  std::size_t evaluations = 0;
  bool exhausted = false;
};

RestartOutcome run_restart(const ComplexMatrix& choiMatrix, const ProtocolParameterization& base,
                           const OptimizationConfig& cfg, std::size_t restart) {
  Rng rng = make_rng(cfg.seed, restart);
  std::normal_distribution<double> normal(0.0, cfg.initScale);
  std::bernoulli_distribution coin(0.5);

  ProtocolParameterization work = base;
  std::vector<double> theta = base.flatten();
  if (!(restart == 0 && cfg.warmStart))
    for (auto& x : theta) x = normal(rng);

  RestartOutcome out;
  auto evaluate = [&](const std::vector<double>& x) {
    work.assign(x);
    ++out.evaluations;
    return objective(work, choiMatrix);
  };

  double current = evaluate(theta);
  out.best = current;
  out.bestFlat = theta;
  out.trace.push_back(current);

  const std::size_t dim = theta.size();
  double step = cfg.stepInit;
  double perturb = cfg.perturbInit;
  std::vector<double> delta(dim), plus(dim), minus(dim), cand(dim);

  while (dim > 0 && step >= cfg.stopDelta) {
    if (out.evaluations + 3 > cfg.evaluationBudget) {
      out.exhausted = true;
      break;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      delta[i] = coin(rng) ? 1.0 : -1.0;
      plus[i] = theta[i] + perturb * delta[i];
      minus[i] = theta[i] - perturb * delta[i];
    }
    const double fPlus = evaluate(plus);
    const double fMinus = evaluate(minus);

    // Gradient estimate along the Rademacher direction, normalized so the
    // step length is exactly `step`.
    const double slope = (fPlus - fMinus) / (2.0 * perturb);
    const double gnorm = std::abs(slope) * std::sqrt(static_cast<double>(dim));
    std::vector<double>* accepted = nullptr;
    double acceptedValue = current;
    if (gnorm > 0.0) {
      for (std::size_t i = 0; i < dim; ++i) cand[i] = theta[i] + step * slope * delta[i] / gnorm;
      const double fCand = evaluate(cand);
      if (fCand > acceptedValue) {
        accepted = &cand;
        acceptedValue = fCand;
      }
    }
    if (fPlus > acceptedValue) {
      accepted = &plus;
      acceptedValue = fPlus;
    }
    if (fMinus > acceptedValue) {
      accepted = &minus;
      acceptedValue = fMinus;
    }
    if (accepted != nullptr) {
      theta = *accepted;
      current = acceptedValue;
      if (current > out.best) {
        out.best = current;
        out.bestFlat = theta;
      }
    }
    out.trace.push_back(out.best);
    step *= cfg.stepDecay;
    perturb = std::max(perturb * cfg.stepDecay, 1e-7);
  }
  return out;
}

}  // namespace

OptimizationResult optimize(const KrausChannel& ch, const ProtocolParameterization& base,
                            const OptimizationConfig& cfg, Exec exec) {
  validate(cfg);
  require_dim(ch.dim() == base.n, "optimize: channel dimension does not match parameterization");
  ProtocolParameterization start = base;
  // A base that already carries muFixed stays fixed; fixMu pins whatever μ
  // the base parameters currently decode to.
  if (cfg.fixMu && !start.muFixed) start.muFixed = decode_mu(base).mu();
  const ComplexMatrix r = choi(ch).matrix();

  const auto outcomes = indexed_map<RestartOutcome>(
      cfg.restarts, [&](std::size_t restart) { return run_restart(r, start, cfg, restart); }, exec);

  OptimizationResult res;
  res.seed = cfg.seed;
  std::size_t winner = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    res.perRestartBests.push_back(outcomes[i].best);
    res.traces.push_back(outcomes[i].trace);
    res.evaluationsUsed += outcomes[i].evaluations;
    res.budgetExhausted = res.budgetExhausted || outcomes[i].exhausted;
    if (outcomes[i].best > outcomes[winner].best) winner = i;  // ties keep the lower index
  }
  res.bestFidelity = outcomes[winner].best;
  res.bestParams = start;
  res.bestParams.assign(outcomes[winner].bestFlat);
  res.bestProtocol = decode(res.bestParams);
  res.bestResidual = residual(*res.bestProtocol, ch);
  return res;
}

std::vector<SweepRow> sweep_mu(const KrausChannel& ch, const std::vector<double>& thetas, OptimizationConfig cfg,
                               Exec exec) {
  require_dim(ch.dim() == 2, "sweep_mu: the entanglement sweep is defined for qubit channels");
  cfg.fixMu = true;
  cfg.warmStart = true;
  std::vector<SweepRow> rows;
  for (double theta : thetas) {
    ProtocolParameterization base = qt_parameterization(2);
    base.muFixed = AncillaResource::qubit(theta).mu();
    const auto res = optimize(ch, base, cfg, exec);
    const RealVector& mu = *base.muFixed;
    rows.push_back({theta, mu.sum(), res.bestFidelity, cfg.seed});
  }
  return rows;
}

ResourceProtocol random_protocol(std::size_t n, std::size_t p, std::size_t m, std::uint64_t seed) {
  if (m < 1) throw RangeError("random_protocol: M must be at least 1");
  Rng rng = make_rng(seed, 0x9907'0000 + 31 * p + m);
  const std::size_t d = n * p;
  const auto dd = static_cast<Eigen::Index>(d);
  const ComplexMatrix u = haar_unitary(d, rng);

  std::vector<SenderBranch> sender;
  std::vector<ComplexMatrix> receiver;
  for (std::size_t eta = 0; eta < m; ++eta) {
    ComplexMatrix proj = ComplexMatrix::Zero(dd, dd);
    for (std::size_t x = eta; x < d; x += m) proj(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = 1.0;
    sender.push_back({std::move(proj), u});
    receiver.push_back(haar_unitary(d, rng));
  }
  RealVector mu = gaussian_matrix(p, 1, rng).col(0).cwiseAbs();
  mu /= mu.norm();
  return ResourceProtocol(n, AncillaResource(mu), std::move(sender), std::move(receiver));
}

}  // namespace qtnec
