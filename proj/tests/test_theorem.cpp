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

#include "helpers.hpp"
#include "oracles.hpp"
#include "qtnec/optimize.hpp"
#include "qtnec/theorem.hpp"

using namespace qtnec;

namespace {

AncillaResource res(std::initializer_list<double> v) {
  RealVector mu(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) mu(i++) = x;
  return AncillaResource(mu);
}

AncillaResource from_squares(const std::array<double, 3>& sq) {
  RealVector mu(3);
  for (int i = 0; i < 3; ++i) mu(i) = std::sqrt(sq[static_cast<std::size_t>(i)]);
  return AncillaResource(mu);
}

}  // namespace

TEST_CASE("check_relations_13: QT, broken receiver, bare protocol") {
  CHECK(check_relations_13(block_operators(qt_protocol(2))) < 1e-10);
  CHECK(check_relations_13(block_operators(qt_protocol(3))) < 1e-10);
  CHECK(check_relations_13(block_operators(bare_protocol(2))) < 1e-12);
  CHECK(check_relations_13(block_operators(bare_protocol(3, AncillaResource::uniform(2)))) < 1e-12);

  const ResourceProtocol qt = qt_protocol(2);
  auto receivers = qt.receiver();
  receivers[0] *= 0.5;
  CHECK(check_relations_13(block_operators(ResourceProtocol(2, qt.resource(), qt.sender(), receivers))) > 0.1);
}

TEST_CASE("block relations hold exactly when the determinism invariants hold") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const ResourceProtocol good = random_protocol(2 + s % 2, 1 + s % 3, 1 + s % 4, s);
    CHECK(check_relations_13(block_operators(good)) < 1e-10);
    CHECK(determinism(good).ok());

    // scale one receiver or one (non-empty) sender branch
    auto sender = good.sender();
    auto receiver = good.receiver();
    if (s % 2 == 0) {
      receiver.front() *= 0.9;
    } else {
      sender.front().unitary *= 0.9;
    }
    const ResourceProtocol bad(good.n(), good.resource(), sender, receiver);
    const bool rel = check_relations_13(block_operators(bad)) < 1e-10;
    CHECK(rel == determinism(bad).ok());
    CHECK_FALSE(rel);
  }
}

TEST_CASE("no_cc_contradiction: LHS is 1 and RHS is N·P for every M=1 protocol") {
  for (std::size_t n : {2u, 3u})
    for (std::size_t p : {1u, 2u, 4u}) {
      for (std::uint64_t s = 0; s < 3; ++s) {
        const ResourceProtocol proto =
            s == 0 ? bare_protocol(n, AncillaResource::uniform(p)) : random_protocol(n, p, 1, 10 * n + p + s);
        const ProofReport rep = no_cc_contradiction(proto);
        REQUIRE(rep.contradictionLHS.has_value());
        CHECK(std::abs(*rep.contradictionLHS - 1.0) < 1e-10);
        CHECK(*rep.contradictionRHS == double(n * p));
        CHECK_FALSE(rep.verdicts.at("faithfulCorrectionPossible"));
      }
    }
  CHECK_THROWS_AS(no_cc_contradiction(qt_protocol(2)), RangeError);
}

TEST_CASE("entanglement_bound examples") {
  const BoundResult bell = entanglement_bound(AncillaResource::uniform(2), 2);
  CHECK(std::abs(bell.sum - std::sqrt(2.0)) < 1e-15);
  CHECK(bell.satisfied);
  const BoundResult prod = entanglement_bound(res({1.0, 0.0}), 2);
  CHECK(prod.sum == 1.0);
  CHECK_FALSE(prod.satisfied);
  const BoundResult wide = entanglement_bound(AncillaResource::uniform(4), 2);
  CHECK(std::abs(wide.sum - 2.0) < 1e-15);
  CHECK(wide.satisfied);
  CHECK_FALSE(entanglement_bound(AncillaResource::qubit(std::numbers::pi / 8), 2).satisfied);
}

TEST_CASE("cauchy_schwarz_check: QT, bare protocol, random protocols") {
  CHECK(cauchy_schwarz_check(qt_protocol(2)) <= 1e-9);
  CHECK(cauchy_schwarz_check(qt_protocol(3)) <= 1e-9);
  CHECK(cauchy_schwarz_check(bare_protocol(2)) <= 1e-12);
  for (std::uint64_t s = 0; s < 50; ++s)
    CHECK(cauchy_schwarz_check(random_protocol(2, 1 + s % 4, 1 + s % 4, s)) <= 1e-9);
}

TEST_CASE("cauchy_schwarz_check is tight for the bare protocol") {
  // All blocks are scalars there, so both sides coincide.
  const double v = cauchy_schwarz_check(bare_protocol(2));
  CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("branch scalars are the least-squares fit of √N β δ_km δ_ln") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const ResourceProtocol proto = s == 0 ? qt_protocol(2) : random_protocol(2 + s % 2, 1 + s % 3, 2, s);
    const BlockOperators blocks = block_operators(proto);
    const auto beta = branch_scalars(blocks, proto.resource());
    REQUIRE(beta.size() == proto.m());
    const std::size_t n = proto.n(), p = proto.p();
    for (std::size_t eta = 0; eta < proto.m(); ++eta) {
      // stack all entries ⟨n|X_kl|m⟩ and the design vector, then solve
      std::vector<Complex> y;
      std::vector<double> d;
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < p; ++l) {
          const ComplexMatrix x = correction_overlap(blocks, proto.resource(), eta, k, l);
          for (std::size_t nn = 0; nn < n; ++nn)
            for (std::size_t mm = 0; mm < n; ++mm) {
              y.push_back(x(static_cast<Eigen::Index>(nn), static_cast<Eigen::Index>(mm)));
              d.push_back(k == mm && l == nn ? std::sqrt(double(n)) : 0.0);
            }
        }
      Complex num{0.0, 0.0};
      double den = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) {
        num += d[i] * y[i];
        den += d[i] * d[i];
      }
      CHECK(std::abs(beta[eta] - num / den) < 1e-12);
    }
  }
}

TEST_CASE("proof_report for QT and bare protocols") {
  const ProofReport qt = proof_report(qt_protocol(2));
  CHECK(qt.verdicts.at("deterministic"));
  CHECK(qt.verdicts.at("entanglementBoundSatisfied"));
  CHECK(qt.verdicts.at("cauchySchwarzHolds"));
  CHECK_FALSE(qt.contradictionLHS.has_value());
  CHECK(qt.verdicts.count("faithfulCorrectionPossible") == 0);
  CHECK(std::abs(qt.bound - std::sqrt(2.0)) < 1e-15);

  const ProofReport bare = proof_report(bare_protocol(2));
  CHECK_FALSE(bare.verdicts.at("entanglementBoundSatisfied"));
  CHECK(bare.contradictionLHS.has_value());
}

TEST_CASE("nielsen_convertible examples") {
  CHECK(nielsen_convertible(AncillaResource::uniform(4), res({1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0, 0})));
  CHECK_FALSE(nielsen_convertible(res({1.0, 0.0}), AncillaResource::uniform(2)));
  CHECK(nielsen_convertible(AncillaResource::uniform(2), res({1.0, 0.0})));
  const AncillaResource q = AncillaResource::qubit(0.3);
  CHECK(nielsen_convertible(q, q));
  // unequal lengths are zero-padded
  CHECK(nielsen_convertible(AncillaResource::uniform(3), AncillaResource::uniform(2)));
  CHECK_FALSE(nielsen_convertible(AncillaResource::uniform(2), AncillaResource::uniform(3)));
}

TEST_CASE("nielsen_convertible matches the Birkhoff-polytope oracle on the rational grid") {
  const auto triples = oracle::grid_triples();
  REQUIRE(triples.size() > 20);
  std::size_t pairs = 0, positives = 0;
  for (const auto& x : triples)
    for (const auto& y : triples) {
      const bool expected = oracle::in_permutohedron(x, y);
      CHECK(nielsen_convertible(from_squares(x), from_squares(y)) == expected);
      ++pairs;
      positives += expected ? 1 : 0;
    }
  CHECK(pairs >= 300);
  CHECK(positives > 0);
  CHECK(positives < pairs);
}

TEST_CASE("majorization is a partial order on random triples") {
  auto rng = make_rng(5, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&] {
    RealVector v(3);
    for (int i = 0; i < 3; ++i) v(i) = u(rng) * u(rng);
    return AncillaResource(v / v.norm());
  };
  int chains = 0;
  for (int t = 0; t < 2000; ++t) {
    const AncillaResource a = draw(), b = draw(), c = draw();
    CHECK(nielsen_convertible(a, a));
    if (nielsen_convertible(a, b) && nielsen_convertible(b, c)) {
      ++chains;
      CHECK(nielsen_convertible(a, c));
    }
  }
  CHECK(chains > 10);
}

TEST_CASE("faithful protocols on full-rank channels meet the entanglement bound") {
  std::vector<ResourceProtocol> corpus{qt_protocol(2), qt_protocol(3), bare_protocol(2), decode(qt_parameterization(2)),
                                      decode(qt_parameterization(3))};
  for (std::uint64_t s = 0; s < 10; ++s) corpus.push_back(random_protocol(2, 2, 4, s));
  int faithful = 0;
  for (const auto& p : corpus) {
    const KrausChannel ch = random_channel(p.n(), p.n() * p.n(), 3);
    if (residual(p, ch) < 1e-9) {
      ++faithful;
      CHECK(entanglement_bound(p.resource(), p.n(), 1e-9).satisfied);
      if (p.n() == 2 && p.p() == 2)
        for (Eigen::Index i = 0; i < 2; ++i) CHECK(std::abs(p.resource().mu()(i) - 1 / std::sqrt(2.0)) < 1e-6);
    }
  }
  CHECK(faithful == 4);
}
