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

// Serial reference vs OpenMP path for the three parallel kernels. Prints wall
// time per call and checks that both paths return identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "qtnec/optimize.hpp"
#include "qtnec/parallel.hpp"
#include "qtnec/protocol.hpp"
#include "qtnec/teleport.hpp"

using namespace qtnec;

namespace {

template <typename F>
double seconds_per_call(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const std::string& name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %10.3f ms  parallel %10.3f ms  speedup %5.2fx  %s\n", name.c_str(), 1e3 * serial,
              1e3 * parallel, serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 20;
  std::printf("threads: %d, reps: %d\n", max_threads(), reps);
  bool allSame = true;

  {
    const std::size_t n = 4;
    const DensityMatrix rho = random_state(n, 1);
    const KrausChannel ch = random_channel(n, n * n, 1);
    const PureState res = random_pure(n * n, 1);
    const bool same = (teleport_operator(rho.matrix(), ch, res, Exec::Serial) -
                       teleport_operator(rho.matrix(), ch, res, Exec::Parallel))
                          .cwiseAbs()
                          .maxCoeff() == 0.0;
    report("teleport_operator N=4",
           seconds_per_call([&] { teleport_operator(rho.matrix(), ch, res, Exec::Serial); }, reps),
           seconds_per_call([&] { teleport_operator(rho.matrix(), ch, res, Exec::Parallel); }, reps), same);
    allSame = allSame && same;
  }
  {
    const LambdaOperators lam = lambda_operators(random_protocol(3, 4, 9, 2));
    const ComplexMatrix r = choi(random_channel(3, 9, 2)).matrix();
    const bool same =
        (control_map_matrix(lam, r, Exec::Serial) - control_map_matrix(lam, r, Exec::Parallel)).cwiseAbs().maxCoeff() ==
        0.0;
    report("control_map N=3 P=4 M=9", seconds_per_call([&] { control_map_matrix(lam, r, Exec::Serial); }, reps),
           seconds_per_call([&] { control_map_matrix(lam, r, Exec::Parallel); }, reps), same);
    allSame = allSame && same;
  }
  {
    OptimizationConfig cfg;
    cfg.evaluationBudget = 500;
    cfg.restarts = 8;
    cfg.seed = 3;
    const auto base = ProtocolParameterization::zeros(2, 2, Measured::None);
    const KrausChannel ch = depolarizing(0.5);
    const bool same =
        optimize(ch, base, cfg, Exec::Serial).bestFidelity == optimize(ch, base, cfg, Exec::Parallel).bestFidelity;
    const int optReps = std::max(1, reps / 10);
    report("optimize 8 restarts", seconds_per_call([&] { optimize(ch, base, cfg, Exec::Serial); }, optReps),
           seconds_per_call([&] { optimize(ch, base, cfg, Exec::Parallel); }, optReps), same);
    allSame = allSame && same;
  }
  return allSame ? 0 : 1;
}
