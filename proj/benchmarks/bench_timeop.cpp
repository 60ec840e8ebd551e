// Copyright 2026 The timeop Authors
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

// Microbenchmarks for the operations that dominate scenario runtimes: the
// dense kernels on the composite space and the grid bracket on phase-space
// fields.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "timeop/classical.hpp"
#include "timeop/dynamics.hpp"
#include "timeop/weylprod.hpp"

namespace {

using namespace timeop;

Matrix random_hermitian(Eigen::Index dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      a(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return Matrix(0.5 * (a + a.adjoint()));
}

void BM_Tensor(benchmark::State& state) {
  const Eigen::Index dim = state.range(0);
  const Matrix a = random_hermitian(dim, 1);
  const Matrix b = random_hermitian(dim, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tensor(a, b, dim * dim));
  }
}
BENCHMARK(BM_Tensor)->Arg(16)->Arg(32)->Arg(64);

void BM_HermitianEigen(benchmark::State& state) {
  const Matrix a = random_hermitian(state.range(0), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eigen(a));
  }
}
BENCHMARK(BM_HermitianEigen)->Arg(64)->Arg(128)->Arg(256);

void BM_SolveStationary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpaceSystem space = make_oscillator_space(12, 1.0);
  const ClockSpace clock = build_clock(n, 2.0 * std::numbers::pi / n, 1.0);
  const Matrix coeffs = Matrix::Constant(4, 4, Complex(0.25, 0.0));
  const std::vector<int> levels{0, 1, 2, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve_stationary(space, clock, coeffs, levels));
  }
}
BENCHMARK(BM_SolveStationary)->Arg(32)->Arg(64);

void BM_VnResidual(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpaceSystem space =
      make_diagonal_space(Eigen::Vector2d(0.0, 1.0), 1.0);
  const ClockSpace clock = build_clock(n, 2.0 * std::numbers::pi / n, 1.0);
  const Matrix coeffs = Matrix::Constant(2, 2, Complex(0.5, 0.0));
  const SpectralSolution sol =
      solve_stationary(space, clock, coeffs, {0, 1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(vn_residual(sol.rho, space, clock));
  }
}
BENCHMARK(BM_VnResidual)->Arg(16)->Arg(32)->Arg(64);

void BM_WeylMonomial(benchmark::State& state) {
  const int deg = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(weyl_monomial(deg, deg, 32, 1.0));
  }
}
BENCHMARK(BM_WeylMonomial)->Arg(2)->Arg(3)->Arg(4);

void BM_BracketW(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GridSpec grid;
  for (auto& ax : grid.axes) {
    ax = AxisSpec{-2.0, n, 4.0 / n, false};
  }
  const PhaseField h = make_field(
      grid, [](double q, double p, double, double s) {
        return 0.5 * (q * q + p * p) + s;
      });
  const PhaseField rho = make_field(
      grid, [](double q, double p, double t, double) {
        return std::exp(-0.5 * (q * q + p * p)) * (1.0 + 0.1 * t);
      });
  for (auto _ : state) {
    benchmark::DoNotOptimize(bracket_w(h, rho));
  }
}
BENCHMARK(BM_BracketW)->Arg(12)->Arg(24);

void BM_LiouvilleResidual(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GridSpec grid;
  grid.axes[0] = AxisSpec{-6.0, n, 12.0 / n, false};
  grid.axes[1] = AxisSpec{-6.0, n, 12.0 / n, false};
  grid.axes[2] = AxisSpec{0.0, n, 1.0 / n, false};
  grid.axes[3] = AxisSpec{-2.0, n, 4.0 / n, false};
  const PhaseField h = make_field(
      grid, [](double, double p, double, double s) {
        return 0.5 * p * p + s;
      });
  const PhaseField rho = build_solution(
      SpaceHamiltonian::FreeParticle,
      [](double q, double p) {
        return std::exp(-0.5 * q * q) * std::exp(-0.5 * p * p);
      },
      0.0, 0.8, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(liouville_residual(h, rho));
  }
}
BENCHMARK(BM_LiouvilleResidual)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
