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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "timeop/dynamics.hpp"

using namespace timeop;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd energies(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const double x : values) {
    v(i++) = x;
  }
  return v;
}

// Clock whose ladder step is exactly 1, so integer energy gaps land on
// rungs without any commensuration slack.
ClockSpace unit_ladder_clock(int n, double hbar = 1.0) {
  return build_clock(n, 2.0 * kPi * hbar / n, hbar);
}

Matrix equal_coeffs(Eigen::Index k) {
  return Matrix::Constant(k, k, Complex(1.0 / static_cast<double>(k), 0.0));
}

}  // namespace

TEST_CASE("oscillator space has the ladder spectrum with one intruder") {
  const SpaceSystem space = make_oscillator_space(12, 1.0);
  // Truncation rewrites the last diagonal entry, which detaches one level
  // from the n + 1/2 ladder and parks it degenerate with level 5.
  const std::vector<double> want = {0.5, 1.5, 2.5, 3.5, 4.5, 5.5,
                                    5.5, 6.5, 7.5, 8.5, 9.5, 10.5};
  REQUIRE(space.eigen.values.size() == 12);
  for (Eigen::Index i = 0; i < 12; ++i) {
    CHECK(space.eigen.values(i) ==
          doctest::Approx(want[static_cast<std::size_t>(i)]).epsilon(1e-10));
  }
}

TEST_CASE("space systems certify their spectral data") {
  const SpaceSystem space = make_diagonal_space(energies({2.0, 0.0, 1.0}), 1.0);
  CHECK(space.eigen.values(0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(space.eigen.values(2) == doctest::Approx(2.0).epsilon(1e-14));
  const Matrix rebuilt = space.eigen.vectors *
                         space.eigen.values.cast<Complex>().asDiagonal() *
                         space.eigen.vectors.adjoint();
  CHECK(max_abs(rebuilt - space.hamiltonian) <= 1e-10);

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(make_space_system(bad, 1.0), ValidationError);
  CHECK_THROWS_AS(make_space_system(Matrix::Identity(2, 2), 0.0),
                  ValidationError);
  CHECK_THROWS_AS(make_diagonal_space(energies({1.0}), 1.0), DimensionError);
}

TEST_CASE("total hamiltonian assembles the two slot sum") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = build_clock(4, 0.7, 1.0);
  const Matrix h = total_hamiltonian(space, clock);
  REQUIRE(h.rows() == 8);
  CHECK(is_hermitian(h, 1e-12));
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      for (Eigen::Index a = 0; a < 4; ++a) {
        for (Eigen::Index b = 0; b < 4; ++b) {
          Complex want = (i == j) ? clock.s_op(a, b) : Complex(0.0, 0.0);
          if (i == j && a == b) {
            want += space.eigen.values(i);
          }
          CHECK(std::abs(h(i * 4 + a, j * 4 + b) - want) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("total hamiltonian spectrum is the sum set") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.5}), 1.0);
  const ClockSpace clock = build_clock(5, 0.4, 1.0);
  const EigenSystem es = hermitian_eigen(total_hamiltonian(space, clock));
  std::vector<double> want;
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (int k = 0; k < 5; ++k) {
      want.push_back(space.eigen.values(i) + clock.s_values(k));
    }
  }
  std::sort(want.begin(), want.end());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    CHECK(es.values(i) ==
          doctest::Approx(want[static_cast<std::size_t>(i)]).epsilon(1e-10));
  }
}

TEST_CASE("zero space hamiltonian leaves only the clock part") {
  const SpaceSystem space = make_space_system(Matrix::Zero(3, 3), 1.0);
  const ClockSpace clock = build_clock(4, 0.5, 1.0);
  const Matrix h = total_hamiltonian(space, clock);
  const Matrix want = tensor(Matrix::Identity(3, 3), clock.s_op);
  CHECK(max_abs(h - want) <= 1e-13);
}

TEST_CASE("mismatched hbar is a contract violation") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = build_clock(4, 0.5, 0.9);
  CHECK_THROWS_AS(total_hamiltonian(space, clock), ContractError);
  CHECK_THROWS_AS(vn_residual(Matrix::Identity(8, 8), space, clock),
                  ContractError);
}

TEST_CASE("heisenberg_check splits the conjugacy relation") {
  const SpaceSystem space = make_oscillator_space(4, 1.0);
  const ClockSpace clock = build_clock(64, 0.25, 1.0);
  const HeisenbergCheck check = heisenberg_check(space, clock);
  // The space factor commutes with the clock slot by construction, term by
  // term in floating point as well.
  CHECK(check.exact_part == 0.0);
  CHECK(std::abs(check.clock_part - Complex(1.0, 0.0)) <= 1e-6);
}

TEST_CASE("the composite commutator distributes onto the clock factor") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 2.0}), 1.0);
  const ClockSpace clock = build_clock(8, 0.5, 1.0);
  const Matrix eye_space = Matrix::Identity(2, 2);
  const Matrix eye_clock = Matrix::Identity(8, 8);
  const Matrix lhs = commutator(total_hamiltonian(space, clock),
                                tensor(eye_space, clock.t_op));
  const Matrix rhs = tensor(eye_space, commutator(clock.s_op, clock.t_op));
  CHECK(max_abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("vn_residual vanishes on the identity and on spectral solutions") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  CHECK(vn_residual(Matrix::Identity(64, 64), space, clock) <= 1e-12);

  const SpectralSolution sol =
      solve_stationary(space, clock, equal_coeffs(2), {0, 1});
  CHECK(vn_residual(sol.rho, space, clock) <=
        1e-10 * spectral_norm(sol.rho));
}

TEST_CASE("vn_residual checks the composite dimension") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(8);
  CHECK_THROWS_AS(vn_residual(Matrix::Identity(9, 9), space, clock),
                  DimensionError);
}

TEST_CASE("assign_levels places gaps on the ladder") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  const std::vector<int> ks = assign_levels(space, clock, {0, 1}, 0.0);
  REQUIRE(ks.size() == 2);
  CHECK(ks[0] == 16);
  CHECK(ks[1] == 17);

  const std::vector<int> shifted =
      assign_levels(space, clock, {0, 1}, 2.0 * clock.ladder_step());
  CHECK(shifted[0] == 18);
  CHECK(shifted[1] == 19);
}

TEST_CASE("degenerate energies share a rung") {
  const SpaceSystem space =
      make_diagonal_space(energies({0.0, 1.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  const std::vector<int> ks = assign_levels(space, clock, {0, 1, 2}, 0.0);
  CHECK(ks[1] == ks[2]);
}

TEST_CASE("incommensurate spectra fail loudly naming the level") {
  const SpaceSystem space =
      make_diagonal_space(energies({0.0, 1.0, 2.47}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  CHECK_THROWS_WITH_AS(assign_levels(space, clock, {0, 1, 2}, 0.0),
                       doctest::Contains("level 2"), CommensurationError);

  // A gap beyond the top of the ladder is a range failure, not a rounding
  // failure.
  const SpaceSystem wide = make_diagonal_space(energies({0.0, 20.0}), 1.0);
  CHECK_THROWS_AS(assign_levels(wide, clock, {0, 1}, 0.0),
                  CommensurationError);
}

TEST_CASE("level lists are validated") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(16);
  CHECK_THROWS_AS(assign_levels(space, clock, {}, 0.0), ValidationError);
  CHECK_THROWS_AS(assign_levels(space, clock, {0, 2}, 0.0), ValidationError);
  CHECK_THROWS_AS(assign_levels(space, clock, {0, 0}, 0.0), ValidationError);
}

TEST_CASE("solve_stationary validates the coefficient matrix") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);

  CHECK_THROWS_AS(
      solve_stationary(space, clock, Matrix::Identity(3, 3), {0, 1}),
      DimensionError);

  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(solve_stationary(space, clock, skew, {0, 1}),
                  ValidationError);

  Matrix indefinite(2, 2);
  indefinite << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(solve_stationary(space, clock, indefinite, {0, 1}),
                  ValidationError);

  CHECK_THROWS_AS(solve_stationary(space, clock, Matrix::Zero(2, 2), {0, 1}),
                  ValidationError);
}

TEST_CASE("spectral solutions are Hermitian with the coefficient trace") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0, 2.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  const SpectralSolution sol =
      solve_stationary(space, clock, equal_coeffs(3), {0, 1, 2});
  CHECK(is_hermitian(sol.rho, 1e-12));
  CHECK(std::abs(sol.rho.trace() - Complex(1.0, 0.0)) <= 1e-12);
  CHECK(sol.s_indices == std::vector<int>{16, 17, 18});
}

TEST_CASE("a single level solution is an exact stationary projector") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0, 2.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(16);
  const SpectralSolution sol =
      solve_stationary(space, clock, Matrix::Identity(1, 1), {2});
  CHECK(vn_residual(sol.rho, space, clock) <= 1e-13);
}

TEST_CASE("one rung of misassignment costs a full gap of residual") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  const Matrix coeffs = equal_coeffs(2);
  const SpectralSolution sol = solve_stationary(space, clock, coeffs, {0, 1});

  Matrix bad = Matrix::Zero(64, 64);
  const std::vector<int> ks = {sol.s_indices[0], sol.s_indices[1] + 1};
  for (int i = 0; i < 2; ++i) {
    const Vector li = tensor(Vector(space.eigen.vectors.col(i)),
                             s_ket(clock, ks[static_cast<std::size_t>(i)]));
    for (int j = 0; j < 2; ++j) {
      const Vector rj = tensor(Vector(space.eigen.vectors.col(j)),
                               s_ket(clock, ks[static_cast<std::size_t>(j)]));
      bad += coeffs(i, j) * (li * rj.adjoint());
    }
  }
  const double gap = 1.0;
  CHECK(vn_residual(bad, space, clock) > 0.5 * gap * max_abs(coeffs));
}

TEST_CASE("pure states match their rank one density operator") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0, 2.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  Vector amps(2);
  amps << Complex(1.0 / std::sqrt(2.0), 0.0),
      std::polar(1.0 / std::sqrt(2.0), 0.4);
  const Vector psi = pure_state(space, clock, amps, {0, 2});
  CHECK(std::abs(psi.norm() - 1.0) <= 1e-12);

  const Matrix coeffs = amps * amps.adjoint();
  const SpectralSolution sol = solve_stationary(space, clock, coeffs, {0, 2});
  CHECK(max_abs(psi * psi.adjoint() - sol.rho) <= 1e-12);

  const Matrix h_slot =
      tensor(space.hamiltonian, Matrix::Identity(32, 32));
  const Complex mean = psi.dot(h_slot * psi);
  CHECK(std::abs(mean - Complex(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("pure_state validates amplitudes") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(16);
  Vector amps(1);
  amps << Complex(1.0, 0.0);
  CHECK_THROWS_AS(pure_state(space, clock, amps, {0, 1}), DimensionError);
  Vector big(2);
  big << Complex(1.0, 0.0), Complex(1.0, 0.0);
  CHECK_THROWS_AS(pure_state(space, clock, big, {0, 1}), ValidationError);
}

TEST_CASE("commensurate pure states satisfy the sliced wave equation") {
  const SpaceSystem space =
      make_diagonal_space(energies({0.0, 1.0, 2.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  Vector amps = Vector::Constant(3, Complex(1.0 / std::sqrt(3.0), 0.0));
  const Vector psi = pure_state(space, clock, amps, {0, 1, 2});
  const double h_norm = spectral_norm(space.hamiltonian);
  CHECK(schrodinger_residual(space, clock, psi, TimeDerivative::Spectral) <=
        1e-8 * h_norm);
}

TEST_CASE("the energy origin shift keeps shifted spectra exact") {
  // Energies (5, 6, 7) are incommensurate with the ladder as raw values but
  // exact after the ground shift; the residual must not see the offset.
  const SpaceSystem space =
      make_diagonal_space(energies({5.0, 6.0, 7.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  Vector amps = Vector::Constant(3, Complex(1.0 / std::sqrt(3.0), 0.0));
  const Vector psi = pure_state(space, clock, amps, {0, 1, 2});
  CHECK(schrodinger_residual(space, clock, psi, TimeDerivative::Spectral) <=
        1e-8 * spectral_norm(space.hamiltonian));
}

TEST_CASE("central time differences converge at second order") {
  const SpaceSystem space =
      make_diagonal_space(energies({0.0, 1.0, 2.0}), 1.0);
  Vector amps = Vector::Constant(3, Complex(1.0 / std::sqrt(3.0), 0.0));
  std::vector<double> residuals;
  for (const int n : {32, 64, 128}) {
    const ClockSpace clock = build_clock(n, 2.0 * kPi / n, 1.0);
    const Vector psi = pure_state(space, clock, amps, {0, 1, 2});
    residuals.push_back(
        schrodinger_residual(space, clock, psi, TimeDerivative::Central2));
  }
  for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
    const double order = std::log2(residuals[i] / residuals[i + 1]);
    CHECK(order > 1.8);
    CHECK(order < 2.2);
  }
}

TEST_CASE("sharp time candidates are loud non solutions of the slice form") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(16);
  const Vector psi =
      tensor(Vector(space.eigen.vectors.col(0)), time_ket(clock, 8));
  const double res =
      schrodinger_residual(space, clock, psi, TimeDerivative::Spectral);
  CHECK(res > 0.1);
  CHECK(schrodinger_residual(space, clock, Vector::Zero(32)) == 0.0);
  CHECK_THROWS_AS(schrodinger_residual(space, clock, Vector::Zero(31)),
                  DimensionError);
}

TEST_CASE("single level solutions disperse time completely") {
  const SpaceSystem space =
      make_diagonal_space(energies({0.0, 1.0, 2.0, 3.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  const SpectralSolution sol =
      solve_stationary(space, clock, Matrix::Identity(1, 1), {2});
  const std::vector<double> p = time_distribution(sol.rho, space, clock);
  REQUIRE(p.size() == 32);
  double sum = 0.0;
  for (const double v : p) {
    CHECK(std::abs(v - 1.0 / 32.0) <= 1e-10);
    sum += v;
  }
  CHECK(std::abs(sum - 1.0) <= 1e-10);
}

TEST_CASE("time eigenstates give a point mass distribution") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(8);
  const Vector t5 = time_ket(clock, 5);
  const Matrix rho =
      tensor(Matrix::Identity(2, 2) / 2.0, Matrix(t5 * t5.adjoint()));
  const std::vector<double> p = time_distribution(rho, space, clock);
  for (int a = 0; a < 8; ++a) {
    CHECK(p[static_cast<std::size_t>(a)] ==
          doctest::Approx(a == 5 ? 1.0 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("time_distribution rejects non positive operators") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(8);
  Matrix rho = Matrix::Zero(16, 16);
  rho(0, 1) = 1.0;
  CHECK_THROWS_AS(time_distribution(rho, space, clock), ValidationError);
  Matrix negative = -Matrix::Identity(16, 16);
  CHECK_THROWS_AS(time_distribution(negative, space, clock), ValidationError);
}

TEST_CASE("energy_mean on closed form cases") {
  const SpaceSystem space =
      make_diagonal_space(energies({0.0, 1.0, 2.0, 3.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  Matrix half = Matrix::Zero(2, 2);
  half(0, 0) = 0.5;
  half(1, 1) = 0.5;
  const SpectralSolution mixed = solve_stationary(space, clock, half, {0, 1});
  CHECK(energy_mean(mixed.rho, space, clock) ==
        doctest::Approx(0.5).epsilon(1e-12));

  const SpectralSolution single =
      solve_stationary(space, clock, Matrix::Identity(1, 1), {3});
  CHECK(energy_mean(single.rho, space, clock) ==
        doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(energy_mean(Matrix::Zero(128, 128), space, clock),
                  DegenerateInputError);
}

TEST_CASE("energy_mean agrees with the reduced density route") {
  const SpaceSystem space = make_oscillator_space(12, 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  std::mt19937 rng(987654321);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      a(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Matrix coeffs = a * a.adjoint();
  coeffs /= coeffs.trace().real();
  coeffs = 0.5 * (coeffs + coeffs.adjoint());
  const SpectralSolution sol =
      solve_stationary(space, clock, coeffs, {0, 1, 2, 3});

  const double direct = energy_mean(sol.rho, space, clock);
  const Matrix reduced =
      partial_trace(sol.rho, Factor::Space, space.dim, clock.n_points);
  const double via_reduced =
      (space.hamiltonian.transpose().cwiseProduct(reduced)).sum().real() /
      reduced.trace().real();
  CHECK(std::abs(direct - via_reduced) <= 1e-12);

  double diag_formula = 0.0;
  for (Eigen::Index i = 0; i < 4; ++i) {
    diag_formula += coeffs(i, i).real() * space.eigen.values(i);
  }
  CHECK(direct == doctest::Approx(diag_formula).epsilon(1e-12));
}

TEST_CASE("the ladder offset moves nothing observable") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = unit_ladder_clock(32);
  const Matrix coeffs = equal_coeffs(2);
  const SpectralSolution base = solve_stationary(space, clock, coeffs, {0, 1});
  const SpectralSolution moved = solve_stationary(
      space, clock, coeffs, {0, 1}, 3.0 * clock.ladder_step());

  CHECK(std::abs(vn_residual(base.rho, space, clock) -
                 vn_residual(moved.rho, space, clock)) <= 1e-12);
  CHECK(std::abs(energy_mean(base.rho, space, clock) -
                 energy_mean(moved.rho, space, clock)) <= 1e-12);
  const std::vector<double> pb = time_distribution(base.rho, space, clock);
  const std::vector<double> pm = time_distribution(moved.rho, space, clock);
  for (std::size_t i = 0; i < pb.size(); ++i) {
    CHECK(std::abs(pb[i] - pm[i]) <= 1e-12);
  }
  // The operator itself does move: the offset conjugates it by a clock
  // translation.
  CHECK(max_abs(base.rho - moved.rho) > 1e-3);
}

TEST_CASE("energy_mean survives clock refinement") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0, 3.0}), 1.0);
  const Matrix coeffs = equal_coeffs(3);
  const ClockSpace coarse = unit_ladder_clock(16);
  const ClockSpace fine = unit_ladder_clock(32);
  const double e_coarse = energy_mean(
      solve_stationary(space, coarse, coeffs, {0, 1, 2}).rho, space, coarse);
  const double e_fine = energy_mean(
      solve_stationary(space, fine, coeffs, {0, 1, 2}).rho, space, fine);
  CHECK(std::abs(e_coarse - e_fine) <= 1e-12);
}

TEST_CASE("sharp time readings always violate stationarity") {
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = build_clock(16, 0.5, 1.0);
  const double bound = sharp_time_lower_bound(clock);
  CHECK(bound == doctest::Approx(2.0 * kPi / (16.0 * 16.0 * 0.5))
                     .epsilon(1e-12));
  for (int level = 0; level < 2; ++level) {
    for (int a = 0; a < 16; ++a) {
      const double res = sharp_time_residual(space, clock, level, a);
      CHECK(res > 0.0);
      CHECK(res >= bound * (1.0 - 1e-12));
    }
  }
  // The H commutator vanishes on eigenprojectors, so the defect cannot
  // depend on which level is held sharp.
  CHECK(std::abs(sharp_time_residual(space, clock, 0, 3) -
                 sharp_time_residual(space, clock, 1, 3)) <= 1e-12);
}

TEST_CASE("two point clock sharp residual has a closed form") {
  const double dt = 1.0;
  const SpaceSystem space = make_diagonal_space(energies({0.0, 1.0}), 1.0);
  const ClockSpace clock = build_clock(2, dt, 1.0);
  const double res = sharp_time_residual(space, clock, 0, 0);
  CHECK(res == doctest::Approx(kPi / (2.0 * dt)).epsilon(1e-12));
}
