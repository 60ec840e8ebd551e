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

#include <cmath>
#include <complex>
#include <numbers>

#include "timeop/clock.hpp"

using namespace timeop;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid values are centered and evenly spaced") {
  const ClockSpace clock = build_clock(4, 1.0, 1.0);
  CHECK(clock.t_values(0) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(clock.t_values(1) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(clock.t_values(2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(clock.t_values(3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(clock.s_values(0) == doctest::Approx(-kPi).epsilon(1e-15));
  CHECK(clock.s_values(1) == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(clock.s_values(2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(clock.s_values(3) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(clock.ladder_step() == doctest::Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("ladder step scales with hbar and grid") {
  const ClockSpace clock = build_clock(10, 0.3, 0.7);
  CHECK(clock.ladder_step() ==
        doctest::Approx(2.0 * kPi * 0.7 / (10 * 0.3)).epsilon(1e-14));
  CHECK(clock.s_values(1) - clock.s_values(0) ==
        doctest::Approx(clock.ladder_step()).epsilon(1e-13));
}

TEST_CASE("build_clock validates its inputs") {
  CHECK_THROWS_AS(build_clock(1, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(build_clock(8, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(build_clock(8, 1.0, -1.0), ValidationError);
}

TEST_CASE("fourier map is unitary and s_op is its diagonalization") {
  for (const int n : {3, 8, 16}) {
    const ClockSpace clock = build_clock(n, 0.4, 1.3);
    CHECK(max_abs(clock.fourier.adjoint() * clock.fourier -
                  Matrix::Identity(n, n)) <= 1e-12);
    CHECK(is_hermitian(clock.s_op, 1e-12));
    CHECK(is_hermitian(clock.t_op, 1e-15));
    for (int k = 0; k < n; ++k) {
      const Vector v = s_ket(clock, k);
      CHECK((clock.s_op * v - clock.s_values(k) * v).norm() <= 1e-11);
    }
  }
}

TEST_CASE("time kets are the standard basis") {
  const ClockSpace clock = build_clock(6, 0.5, 1.0);
  for (int a = 0; a < 6; ++a) {
    const Vector e = time_ket(clock, a);
    CHECK(std::abs(e.norm() - 1.0) <= 1e-15);
    CHECK(std::abs(e(a) - Complex(1.0, 0.0)) <= 1e-15);
  }
  CHECK_THROWS_AS(time_ket(clock, 6), DimensionError);
  CHECK_THROWS_AS(time_ket(clock, -1), DimensionError);
}

TEST_CASE("s kets carry the stationary phase profile") {
  const ClockSpace clock = build_clock(8, 0.7, 0.9);
  const double root = 1.0 / std::sqrt(8.0);
  for (int k = 0; k < 8; ++k) {
    const Vector v = s_ket(clock, k);
    CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
    for (int a = 0; a < 8; ++a) {
      const Complex want =
          root * std::polar(1.0, -clock.s_values(k) * clock.t_values(a) /
                                     clock.hbar);
      CHECK(std::abs(v(a) - want) <= 1e-13);
    }
  }
}

TEST_CASE("s kets resolve the identity") {
  const ClockSpace clock = build_clock(5, 0.3, 1.0);
  Matrix sum = Matrix::Zero(5, 5);
  for (int k = 0; k < 5; ++k) {
    const Vector v = s_ket(clock, k);
    sum += v * v.adjoint();
  }
  CHECK(max_abs(sum - Matrix::Identity(5, 5)) <= 1e-13);
}

TEST_CASE("shift operator steps the clock back one tick") {
  const ClockSpace clock = build_clock(6, 0.5, 1.0);
  const Matrix u = shift_operator(clock);
  CHECK(max_abs(u.adjoint() * u - Matrix::Identity(6, 6)) <= 1e-12);
  for (int a = 0; a < 6; ++a) {
    const Vector moved = u * time_ket(clock, a);
    const Vector want = time_ket(clock, (a + 5) % 6);
    CHECK((moved - want).norm() <= 1e-11);
  }
  // The adjoint advances the clock.
  const Vector fwd = u.adjoint() * time_ket(clock, 2);
  CHECK((fwd - time_ket(clock, 3)).norm() <= 1e-11);
}

TEST_CASE("weyl pair exchange phase is the primitive root of unity") {
  for (const int n : {2, 4, 5, 16}) {
    const ClockSpace clock = build_clock(n, 0.25, 1.0);
    const WeylPairCheck check = weyl_pair_check(clock);
    const Complex want = std::polar(1.0, 2.0 * kPi / n);
    CHECK(std::abs(check.omega - want) <= 1e-12);
    CHECK(check.residual <= 1e-12);
    CHECK(std::abs(std::pow(check.omega, n) - 1.0) <= 1e-12);
  }
  const ClockSpace two = build_clock(2, 1.0, 1.0);
  CHECK(std::abs(weyl_pair_check(two).omega - Complex(-1.0, 0.0)) <= 1e-12);
}

TEST_CASE("phase operator is the diagonal partner") {
  const ClockSpace clock = build_clock(8, 0.5, 1.1);
  const Matrix v = phase_operator(clock);
  const double step = clock.ladder_step();
  for (int a = 0; a < 8; ++a) {
    const Complex want =
        std::polar(1.0, step * clock.t_values(a) / clock.hbar);
    CHECK(std::abs(v(a, a) - want) <= 1e-13);
  }
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      if (a != b) CHECK(std::abs(v(a, b)) == 0.0);
    }
  }
}

TEST_CASE("gaussian probe is normalized and centered") {
  const ClockSpace clock = build_clock(32, 0.25, 1.0);
  const Vector g = gaussian_probe(clock, 0.0, 1.0);
  CHECK(std::abs(g.norm() - 1.0) <= 1e-12);
  // Peak sits at the grid point closest to the center.
  int peak = 0;
  for (int a = 1; a < 32; ++a) {
    if (std::abs(g(a)) > std::abs(g(peak))) peak = a;
  }
  CHECK(clock.t_values(peak) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(gaussian_probe(clock, 0.0, 0.0), ValidationError);
}

TEST_CASE("commutator defect approaches the canonical value on probes") {
  const ClockSpace clock = build_clock(64, 0.25, 1.0);
  const Vector g = gaussian_probe(clock, clock.t_values(32), 1.0);
  const Complex defect = commutator_defect(clock, g);
  CHECK(std::abs(defect - Complex(-1.0, 0.0)) <= 1e-12);
}

TEST_CASE("commutator defect vanishes identically on time kets") {
  // Diagonal entries of [t_op, s_op] cancel term by term, so a sharp-time
  // probe sees exactly zero. This is the finite-grid face of the trace
  // obstruction: the canonical value lives off the diagonal.
  const ClockSpace clock = build_clock(16, 0.5, 1.0);
  for (int a = 0; a < 16; ++a) {
    CHECK(std::abs(commutator_defect(clock, time_ket(clock, a))) <= 1e-15);
  }
}

TEST_CASE("commutator trace is exactly zero") {
  for (const int n : {2, 7, 32}) {
    const ClockSpace clock = build_clock(n, 0.3, 0.8);
    const Matrix br = lie_bracket(clock.t_op, clock.s_op, clock.hbar);
    CHECK(std::abs(br.trace()) <= 1e-13);
  }
}

TEST_CASE("commutator defect rejects unnormalized probes") {
  const ClockSpace clock = build_clock(8, 0.5, 1.0);
  const Vector bad = 2.0 * time_ket(clock, 0);
  CHECK_THROWS_AS(commutator_defect(clock, bad), ValidationError);
}

TEST_CASE("non unit hbar leaves the probe defect at the canonical value") {
  const ClockSpace clock = build_clock(64, 0.2, 0.7);
  const Vector g = gaussian_probe(clock, 0.0, 0.8);
  CHECK(std::abs(commutator_defect(clock, g) - Complex(-1.0, 0.0)) <= 1e-10);
}
