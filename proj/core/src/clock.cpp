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

#include "timeop/clock.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace timeop {

namespace {

void check_index(int i, int n, const char* what) {
  if (i < 0 || i >= n) {
    throw DimensionError(std::string(what) + " index " + std::to_string(i) +
                         " outside [0, " + std::to_string(n) + ")");
  }
}

}  // namespace

double ClockSpace::ladder_step() const {
  return 2.0 * std::numbers::pi * hbar / (n_points * dt);
}

ClockSpace build_clock(int n_points, double dt, double hbar) {
  if (n_points < 2) {
    throw ValidationError("build_clock requires n_points >= 2, got " +
                          std::to_string(n_points));
  }
  if (!(dt > 0.0)) {
    throw ValidationError("build_clock requires dt > 0, got " +
                          std::to_string(dt));
  }
  if (!(hbar > 0.0)) {
    throw ValidationError("build_clock requires hbar > 0, got " +
                          std::to_string(hbar));
  }
  ClockSpace clock;
  clock.n_points = n_points;
  clock.dt = dt;
  clock.hbar = hbar;
  const int n = n_points;
  const int half = n / 2;
  clock.t_values.resize(n);
  clock.s_values.resize(n);
  const double step = 2.0 * std::numbers::pi * hbar / (n * dt);
  for (int i = 0; i < n; ++i) {
    clock.t_values(i) = (i - half) * dt;
    clock.s_values(i) = (i - half) * step;
  }
  clock.fourier.resize(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      const double phase = clock.s_values(k) * clock.t_values(a) / hbar;
      clock.fourier(k, a) = norm * std::polar(1.0, phase);
    }
  }
  clock.t_op = clock.t_values.cast<Complex>().asDiagonal();
  Matrix s_raw = clock.fourier.adjoint() *
                 clock.s_values.cast<Complex>().asDiagonal() * clock.fourier;
  // The assembled product is Hermitian up to roundoff; symmetrizing makes
  // the 1e-12 certificate below unconditional.
  clock.s_op = 0.5 * (s_raw + s_raw.adjoint());

  const Matrix eye = Matrix::Identity(n, n);
  if (max_abs(clock.fourier.adjoint() * clock.fourier - eye) > 1e-12) {
    throw Error("build_clock: basis change failed its unitarity certificate");
  }
  require_hermitian(clock.t_op, "clock t_op");
  require_hermitian(clock.s_op, "clock s_op");
  return clock;
}

Vector time_ket(const ClockSpace& clock, int a) {
  check_index(a, clock.n_points, "time_ket");
  Vector v = Vector::Zero(clock.n_points);
  v(a) = 1.0;
  return v;
}

Vector s_ket(const ClockSpace& clock, int k) {
  check_index(k, clock.n_points, "s_ket");
  return clock.fourier.adjoint().col(k);
}

Matrix shift_operator(const ClockSpace& clock) {
  const int n = clock.n_points;
  Matrix phases = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    phases(k, k) = std::polar(1.0, -clock.dt * clock.s_values(k) / clock.hbar);
  }
  return clock.fourier.adjoint() * phases * clock.fourier;
}

Matrix phase_operator(const ClockSpace& clock) {
  const int n = clock.n_points;
  const double step = clock.ladder_step();
  Matrix v = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    v(a, a) = std::polar(1.0, step * clock.t_values(a) / clock.hbar);
  }
  return v;
}

WeylPairCheck weyl_pair_check(const ClockSpace& clock) {
  const Matrix u = shift_operator(clock);
  const Matrix v = phase_operator(clock);
  const Matrix uv = u * v;
  const Matrix vu = v * u;
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  vu.cwiseAbs().maxCoeff(&r, &c);
  WeylPairCheck out;
  out.omega = uv(r, c) / vu(r, c);
  out.residual = max_abs(uv - out.omega * vu);
  return out;
}

Vector gaussian_probe(const ClockSpace& clock, double center, double sigma) {
  if (!(sigma > 0.0)) {
    throw ValidationError("gaussian_probe requires sigma > 0, got " +
                          std::to_string(sigma));
  }
  Vector v(clock.n_points);
  for (int a = 0; a < clock.n_points; ++a) {
    const double x = clock.t_values(a) - center;
    v(a) = std::exp(-x * x / (4.0 * sigma * sigma));
  }
  const double norm = v.norm();
  if (!(norm > 0.0)) {
    throw DegenerateInputError(
        "gaussian_probe: packet has no support on the grid");
  }
  return v / norm;
}

Complex commutator_defect(const ClockSpace& clock, const Vector& probe) {
  if (probe.size() != clock.n_points) {
    throw DimensionError("commutator_defect: probe length " +
                         std::to_string(probe.size()) +
                         " does not match clock size " +
                         std::to_string(clock.n_points));
  }
  if (std::abs(probe.norm() - 1.0) > 1e-10) {
    throw ValidationError("commutator_defect probe must be normalized, |norm - 1| = " +
                          std::to_string(std::abs(probe.norm() - 1.0)));
  }
  const Matrix comm = lie_bracket(clock.t_op, clock.s_op, clock.hbar);
  return probe.dot(comm * probe);
}

}  // namespace timeop
