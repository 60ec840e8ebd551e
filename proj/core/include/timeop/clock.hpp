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

#pragma once

#include <Eigen/Dense>

#include "timeop/hilbert.hpp"

namespace timeop {

/// A finite N-point clock: a time operator t with an evenly spaced spectrum
/// and its conjugate s, built so that exp(+(i/hbar)*dt*s) advances the clock
/// by one tick (cyclically) and s generates translations of t.
///
/// Conventions, fixed once here and relied on everywhere else:
///  - t_values[a] = (a - N/2) * dt         (integer division, so the grid is
///    centered and contains t = 0 for even N);
///  - s_values[k] = (k - N/2) * 2*pi*hbar/(N*dt), the conjugate ladder;
///  - fourier(k, a) = exp(+(i/hbar) * s_k * t_a) / sqrt(N) maps the t basis
///    to the s basis, so s_op = fourier^dagger * diag(s_values) * fourier.
///
/// With these signs a state of sharp s = s_k has t-amplitudes proportional
/// to exp(-(i/hbar) * s_k * t_a), the phase a stationary level of energy E'
/// acquires over time t_a.
struct ClockSpace {
  int n_points = 0;
  double dt = 0.0;
  double hbar = 0.0;
  Eigen::VectorXd t_values;
  Eigen::VectorXd s_values;
  Matrix fourier;  ///< Unitary change of basis, t basis to s basis.
  Matrix t_op;     ///< diag(t_values).
  Matrix s_op;     ///< Hermitian conjugate-variable operator.

  /// Spacing of the s ladder, 2*pi*hbar / (n_points * dt).
  double ladder_step() const;
};

/// Constructs the clock. Requires n_points >= 2, dt > 0, hbar > 0.
/// The returned operators are certified: fourier unitary to 1e-12, t_op and
/// s_op Hermitian to 1e-12 (s_op is explicitly symmetrized after assembly so
/// the certificate is a property of the object, not of roundoff luck).
ClockSpace build_clock(int n_points, double dt, double hbar);

/// Basis ket of sharp time t_values[a].
Vector time_ket(const ClockSpace& clock, int a);

/// Basis ket of sharp conjugate value s_values[k]; its t-representation is
/// (1/sqrt(N)) exp(-(i/hbar) * s_k * t_a).
Vector s_ket(const ClockSpace& clock, int k);

/// One-tick shift operator exp(-(i/hbar) * dt * s_op). Under the sign
/// conventions above it maps |t_a> to |t_{a-1}> cyclically; its inverse
/// (equivalently exp(+(i/hbar) * dt * s_op)) advances the clock.
Matrix shift_operator(const ClockSpace& clock);

/// Phase operator exp(+(i/hbar) * ladder_step * t_op), diagonal in the t
/// basis. Together with shift_operator it forms a finite Weyl pair.
Matrix phase_operator(const ClockSpace& clock);

/// Result of probing the Weyl exchange relation U V = omega V U.
struct WeylPairCheck {
  Complex omega;    ///< Measured exchange phase, an N-th root of unity.
  double residual;  ///< max |U V - omega V U| after dividing out omega.
};

/// Measures the exchange phase of (shift_operator, phase_operator) from the
/// largest entry of V U and reports how exactly U V = omega V U holds.
WeylPairCheck weyl_pair_check(const ClockSpace& clock);

/// Normalized Gaussian wave packet on the clock, amplitudes proportional to
/// exp(-(t_a - center)^2 / (4 sigma^2)), so sigma is the position spread of
/// the continuum packet it discretizes. Requires sigma > 0.
Vector gaussian_probe(const ClockSpace& clock, double center, double sigma);

/// Expectation value <probe| (1/(i*hbar)) [t_op, s_op] |probe>. The probe
/// must be normalized to 1e-10. On states supported away from the grid edges
/// the value approaches -1, the canonical conjugacy defect; the trace of the
/// same commutator is exactly zero, which is the finite-dimensional
/// obstruction to the relation holding as an operator identity.
Complex commutator_defect(const ClockSpace& clock, const Vector& probe);

}  // namespace timeop
