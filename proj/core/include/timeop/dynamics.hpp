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

#include <vector>

#include "timeop/clock.hpp"
#include "timeop/hilbert.hpp"

namespace timeop {

/// A finite-dimensional mechanical system: a Hermitian Hamiltonian, its
/// spectral decomposition, and the ladder-realized q and p for reporting.
struct SpaceSystem {
  Eigen::Index dim = 0;
  double hbar = 0.0;
  Matrix hamiltonian;
  EigenSystem eigen;  ///< Ascending eigenvalues, orthonormal eigenvectors.
  Matrix q_op;
  Matrix p_op;
};

/// Wraps a Hermitian Hamiltonian into a SpaceSystem. Throws ValidationError
/// when the matrix is not Hermitian within 1e-12.
SpaceSystem make_space_system(const Matrix& hamiltonian, double hbar);

/// Diagonal Hamiltonian with the given energies (any order; the spectral
/// data is still sorted ascending).
SpaceSystem make_diagonal_space(const Eigen::VectorXd& energies, double hbar);

/// Truncated oscillator (p^2 + q^2) / 2 on a dim-level ladder. Its low
/// spectrum matches hbar * (n + 1/2) exactly; truncation replaces only the
/// top diagonal entry, which shows up as one intruder eigenvalue.
SpaceSystem make_oscillator_space(Eigen::Index dim, double hbar);

/// Total generator on the product space: hamiltonian (x) I + I (x) s_op.
/// Throws ContractError when space and clock disagree on hbar.
Matrix total_hamiltonian(const SpaceSystem& space, const ClockSpace& clock);

/// Diagnostics for the composite conjugacy relation
/// (1/(i*hbar)) [total_hamiltonian, I (x) t_op].
struct HeisenbergCheck {
  /// max |[hamiltonian (x) I, I (x) t_op]|; identically zero because the
  /// factors act on different slots.
  double exact_part;
  /// <probe| (1/(i*hbar)) [s_op, t_op] |probe> for a mid-grid Gaussian probe
  /// of width dt * sqrt(N) / 2. Equals the composite-space sandwich for any
  /// normalized space factor and approaches +1 on fine clocks.
  Complex clock_part;
};

HeisenbergCheck heisenberg_check(const SpaceSystem& space,
                                 const ClockSpace& clock);

/// Largest singular value of [I (x) s_op, rho] - [hamiltonian (x) I, rho],
/// the defect of the stationarity equation on the product space. Zero
/// exactly on the spectral solutions produced by solve_stationary.
double vn_residual(const Matrix& rho, const SpaceSystem& space,
                   const ClockSpace& clock);

/// Placement of energy levels onto the clock's s ladder. Level i of the
/// selection is assigned the ladder index whose s value is nearest to
/// E_i - E_0 + s_offset, with E_0 the ground eigenvalue of the system.
/// Throws CommensurationError, naming the worst level, when a target lies
/// outside the ladder range or misses its nearest rung by more than tol.
std::vector<int> assign_levels(const SpaceSystem& space,
                               const ClockSpace& clock,
                               const std::vector<int>& levels, double s_offset,
                               double tol = 1e-9);

/// A stationary solution rho = sum_{ij} c_ij |E_i><E_j| (x) |s_i><s_j| of
/// the composite dynamics, together with the data that produced it.
struct SpectralSolution {
  SpaceSystem space;
  ClockSpace clock;
  std::vector<int> levels;      ///< Selected eigenvalue indices.
  std::vector<int> s_indices;   ///< Ladder index per selected level.
  double s_offset = 0.0;
  Matrix coeffs;                ///< Hermitian PSD coefficients over levels.
  Matrix rho;                   ///< The realized composite operator.
};

/// Builds the spectral solution for the selected levels and coefficient
/// matrix. Requirements: levels distinct and in range; coeffs Hermitian
/// within 1e-12 * scale, positive semidefinite within -1e-10 * scale, with
/// positive trace; every level commensurate with the clock (assign_levels).
/// The s_offset translates every assignment up the ladder; it changes the
/// operator by a clock translation but leaves the stationarity residual,
/// the time distribution, and the energy mean unchanged.
SpectralSolution solve_stationary(const SpaceSystem& space,
                                  const ClockSpace& clock,
                                  const Matrix& coeffs,
                                  const std::vector<int>& levels,
                                  double s_offset = 0.0, double tol = 1e-9);

/// Composite vector sum_i amps_i |E_i> (x) |s_i> with the same ladder
/// assignment as solve_stationary. Amplitudes must be normalized to 1e-10.
Vector pure_state(const SpaceSystem& space, const ClockSpace& clock,
                  const Vector& amps, const std::vector<int>& levels,
                  double s_offset = 0.0, double tol = 1e-9);

/// How the time derivative in schrodinger_residual is realized.
enum class TimeDerivative {
  Spectral,  ///< Apply s_op on the clock factor; exact for ladder states.
  Central2,  ///< Second-order centered difference in t, cyclic.
};

/// Treats a composite state as a t-indexed family of space vectors
/// psi_a = (I (x) <t_a|) psi and returns the l2 norm over all slices of
/// i*hbar d/dt psi_a - (H - E_0) psi_a, with the energy origin shifted to
/// the ground eigenvalue to match the ladder assignment. For a pure_state
/// with the Spectral derivative this vanishes identically; with Central2 it
/// converges at second order in dt as the clock is refined at fixed span.
double schrodinger_residual(const SpaceSystem& space, const ClockSpace& clock,
                            const Vector& psi,
                            TimeDerivative mode = TimeDerivative::Spectral);

/// Probability of reading clock time t_a from a composite density operator:
/// the diagonal of the space-traced operator, normalized by the trace.
/// Validates that rho is Hermitian within 1e-10 * scale and positive
/// semidefinite within -1e-8 * scale, with positive trace.
std::vector<double> time_distribution(const Matrix& rho,
                                      const SpaceSystem& space,
                                      const ClockSpace& clock);

/// Tr((hamiltonian (x) I) rho) / Tr(rho), computed on the composite space.
/// Throws DegenerateInputError when the trace is not strictly positive.
double energy_mean(const Matrix& rho, const SpaceSystem& space,
                   const ClockSpace& clock);

/// vn_residual of the sharp-reading candidate |E_level><E_level| (x)
/// |t_a><t_a|. Never zero: a sharp clock reading is incompatible with the
/// stationarity equation on every finite clock.
double sharp_time_residual(const SpaceSystem& space, const ClockSpace& clock,
                           int level, int t_index);

/// Computed floor for sharp_time_residual: the smallest nonzero gap of the
/// s ladder times the largest off-diagonal magnitude of a sharp-t projector
/// in the s basis (1/N on the uniform clock). Derived from the matrices,
/// not hard-coded.
double sharp_time_lower_bound(const ClockSpace& clock);

}  // namespace timeop
