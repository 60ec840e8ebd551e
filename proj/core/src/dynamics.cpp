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

#include "timeop/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace timeop {

namespace {

void require_same_hbar(const SpaceSystem& space, const ClockSpace& clock,
                       const char* where) {
  if (std::abs(space.hbar - clock.hbar) > 1e-12) {
    throw ContractError(std::string(where) +
                        ": space and clock disagree on hbar (" +
                        std::to_string(space.hbar) + " vs " +
                        std::to_string(clock.hbar) + ")");
  }
}

void require_composite(const Matrix& rho, const SpaceSystem& space,
                       const ClockSpace& clock, const char* where) {
  const Eigen::Index dim = space.dim * clock.n_points;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw DimensionError(std::string(where) + ": operator is " +
                         std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) +
                         ", expected the composite dimension " +
                         std::to_string(dim));
  }
}

void require_levels(const SpaceSystem& space, const std::vector<int>& levels,
                    const char* where) {
  if (levels.empty()) {
    throw ValidationError(std::string(where) +
                          ": at least one level is required");
  }
  std::set<int> seen;
  for (const int l : levels) {
    if (l < 0 || l >= space.dim) {
      throw ValidationError(std::string(where) + ": level " +
                            std::to_string(l) + " outside [0, " +
                            std::to_string(space.dim) + ")");
    }
    if (!seen.insert(l).second) {
      throw ValidationError(std::string(where) + ": level " +
                            std::to_string(l) + " selected twice");
    }
  }
}

}  // namespace

SpaceSystem make_space_system(const Matrix& hamiltonian, double hbar) {
  if (!(hbar > 0.0)) {
    throw ValidationError("make_space_system requires hbar > 0, got " +
                          std::to_string(hbar));
  }
  require_hermitian(hamiltonian, "space hamiltonian");
  if (hamiltonian.rows() < 2) {
    throw DimensionError("make_space_system requires dimension >= 2");
  }
  SpaceSystem space;
  space.dim = hamiltonian.rows();
  space.hbar = hbar;
  space.hamiltonian = hamiltonian;
  space.eigen = hermitian_eigen(hamiltonian);
  const LadderPair qp = build_qp(space.dim, hbar);
  space.q_op = qp.q;
  space.p_op = qp.p;
  return space;
}

SpaceSystem make_diagonal_space(const Eigen::VectorXd& energies, double hbar) {
  if (energies.size() < 2) {
    throw DimensionError("make_diagonal_space requires at least 2 energies");
  }
  Matrix h = energies.cast<Complex>().asDiagonal();
  return make_space_system(h, hbar);
}

SpaceSystem make_oscillator_space(Eigen::Index dim, double hbar) {
  const LadderPair qp = build_qp(dim, hbar);
  const Matrix h = 0.5 * (qp.p * qp.p + qp.q * qp.q);
  return make_space_system(0.5 * (h + h.adjoint()), hbar);
}

Matrix total_hamiltonian(const SpaceSystem& space, const ClockSpace& clock) {
  require_same_hbar(space, clock, "total_hamiltonian");
  const Matrix eye_space = Matrix::Identity(space.dim, space.dim);
  const Matrix eye_clock = Matrix::Identity(clock.n_points, clock.n_points);
  return tensor(space.hamiltonian, eye_clock) + tensor(eye_space, clock.s_op);
}

HeisenbergCheck heisenberg_check(const SpaceSystem& space,
                                 const ClockSpace& clock) {
  require_same_hbar(space, clock, "heisenberg_check");
  const Matrix eye_clock = Matrix::Identity(clock.n_points, clock.n_points);
  const Matrix eye_space = Matrix::Identity(space.dim, space.dim);
  HeisenbergCheck out;
  out.exact_part = max_abs(commutator(tensor(space.hamiltonian, eye_clock),
                                      tensor(eye_space, clock.t_op)));
  // The composite sandwich over (space factor) (x) (clock probe) reduces to
  // the clock-factor sandwich, so it is evaluated there directly.
  const double sigma =
      clock.dt * std::sqrt(static_cast<double>(clock.n_points)) / 2.0;
  const double center =
      0.5 * (clock.t_values(0) + clock.t_values(clock.n_points - 1));
  const Vector probe = gaussian_probe(clock, center, sigma);
  const Matrix comm = lie_bracket(clock.s_op, clock.t_op, clock.hbar);
  out.clock_part = probe.dot(comm * probe);
  return out;
}

double vn_residual(const Matrix& rho, const SpaceSystem& space,
                   const ClockSpace& clock) {
  require_same_hbar(space, clock, "vn_residual");
  require_composite(rho, space, clock, "vn_residual");
  const Matrix eye_space = Matrix::Identity(space.dim, space.dim);
  const Matrix eye_clock = Matrix::Identity(clock.n_points, clock.n_points);
  const Matrix lhs = commutator(tensor(eye_space, clock.s_op), rho);
  const Matrix rhs = commutator(tensor(space.hamiltonian, eye_clock), rho);
  return spectral_norm(lhs - rhs);
}

std::vector<int> assign_levels(const SpaceSystem& space,
                               const ClockSpace& clock,
                               const std::vector<int>& levels, double s_offset,
                               double tol) {
  require_same_hbar(space, clock, "assign_levels");
  require_levels(space, levels, "assign_levels");
  const double step = clock.ladder_step();
  const double origin = space.eigen.values(0);
  std::vector<int> out(levels.size());
  int worst_level = -1;
  double worst_gap = 0.0;
  bool out_of_range = false;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const double target = space.eigen.values(levels[i]) - origin + s_offset;
    const long k = std::lround(target / step) + clock.n_points / 2;
    if (k < 0 || k >= clock.n_points) {
      worst_level = levels[i];
      out_of_range = true;
      break;
    }
    const double gap = std::abs(clock.s_values(static_cast<int>(k)) - target);
    if (gap > worst_gap) {
      worst_gap = gap;
      worst_level = levels[i];
    }
    out[i] = static_cast<int>(k);
  }
  if (out_of_range) {
    throw CommensurationError(
        "level " + std::to_string(worst_level) +
        " falls outside the clock ladder range; enlarge the clock or shrink "
        "dt");
  }
  if (worst_gap > tol) {
    throw CommensurationError(
        "level " + std::to_string(worst_level) +
        " misses the s ladder by " + std::to_string(worst_gap) +
        " (tolerance " + std::to_string(tol) +
        "); the spectrum is incommensurate with this clock");
  }
  return out;
}

SpectralSolution solve_stationary(const SpaceSystem& space,
                                  const ClockSpace& clock,
                                  const Matrix& coeffs,
                                  const std::vector<int>& levels,
                                  double s_offset, double tol) {
  require_same_hbar(space, clock, "solve_stationary");
  require_levels(space, levels, "solve_stationary");
  const Eigen::Index k = static_cast<Eigen::Index>(levels.size());
  if (coeffs.rows() != k || coeffs.cols() != k) {
    throw DimensionError("solve_stationary: coefficient matrix is " +
                         std::to_string(coeffs.rows()) + "x" +
                         std::to_string(coeffs.cols()) + ", expected " +
                         std::to_string(k) + "x" + std::to_string(k));
  }
  const double scale = std::max(1.0, max_abs(coeffs));
  require_hermitian(coeffs, "solve_stationary coefficients", 1e-12 * scale);
  const EigenSystem cs = hermitian_eigen(coeffs, 1e-12 * scale);
  if (cs.values(0) < -1e-10 * scale) {
    throw ValidationError(
        "solve_stationary: coefficient matrix has negative eigenvalue " +
        std::to_string(cs.values(0)));
  }
  if (!(coeffs.trace().real() > 0.0)) {
    throw ValidationError(
        "solve_stationary: coefficient matrix needs a positive trace");
  }

  SpectralSolution sol;
  sol.space = space;
  sol.clock = clock;
  sol.levels = levels;
  sol.s_indices = assign_levels(space, clock, levels, s_offset, tol);
  sol.s_offset = s_offset;
  sol.coeffs = coeffs;
  const Eigen::Index dim = space.dim * clock.n_points;
  sol.rho = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Vector left = tensor(Vector(space.eigen.vectors.col(levels[i])),
                               s_ket(clock, sol.s_indices[i]));
    for (Eigen::Index j = 0; j < k; ++j) {
      const Vector right = tensor(Vector(space.eigen.vectors.col(levels[j])),
                                  s_ket(clock, sol.s_indices[j]));
      sol.rho.noalias() += coeffs(i, j) * (left * right.adjoint());
    }
  }
  return sol;
}

Vector pure_state(const SpaceSystem& space, const ClockSpace& clock,
                  const Vector& amps, const std::vector<int>& levels,
                  double s_offset, double tol) {
  require_same_hbar(space, clock, "pure_state");
  require_levels(space, levels, "pure_state");
  if (amps.size() != static_cast<Eigen::Index>(levels.size())) {
    throw DimensionError("pure_state: " + std::to_string(amps.size()) +
                         " amplitudes for " + std::to_string(levels.size()) +
                         " levels");
  }
  if (std::abs(amps.norm() - 1.0) > 1e-10) {
    throw ValidationError("pure_state amplitudes must be normalized, |norm - 1| = " +
                          std::to_string(std::abs(amps.norm() - 1.0)));
  }
  const std::vector<int> ks = assign_levels(space, clock, levels, s_offset,
                                            tol);
  Vector psi = Vector::Zero(space.dim * clock.n_points);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    psi += amps(static_cast<Eigen::Index>(i)) *
           tensor(Vector(space.eigen.vectors.col(levels[i])),
                  s_ket(clock, ks[i]));
  }
  return psi;
}

double schrodinger_residual(const SpaceSystem& space, const ClockSpace& clock,
                            const Vector& psi, TimeDerivative mode) {
  require_same_hbar(space, clock, "schrodinger_residual");
  const Eigen::Index n = clock.n_points;
  if (psi.size() != space.dim * n) {
    throw DimensionError("schrodinger_residual: state length " +
                         std::to_string(psi.size()) +
                         " is not the composite dimension " +
                         std::to_string(space.dim * n));
  }
  // Columns of the slice matrix are the space vectors psi_a = (I (x) <t_a|).
  Matrix slices(space.dim, n);
  for (Eigen::Index i = 0; i < space.dim; ++i) {
    for (Eigen::Index a = 0; a < n; ++a) {
      slices(i, a) = psi(i * n + a);
    }
  }
  const Matrix h_shifted =
      space.hamiltonian -
      space.eigen.values(0) * Matrix::Identity(space.dim, space.dim);
  const Matrix rhs = h_shifted * slices;
  Matrix lhs(space.dim, n);
  if (mode == TimeDerivative::Spectral) {
    // i*hbar d/dt acts on the t index as the s operator under the clock's
    // sign conventions, so the derivative is exact for ladder states.
    lhs = slices * clock.s_op.transpose();
  } else {
    const Complex coef(0.0, clock.hbar / (2.0 * clock.dt));
    for (Eigen::Index a = 0; a < n; ++a) {
      const Eigen::Index up = (a + 1) % n;
      const Eigen::Index dn = (a + n - 1) % n;
      lhs.col(a) = coef * (slices.col(up) - slices.col(dn));
    }
  }
  return (lhs - rhs).norm();
}

std::vector<double> time_distribution(const Matrix& rho,
                                      const SpaceSystem& space,
                                      const ClockSpace& clock) {
  require_same_hbar(space, clock, "time_distribution");
  require_composite(rho, space, clock, "time_distribution");
  const double scale = std::max(1.0, max_abs(rho));
  require_hermitian(rho, "time_distribution state", 1e-10 * scale);
  const EigenSystem es = hermitian_eigen(rho, 1e-10 * scale);
  if (es.values(0) < -1e-8 * scale) {
    throw ValidationError(
        "time_distribution: state has negative eigenvalue " +
        std::to_string(es.values(0)));
  }
  const double trace = rho.trace().real();
  if (!(trace > 0.0)) {
    throw DegenerateInputError(
        "time_distribution: state trace is not strictly positive");
  }
  const Matrix reduced =
      partial_trace(rho, Factor::Time, space.dim, clock.n_points);
  std::vector<double> out(static_cast<std::size_t>(clock.n_points));
  for (int a = 0; a < clock.n_points; ++a) {
    out[static_cast<std::size_t>(a)] = reduced(a, a).real() / trace;
  }
  return out;
}

double energy_mean(const Matrix& rho, const SpaceSystem& space,
                   const ClockSpace& clock) {
  require_same_hbar(space, clock, "energy_mean");
  require_composite(rho, space, clock, "energy_mean");
  const double trace = rho.trace().real();
  if (!(trace > 0.0)) {
    throw DegenerateInputError(
        "energy_mean: state trace is not strictly positive");
  }
  const Matrix eye_clock = Matrix::Identity(clock.n_points, clock.n_points);
  const Matrix h_total = tensor(space.hamiltonian, eye_clock);
  // Tr(A B) without forming the product.
  const Complex tr = h_total.transpose().cwiseProduct(rho).sum();
  return tr.real() / trace;
}

double sharp_time_residual(const SpaceSystem& space, const ClockSpace& clock,
                           int level, int t_index) {
  require_same_hbar(space, clock, "sharp_time_residual");
  if (level < 0 || level >= space.dim) {
    throw DimensionError("sharp_time_residual: level " +
                         std::to_string(level) + " outside [0, " +
                         std::to_string(space.dim) + ")");
  }
  if (t_index < 0 || t_index >= clock.n_points) {
    throw DimensionError("sharp_time_residual: t_index " +
                         std::to_string(t_index) + " outside [0, " +
                         std::to_string(clock.n_points) + ")");
  }
  const Vector e = space.eigen.vectors.col(level);
  const Vector t = time_ket(clock, t_index);
  const Vector psi = tensor(e, t);
  const Matrix rho = psi * psi.adjoint();
  return vn_residual(rho, space, clock);
}

double sharp_time_lower_bound(const ClockSpace& clock) {
  double min_gap = 0.0;
  for (int k = 0; k < clock.n_points; ++k) {
    for (int l = k + 1; l < clock.n_points; ++l) {
      const double gap = std::abs(clock.s_values(k) - clock.s_values(l));
      if (gap > 0.0 && (min_gap == 0.0 || gap < min_gap)) {
        min_gap = gap;
      }
    }
  }
  const Vector t0 = time_ket(clock, 0);
  const Matrix proj_s = clock.fourier * (t0 * t0.adjoint()) *
                        clock.fourier.adjoint();
  double max_offdiag = 0.0;
  for (int k = 0; k < clock.n_points; ++k) {
    for (int l = 0; l < clock.n_points; ++l) {
      if (k != l) {
        max_offdiag = std::max(max_offdiag, std::abs(proj_s(k, l)));
      }
    }
  }
  return min_gap * max_offdiag;
}

}  // namespace timeop
