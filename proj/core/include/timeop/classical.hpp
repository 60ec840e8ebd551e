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

#include <array>
#include <cstddef>
#include <functional>
#include <ostream>
#include <vector>

#include "timeop/errors.hpp"

namespace timeop {

/// Axes of the extended phase space, in storage order. The flat index of a
/// node is (((iq * np + ip) * nt + it) * ns + is, so S varies fastest.
enum class Axis { Q = 0, P = 1, T = 2, S = 3 };

/// How grid derivatives are taken along an axis.
enum class DerivativeBackend {
  CentralDifference,  ///< Second-order stencils, one-sided at open edges.
  Spectral,           ///< Exact trigonometric differentiation; periodic only.
};

/// One axis of a rectangular grid.
struct AxisSpec {
  double min = 0.0;
  int n = 0;            ///< Node count, at least 4.
  double step = 0.0;    ///< Spacing, positive.
  bool periodic = false;

  double coord(int i) const { return min + step * i; }
};

/// A rectangular grid over (q, p, t, s).
struct GridSpec {
  std::array<AxisSpec, 4> axes;

  const AxisSpec& axis(Axis a) const {
    return axes[static_cast<std::size_t>(a)];
  }
  std::size_t node_count() const;
  std::size_t flat_index(int iq, int ip, int it, int is) const;
};

/// Throws ValidationError unless every axis has n >= 4 and step > 0.
void validate_grid(const GridSpec& grid);

/// A real scalar field sampled on a GridSpec, with the backend its
/// derivatives should use.
struct PhaseField {
  GridSpec grid;
  DerivativeBackend backend = DerivativeBackend::CentralDifference;
  std::vector<double> values;

  double& at(int iq, int ip, int it, int is) {
    return values[grid.flat_index(iq, ip, it, is)];
  }
  double at(int iq, int ip, int it, int is) const {
    return values[grid.flat_index(iq, ip, it, is)];
  }
};

/// Samples f(q, p, t, s) on the grid.
PhaseField make_field(const GridSpec& grid,
                      const std::function<double(double, double, double,
                                                 double)>& f,
                      DerivativeBackend backend =
                          DerivativeBackend::CentralDifference);

/// Partial derivative of the field along one axis, on the same grid.
/// CentralDifference uses the second-order centered stencil in the interior
/// and second-order one-sided stencils at non-periodic edges; Spectral
/// requires the axis to be periodic and zeroes the unmatched highest mode
/// for even node counts so real fields stay real.
PhaseField derivative(const PhaseField& f, Axis axis);

/// Mechanical bracket da/dq db/dp - da/dp db/dq, nodewise.
PhaseField bracket_qp(const PhaseField& a, const PhaseField& b);

/// Clock-sector bracket with the opposite orientation,
/// -da/dt db/ds + da/ds db/dt, nodewise.
PhaseField bracket_ts(const PhaseField& a, const PhaseField& b);

/// Full extended bracket bracket_qp - bracket_ts. The relative sign between
/// the sectors is what lets a Hamiltonian of the form h(q, p) + s generate
/// dynamics in which t keeps step with the evolution parameter.
PhaseField bracket_w(const PhaseField& a, const PhaseField& b);

/// Max of |bracket_w(h, rho)| over interior nodes (one layer in from every
/// non-periodic edge). Validates first that h has the generator form
/// h(q, p) + s, meaning dh/ds = 1 and dh/dt = 0 on the interior to within
/// 1e-8 * (1 + max |h|); otherwise throws ContractError. For the
/// CentralDifference backend the computation streams over nodes without
/// materializing any derivative field, so the largest convergence-study
/// grids need no memory beyond the two operands.
double liouville_residual(const PhaseField& h, const PhaseField& rho);

/// Hamiltonians with known flows, used to transport initial data.
enum class SpaceHamiltonian {
  FreeParticle,        ///< h = p^2 / 2.
  HarmonicOscillator,  ///< h = (p^2 + q^2) / 2.
};

/// A sampled initial density on the (q, p) plane, bilinearly interpolated
/// when read between nodes and zero outside its rectangle.
struct PlaneField {
  AxisSpec q_axis;
  AxisSpec p_axis;
  std::vector<double> values;  ///< Row-major, p fastest.

  double& at(int iq, int ip) { return values[iq * p_axis.n + ip]; }
  double at(int iq, int ip) const { return values[iq * p_axis.n + ip]; }
  double sample(double q, double p) const;
};

/// Samples f(q, p) on the plane grid.
PlaneField make_plane_field(const AxisSpec& q_axis, const AxisSpec& p_axis,
                            const std::function<double(double, double)>& f);

/// A discrete trajectory of the chosen Hamiltonian flow.
struct Trajectory {
  std::vector<double> t;
  std::vector<double> q;
  std::vector<double> p;
};

/// Integrates (q0, p0) forward with the symplectic leapfrog scheme for
/// n_steps steps of size dt (dt may be negative to run backwards).
Trajectory integrate_trajectory(SpaceHamiltonian which, double q0, double p0,
                                double dt, int n_steps);

/// Builds the transported density rho(q, p, t, s) =
/// rho0(flow_{-(t - t_min)}(q, p)) * g(s), where g is a normalized Gaussian
/// of width sigma_s centered at s0. Each node is pulled back along the flow
/// with the same leapfrog step as integrate_trajectory, using the t axis
/// spacing, so the construction error is second order in the grid spacing.
/// Requires sigma_s >= 2 * (s axis step) so the mollified profile is
/// resolved.
PhaseField build_solution(SpaceHamiltonian which, const PlaneField& rho0,
                          double s0, double sigma_s, const GridSpec& grid,
                          DerivativeBackend backend =
                              DerivativeBackend::CentralDifference);

/// Same construction with the initial density given in closed form. The
/// pulled-back points are evaluated exactly instead of interpolated, so
/// convergence studies see pure scheme error with no interpolation floor.
PhaseField build_solution(SpaceHamiltonian which,
                          const std::function<double(double, double)>& rho0,
                          double s0, double sigma_s, const GridSpec& grid,
                          DerivativeBackend backend =
                              DerivativeBackend::CentralDifference);

/// Mean of the observable against the density on one fixed-t slice:
/// sum(obs * rho) / sum(rho) over (q, p, s) nodes. Throws
/// DegenerateInputError when the slice mass is not strictly positive and
/// finite. Fields must share a grid.
double mean_value(const PhaseField& obs, const PhaseField& rho, int t_index);

/// Writes the field as CSV: a header row "q,p,t,s,value", then one node per
/// line in storage order, coordinates and value with round-trip precision.
void write_csv(const PhaseField& f, std::ostream& out);

}  // namespace timeop
