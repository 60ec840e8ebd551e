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

#include "timeop/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace timeop {

namespace {

// Hard cap on grid size so a typo cannot request more field memory than the
// process can ever serve.
constexpr std::size_t kMaxNodes = std::size_t{1} << 27;

std::size_t axis_index(Axis a) { return static_cast<std::size_t>(a); }

std::array<std::size_t, 4> grid_strides(const GridSpec& g) {
  const std::size_t ns = static_cast<std::size_t>(g.axes[3].n);
  const std::size_t nt = static_cast<std::size_t>(g.axes[2].n);
  const std::size_t np = static_cast<std::size_t>(g.axes[1].n);
  return {np * nt * ns, nt * ns, ns, 1};
}

bool same_axis(const AxisSpec& a, const AxisSpec& b) {
  return a.min == b.min && a.n == b.n && a.step == b.step &&
         a.periodic == b.periodic;
}

void require_same_layout(const PhaseField& a, const PhaseField& b,
                         const char* where) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!same_axis(a.grid.axes[i], b.grid.axes[i])) {
      throw DimensionError(std::string(where) +
                           ": fields sampled on different grids (axis " +
                           std::to_string(i) + " differs)");
    }
  }
  if (a.backend != b.backend) {
    throw ContractError(std::string(where) +
                        ": fields carry different derivative backends");
  }
}

// Dense real derivative matrix for exact trigonometric differentiation on a
// uniform periodic axis. For even n the unmatched highest mode is dropped,
// which keeps the matrix antisymmetric and real fields real.
std::vector<double> spectral_matrix(int n, double step) {
  const double span = n * step;
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int m = 0; m < n; ++m) {
    const int freq = (m <= n / 2) ? m : m - n;
    if (n % 2 == 0 && m == n / 2) {
      continue;
    }
    const double wavenumber = 2.0 * std::numbers::pi * freq / span;
    for (int diff = 0; diff < n; ++diff) {
      const double val = -(wavenumber / n) *
                         std::sin(2.0 * std::numbers::pi * freq * diff / n);
      for (int j = 0; j < n; ++j) {
        const int l = (j - diff + n) % n;
        d[static_cast<std::size_t>(j) * n + l] += val;
      }
    }
  }
  return d;
}

double stencil_central(const std::vector<double>& v, std::size_t idx,
                       std::size_t stride, int i, int n, double step,
                       bool periodic) {
  if (periodic) {
    const std::size_t up = idx + (i + 1 == n ? stride - stride * n : stride);
    const std::size_t dn = idx - (i == 0 ? stride - stride * n : stride);
    return (v[up] - v[dn]) / (2.0 * step);
  }
  if (i == 0) {
    return (-3.0 * v[idx] + 4.0 * v[idx + stride] - v[idx + 2 * stride]) /
           (2.0 * step);
  }
  if (i + 1 == n) {
    return (3.0 * v[idx] - 4.0 * v[idx - stride] + v[idx - 2 * stride]) /
           (2.0 * step);
  }
  return (v[idx + stride] - v[idx - stride]) / (2.0 * step);
}

// One symplectic kick-drift-kick step of the chosen flow; dt may be
// negative.
void leapfrog_step(SpaceHamiltonian which, double dt, double& q, double& p) {
  const auto force = [which](double x) {
    return which == SpaceHamiltonian::HarmonicOscillator ? -x : 0.0;
  };
  double ph = p + 0.5 * dt * force(q);
  q += dt * ph;
  p = ph + 0.5 * dt * force(q);
}

}  // namespace

std::size_t GridSpec::node_count() const {
  std::size_t n = 1;
  for (const auto& ax : axes) {
    n *= static_cast<std::size_t>(ax.n);
  }
  return n;
}

std::size_t GridSpec::flat_index(int iq, int ip, int it, int is) const {
  const auto st = grid_strides(*this);
  return static_cast<std::size_t>(iq) * st[0] +
         static_cast<std::size_t>(ip) * st[1] +
         static_cast<std::size_t>(it) * st[2] + static_cast<std::size_t>(is);
}

void validate_grid(const GridSpec& grid) {
  static const char* names[4] = {"q", "p", "t", "s"};
  std::size_t nodes = 1;
  for (std::size_t i = 0; i < 4; ++i) {
    const AxisSpec& ax = grid.axes[i];
    if (ax.n < 4) {
      throw ValidationError(std::string("grid axis ") + names[i] +
                            " needs at least 4 nodes, got " +
                            std::to_string(ax.n));
    }
    if (!(ax.step > 0.0)) {
      throw ValidationError(std::string("grid axis ") + names[i] +
                            " needs a positive step");
    }
    if (nodes > kMaxNodes / static_cast<std::size_t>(ax.n)) {
      throw ValidationError("grid exceeds the node cap of " +
                            std::to_string(kMaxNodes));
    }
    nodes *= static_cast<std::size_t>(ax.n);
  }
}

PhaseField make_field(const GridSpec& grid,
                      const std::function<double(double, double, double,
                                                 double)>& f,
                      DerivativeBackend backend) {
  validate_grid(grid);
  PhaseField field;
  field.grid = grid;
  field.backend = backend;
  field.values.resize(grid.node_count());
  const auto& ax = grid.axes;
  std::size_t idx = 0;
  for (int iq = 0; iq < ax[0].n; ++iq) {
    const double q = ax[0].coord(iq);
    for (int ip = 0; ip < ax[1].n; ++ip) {
      const double p = ax[1].coord(ip);
      for (int it = 0; it < ax[2].n; ++it) {
        const double t = ax[2].coord(it);
        for (int is = 0; is < ax[3].n; ++is) {
          field.values[idx++] = f(q, p, t, ax[3].coord(is));
        }
      }
    }
  }
  return field;
}

PhaseField derivative(const PhaseField& f, Axis axis) {
  validate_grid(f.grid);
  const std::size_t ai = axis_index(axis);
  const AxisSpec& ax = f.grid.axes[ai];
  const auto strides = grid_strides(f.grid);
  const std::size_t stride = strides[ai];
  const std::size_t total = f.grid.node_count();
  if (f.values.size() != total) {
    throw DimensionError("derivative: field storage does not match its grid");
  }
  PhaseField out;
  out.grid = f.grid;
  out.backend = f.backend;
  out.values.assign(total, 0.0);

  if (f.backend == DerivativeBackend::CentralDifference) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      const int i = static_cast<int>((idx / stride) % ax.n);
      out.values[idx] = stencil_central(f.values, idx, stride, i, ax.n,
                                        ax.step, ax.periodic);
    }
    return out;
  }

  if (!ax.periodic) {
    throw ValidationError(
        "derivative: the spectral backend needs a periodic axis");
  }
  const std::vector<double> d = spectral_matrix(ax.n, ax.step);
  for (std::size_t base = 0; base < total; ++base) {
    if ((base / stride) % ax.n != 0) {
      continue;
    }
    for (int j = 0; j < ax.n; ++j) {
      double acc = 0.0;
      const double* row = d.data() + static_cast<std::size_t>(j) * ax.n;
      for (int l = 0; l < ax.n; ++l) {
        acc += row[l] * f.values[base + static_cast<std::size_t>(l) * stride];
      }
      out.values[base + static_cast<std::size_t>(j) * stride] = acc;
    }
  }
  return out;
}

PhaseField bracket_qp(const PhaseField& a, const PhaseField& b) {
  require_same_layout(a, b, "bracket_qp");
  const PhaseField daq = derivative(a, Axis::Q);
  const PhaseField dap = derivative(a, Axis::P);
  const PhaseField dbq = derivative(b, Axis::Q);
  const PhaseField dbp = derivative(b, Axis::P);
  PhaseField out;
  out.grid = a.grid;
  out.backend = a.backend;
  out.values.resize(a.values.size());
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = daq.values[i] * dbp.values[i] -
                    dap.values[i] * dbq.values[i];
  }
  return out;
}

PhaseField bracket_ts(const PhaseField& a, const PhaseField& b) {
  require_same_layout(a, b, "bracket_ts");
  const PhaseField dat = derivative(a, Axis::T);
  const PhaseField das = derivative(a, Axis::S);
  const PhaseField dbt = derivative(b, Axis::T);
  const PhaseField dbs = derivative(b, Axis::S);
  PhaseField out;
  out.grid = a.grid;
  out.backend = a.backend;
  out.values.resize(a.values.size());
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = -dat.values[i] * dbs.values[i] +
                    das.values[i] * dbt.values[i];
  }
  return out;
}

PhaseField bracket_w(const PhaseField& a, const PhaseField& b) {
  PhaseField out = bracket_qp(a, b);
  const PhaseField clock = bracket_ts(a, b);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] -= clock.values[i];
  }
  return out;
}

double liouville_residual(const PhaseField& h, const PhaseField& rho) {
  require_same_layout(h, rho, "liouville_residual");
  validate_grid(h.grid);
  const auto& ax = h.grid.axes;
  const auto st = grid_strides(h.grid);
  const auto interior_lo = [&](std::size_t i) {
    return ax[i].periodic ? 0 : 1;
  };
  const auto interior_hi = [&](std::size_t i) {
    return ax[i].periodic ? ax[i].n : ax[i].n - 1;
  };

  double h_scale = 0.0;
  for (const double v : h.values) {
    h_scale = std::max(h_scale, std::abs(v));
  }
  const double form_tol = 1e-8 * (1.0 + h_scale);

  if (h.backend == DerivativeBackend::Spectral) {
    const PhaseField dhs = derivative(h, Axis::S);
    const PhaseField dht = derivative(h, Axis::T);
    double worst = 0.0;
    for (std::size_t i = 0; i < dhs.values.size(); ++i) {
      worst = std::max({worst, std::abs(dhs.values[i] - 1.0),
                        std::abs(dht.values[i])});
    }
    if (worst > form_tol) {
      throw ContractError(
          "liouville_residual: generator is not of the form h(q, p) + s "
          "(defect " + std::to_string(worst) + ")");
    }
    const PhaseField bw = bracket_w(h, rho);
    double residual = 0.0;
    for (const double v : bw.values) {
      residual = std::max(residual, std::abs(v));
    }
    return residual;
  }

  // Central-difference path streams nodewise so the largest study grids need
  // no derivative fields. First certify the generator form on the interior,
  // then take the bracket max over the same nodes.
  const auto partial = [&](const std::vector<double>& v, std::size_t idx,
                           std::size_t axis, int i) {
    return stencil_central(v, idx, st[axis], i, ax[axis].n, ax[axis].step,
                           ax[axis].periodic);
  };

  double form_defect = 0.0;
  double residual = 0.0;
  for (int iq = interior_lo(0); iq < interior_hi(0); ++iq) {
    for (int ip = interior_lo(1); ip < interior_hi(1); ++ip) {
      for (int it = interior_lo(2); it < interior_hi(2); ++it) {
        const std::size_t row = static_cast<std::size_t>(iq) * st[0] +
                                static_cast<std::size_t>(ip) * st[1] +
                                static_cast<std::size_t>(it) * st[2];
        for (int is = interior_lo(3); is < interior_hi(3); ++is) {
          const std::size_t idx = row + static_cast<std::size_t>(is);
          const double hs = partial(h.values, idx, 3, is);
          const double ht = partial(h.values, idx, 2, it);
          form_defect = std::max({form_defect, std::abs(hs - 1.0),
                                  std::abs(ht)});
          const double hq = partial(h.values, idx, 0, iq);
          const double hp = partial(h.values, idx, 1, ip);
          const double rq = partial(rho.values, idx, 0, iq);
          const double rp = partial(rho.values, idx, 1, ip);
          const double rt = partial(rho.values, idx, 2, it);
          const double rs = partial(rho.values, idx, 3, is);
          const double bw = hq * rp - hp * rq + ht * rs - hs * rt;
          residual = std::max(residual, std::abs(bw));
        }
      }
    }
  }
  if (form_defect > form_tol) {
    throw ContractError(
        "liouville_residual: generator is not of the form h(q, p) + s "
        "(defect " + std::to_string(form_defect) + ")");
  }
  return residual;
}

double PlaneField::sample(double q, double p) const {
  const double x = (q - q_axis.min) / q_axis.step;
  const double y = (p - p_axis.min) / p_axis.step;
  if (x < 0.0 || y < 0.0 || x > q_axis.n - 1.0 || y > p_axis.n - 1.0) {
    return 0.0;
  }
  const int i0 = std::min(static_cast<int>(x), q_axis.n - 2);
  const int j0 = std::min(static_cast<int>(y), p_axis.n - 2);
  const double fx = x - i0;
  const double fy = y - j0;
  const double v00 = at(i0, j0);
  const double v01 = at(i0, j0 + 1);
  const double v10 = at(i0 + 1, j0);
  const double v11 = at(i0 + 1, j0 + 1);
  return (1.0 - fx) * ((1.0 - fy) * v00 + fy * v01) +
         fx * ((1.0 - fy) * v10 + fy * v11);
}

PlaneField make_plane_field(const AxisSpec& q_axis, const AxisSpec& p_axis,
                            const std::function<double(double, double)>& f) {
  if (q_axis.n < 2 || p_axis.n < 2 || !(q_axis.step > 0.0) ||
      !(p_axis.step > 0.0)) {
    throw ValidationError(
        "make_plane_field needs at least 2 nodes and a positive step per axis");
  }
  PlaneField out;
  out.q_axis = q_axis;
  out.p_axis = p_axis;
  out.values.resize(static_cast<std::size_t>(q_axis.n) * p_axis.n);
  for (int i = 0; i < q_axis.n; ++i) {
    for (int j = 0; j < p_axis.n; ++j) {
      out.at(i, j) = f(q_axis.coord(i), p_axis.coord(j));
    }
  }
  return out;
}

Trajectory integrate_trajectory(SpaceHamiltonian which, double q0, double p0,
                                double dt, int n_steps) {
  if (n_steps < 0) {
    throw ValidationError("integrate_trajectory requires n_steps >= 0");
  }
  if (dt == 0.0 && n_steps > 0) {
    throw ValidationError("integrate_trajectory requires a nonzero step");
  }
  Trajectory traj;
  traj.t.reserve(n_steps + 1);
  traj.q.reserve(n_steps + 1);
  traj.p.reserve(n_steps + 1);
  double q = q0;
  double p = p0;
  for (int k = 0; k <= n_steps; ++k) {
    traj.t.push_back(k * dt);
    traj.q.push_back(q);
    traj.p.push_back(p);
    if (k < n_steps) {
      leapfrog_step(which, dt, q, p);
    }
  }
  return traj;
}

PhaseField build_solution(SpaceHamiltonian which, const PlaneField& rho0,
                          double s0, double sigma_s, const GridSpec& grid,
                          DerivativeBackend backend) {
  return build_solution(
      which, [&rho0](double q, double p) { return rho0.sample(q, p); }, s0,
      sigma_s, grid, backend);
}

PhaseField build_solution(SpaceHamiltonian which,
                          const std::function<double(double, double)>& rho0,
                          double s0, double sigma_s, const GridSpec& grid,
                          DerivativeBackend backend) {
  validate_grid(grid);
  const AxisSpec& s_ax = grid.axes[3];
  if (!(sigma_s >= 2.0 * s_ax.step)) {
    throw ValidationError(
        "build_solution: sigma_s must be at least twice the s axis step (" +
        std::to_string(sigma_s) + " < " + std::to_string(2.0 * s_ax.step) +
        ")");
  }
  std::vector<double> profile(static_cast<std::size_t>(s_ax.n));
  const double gnorm = 1.0 / (sigma_s * std::sqrt(2.0 * std::numbers::pi));
  for (int is = 0; is < s_ax.n; ++is) {
    const double x = s_ax.coord(is) - s0;
    profile[static_cast<std::size_t>(is)] =
        gnorm * std::exp(-x * x / (2.0 * sigma_s * sigma_s));
  }

  const AxisSpec& q_ax = grid.axes[0];
  const AxisSpec& p_ax = grid.axes[1];
  const AxisSpec& t_ax = grid.axes[2];
  PhaseField out;
  out.grid = grid;
  out.backend = backend;
  out.values.resize(grid.node_count());
  const auto st = grid_strides(grid);
  for (int iq = 0; iq < q_ax.n; ++iq) {
    for (int ip = 0; ip < p_ax.n; ++ip) {
      for (int it = 0; it < t_ax.n; ++it) {
        double q = q_ax.coord(iq);
        double p = p_ax.coord(ip);
        for (int k = 0; k < it; ++k) {
          leapfrog_step(which, -t_ax.step, q, p);
        }
        const double w = rho0(q, p);
        const std::size_t base = static_cast<std::size_t>(iq) * st[0] +
                                 static_cast<std::size_t>(ip) * st[1] +
                                 static_cast<std::size_t>(it) * st[2];
        for (int is = 0; is < s_ax.n; ++is) {
          out.values[base + static_cast<std::size_t>(is)] =
              w * profile[static_cast<std::size_t>(is)];
        }
      }
    }
  }
  return out;
}

double mean_value(const PhaseField& obs, const PhaseField& rho, int t_index) {
  require_same_layout(obs, rho, "mean_value");
  const auto& ax = obs.grid.axes;
  if (t_index < 0 || t_index >= ax[2].n) {
    throw DimensionError("mean_value: t_index " + std::to_string(t_index) +
                         " outside [0, " + std::to_string(ax[2].n) + ")");
  }
  const auto st = grid_strides(obs.grid);
  double num = 0.0;
  double mass = 0.0;
  for (int iq = 0; iq < ax[0].n; ++iq) {
    for (int ip = 0; ip < ax[1].n; ++ip) {
      const std::size_t base = static_cast<std::size_t>(iq) * st[0] +
                               static_cast<std::size_t>(ip) * st[1] +
                               static_cast<std::size_t>(t_index) * st[2];
      for (int is = 0; is < ax[3].n; ++is) {
        const double r = rho.values[base + static_cast<std::size_t>(is)];
        num += obs.values[base + static_cast<std::size_t>(is)] * r;
        mass += r;
      }
    }
  }
  if (!std::isfinite(mass) || !(mass > 0.0)) {
    throw DegenerateInputError(
        "mean_value: slice mass is not strictly positive");
  }
  return num / mass;
}

void write_csv(const PhaseField& f, std::ostream& out) {
  validate_grid(f.grid);
  out << "q,p,t,s,value\n";
  const auto& ax = f.grid.axes;
  char line[200];
  std::size_t idx = 0;
  for (int iq = 0; iq < ax[0].n; ++iq) {
    for (int ip = 0; ip < ax[1].n; ++ip) {
      for (int it = 0; it < ax[2].n; ++it) {
        for (int is = 0; is < ax[3].n; ++is) {
          std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                        ax[0].coord(iq), ax[1].coord(ip), ax[2].coord(it),
                        ax[3].coord(is), f.values[idx++]);
          out << line;
        }
      }
    }
  }
}

}  // namespace timeop
