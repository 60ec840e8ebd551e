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

#include "timeop/weylprod.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace timeop {

namespace {

// Enumerating every ordering costs 2^(m+n) matrix products; beyond this the
// realization is no longer a sensible dense computation.
constexpr int kMaxTotalDegree = 16;

void require_degrees(int m, int n, const char* where) {
  if (m < 0 || n < 0) {
    throw ValidationError(std::string(where) + ": degrees must be nonnegative, got (" +
                          std::to_string(m) + ", " + std::to_string(n) + ")");
  }
  if (m + n > kMaxTotalDegree) {
    throw ValidationError(std::string(where) + ": total degree " +
                          std::to_string(m + n) + " exceeds cap " +
                          std::to_string(kMaxTotalDegree));
  }
}

void require_same_hbar(const PolyOp& a, const PolyOp& b, const char* where) {
  if (a.hbar != b.hbar) {
    throw ContractError(std::string(where) + ": operands carry different hbar (" +
                        std::to_string(a.hbar) + " vs " +
                        std::to_string(b.hbar) + ")");
  }
}

}  // namespace

PolyOp& PolyOp::add(int m, int n, Complex c) {
  require_degrees(m, n, "PolyOp::add");
  if (c == Complex(0.0, 0.0)) {
    terms.erase({m, n});
    return *this;
  }
  auto [it, inserted] = terms.try_emplace({m, n}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) {
      terms.erase(it);
    }
  }
  return *this;
}

PolyOp PolyOp::monomial(int m, int n, Complex c, double hbar) {
  if (!(hbar > 0.0)) {
    throw ValidationError("PolyOp::monomial requires hbar > 0, got " +
                          std::to_string(hbar));
  }
  PolyOp p;
  p.hbar = hbar;
  p.add(m, n, c);
  return p;
}

int PolyOp::total_degree() const {
  int deg = 0;
  for (const auto& [key, coeff] : terms) {
    deg = std::max(deg, key.first + key.second);
  }
  return deg;
}

Matrix weyl_monomial(int m, int n, Eigen::Index dim, double hbar) {
  require_degrees(m, n, "weyl_monomial");
  if (dim < 2) {
    throw DimensionError("weyl_monomial requires dim >= 2, got " +
                         std::to_string(dim));
  }
  const int total = m + n;
  if (total == 0) {
    return Matrix::Identity(dim, dim);
  }
  const LadderPair qp = build_qp(dim, hbar);
  Matrix acc = Matrix::Zero(dim, dim);
  unsigned long orderings = 0;
  for (unsigned mask = 0; mask < (1u << total); ++mask) {
    if (std::popcount(mask) != m) {
      continue;
    }
    Matrix prod = Matrix::Identity(dim, dim);
    for (int slot = 0; slot < total; ++slot) {
      prod = prod * (((mask >> slot) & 1u) != 0 ? qp.q : qp.p);
    }
    acc += prod;
    ++orderings;
  }
  return acc / static_cast<double>(orderings);
}

Matrix realize(const PolyOp& poly, Eigen::Index dim) {
  if (dim < 2) {
    throw DimensionError("realize requires dim >= 2, got " +
                         std::to_string(dim));
  }
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& [key, coeff] : poly.terms) {
    out += coeff * weyl_monomial(key.first, key.second, dim, poly.hbar);
  }
  return out;
}

PolyOp poly_derivative(const PolyOp& poly, Var var) {
  PolyOp out;
  out.hbar = poly.hbar;
  for (const auto& [key, coeff] : poly.terms) {
    const auto [m, n] = key;
    if (var == Var::Q) {
      if (m > 0) {
        out.add(m - 1, n, coeff * static_cast<double>(m));
      }
    } else {
      if (n > 0) {
        out.add(m, n - 1, coeff * static_cast<double>(n));
      }
    }
  }
  return out;
}

PolyOp symbol_product(const PolyOp& a, const PolyOp& b) {
  require_same_hbar(a, b, "symbol_product");
  PolyOp out;
  out.hbar = a.hbar;
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) {
      out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    }
  }
  return out;
}

CorrespondenceResult correspondence_residual(const PolyOp& h,
                                             const PolyOp& rho,
                                             Eigen::Index dim) {
  require_same_hbar(h, rho, "correspondence_residual");
  const int margin = h.total_degree() + rho.total_degree();
  const Eigen::Index block = dim - margin;
  if (block < 1) {
    throw ValidationError(
        "correspondence_residual: dim " + std::to_string(dim) +
        " leaves no trusted leading block for total degree " +
        std::to_string(margin));
  }
  const Matrix lhs = lie_bracket(realize(h, dim), realize(rho, dim), h.hbar);
  const PolyOp bracket_pp = symbol_product(poly_derivative(h, Var::Q),
                                           poly_derivative(rho, Var::P));
  const PolyOp bracket_pq = symbol_product(poly_derivative(h, Var::P),
                                           poly_derivative(rho, Var::Q));
  const Matrix rhs = realize(bracket_pp, dim) - realize(bracket_pq, dim);
  const Matrix lhs_block = lhs.topLeftCorner(block, block);
  const Matrix rhs_block = rhs.topLeftCorner(block, block);
  CorrespondenceResult out;
  out.block = block;
  out.residual = max_abs(lhs_block - rhs_block);
  out.scale = std::max({1.0, max_abs(lhs_block), max_abs(rhs_block)});
  return out;
}

}  // namespace timeop
