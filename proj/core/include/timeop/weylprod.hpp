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

#include <map>
#include <utility>

#include "timeop/hilbert.hpp"

namespace timeop {

/// A phase-space variable of a polynomial symbol.
enum class Var { Q, P };

/// A polynomial in the commuting symbols q and p, together with the value of
/// hbar its operator realization should use. Terms map (q degree, p degree)
/// to a complex coefficient; zero coefficients are pruned on insertion.
struct PolyOp {
  std::map<std::pair<int, int>, Complex> terms;
  double hbar = 1.0;

  /// Adds c * q^m p^n to the polynomial. Degrees must be nonnegative.
  PolyOp& add(int m, int n, Complex c);

  /// Single-term convenience constructor.
  static PolyOp monomial(int m, int n, Complex c, double hbar);

  /// Largest m+n over stored terms; zero for the empty polynomial.
  int total_degree() const;
};

/// Weyl-symmetrized operator realization of the monomial q^m p^n on a
/// dim-level truncated ladder: the average of all (m+n choose m) orderings
/// of m copies of the q operator and n copies of the p operator.
Matrix weyl_monomial(int m, int n, Eigen::Index dim, double hbar);

/// Operator realization of a polynomial, term by term via weyl_monomial.
Matrix realize(const PolyOp& poly, Eigen::Index dim);

/// Formal partial derivative of the symbol with respect to q or p.
PolyOp poly_derivative(const PolyOp& poly, Var var);

/// Product of two polynomials as commuting symbols.
PolyOp symbol_product(const PolyOp& a, const PolyOp& b);

/// Outcome of comparing the scaled commutator of two realized polynomials
/// against the realized Poisson bracket of their symbols.
struct CorrespondenceResult {
  double residual;  ///< max entry of LHS-RHS on the trusted block.
  double scale;     ///< max(1, entry scale of LHS and RHS on that block).
  Eigen::Index block;  ///< Side length of the trusted block compared.
};

/// Compares (1/(i*hbar))[realize(h), realize(rho)] against the realization
/// of {h, rho} = dh/dq drho/dp - dh/dp drho/dq, where the bracket is formed
/// from commuting symbols and then Weyl-ordered.
///
/// The ladder operators are banded, so truncating at dim levels corrupts a
/// matrix entry (i, j) only when a product can reach through the cut, which
/// for total polynomial degree g requires max(i, j) + g >= dim. Low indices
/// are a hard floor in the untruncated model as well, so the leading
/// principal block of side dim - (deg h + deg rho) is exact on both sides
/// and is the block compared. Requires the block to be nonempty and both
/// operands to share hbar.
///
/// For factors of total degree <= 2 each the two sides agree identically
/// (the quantum bracket of at-most-quadratic observables is classical); for
/// higher degrees a genuine hbar^2 discrepancy appears and is returned.
CorrespondenceResult correspondence_residual(const PolyOp& h,
                                             const PolyOp& rho,
                                             Eigen::Index dim);

}  // namespace timeop
