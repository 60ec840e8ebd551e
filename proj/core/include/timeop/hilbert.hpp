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
#include <complex>

#include "timeop/errors.hpp"

namespace timeop {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Absolute tolerance used when certifying that a matrix is Hermitian.
inline constexpr double kHermitianTol = 1e-12;

/// Default cap on the dimension of a tensor-product space. Guards against
/// accidentally requesting a dense composite operator that cannot be stored.
inline constexpr Eigen::Index kMaxCompositeDim = 4096;

/// Largest entry magnitude of a matrix (zero for an empty matrix).
double max_abs(const Matrix& a);

/// Largest singular value of a matrix.
double spectral_norm(const Matrix& a);

/// True when max |a - a^dagger| <= tol.
bool is_hermitian(const Matrix& a, double tol = kHermitianTol);

/// Throws ValidationError when the matrix is not square and Hermitian
/// within tol. The label names the offending operand in the message.
void require_hermitian(const Matrix& a, const char* label,
                       double tol = kHermitianTol);

/// Kronecker product a (x) b with the first factor outermost: the entry at
/// composite row i*rows(b)+k, column j*cols(b)+l equals a(i,j)*b(k,l).
/// Throws DimensionError when the composite dimension would exceed max_dim.
Matrix tensor(const Matrix& a, const Matrix& b,
              Eigen::Index max_dim = kMaxCompositeDim);

/// Kronecker product of column vectors, first factor outermost.
Vector tensor(const Vector& a, const Vector& b,
              Eigen::Index max_dim = kMaxCompositeDim);

/// Commutator a*b - b*a. Operands must be square and of equal dimension.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Scaled commutator (1/(i*hbar)) [a, b]. For Hermitian operands the result
/// is Hermitian again, which makes it the natural bracket for observables.
Matrix lie_bracket(const Matrix& a, const Matrix& b, double hbar);

/// Spectral decomposition of a Hermitian matrix.
struct EigenSystem {
  Eigen::VectorXd values;  ///< Eigenvalues in ascending order.
  Matrix vectors;          ///< Orthonormal eigenvectors, one per column.
};

/// Diagonalizes a Hermitian matrix. The input is certified Hermitian within
/// tol first and symmetrized before factorization so roundoff in the caller
/// cannot leak into complex eigenvalues.
EigenSystem hermitian_eigen(const Matrix& h, double tol = kHermitianTol);

/// Position and momentum realized on a truncated oscillator ladder.
struct LadderPair {
  Matrix q;
  Matrix p;
};

/// Builds q = sqrt(hbar/2)(a + a^dagger), p = i*sqrt(hbar/2)(a^dagger - a)
/// from the truncated ladder operator a[n-1, n] = sqrt(n) on a dim-level
/// space. Both are Hermitian; their commutator equals i*hbar*I except in the
/// last diagonal entry, where truncation deposits the compensating defect.
LadderPair build_qp(Eigen::Index dim, double hbar);

/// Which factor of a two-factor tensor product to keep.
enum class Factor { Space, Time };

/// Partial trace of an operator on a dim_space x dim_time product space,
/// using the index convention of tensor(): composite index i*dim_time + j.
/// Keeps the selected factor and traces out the other.
Matrix partial_trace(const Matrix& rho, Factor keep, Eigen::Index dim_space,
                     Eigen::Index dim_time);

}  // namespace timeop
