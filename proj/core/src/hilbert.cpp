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

#include "timeop/hilbert.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

namespace timeop {

namespace {

void require_square(const Matrix& a, const char* label) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(label) + " must be square, got " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(where) + ": operand shapes " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + " differ");
  }
}

}  // namespace

double max_abs(const Matrix& a) {
  if (a.size() == 0) {
    return 0.0;
  }
  return a.cwiseAbs().maxCoeff();
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) {
    return 0.0;
  }
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) {
    return false;
  }
  return max_abs(a - a.adjoint()) <= tol;
}

void require_hermitian(const Matrix& a, const char* label, double tol) {
  require_square(a, label);
  const double defect = max_abs(a - a.adjoint());
  if (!(defect <= tol)) {
    throw ValidationError(std::string(label) + " must be Hermitian: max |A - A^dagger| = " +
                          std::to_string(defect) + " exceeds " +
                          std::to_string(tol));
  }
}

Matrix tensor(const Matrix& a, const Matrix& b, Eigen::Index max_dim) {
  require_square(a, "tensor factor a");
  require_square(b, "tensor factor b");
  const Eigen::Index da = a.rows();
  const Eigen::Index db = b.rows();
  if (da == 0 || db == 0) {
    throw DimensionError("tensor factors must be nonempty");
  }
  if (da > max_dim / db) {
    throw DimensionError("tensor product dimension " + std::to_string(da) +
                         "*" + std::to_string(db) + " exceeds cap " +
                         std::to_string(max_dim));
  }
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a(i, j) * b;
    }
  }
  return out;
}

Vector tensor(const Vector& a, const Vector& b, Eigen::Index max_dim) {
  const Eigen::Index da = a.size();
  const Eigen::Index db = b.size();
  if (da == 0 || db == 0) {
    throw DimensionError("tensor factors must be nonempty");
  }
  if (da > max_dim / db) {
    throw DimensionError("tensor product dimension " + std::to_string(da) +
                         "*" + std::to_string(db) + " exceeds cap " +
                         std::to_string(max_dim));
  }
  Vector out(da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    out.segment(i * db, db) = a(i) * b;
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_square(a, "commutator operand a");
  require_square(b, "commutator operand b");
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Matrix lie_bracket(const Matrix& a, const Matrix& b, double hbar) {
  if (!(hbar > 0.0)) {
    throw ValidationError("lie_bracket requires hbar > 0, got " +
                          std::to_string(hbar));
  }
  return commutator(a, b) / Complex(0.0, hbar);
}

EigenSystem hermitian_eigen(const Matrix& h, double tol) {
  require_hermitian(h, "hermitian_eigen input", tol);
  // Symmetrize before factorizing so caller roundoff at the tolerance level
  // cannot produce spurious imaginary parts.
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("hermitian_eigen: eigensolver failed to converge");
  }
  EigenSystem out;
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  return out;
}

LadderPair build_qp(Eigen::Index dim, double hbar) {
  if (dim < 2) {
    throw DimensionError("build_qp requires dim >= 2, got " +
                         std::to_string(dim));
  }
  if (!(hbar > 0.0)) {
    throw ValidationError("build_qp requires hbar > 0, got " +
                          std::to_string(hbar));
  }
  Matrix lower = Matrix::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) {
    lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  const double c = std::sqrt(hbar / 2.0);
  LadderPair out;
  out.q = c * (lower + lower.adjoint());
  out.p = Complex(0.0, 1.0) * c * (lower.adjoint() - lower);
  return out;
}

Matrix partial_trace(const Matrix& rho, Factor keep, Eigen::Index dim_space,
                     Eigen::Index dim_time) {
  require_square(rho, "partial_trace input");
  if (dim_space < 1 || dim_time < 1 ||
      rho.rows() != dim_space * dim_time) {
    throw DimensionError("partial_trace: operator dimension " +
                         std::to_string(rho.rows()) + " is not " +
                         std::to_string(dim_space) + "*" +
                         std::to_string(dim_time));
  }
  if (keep == Factor::Space) {
    Matrix out = Matrix::Zero(dim_space, dim_space);
    for (Eigen::Index i = 0; i < dim_space; ++i) {
      for (Eigen::Index i2 = 0; i2 < dim_space; ++i2) {
        Complex acc = 0.0;
        for (Eigen::Index j = 0; j < dim_time; ++j) {
          acc += rho(i * dim_time + j, i2 * dim_time + j);
        }
        out(i, i2) = acc;
      }
    }
    return out;
  }
  Matrix out = Matrix::Zero(dim_time, dim_time);
  for (Eigen::Index j = 0; j < dim_time; ++j) {
    for (Eigen::Index j2 = 0; j2 < dim_time; ++j2) {
      Complex acc = 0.0;
      for (Eigen::Index i = 0; i < dim_space; ++i) {
        acc += rho(i * dim_time + j, i * dim_time + j2);
      }
      out(j, j2) = acc;
    }
  }
  return out;
}

}  // namespace timeop
