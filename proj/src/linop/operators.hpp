// Copyright 2026 The eitcool authors
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

#include "common.hpp"

namespace eitcool::linop {

// Operators at or below this dimension are stored dense; larger ones sparse.
inline constexpr int kDenseStorageLimit = 64;

// Square operator on a Hilbert space. Storage (dense vs sparse) is chosen
// from the dimension at construction and is an implementation detail;
// arithmetic works uniformly across both.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  explicit OperatorMatrix(const DenseMatrix& m);
  explicit OperatorMatrix(const SparseMatrix& m);

  static OperatorMatrix identity(int dim);
  static OperatorMatrix zero(int dim);
  static OperatorMatrix from_triplets(int dim, const std::vector<Triplet>& entries);

  int dim() const { return dim_; }
  bool stored_dense() const { return dense_storage_; }

  DenseMatrix dense() const;
  SparseMatrix sparse() const;

  cdouble trace() const;
  cdouble coeff(int i, int j) const;
  OperatorMatrix adjoint() const;
  OperatorMatrix transpose() const;
  OperatorMatrix conjugate() const;
  // max_ij |M_ij - conj(M_ji)|
  double hermiticity_defect() const;
  double norm_inf() const;

  Vector apply(const Vector& v) const;

  OperatorMatrix& operator+=(const OperatorMatrix& other);
  OperatorMatrix& operator-=(const OperatorMatrix& other);
  OperatorMatrix& operator*=(cdouble scale);

  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator*(cdouble s, OperatorMatrix a) { return a *= s; }
  friend OperatorMatrix operator*(OperatorMatrix a, cdouble s) { return a *= s; }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

 private:
  int dim_ = 0;
  bool dense_storage_ = true;
  DenseMatrix dense_;
  SparseMatrix sparse_;
};

struct FockOperators {
  OperatorMatrix annihilation;  // b|n> = sqrt(n)|n-1>
  OperatorMatrix creation;      // b^dag|n> = sqrt(n+1)|n+1>, truncated at n_max
  OperatorMatrix number;
};

// Truncated harmonic-oscillator ladder operators on {|0>,...,|n_max>}.
FockOperators fock_operators(int n_max);

// Kronecker product; index convention matches column-stacking vectorization,
// i.e. tensor(A, B) acts as A on the slow index and B on the fast index.
OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);

// Linear map on vectorized density matrices (column stacking), held sparse
// regardless of size. op_dim is the Hilbert-space dimension it acts on.
class SuperOperator {
 public:
  SuperOperator() = default;
  explicit SuperOperator(int op_dim);
  SuperOperator(int op_dim, SparseMatrix m);

  int op_dim() const { return op_dim_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  const SparseMatrix& matrix() const { return matrix_; }

  Vector apply(const Vector& rho_vec) const { return matrix_ * rho_vec; }

  SuperOperator& operator+=(const SuperOperator& other);
  friend SuperOperator operator+(SuperOperator a, const SuperOperator& b) { return a += b; }

 private:
  int op_dim_ = 0;
  SparseMatrix matrix_;
};

// vec(rho) with column stacking: stack(rho)(j*dim + i) = rho(i, j).
Vector stack(const DenseMatrix& rho);
DenseMatrix unstack(const Vector& rho_vec, int dim);

// -i [H, .] as a superoperator.
SuperOperator hamiltonian_liouvillian(const OperatorMatrix& h);

// Dissipator (rate/2) * (2 A rho A^dag - A^dag A rho - rho A^dag A)
// in vectorized form. rate must be >= 0.
SuperOperator lindblad_term(double rate, const OperatorMatrix& a);

}  // namespace eitcool::linop
