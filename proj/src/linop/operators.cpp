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

#include "linop/operators.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace eitcool::linop {

namespace {

bool use_dense(int dim) { return dim <= kDenseStorageLimit; }

}  // namespace

OperatorMatrix::OperatorMatrix(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw ConfigError("OperatorMatrix requires a square matrix");
  dim_ = static_cast<int>(m.rows());
  dense_storage_ = use_dense(dim_);
  if (dense_storage_) {
    dense_ = m;
  } else {
    sparse_ = m.sparseView();
    sparse_.makeCompressed();
  }
}

OperatorMatrix::OperatorMatrix(const SparseMatrix& m) {
  if (m.rows() != m.cols()) throw ConfigError("OperatorMatrix requires a square matrix");
  dim_ = static_cast<int>(m.rows());
  dense_storage_ = use_dense(dim_);
  if (dense_storage_) {
    dense_ = DenseMatrix(m);
  } else {
    sparse_ = m;
    sparse_.makeCompressed();
  }
}

OperatorMatrix OperatorMatrix::identity(int dim) {
  if (use_dense(dim)) return OperatorMatrix(DenseMatrix::Identity(dim, dim));
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return OperatorMatrix(id);
}

OperatorMatrix OperatorMatrix::zero(int dim) {
  if (use_dense(dim)) return OperatorMatrix(DenseMatrix::Zero(dim, dim));
  return OperatorMatrix(SparseMatrix(dim, dim));
}

OperatorMatrix OperatorMatrix::from_triplets(int dim, const std::vector<Triplet>& entries) {
  SparseMatrix m(dim, dim);
  m.setFromTriplets(entries.begin(), entries.end());
  return OperatorMatrix(m);
}

DenseMatrix OperatorMatrix::dense() const {
  if (dense_storage_) return dense_;
  return DenseMatrix(sparse_);
}

SparseMatrix OperatorMatrix::sparse() const {
  if (!dense_storage_) return sparse_;
  SparseMatrix s = dense_.sparseView();
  s.makeCompressed();
  return s;
}

cdouble OperatorMatrix::trace() const {
  if (dense_storage_) return dense_.trace();
  cdouble t = 0.0;
  for (int k = 0; k < sparse_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(sparse_, k); it; ++it)
      if (it.row() == it.col()) t += it.value();
  return t;
}

cdouble OperatorMatrix::coeff(int i, int j) const {
  return dense_storage_ ? dense_(i, j) : sparse_.coeff(i, j);
}

OperatorMatrix OperatorMatrix::adjoint() const {
  if (dense_storage_) return OperatorMatrix(DenseMatrix(dense_.adjoint()));
  return OperatorMatrix(SparseMatrix(sparse_.adjoint()));
}

OperatorMatrix OperatorMatrix::transpose() const {
  if (dense_storage_) return OperatorMatrix(DenseMatrix(dense_.transpose()));
  return OperatorMatrix(SparseMatrix(sparse_.transpose()));
}

OperatorMatrix OperatorMatrix::conjugate() const {
  if (dense_storage_) return OperatorMatrix(DenseMatrix(dense_.conjugate()));
  return OperatorMatrix(SparseMatrix(sparse_.conjugate()));
}

double OperatorMatrix::hermiticity_defect() const {
  if (dense_storage_) return (dense_ - dense_.adjoint()).cwiseAbs().maxCoeff();
  SparseMatrix d = sparse_ - SparseMatrix(sparse_.adjoint());
  double defect = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(d, k); it; ++it)
      defect = std::max(defect, std::abs(it.value()));
  return defect;
}

double OperatorMatrix::norm_inf() const {
  if (dim_ == 0) return 0.0;
  if (dense_storage_) return dense_.cwiseAbs().maxCoeff();
  double m = 0.0;
  for (int k = 0; k < sparse_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(sparse_, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

Vector OperatorMatrix::apply(const Vector& v) const {
  return dense_storage_ ? Vector(dense_ * v) : Vector(sparse_ * v);
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
  if (dim_ != other.dim_) throw ConfigError("operator dimension mismatch in +");
  if (dense_storage_) {
    dense_ += other.dense();
  } else {
    sparse_ = sparse_ + other.sparse();
    sparse_.makeCompressed();
  }
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
  if (dim_ != other.dim_) throw ConfigError("operator dimension mismatch in -");
  if (dense_storage_) {
    dense_ -= other.dense();
  } else {
    sparse_ = sparse_ - other.sparse();
    sparse_.makeCompressed();
  }
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(cdouble scale) {
  if (dense_storage_) {
    dense_ *= scale;
  } else {
    sparse_ *= scale;
  }
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim_ != b.dim_) throw ConfigError("operator dimension mismatch in *");
  if (a.dense_storage_) return OperatorMatrix(DenseMatrix(a.dense() * b.dense()));
  return OperatorMatrix(SparseMatrix(a.sparse() * b.sparse()));
}

FockOperators fock_operators(int n_max) {
  if (n_max < 1) throw ConfigError("fock_operators requires n_max >= 1");
  const int dim = n_max + 1;
  std::vector<Triplet> lower, num;
  lower.reserve(n_max);
  num.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    lower.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
    num.emplace_back(n, n, static_cast<double>(n));
  }
  FockOperators ops;
  ops.annihilation = OperatorMatrix::from_triplets(dim, lower);
  ops.creation = ops.annihilation.adjoint();
  ops.number = OperatorMatrix::from_triplets(dim, num);
  return ops;
}

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
  SparseMatrix out = Eigen::kroneckerProduct(a.sparse(), b.sparse()).eval();
  return OperatorMatrix(out);
}

SuperOperator::SuperOperator(int op_dim)
    : op_dim_(op_dim), matrix_(static_cast<Eigen::Index>(op_dim) * op_dim,
                               static_cast<Eigen::Index>(op_dim) * op_dim) {}

SuperOperator::SuperOperator(int op_dim, SparseMatrix m) : op_dim_(op_dim), matrix_(std::move(m)) {
  const Eigen::Index expected = static_cast<Eigen::Index>(op_dim) * op_dim;
  if (matrix_.rows() != expected || matrix_.cols() != expected)
    throw ConfigError("SuperOperator matrix has wrong dimension");
  matrix_.makeCompressed();
}

SuperOperator& SuperOperator::operator+=(const SuperOperator& other) {
  if (op_dim_ != other.op_dim_) throw ConfigError("superoperator dimension mismatch in +");
  matrix_ = matrix_ + other.matrix_;
  matrix_.makeCompressed();
  return *this;
}

Vector stack(const DenseMatrix& rho) {
  // Eigen matrices are column-major, so a flat view is already the
  // column-stacked vector.
  return Eigen::Map<const Vector>(rho.data(), rho.size());
}

DenseMatrix unstack(const Vector& rho_vec, int dim) {
  if (rho_vec.size() != static_cast<Eigen::Index>(dim) * dim)
    throw ConfigError("unstack: vector length does not match dim^2");
  return Eigen::Map<const DenseMatrix>(rho_vec.data(), dim, dim);
}

SuperOperator hamiltonian_liouvillian(const OperatorMatrix& h) {
  const int d = h.dim();
  SparseMatrix hs = h.sparse();
  SparseMatrix id(d, d);
  id.setIdentity();
  // vec(H rho - rho H) = (I (x) H - H^T (x) I) vec(rho)
  SparseMatrix left = Eigen::kroneckerProduct(id, hs).eval();
  SparseMatrix right = Eigen::kroneckerProduct(SparseMatrix(hs.transpose()), id).eval();
  SparseMatrix out = (-kI) * (left - right);
  return SuperOperator(d, std::move(out));
}

SuperOperator lindblad_term(double rate, const OperatorMatrix& a) {
  if (rate < 0.0) throw ConfigError("lindblad_term requires rate >= 0");
  const int d = a.dim();
  SparseMatrix as = a.sparse();
  SparseMatrix adag_a = (SparseMatrix(as.adjoint()) * as).eval();
  SparseMatrix id(d, d);
  id.setIdentity();
  SparseMatrix sandwich = Eigen::kroneckerProduct(SparseMatrix(as.conjugate()), as).eval();
  SparseMatrix left = Eigen::kroneckerProduct(id, adag_a).eval();
  SparseMatrix right = Eigen::kroneckerProduct(SparseMatrix(adag_a.transpose()), id).eval();
  SparseMatrix out = (0.5 * rate) * (2.0 * sandwich - left - right);
  return SuperOperator(d, std::move(out));
}

}  // namespace eitcool::linop
