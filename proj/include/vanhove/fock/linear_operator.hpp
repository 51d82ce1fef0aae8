#pragma once

#include <Eigen/Sparse>

#include "vanhove/fock/state_vector.hpp"
#include "vanhove/types.hpp"

namespace vanhove::fock {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor, int>;

inline constexpr Real kHermitianTolerance = 1e-13;

/// Sparse complex matrix acting on one OccupationBasis. Immutable; the
/// hermitian / anti-hermitian flags are measured at construction.
class LinearOperator {
 public:
  LinearOperator(BasisPtr basis, SparseMatrix matrix);

  const BasisPtr& basis() const { return basis_; }
  const SparseMatrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return basis_->size(); }

  bool hermitian() const { return hermitian_; }
  bool anti_hermitian() const { return anti_hermitian_; }

  StateVector apply(const StateVector& v) const;
  StateVector operator()(const StateVector& v) const { return apply(v); }
  /// Serial reference path for the same product.
  StateVector apply_serial(const StateVector& v) const;

  LinearOperator adjoint() const;
  ComplexMatrix to_dense() const { return ComplexMatrix(matrix_); }

  LinearOperator operator+(const LinearOperator& other) const;
  LinearOperator operator-(const LinearOperator& other) const;
  LinearOperator operator*(const LinearOperator& other) const;
  LinearOperator operator*(Complex scale) const;

 private:
  BasisPtr basis_;
  SparseMatrix matrix_;
  bool hermitian_ = false;
  bool anti_hermitian_ = false;
};

inline LinearOperator operator*(Complex scale, const LinearOperator& op) { return op * scale; }

LinearOperator identity(const BasisPtr& basis);
LinearOperator zero_operator(const BasisPtr& basis);
LinearOperator from_dense(const BasisPtr& basis, const ComplexMatrix& dense);

/// AB - BA.
LinearOperator commutator(const LinearOperator& a, const LinearOperator& b);

/// max |A_ij - s conj(A_ji)| relative to max |A_ij|; s = +1 hermitian, -1 anti.
Real hermiticity_defect(const SparseMatrix& m, Real sign = 1.0);

}  // namespace vanhove::fock
