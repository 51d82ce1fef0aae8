#include "vanhove/fock/linear_operator.hpp"

#include <algorithm>
#include <cmath>

#include "vanhove/kernels/kernels.hpp"

namespace vanhove::fock {

namespace {

kernels::CsrView csr(const SparseMatrix& m) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto nnz = static_cast<std::size_t>(m.nonZeros());
  return {rows, static_cast<std::size_t>(m.cols()), {m.outerIndexPtr(), rows + 1}, {m.innerIndexPtr(), nnz},
          {m.valuePtr(), nnz}};
}

Real max_abs(const SparseMatrix& m) {
  Real mx = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) mx = std::max(mx, std::abs(it.value()));
  }
  return mx;
}

}  // namespace

Real hermiticity_defect(const SparseMatrix& m, Real sign) {
  const Real scale = max_abs(m);
  if (scale == 0.0) return 0.0;
  SparseMatrix adj = m.adjoint();
  SparseMatrix diff = m - sign * adj;
  return max_abs(diff) / scale;
}

LinearOperator::LinearOperator(BasisPtr basis, SparseMatrix matrix)
    : basis_(std::move(basis)), matrix_(std::move(matrix)) {
  if (!basis_) throw InputError("operator requires a basis");
  const auto n = static_cast<Eigen::Index>(basis_->size());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw BasisMismatch("operator matrix shape does not match basis size");
  }
  matrix_.makeCompressed();
  hermitian_ = hermiticity_defect(matrix_, 1.0) <= kHermitianTolerance;
  anti_hermitian_ = hermiticity_defect(matrix_, -1.0) <= kHermitianTolerance;
}

StateVector LinearOperator::apply(const StateVector& v) const {
  require_same_basis(*basis_, *v.basis(), "operator application");
  ComplexVector out(v.amplitudes().size());
  kernels::spmv_parallel(csr(matrix_), {v.amplitudes().data(), v.size()},
                         {out.data(), static_cast<std::size_t>(out.size())});
  return {basis_, std::move(out)};
}

StateVector LinearOperator::apply_serial(const StateVector& v) const {
  require_same_basis(*basis_, *v.basis(), "operator application");
  ComplexVector out(v.amplitudes().size());
  kernels::spmv_serial(csr(matrix_), {v.amplitudes().data(), v.size()},
                       {out.data(), static_cast<std::size_t>(out.size())});
  return {basis_, std::move(out)};
}

LinearOperator LinearOperator::adjoint() const { return {basis_, SparseMatrix(matrix_.adjoint())}; }

LinearOperator LinearOperator::operator+(const LinearOperator& other) const {
  require_same_basis(*basis_, *other.basis_, "operator sum");
  return {basis_, SparseMatrix(matrix_ + other.matrix_)};
}

LinearOperator LinearOperator::operator-(const LinearOperator& other) const {
  require_same_basis(*basis_, *other.basis_, "operator difference");
  return {basis_, SparseMatrix(matrix_ - other.matrix_)};
}

LinearOperator LinearOperator::operator*(const LinearOperator& other) const {
  require_same_basis(*basis_, *other.basis_, "operator product");
  return {basis_, SparseMatrix(matrix_ * other.matrix_)};
}

LinearOperator LinearOperator::operator*(Complex scale) const { return {basis_, SparseMatrix(matrix_ * scale)}; }

LinearOperator identity(const BasisPtr& basis) {
  const auto n = static_cast<Eigen::Index>(basis->size());
  SparseMatrix m(n, n);
  m.setIdentity();
  return {basis, std::move(m)};
}

LinearOperator zero_operator(const BasisPtr& basis) {
  const auto n = static_cast<Eigen::Index>(basis->size());
  return {basis, SparseMatrix(n, n)};
}

LinearOperator from_dense(const BasisPtr& basis, const ComplexMatrix& dense) {
  return {basis, SparseMatrix(dense.sparseView(Complex{1.0, 0.0}, 0.0))};
}

LinearOperator commutator(const LinearOperator& a, const LinearOperator& b) {
  require_same_basis(*a.basis(), *b.basis(), "commutator");
  return a * b - b * a;
}

}  // namespace vanhove::fock
