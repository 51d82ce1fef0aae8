#include "vanhove/fock/state_vector.hpp"

#include <string>

namespace vanhove::fock {

StateVector::StateVector(BasisPtr basis, ComplexVector amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
  if (!basis_) throw InputError("state vector requires a basis");
  if (static_cast<std::size_t>(amplitudes_.size()) != basis_->size()) {
    throw BasisMismatch("state vector length " + std::to_string(amplitudes_.size()) +
                        " does not match basis size " + std::to_string(basis_->size()));
  }
}

void require_same_basis(const OccupationBasis& a, const OccupationBasis& b, const char* what) {
  if (!(a == b)) throw BasisMismatch(std::string(what) + ": operands live on different bases");
}

Complex StateVector::inner(const StateVector& other) const {
  require_same_basis(*basis_, *other.basis_, "inner product");
  return amplitudes_.dot(other.amplitudes_);  // Eigen's dot conjugates the left operand
}

StateVector StateVector::normalized() const {
  const Real n = norm();
  if (n == 0.0) throw InputError("cannot normalize the zero vector");
  return {basis_, amplitudes_ / n};
}

StateVector StateVector::operator+(const StateVector& other) const {
  require_same_basis(*basis_, *other.basis_, "state addition");
  return {basis_, amplitudes_ + other.amplitudes_};
}

StateVector StateVector::operator-(const StateVector& other) const {
  require_same_basis(*basis_, *other.basis_, "state subtraction");
  return {basis_, amplitudes_ - other.amplitudes_};
}

StateVector StateVector::operator*(Complex scale) const { return {basis_, amplitudes_ * scale}; }

int StateVector::support_shell() const {
  int shell = -1;
  for (std::size_t i = 0; i < size(); ++i) {
    if ((*this)[i] != Complex{0.0, 0.0}) shell = std::max(shell, basis_->total(i));
  }
  return shell;
}

StateVector vacuum(const BasisPtr& basis) { return basis_state(basis, 0); }

StateVector zero_state(const BasisPtr& basis) {
  return {basis, ComplexVector::Zero(static_cast<Eigen::Index>(basis->size()))};
}

StateVector basis_state(const BasisPtr& basis, std::size_t index) {
  if (index >= basis->size()) throw InputError("basis state index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(basis->size()));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return {basis, std::move(v)};
}

StateVector random_state(const BasisPtr& basis, std::mt19937_64& rng, int max_shell) {
  const std::size_t limit = max_shell < 0 ? basis->size() : basis->shell_prefix(max_shell);
  std::normal_distribution<Real> gauss(0.0, 1.0);
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(basis->size()));
  for (std::size_t i = 0; i < limit; ++i) {
    const Real re = gauss(rng);
    const Real im = gauss(rng);
    v[static_cast<Eigen::Index>(i)] = Complex{re, im};
  }
  StateVector out{basis, std::move(v)};
  return out.normalized();
}

}  // namespace vanhove::fock
