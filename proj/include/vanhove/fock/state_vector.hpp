#pragma once

#include <memory>
#include <random>

#include "vanhove/fock/occupation_basis.hpp"
#include "vanhove/types.hpp"

namespace vanhove::fock {

using BasisPtr = std::shared_ptr<const OccupationBasis>;

/// Complex amplitudes over an OccupationBasis.
class StateVector {
 public:
  StateVector(BasisPtr basis, ComplexVector amplitudes);

  const BasisPtr& basis() const { return basis_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return static_cast<std::size_t>(amplitudes_.size()); }
  Complex operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }
  Complex& operator[](std::size_t i) { return amplitudes_[static_cast<Eigen::Index>(i)]; }

  /// (this, other), antilinear in `this`.
  Complex inner(const StateVector& other) const;
  Real norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;

  StateVector operator+(const StateVector& other) const;
  StateVector operator-(const StateVector& other) const;
  StateVector operator*(Complex scale) const;

  /// Largest total excitation carrying a nonzero amplitude (-1 for the zero vector).
  int support_shell() const;

 private:
  BasisPtr basis_;
  ComplexVector amplitudes_;
};

inline StateVector operator*(Complex scale, const StateVector& v) { return v * scale; }

void require_same_basis(const OccupationBasis& a, const OccupationBasis& b, const char* what);

StateVector vacuum(const BasisPtr& basis);
StateVector zero_state(const BasisPtr& basis);
StateVector basis_state(const BasisPtr& basis, std::size_t index);

/// Gaussian random amplitudes on states with total excitation <= max_shell,
/// normalized to 1. A negative max_shell means the whole basis.
StateVector random_state(const BasisPtr& basis, std::mt19937_64& rng, int max_shell = -1);

}  // namespace vanhove::fock
