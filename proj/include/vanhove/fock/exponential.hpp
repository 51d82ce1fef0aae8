#pragma once

#include <optional>

#include "vanhove/fock/linear_operator.hpp"

namespace vanhove::fock {

struct ExponentialConfig {
  std::size_t dense_threshold = 4000;  // full eigendecomposition at or below this dimension
  int krylov_dimension = 30;
  Real krylov_tolerance = 1e-13;       // local error per substep, relative to the vector norm
};

/// Spectral decomposition A = V diag(lambda) V^dag of a hermitian operator.
class HermitianEigensystem {
 public:
  explicit HermitianEigensystem(const LinearOperator& op);

  const RealVector& eigenvalues() const { return eigenvalues_; }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }

  /// e^{-itA} as a dense matrix.
  ComplexMatrix exponential(Real t) const;
  /// e^{-itA} v.
  ComplexVector apply_exponential(Real t, const ComplexVector& v) const;
  /// V diag(lambda) V^dag, for round-trip checks.
  ComplexMatrix reconstruct() const;

 private:
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
};

/// e^{-itA} for hermitian A. Throws ContractViolation for non-hermitian
/// generators and CapacityError above the dense threshold (use Propagator).
LinearOperator unitary_exponential(const LinearOperator& generator, Real t, const ExponentialConfig& config = {});

/// e^{B} for anti-hermitian B, computed as e^{-i (iB)}.
LinearOperator anti_hermitian_exponential(const LinearOperator& generator, const ExponentialConfig& config = {});

/// e^{-itA} v by Lanczos projection with adaptive substeps; A hermitian.
ComplexVector krylov_apply(const LinearOperator& generator, Real t, const ComplexVector& v,
                           const ExponentialConfig& config = {});

/// e^{-itA} applied to vectors; dense spectral cache at or below the
/// threshold, Krylov above it.
class Propagator {
 public:
  explicit Propagator(LinearOperator generator, const ExponentialConfig& config = {});

  StateVector apply(const StateVector& v, Real t) const;
  bool dense() const { return eigensystem_.has_value(); }
  const LinearOperator& generator() const { return generator_; }
  const std::optional<HermitianEigensystem>& eigensystem() const { return eigensystem_; }

 private:
  LinearOperator generator_;
  ExponentialConfig config_;
  std::optional<HermitianEigensystem> eigensystem_;
};

}  // namespace vanhove::fock
