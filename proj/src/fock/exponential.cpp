#include "vanhove/fock/exponential.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

namespace vanhove::fock {

namespace {

void require_hermitian(const LinearOperator& op) {
  if (!op.hermitian()) throw ContractViolation("exponential generator is not hermitian");
}

}  // namespace

HermitianEigensystem::HermitianEigensystem(const LinearOperator& op) {
  require_hermitian(op);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op.to_dense());
  if (solver.info() != Eigen::Success) throw Error("hermitian eigensolver failed to converge");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

ComplexMatrix HermitianEigensystem::exponential(Real t) const {
  const ComplexVector phases = (eigenvalues_.cast<Complex>() * Complex{0.0, -t}).array().exp();
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

ComplexVector HermitianEigensystem::apply_exponential(Real t, const ComplexVector& v) const {
  ComplexVector coeffs = eigenvectors_.adjoint() * v;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs[i] *= std::exp(Complex{0.0, -t * eigenvalues_[i]});
  return eigenvectors_ * coeffs;
}

ComplexMatrix HermitianEigensystem::reconstruct() const {
  return eigenvectors_ * eigenvalues_.cast<Complex>().asDiagonal() * eigenvectors_.adjoint();
}

LinearOperator unitary_exponential(const LinearOperator& generator, Real t, const ExponentialConfig& config) {
  require_hermitian(generator);
  if (generator.dimension() > config.dense_threshold) {
    throw CapacityError("dimension " + std::to_string(generator.dimension()) +
                        " exceeds the dense exponential threshold; apply it per vector with Propagator");
  }
  if (t == 0.0) return identity(generator.basis());
  const HermitianEigensystem eig(generator);
  return from_dense(generator.basis(), eig.exponential(t));
}

LinearOperator anti_hermitian_exponential(const LinearOperator& generator, const ExponentialConfig& config) {
  if (!generator.anti_hermitian()) throw ContractViolation("generator is not anti-hermitian");
  return unitary_exponential(generator * kI, 1.0, config);
}

ComplexVector krylov_apply(const LinearOperator& generator, Real t, const ComplexVector& v,
                           const ExponentialConfig& config) {
  require_hermitian(generator);
  const auto n = v.size();
  if (static_cast<std::size_t>(n) != generator.dimension()) throw BasisMismatch("vector/operator size mismatch");
  if (t == 0.0 || v.norm() == 0.0) return v;

  const int m_max = std::max(2, std::min<int>(config.krylov_dimension, static_cast<int>(n)));
  const SparseMatrix& a = generator.matrix();

  ComplexVector w = v;
  Real remaining = t;
  while (remaining != 0.0) {
    const Real beta0 = w.norm();
    std::vector<ComplexVector> basis;
    basis.reserve(static_cast<std::size_t>(m_max) + 1);
    basis.push_back(w / beta0);
    std::vector<Real> alpha;
    std::vector<Real> beta;
    bool invariant = false;
    for (int j = 0; j < m_max; ++j) {
      ComplexVector z = a * basis.back();
      alpha.push_back(basis.back().dot(z).real());
      // Full reorthogonalization; m is small.
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) z -= q * q.dot(z);
      }
      const Real b = z.norm();
      if (b <= 1e-14 * std::max<Real>(1.0, std::abs(alpha.back()))) {
        invariant = true;
        break;
      }
      beta.push_back(b);
      if (j + 1 < m_max) basis.push_back(z / b);
    }

    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri);
    auto first_column = [&](Real dt) {
      ComplexVector c(m);
      for (int i = 0; i < m; ++i) c[i] = small.eigenvectors()(0, i) * std::exp(Complex{0.0, -dt * small.eigenvalues()[i]});
      return ComplexVector(small.eigenvectors().cast<Complex>() * c);
    };

    Real dt = remaining;
    ComplexVector y = first_column(dt);
    if (!invariant) {
      const Real tail = beta.back();
      // Error estimate: beta_m |[e^{-i dt T}]_{m-1,0}|; shrink the step until it passes.
      for (int tries = 0; tries < 60 && tail * std::abs(y[m - 1]) > config.krylov_tolerance; ++tries) {
        dt *= 0.5;
        y = first_column(dt);
      }
    }
    ComplexVector next = ComplexVector::Zero(n);
    for (int i = 0; i < m; ++i) next += basis[static_cast<std::size_t>(i)] * y[i];
    w = beta0 * next;
    remaining = invariant ? 0.0 : remaining - dt;
    if (std::abs(remaining) < 1e-15 * std::abs(t)) remaining = 0.0;
  }
  return w;
}

Propagator::Propagator(LinearOperator generator, const ExponentialConfig& config)
    : generator_(std::move(generator)), config_(config) {
  require_hermitian(generator_);
  if (generator_.dimension() <= config_.dense_threshold) eigensystem_.emplace(generator_);
}

StateVector Propagator::apply(const StateVector& v, Real t) const {
  require_same_basis(*generator_.basis(), *v.basis(), "propagation");
  if (eigensystem_) return {v.basis(), eigensystem_->apply_exponential(t, v.amplitudes())};
  return {v.basis(), krylov_apply(generator_, t, v.amplitudes(), config_)};
}

}  // namespace vanhove::fock
