#include "vanhove/model/hamiltonian.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace vanhove::model {

VanHoveHamiltonian build_hamiltonian(const fock::ModeGrid& grid, const fock::BasisPtr& basis,
                                     const Dispersion& dispersion, const SourceProfile& profile) {
  const CouplingFunction f = coupling(profile, dispersion, grid);
  const std::vector<Real> omega = dispersion.on_grid(grid);

  fock::LinearOperator h0 = fock::second_quantization(grid, basis, omega);
  fock::LinearOperator hi = fock::segal_field(grid, basis, f.values) * Complex{-1.0, 0.0};
  fock::LinearOperator h = h0 + hi;
  if (!h.hermitian()) throw ContractViolation("assembled Hamiltonian is not hermitian");

  Real shift = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) shift += grid.weight(j) * std::norm(f.values[j]) / omega[j];
  shift *= -0.5;

  return VanHoveHamiltonian{grid, basis, dispersion, omega, f.values, std::move(h0), std::move(hi), std::move(h),
                            shift};
}

RelativeBound relative_bound_constants(const VanHoveHamiltonian& h, Real epsilon) {
  if (!(epsilon > 0.0)) throw InputError("relative bound needs epsilon > 0");
  ModeFunction scaled(h.coupling.size());
  for (std::size_t j = 0; j < scaled.size(); ++j) scaled[j] = h.coupling[j] / std::sqrt(h.omega[j]);
  const Real weighted = h.grid.l2_norm(scaled);
  const Real plain = h.grid.l2_norm(h.coupling);
  RelativeBound out;
  out.epsilon = epsilon;
  out.c_interaction = std::sqrt(2.0) * weighted;
  out.d_interaction = weighted / (std::sqrt(2.0) * epsilon) + plain / std::sqrt(2.0);
  return out;
}

RelativeBoundCheck check_relative_bound(const VanHoveHamiltonian& h, std::span<const Real> epsilons, int trials,
                                        std::mt19937_64& rng) {
  RelativeBoundCheck out;
  for (int trial = 0; trial < trials; ++trial) {
    const fock::StateVector psi = fock::random_state(h.basis, rng);
    const Real lhs = h.interaction.apply(psi).norm();
    const Real free_norm = h.free.apply(psi).norm();
    for (Real eps : epsilons) {
      const RelativeBound b = relative_bound_constants(h, eps);
      const Real rhs = b.c_interaction * eps * free_norm + b.d_interaction * psi.norm();
      ++out.trials;
      if (lhs > rhs * (1.0 + 1e-12)) ++out.violations;
      if (rhs > 0.0) out.worst_ratio = std::max(out.worst_ratio, lhs / rhs);
    }
  }
  return out;
}

std::optional<Real> ground_energy(const VanHoveHamiltonian& h, const fock::ExponentialConfig& config) {
  if (h.total.dimension() > config.dense_threshold) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.total.to_dense(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed");
  return solver.eigenvalues()[0];
}

}  // namespace vanhove::model
