#include "vanhove/model/dressing.hpp"

#include <cmath>

namespace vanhove::model {

namespace {

ModeFunction dressing_function(const VanHoveHamiltonian& h) {
  ModeFunction g(h.coupling.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = h.coupling[j] / h.omega[j];
  return g;
}

}  // namespace

fock::LinearOperator dressing_generator(const VanHoveHamiltonian& h) {
  return fock::segal_momentum(h.grid, h.basis, dressing_function(h));
}

fock::LinearOperator dressing_operator(const VanHoveHamiltonian& h, const fock::ExponentialConfig& config) {
  return fock::unitary_exponential(dressing_generator(h), 1.0, config);
}

ModeFunction coherent_amplitudes(const VanHoveHamiltonian& h) {
  ModeFunction alpha = dressing_function(h);
  for (std::size_t j = 0; j < alpha.size(); ++j) alpha[j] *= std::sqrt(h.grid.weight(j) / 2.0);
  return alpha;
}

Real conjugated_second_quantization_residual(const fock::ModeGrid& grid, const fock::BasisPtr& basis,
                                             std::span<const Real> multiplier, std::span<const Complex> g,
                                             int low_shell, int trials, std::mt19937_64& rng,
                                             const fock::ExponentialConfig& config) {
  if (low_shell < 0 || low_shell + 2 > basis->max_excitation()) {
    throw InputError("low shell must satisfy 0 <= shell <= N - 2");
  }
  const fock::LinearOperator pi = fock::segal_momentum(grid, basis, g);
  const fock::LinearOperator forward = fock::unitary_exponential(pi, -1.0, config);  // e^{+i pi(g)}
  const fock::LinearOperator backward = forward.adjoint();
  const fock::LinearOperator dgamma = fock::second_quantization(grid, basis, multiplier);

  ModeFunction tg(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) tg[j] = multiplier[j] * g[j];
  const fock::LinearOperator field = fock::segal_field(grid, basis, tg);
  const Complex constant = 0.5 * grid.inner_product(g, tg);

  Real worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const fock::StateVector psi = fock::random_state(basis, rng, low_shell);
    const fock::StateVector lhs = forward.apply(dgamma.apply(backward.apply(psi)));
    const fock::StateVector rhs = dgamma.apply(psi) + field.apply(psi) + psi * constant;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

DiagonalizationReport diagonalization_check(const VanHoveHamiltonian& h, const fock::LinearOperator& dressing,
                                            int low_shell, int trials, std::mt19937_64& rng) {
  fock::require_same_basis(*h.basis, *dressing.basis(), "diagonalization check");
  if (low_shell < 0 || low_shell + 2 > h.basis->max_excitation()) {
    throw InputError("low shell must satisfy 0 <= shell <= N - 2");
  }
  DiagonalizationReport out;
  out.low_shell = low_shell;
  out.trials = trials;
  const fock::LinearOperator adjoint = dressing.adjoint();
  for (int trial = 0; trial < trials; ++trial) {
    const fock::StateVector psi = fock::random_state(h.basis, rng, low_shell);
    const fock::StateVector lhs = adjoint.apply(h.total.apply(dressing.apply(psi)));
    const fock::StateVector rhs = h.free.apply(psi) + psi * Complex{h.energy_shift, 0.0};
    out.max_residual = std::max(out.max_residual, (lhs - rhs).norm());
  }
  out.max_conjugation_residual = conjugated_second_quantization_residual(h.grid, h.basis, h.omega,
                                                                        dressing_function(h), low_shell, trials, rng);
  return out;
}

}  // namespace vanhove::model
