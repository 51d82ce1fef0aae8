#pragma once

#include <random>

#include "vanhove/model/hamiltonian.hpp"

namespace vanhove::model {

/// pi_S(f_I / omega), the hermitian generator of the dressing transformation.
fock::LinearOperator dressing_generator(const VanHoveHamiltonian& h);

/// U = exp(-i pi_S(f_I / omega)).
fock::LinearOperator dressing_operator(const VanHoveHamiltonian& h, const fock::ExponentialConfig& config = {});

/// Per-mode coherent amplitudes of U Omega: alpha_j = sqrt(w_j / 2) f_I(k_j) / omega(k_j).
ModeFunction coherent_amplitudes(const VanHoveHamiltonian& h);

struct DiagonalizationReport {
  int low_shell = 0;
  int trials = 0;
  /// max ||(U* H U - H_0 - E_shift) Psi|| over random unit Psi on shells <= low_shell.
  Real max_residual = 0.0;
  /// max ||(e^{i pi(g)} dGamma(T) e^{-i pi(g)} - dGamma(T) - phi_S(Tg) - (g,Tg)/2) Psi|| with T = omega, g = f_I/omega.
  Real max_conjugation_residual = 0.0;
};

/// Both residuals are evaluated on random states with total excitation <= low_shell.
DiagonalizationReport diagonalization_check(const VanHoveHamiltonian& h, const fock::LinearOperator& dressing,
                                            int low_shell, int trials, std::mt19937_64& rng);

/// max over trials of ||(e^{i pi(g)} dGamma(T) e^{-i pi(g)} - dGamma(T) - phi_S(Tg) - (g,Tg)/2) Psi||.
Real conjugated_second_quantization_residual(const fock::ModeGrid& grid, const fock::BasisPtr& basis,
                                             std::span<const Real> multiplier, std::span<const Complex> g,
                                             int low_shell, int trials, std::mt19937_64& rng,
                                             const fock::ExponentialConfig& config = {});

}  // namespace vanhove::model
