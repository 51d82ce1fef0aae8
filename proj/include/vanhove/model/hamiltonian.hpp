#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "vanhove/fock/exponential.hpp"
#include "vanhove/fock/ladder.hpp"
#include "vanhove/model/coupling.hpp"

namespace vanhove::model {

/// H = H_0 + H_I with H_0 = dGamma(omega) and H_I = -phi_S(f_I).
struct VanHoveHamiltonian {
  fock::ModeGrid grid;
  fock::BasisPtr basis;
  Dispersion dispersion;
  std::vector<Real> omega;
  ModeFunction coupling;  // f_I on the nodes
  fock::LinearOperator free;
  fock::LinearOperator interaction;
  fock::LinearOperator total;
  /// -1/2 (f_I / omega, f_I)_grid
  Real energy_shift = 0.0;
};

VanHoveHamiltonian build_hamiltonian(const fock::ModeGrid& grid, const fock::BasisPtr& basis,
                                     const Dispersion& dispersion, const SourceProfile& profile);

/// Kato-Rellich constants: ||H_I Psi|| <= c_I eps ||H_0 Psi|| + d_I(eps) ||Psi||.
struct RelativeBound {
  Real epsilon = 0.0;
  Real c_interaction = 0.0;  // sqrt(2) ||f_I / sqrt(omega)||
  Real d_interaction = 0.0;  // ||f_I/sqrt(omega)|| / (sqrt(2) eps) + ||f_I|| / sqrt(2)
};

RelativeBound relative_bound_constants(const VanHoveHamiltonian& h, Real epsilon);

struct RelativeBoundCheck {
  int trials = 0;
  int violations = 0;
  Real worst_ratio = 0.0;  // max lhs / rhs over trials
};

/// Evaluates the bound on `trials` random states for each epsilon.
RelativeBoundCheck check_relative_bound(const VanHoveHamiltonian& h, std::span<const Real> epsilons, int trials,
                                        std::mt19937_64& rng);

/// Smallest eigenvalue of H (dense eigensolve); nullopt above the dense threshold.
std::optional<Real> ground_energy(const VanHoveHamiltonian& h, const fock::ExponentialConfig& config = {});

}  // namespace vanhove::model
