#pragma once

#include <optional>
#include <string>

#include "vanhove/fock/exponential.hpp"
#include "vanhove/model/hamiltonian.hpp"

namespace vanhove::evolution {

/// H together with its cached propagator (dense eigendecomposition or Krylov).
class EvolutionContext {
 public:
  explicit EvolutionContext(model::VanHoveHamiltonian hamiltonian, const fock::ExponentialConfig& config = {});

  const model::VanHoveHamiltonian& hamiltonian() const { return hamiltonian_; }
  const fock::ModeGrid& grid() const { return hamiltonian_.grid; }
  const fock::BasisPtr& basis() const { return hamiltonian_.basis; }
  const fock::Propagator& propagator() const { return propagator_; }

 private:
  model::VanHoveHamiltonian hamiltonian_;
  fock::Propagator propagator_;
};

/// e^{-itH} Psi.
fock::StateVector evolve_state(const EvolutionContext& ctx, const fock::StateVector& psi, Real t);

enum class AmplitudeOrigin { kInitial, kHeisenberg, kClosedForm };

/// Kernel amplitudes F(t, k_j) = (Phi, e^{itH} a_j e^{-itH} Psi) / sqrt(w_j).
struct AmplitudeField {
  Real t = 0.0;
  ModeFunction values;
  /// d^2 F / dt^2 on the nodes, when the producer knows it exactly.
  std::optional<ModeFunction> second_time_derivative;
  AmplitudeOrigin origin = AmplitudeOrigin::kInitial;
  /// (Phi, Psi) of the pair the amplitude was built from.
  Complex pair_overlap{0.0, 0.0};
  std::string phi_label = "Phi";
  std::string psi_label = "Psi";
};

/// (Phi, a_j Psi) for every mode j, without building the ladder operators.
ModeFunction pair_kernel(const fock::StateVector& phi, const fock::StateVector& psi);

/// F_0(k_j) = (Phi, a_j Psi) / sqrt(w_j).
AmplitudeField initial_amplitude(const fock::ModeGrid& grid, const fock::StateVector& phi,
                                 const fock::StateVector& psi);

/// Numeric Heisenberg-picture amplitude, including its exact second time
/// derivative -(Phi_t, [H,[H,a_j]] Psi_t) / sqrt(w_j).
AmplitudeField heisenberg_amplitude(const EvolutionContext& ctx, const fock::StateVector& phi,
                                    const fock::StateVector& psi, Real t);

/// e^{-it omega_j} F_0(k_j) + rhohat(k_j) / (sqrt(2) omega_j^{3/2}); F_0 must
/// come from an undressed pair with (Phi, Psi) = 1.
AmplitudeField closed_form_amplitude(const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                                     const model::SourceProfile& profile, const AmplitudeField& initial, Real t);

struct AmplitudeBound {
  Real lhs = 0.0;  // (sum_j w_j omega_j |F_j|^2)^{1/2}
  Real rhs = 0.0;  // ||Phi|| ||H_0^{1/2} e^{-itH} Psi||
  bool holds = false;
};

AmplitudeBound amplitude_bound_check(const EvolutionContext& ctx, const AmplitudeField& amplitude,
                                     const fock::StateVector& phi, const fock::StateVector& psi, Real t);

/// max_j |a_j - b_j|.
Real max_node_difference(const AmplitudeField& a, const AmplitudeField& b);

}  // namespace vanhove::evolution
