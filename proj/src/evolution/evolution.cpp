#include "vanhove/evolution/evolution.hpp"

#include <cmath>

namespace vanhove::evolution {

namespace {

constexpr Real kOverlapTolerance = 1e-10;

}  // namespace

EvolutionContext::EvolutionContext(model::VanHoveHamiltonian hamiltonian, const fock::ExponentialConfig& config)
    : hamiltonian_(std::move(hamiltonian)), propagator_(hamiltonian_.total, config) {}

fock::StateVector evolve_state(const EvolutionContext& ctx, const fock::StateVector& psi, Real t) {
  fock::require_same_basis(*ctx.basis(), *psi.basis(), "evolve_state");
  if (t == 0.0) return psi;
  return ctx.propagator().apply(psi, t);
}

ModeFunction pair_kernel(const fock::StateVector& phi, const fock::StateVector& psi) {
  fock::require_same_basis(*phi.basis(), *psi.basis(), "pair kernel");
  const fock::OccupationBasis& basis = *psi.basis();
  const auto modes = static_cast<std::size_t>(basis.mode_count());
  ModeFunction out(modes, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Complex amp = psi[i];
    if (amp == Complex{0.0, 0.0}) continue;
    const auto occ = basis.state(i);
    for (std::size_t j = 0; j < modes; ++j) {
      if (occ[j] == 0) continue;
      const auto target = static_cast<std::size_t>(basis.lowered(i, j));
      out[j] += std::conj(phi[target]) * std::sqrt(static_cast<Real>(occ[j])) * amp;
    }
  }
  return out;
}

AmplitudeField initial_amplitude(const fock::ModeGrid& grid, const fock::StateVector& phi,
                                 const fock::StateVector& psi) {
  if (grid.size() != static_cast<std::size_t>(psi.basis()->mode_count())) {
    throw BasisMismatch("grid and basis mode counts differ");
  }
  AmplitudeField out;
  out.t = 0.0;
  out.origin = AmplitudeOrigin::kInitial;
  out.values = pair_kernel(phi, psi);
  for (std::size_t j = 0; j < grid.size(); ++j) out.values[j] /= std::sqrt(grid.weight(j));
  out.pair_overlap = phi.inner(psi);
  return out;
}

AmplitudeField heisenberg_amplitude(const EvolutionContext& ctx, const fock::StateVector& phi,
                                    const fock::StateVector& psi, Real t) {
  fock::require_same_basis(*ctx.basis(), *phi.basis(), "heisenberg_amplitude");
  fock::require_same_basis(*ctx.basis(), *psi.basis(), "heisenberg_amplitude");
  const fock::StateVector phi_t = evolve_state(ctx, phi, t);
  const fock::StateVector psi_t = evolve_state(ctx, psi, t);
  const fock::LinearOperator& h = ctx.hamiltonian().total;
  const fock::StateVector h_phi = h.apply(phi_t);
  const fock::StateVector hh_phi = h.apply(h_phi);
  const fock::StateVector h_psi = h.apply(psi_t);
  const fock::StateVector hh_psi = h.apply(h_psi);

  AmplitudeField out;
  out.t = t;
  out.origin = AmplitudeOrigin::kHeisenberg;
  out.pair_overlap = phi.inner(psi);
  out.values = pair_kernel(phi_t, psi_t);

  // (Phi_t, [H,[H,a]] Psi_t) = (H^2 Phi_t, a Psi_t) - 2 (H Phi_t, a H Psi_t) + (Phi_t, a H^2 Psi_t)
  const ModeFunction first = pair_kernel(hh_phi, psi_t);
  const ModeFunction middle = pair_kernel(h_phi, h_psi);
  const ModeFunction last = pair_kernel(phi_t, hh_psi);
  ModeFunction second(out.values.size());
  for (std::size_t j = 0; j < second.size(); ++j) {
    const Real scale = 1.0 / std::sqrt(ctx.grid().weight(j));
    out.values[j] *= scale;
    second[j] = -(first[j] - 2.0 * middle[j] + last[j]) * scale;
  }
  out.second_time_derivative = std::move(second);
  return out;
}

AmplitudeField closed_form_amplitude(const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                                     const model::SourceProfile& profile, const AmplitudeField& initial, Real t) {
  if (initial.values.size() != grid.size()) throw BasisMismatch("initial amplitude does not match grid");
  if (std::abs(initial.pair_overlap - Complex{1.0, 0.0}) > kOverlapTolerance) {
    throw ContractViolation("closed-form amplitude requires (Phi, Psi) = 1");
  }
  const ModeFunction rho_hat = profile.rho_hat_on(grid);
  const std::vector<Real> omega = dispersion.on_grid(grid);
  AmplitudeField out;
  out.t = t;
  out.origin = AmplitudeOrigin::kClosedForm;
  out.pair_overlap = initial.pair_overlap;
  out.phi_label = initial.phi_label;
  out.psi_label = initial.psi_label;
  out.values.resize(grid.size());
  ModeFunction second(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(omega[j] > 0.0)) throw ContractViolation("omega(k) = 0 on a grid node");
    const Complex free = std::exp(Complex{0.0, -t * omega[j]}) * initial.values[j];
    out.values[j] = free + rho_hat[j] / (std::sqrt(2.0) * std::pow(omega[j], 1.5));
    second[j] = -omega[j] * omega[j] * free;
  }
  out.second_time_derivative = std::move(second);
  return out;
}

AmplitudeBound amplitude_bound_check(const EvolutionContext& ctx, const AmplitudeField& amplitude,
                                     const fock::StateVector& phi, const fock::StateVector& psi, Real t) {
  if (amplitude.origin != AmplitudeOrigin::kHeisenberg && !(amplitude.origin == AmplitudeOrigin::kInitial && t == 0.0)) {
    throw InputError("amplitude bound check needs a Heisenberg amplitude for the same pair");
  }
  if (amplitude.t != t) throw InputError("amplitude time does not match the requested t");
  const fock::ModeGrid& grid = ctx.grid();
  const auto& omega = ctx.hamiltonian().omega;
  Real lhs = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) lhs += grid.weight(j) * omega[j] * std::norm(amplitude.values[j]);
  lhs = std::sqrt(lhs);

  const fock::StateVector psi_t = evolve_state(ctx, psi, t);
  const RealVector diag = fock::second_quantization_diagonal(*psi.basis(), omega);
  Real energy = 0.0;
  for (std::size_t i = 0; i < psi_t.size(); ++i) energy += diag[static_cast<Eigen::Index>(i)] * std::norm(psi_t[i]);
  const Real rhs = phi.norm() * std::sqrt(energy);
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-10)};
}

Real max_node_difference(const AmplitudeField& a, const AmplitudeField& b) {
  if (a.values.size() != b.values.size()) throw BasisMismatch("amplitude fields have different sizes");
  Real worst = 0.0;
  for (std::size_t j = 0; j < a.values.size(); ++j) worst = std::max(worst, std::abs(a.values[j] - b.values[j]));
  return worst;
}

}  // namespace vanhove::evolution
