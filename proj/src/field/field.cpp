#include "vanhove/field/field.hpp"

#include <algorithm>
#include <cmath>

#include "vanhove/fock/ladder.hpp"
#include "vanhove/kernels/kernels.hpp"

namespace vanhove::field {

namespace {

Real fourier_prefactor(int dimension) { return std::pow(2.0 * kPi, -0.5 * dimension); }

std::vector<Complex> synthesize(const fock::ModeGrid& grid, const SamplePoints& points,
                                std::span<const Complex> plus, std::span<const Complex> minus) {
  if (points.dimension() != grid.dimension()) throw BasisMismatch("sample points and grid differ in dimension");
  std::vector<Complex> out(points.size());
  const kernels::PlaneWaveBasis basis{static_cast<std::size_t>(grid.dimension()), grid.flat_nodes(), points.flat()};
  kernels::plane_wave_sum_parallel(basis, plus, minus, out);
  return out;
}

// (2 pi)^{-d/2} w_j (2 omega_j)^{-1/2}
std::vector<Real> field_weights(const fock::ModeGrid& grid, std::span<const Real> omega) {
  const Real pre = fourier_prefactor(grid.dimension());
  std::vector<Real> c(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(omega[j] > 0.0)) throw ContractViolation("omega(k) = 0 on a grid node");
    c[j] = pre * grid.weight(j) / std::sqrt(2.0 * omega[j]);
  }
  return c;
}

void check_pair(const evolution::AmplitudeField& a, const evolution::AmplitudeField& b, const fock::ModeGrid& grid) {
  if (a.values.size() != grid.size() || b.values.size() != grid.size()) {
    throw BasisMismatch("amplitude fields do not match the grid");
  }
  if (a.t != b.t) throw InputError("amplitude fields are evaluated at different times");
}

Real norm_squared(std::span<const Real> k) {
  Real s = 0.0;
  for (Real c : k) s += c * c;
  return s;
}

void summarize(ResidualReport& report) {
  Real sum = 0.0;
  report.max_abs = 0.0;
  for (const Complex& r : report.residual) {
    report.max_abs = std::max(report.max_abs, std::abs(r));
    sum += std::norm(r);
  }
  report.rms = report.residual.empty() ? 0.0 : std::sqrt(sum / static_cast<Real>(report.residual.size()));
}

Real field_scale(std::span<const Complex> phi, std::span<const Real> rho) {
  Real s = 0.0;
  for (const Complex& v : phi) s = std::max(s, std::abs(v));
  for (Real v : rho) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

SamplePoints::SamplePoints(int dimension, std::vector<Real> coordinates)
    : dimension_(dimension), coordinates_(std::move(coordinates)) {
  if (dimension_ < 1) throw InvalidParameter("sample dimension must be >= 1");
  if (coordinates_.size() % static_cast<std::size_t>(dimension_) != 0) {
    throw InvalidParameter("sample coordinates are not a whole number of points");
  }
}

SamplePoints SamplePoints::shifted(int axis, Real delta) const {
  std::vector<Real> c = coordinates_;
  for (std::size_t i = 0; i < size(); ++i) c[i * static_cast<std::size_t>(dimension_) + static_cast<std::size_t>(axis)] += delta;
  return {dimension_, std::move(c)};
}

SamplePoints line_points(int dimension, Real length, int count) {
  if (count < 1) throw InvalidParameter("need at least one sample point");
  std::vector<Real> c(static_cast<std::size_t>(count) * static_cast<std::size_t>(dimension), 0.0);
  for (int i = 0; i < count; ++i) {
    const Real x = count == 1 ? 0.0 : -0.5 * length + length * i / (count - 1);
    c[static_cast<std::size_t>(i) * static_cast<std::size_t>(dimension)] = x;
  }
  return {dimension, std::move(c)};
}

FieldSample classical_field(const evolution::AmplitudeField& phi_psi, const evolution::AmplitudeField& psi_phi,
                            const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                            const SamplePoints& points) {
  check_pair(phi_psi, psi_phi, grid);
  const auto omega = dispersion.on_grid(grid);
  const auto c = field_weights(grid, omega);
  std::vector<Complex> plus(grid.size());
  std::vector<Complex> minus(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    plus[j] = c[j] * phi_psi.values[j];
    minus[j] = c[j] * std::conj(psi_phi.values[j]);
  }
  return {phi_psi.t, synthesize(grid, points, plus, minus)};
}

std::vector<Complex> bandlimited_source_raw(const model::SourceProfile& profile, const fock::ModeGrid& grid,
                                            const SamplePoints& points) {
  const ModeFunction rho_hat = profile.rho_hat_on(grid);
  const Real pre = fourier_prefactor(grid.dimension());
  std::vector<Complex> plus(grid.size());
  const std::vector<Complex> minus(grid.size(), Complex{0.0, 0.0});
  for (std::size_t j = 0; j < grid.size(); ++j) plus[j] = pre * grid.weight(j) * rho_hat[j];
  return synthesize(grid, points, plus, minus);
}

std::vector<Real> bandlimited_source(const model::SourceProfile& profile, const fock::ModeGrid& grid,
                                     const SamplePoints& points) {
  const ModeFunction rho_hat = profile.rho_hat_on(grid);
  const Real pre = fourier_prefactor(grid.dimension());
  std::vector<Complex> plus(grid.size());
  std::vector<Complex> minus(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    plus[j] = 0.5 * pre * grid.weight(j) * rho_hat[j];
    minus[j] = std::conj(plus[j]);
  }
  const auto sum = synthesize(grid, points, plus, minus);
  std::vector<Real> out(sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i) out[i] = sum[i].real();
  return out;
}

const char* to_string(ResidualMethod m) {
  return m == ResidualMethod::kModewise ? "modewise" : "finite-difference";
}

ResidualReport modewise_residual(const evolution::AmplitudeField& phi_psi, const evolution::AmplitudeField& psi_phi,
                                 const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                                 const model::SourceProfile& profile, const SamplePoints& points) {
  check_pair(phi_psi, psi_phi, grid);
  if (!phi_psi.second_time_derivative || !psi_phi.second_time_derivative) {
    throw InputError("modewise residual needs amplitudes with a known second time derivative");
  }
  const auto omega = dispersion.on_grid(grid);
  const auto c = field_weights(grid, omega);
  const ModeFunction rho_hat = profile.rho_hat_on(grid);
  const Real pre = fourier_prefactor(grid.dimension());
  const Real mass2 = dispersion.mass() * dispersion.mass();
  const auto& f2 = *phi_psi.second_time_derivative;
  const auto& g2 = *psi_phi.second_time_derivative;

  // Each plane wave is differentiated exactly, so the equation is assembled
  // mode by mode before a single synthesis.
  std::vector<Complex> plus(grid.size());
  std::vector<Complex> minus(grid.size());
  std::vector<Complex> field_plus(grid.size());
  std::vector<Complex> field_minus(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Real spatial = norm_squared(grid.node(j)) + mass2;
    const Complex source = 0.5 * pre * grid.weight(j) * rho_hat[j];
    plus[j] = c[j] * (f2[j] + spatial * phi_psi.values[j]) - source;
    minus[j] = c[j] * (std::conj(g2[j]) + spatial * std::conj(psi_phi.values[j])) - std::conj(source);
    field_plus[j] = c[j] * phi_psi.values[j];
    field_minus[j] = c[j] * std::conj(psi_phi.values[j]);
  }

  ResidualReport report;
  report.t = phi_psi.t;
  report.method = ResidualMethod::kModewise;
  report.residual = synthesize(grid, points, plus, minus);
  const bool closed = phi_psi.origin == evolution::AmplitudeOrigin::kClosedForm &&
                      psi_phi.origin == evolution::AmplitudeOrigin::kClosedForm;
  report.source_tag = closed ? "closed-form" : "numeric-source";
  const auto phi = synthesize(grid, points, field_plus, field_minus);
  report.scale = field_scale(phi, bandlimited_source(profile, grid, points));
  summarize(report);
  return report;
}

FieldSampler closed_form_sampler(const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                                 const model::SourceProfile& profile, const evolution::AmplitudeField& initial_phi_psi,
                                 const evolution::AmplitudeField& initial_psi_phi) {
  return [grid, dispersion, profile, initial_phi_psi, initial_psi_phi](Real t, const SamplePoints& points) {
    const auto f = evolution::closed_form_amplitude(grid, dispersion, profile, initial_phi_psi, t);
    const auto g = evolution::closed_form_amplitude(grid, dispersion, profile, initial_psi_phi, t);
    return classical_field(f, g, grid, dispersion, points).values;
  };
}

ResidualReport finite_difference_residual(const FieldSampler& sampler, const model::SourceProfile& profile,
                                          const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                                          const SamplePoints& points, Real t, Real step_t, Real step_x) {
  if (!(step_t > 0.0) || !(step_x > 0.0)) throw InputError("finite-difference steps must be positive");
  const auto centre = sampler(t, points);
  const auto later = sampler(t + step_t, points);
  const auto earlier = sampler(t - step_t, points);
  std::vector<Complex> laplacian(points.size(), Complex{0.0, 0.0});
  for (int axis = 0; axis < points.dimension(); ++axis) {
    const auto fwd = sampler(t, points.shifted(axis, step_x));
    const auto bwd = sampler(t, points.shifted(axis, -step_x));
    for (std::size_t i = 0; i < points.size(); ++i) {
      laplacian[i] += (fwd[i] - 2.0 * centre[i] + bwd[i]) / (step_x * step_x);
    }
  }
  const auto rho = bandlimited_source(profile, grid, points);
  const Real mass2 = dispersion.mass() * dispersion.mass();

  ResidualReport report;
  report.t = t;
  report.method = ResidualMethod::kFiniteDifference;
  report.step_t = step_t;
  report.step_x = step_x;
  report.residual.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Complex dtt = (later[i] - 2.0 * centre[i] + earlier[i]) / (step_t * step_t);
    report.residual[i] = dtt - laplacian[i] + mass2 * centre[i] - rho[i];
  }
  report.scale = field_scale(centre, rho);
  summarize(report);
  return report;
}

FiniteDifferenceLadder finite_difference_ladder(const FieldSampler& sampler, const model::SourceProfile& profile,
                                                const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                                                const SamplePoints& points, Real t, std::span<const Real> steps) {
  if (steps.size() < 2) throw InputError("finite-difference ladder needs at least two steps");
  FiniteDifferenceLadder ladder;
  ladder.steps.assign(steps.begin(), steps.end());
  for (Real h : steps) {
    ladder.reports.push_back(finite_difference_residual(sampler, profile, grid, dispersion, points, t, h, h));
  }
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    const Real coarse = ladder.reports[i].max_abs;
    const Real fine = ladder.reports[i + 1].max_abs;
    if (!(fine < coarse)) {
      ladder.monotone = false;
      ladder.warnings.push_back("residual did not decrease from h=" + std::to_string(steps[i]) + " to h=" +
                                std::to_string(steps[i + 1]) + "; round-off may dominate");
    }
    ladder.orders.push_back(std::log(coarse / fine) / std::log(steps[i] / steps[i + 1]));
  }
  // Second-order stencil: r(h) = r_0 + C h^2 + O(h^4).
  const auto& coarse = ladder.reports[steps.size() - 2].residual;
  const auto& fine = ladder.reports[steps.size() - 1].residual;
  const Real ratio2 = std::pow(steps[steps.size() - 2] / steps[steps.size() - 1], 2.0);
  ladder.extrapolated.resize(fine.size());
  for (std::size_t i = 0; i < fine.size(); ++i) ladder.extrapolated[i] = fine[i] + (fine[i] - coarse[i]) / (ratio2 - 1.0);
  return ladder;
}

IntegrabilityReport integrability_diagnostics(const evolution::AmplitudeField& initial, const fock::ModeGrid& grid,
                                              const model::Dispersion& dispersion, int power,
                                              const fock::StateVector& phi, const fock::StateVector& psi) {
  if (power < 0 || power > 2) throw InputError("integrability power l must be 0, 1 or 2");
  if (initial.values.size() != grid.size()) throw BasisMismatch("initial amplitude does not match grid");
  const auto omega = dispersion.on_grid(grid);
  const int d = grid.dimension();

  IntegrabilityReport out;
  out.power = power;
  Real inside = 0.0;
  Real outside = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(omega[j] > 0.0)) throw ContractViolation("omega(k) = 0 on a grid node");
    const Real k = grid.norm(j);
    out.lhs += grid.weight(j) * std::pow(k, power) / std::sqrt(omega[j]) * std::abs(initial.values[j]);
    if (k < 1.0) {
      inside += grid.weight(j) / (omega[j] * omega[j]);
    } else {
      outside += grid.weight(j) / std::pow(omega[j], d + 1);
    }
  }
  out.c_d = std::sqrt(inside) + std::sqrt(outside);

  const RealVector energy = fock::second_quantization_diagonal(*psi.basis(), omega);
  Real high = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    high += std::pow(energy[static_cast<Eigen::Index>(i)], d + 4) * std::norm(psi[i]);
  }
  out.rhs = out.c_d * phi.norm() * (std::sqrt(high) + psi.norm());
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

}  // namespace vanhove::field
