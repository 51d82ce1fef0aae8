#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vanhove/evolution/evolution.hpp"
#include "vanhove/model/dispersion.hpp"
#include "vanhove/model/source_profile.hpp"

namespace vanhove::field {

/// Spatial sample points, stored row-major.
class SamplePoints {
 public:
  SamplePoints(int dimension, std::vector<Real> coordinates);

  int dimension() const { return dimension_; }
  std::size_t size() const { return coordinates_.size() / static_cast<std::size_t>(dimension_); }
  std::span<const Real> point(std::size_t i) const {
    return {coordinates_.data() + i * static_cast<std::size_t>(dimension_), static_cast<std::size_t>(dimension_)};
  }
  std::span<const Real> flat() const { return coordinates_; }

  /// Copy with every point shifted by `delta` along `axis`.
  SamplePoints shifted(int axis, Real delta) const;

 private:
  int dimension_;
  std::vector<Real> coordinates_;
};

/// `count` evenly spaced points on [-length/2, length/2] along the first axis.
SamplePoints line_points(int dimension, Real length, int count);

struct FieldSample {
  Real t = 0.0;
  std::vector<Complex> values;
};

/// phi(t,x) = (2 pi)^{-d/2} sum_j w_j (2 omega_j)^{-1/2} [F(k_j) e^{ik_j.x} + G(k_j)* e^{-ik_j.x}]
/// with F = F_{Phi Psi} and G = F_{Psi Phi} at the same t.
FieldSample classical_field(const evolution::AmplitudeField& phi_psi, const evolution::AmplitudeField& psi_phi,
                            const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                            const SamplePoints& points);

/// rho_N(x) = (2 pi)^{-d/2} sum_j w_j Re(rhohat(k_j) e^{ik_j.x}). On symmetric
/// grids with real rho this equals the plain sum to round-off.
std::vector<Real> bandlimited_source(const model::SourceProfile& profile, const fock::ModeGrid& grid,
                                     const SamplePoints& points);

/// (2 pi)^{-d/2} sum_j w_j rhohat(k_j) e^{ik_j.x} without symmetrisation.
std::vector<Complex> bandlimited_source_raw(const model::SourceProfile& profile, const fock::ModeGrid& grid,
                                            const SamplePoints& points);

enum class ResidualMethod { kModewise, kFiniteDifference };

const char* to_string(ResidualMethod m);

/// Pointwise values of (d_t^2 - Laplacian + m^2) phi - rho_N.
struct ResidualReport {
  Real t = 0.0;
  ResidualMethod method = ResidualMethod::kModewise;
  std::vector<Complex> residual;
  Real max_abs = 0.0;
  Real rms = 0.0;
  /// max(max |phi|, max |rho_N|) over the sampled points.
  Real scale = 0.0;
  Real step_t = 0.0;
  Real step_x = 0.0;
  /// "closed-form" or "numeric-source" for modewise reports.
  std::string source_tag;
};

/// Applies d_t^2 and the Laplacian to each plane-wave term exactly. Requires
/// amplitudes that carry their second time derivative.
ResidualReport modewise_residual(const evolution::AmplitudeField& phi_psi, const evolution::AmplitudeField& psi_phi,
                                 const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                                 const model::SourceProfile& profile, const SamplePoints& points);

using FieldSampler = std::function<std::vector<Complex>(Real t, const SamplePoints& points)>;

/// Field sampler built from the closed-form amplitudes of an undressed pair.
FieldSampler closed_form_sampler(const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                                 const model::SourceProfile& profile, const evolution::AmplitudeField& initial_phi_psi,
                                 const evolution::AmplitudeField& initial_psi_phi);

/// Central second differences in t (step h_t) and along each axis (step h_x).
ResidualReport finite_difference_residual(const FieldSampler& sampler, const model::SourceProfile& profile,
                                          const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                                          const SamplePoints& points, Real t, Real step_t, Real step_x);

struct FiniteDifferenceLadder {
  std::vector<Real> steps;
  std::vector<ResidualReport> reports;
  /// log2-type order between consecutive rungs: log(r_i / r_{i+1}) / log(h_i / h_{i+1}).
  std::vector<Real> orders;
  /// Pointwise Richardson extrapolation from the two finest rungs with the
  /// final order estimate.
  std::vector<Complex> extrapolated;
  bool monotone = true;
  std::vector<std::string> warnings;

  Real final_order() const { return orders.empty() ? 0.0 : orders.back(); }
};

/// Ladder with h_t = h_x = h for each h in `steps` (decreasing).
FiniteDifferenceLadder finite_difference_ladder(const FieldSampler& sampler, const model::SourceProfile& profile,
                                                const fock::ModeGrid& grid, const model::Dispersion& dispersion,
                                                const SamplePoints& points, Real t, std::span<const Real> steps);

struct IntegrabilityReport {
  int power = 0;
  Real lhs = 0.0;       // sum_j w_j |k_j|^l omega_j^{-1/2} |F_0(k_j)|
  Real rhs = 0.0;       // c_d ||Phi|| (||H_0^{d/2+2} Psi|| + ||Psi||)
  Real c_d = 0.0;       // ||1/omega||_{L2(B)} + ||omega^{-(d+1)/2}||_{L2(B^c)}, split at |k| = 1
  bool holds = false;
};

IntegrabilityReport integrability_diagnostics(const evolution::AmplitudeField& initial, const fock::ModeGrid& grid,
                                              const model::Dispersion& dispersion, int power,
                                              const fock::StateVector& phi, const fock::StateVector& psi);

}  // namespace vanhove::field
