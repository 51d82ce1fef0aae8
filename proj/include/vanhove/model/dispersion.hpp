#pragma once

#include <span>
#include <vector>

#include "vanhove/fock/mode_grid.hpp"
#include "vanhove/types.hpp"

namespace vanhove::model {

enum class DispersionKind { kMassless, kMassive };

/// omega(k) = |k| (massless) or sqrt(|k|^2 + m^2) (massive, m > 0).
class Dispersion {
 public:
  static Dispersion massless() { return Dispersion(DispersionKind::kMassless, 0.0); }
  static Dispersion massive(Real mass);

  DispersionKind kind() const { return kind_; }
  Real mass() const { return mass_; }
  bool is_massless() const { return kind_ == DispersionKind::kMassless; }

  Real operator()(std::span<const Real> k) const;
  Real of_norm(Real k_norm) const;

  /// omega on every grid node.
  std::vector<Real> on_grid(const fock::ModeGrid& grid) const;

 private:
  Dispersion(DispersionKind kind, Real mass) : kind_(kind), mass_(mass) {}

  DispersionKind kind_;
  Real mass_;
};

Real evaluate_dispersion(const Dispersion& dispersion, std::span<const Real> k);

}  // namespace vanhove::model
