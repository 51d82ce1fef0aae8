#include "vanhove/model/dispersion.hpp"

#include <cmath>

namespace vanhove::model {

Dispersion Dispersion::massive(Real mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidParameter("massive dispersion needs m > 0");
  return Dispersion(DispersionKind::kMassive, mass);
}

Real Dispersion::of_norm(Real k_norm) const {
  if (kind_ == DispersionKind::kMassless) return k_norm;
  return std::sqrt(k_norm * k_norm + mass_ * mass_);
}

Real Dispersion::operator()(std::span<const Real> k) const {
  Real s = 0.0;
  for (Real c : k) s += c * c;
  return of_norm(std::sqrt(s));
}

std::vector<Real> Dispersion::on_grid(const fock::ModeGrid& grid) const {
  std::vector<Real> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) out[j] = (*this)(grid.node(j));
  return out;
}

Real evaluate_dispersion(const Dispersion& dispersion, std::span<const Real> k) { return dispersion(k); }

}  // namespace vanhove::model
