#include "vanhove/model/coupling.hpp"

#include <cmath>
#include <string>

namespace vanhove::model {

CouplingFunction coupling(const SourceProfile& profile, const Dispersion& dispersion, const fock::ModeGrid& grid) {
  const auto rho_hat = profile.rho_hat_on(grid);
  const auto omega = dispersion.on_grid(grid);
  CouplingFunction out;
  out.values.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(omega[j] > 0.0)) {
      throw ContractViolation("omega(k) = 0 at grid node " + std::to_string(j) +
                              "; massless grids must exclude the origin");
    }
    out.values[j] = rho_hat[j] / std::sqrt(omega[j]);
  }
  return out;
}

}  // namespace vanhove::model
