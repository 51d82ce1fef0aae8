#pragma once

#include "vanhove/model/dispersion.hpp"
#include "vanhove/model/source_profile.hpp"

namespace vanhove::model {

/// f_I(k_j) = rhohat(k_j) / sqrt(omega(k_j)) on every node.
struct CouplingFunction {
  ModeFunction values;
};

/// Throws ContractViolation when omega vanishes on a node (massless grid
/// containing the origin).
CouplingFunction coupling(const SourceProfile& profile, const Dispersion& dispersion, const fock::ModeGrid& grid);

}  // namespace vanhove::model
