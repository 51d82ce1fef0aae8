#pragma once

#include <span>

#include "vanhove/fock/linear_operator.hpp"
#include "vanhove/fock/mode_grid.hpp"

namespace vanhove::fock {

// Continuum -> grid convention: a(f) = sum_j sqrt(w_j) f(k_j)* a_j, which makes
// [a(f), a^dag(g)] reproduce the grid inner product (f,g) exactly. The
// kernel a(k_j) is a_j / sqrt(w_j). Creation out of the top shell is dropped.

/// Single-mode ladder operator a_j.
LinearOperator mode_annihilator(const BasisPtr& basis, std::size_t mode);
LinearOperator mode_creator(const BasisPtr& basis, std::size_t mode);

LinearOperator smeared_annihilator(const ModeGrid& grid, const BasisPtr& basis, std::span<const Complex> f);
LinearOperator smeared_creator(const ModeGrid& grid, const BasisPtr& basis, std::span<const Complex> g);

/// phi_S(f) = (a(f) + a^dag(f)) / sqrt(2)
LinearOperator segal_field(const ModeGrid& grid, const BasisPtr& basis, std::span<const Complex> f);
/// pi_S(g) = i(-a(g) + a^dag(g)) / sqrt(2)
LinearOperator segal_momentum(const ModeGrid& grid, const BasisPtr& basis, std::span<const Complex> g);

/// dGamma(T): diagonal, sum_i n_i T(k_i) on each occupation state.
LinearOperator second_quantization(const ModeGrid& grid, const BasisPtr& basis, std::span<const Real> multiplier);

/// Diagonal of dGamma(T) without building the operator.
RealVector second_quantization_diagonal(const OccupationBasis& basis, std::span<const Real> multiplier);

}  // namespace vanhove::fock
