#include "vanhove/fock/ladder.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace vanhove::fock {

namespace {

void check_mode(const OccupationBasis& basis, std::size_t mode) {
  if (mode >= static_cast<std::size_t>(basis.mode_count())) {
    throw InputError("mode index " + std::to_string(mode) + " out of range for " +
                     std::to_string(basis.mode_count()) + " modes");
  }
}

void check_grid(const ModeGrid& grid, const OccupationBasis& basis) {
  if (grid.size() != static_cast<std::size_t>(basis.mode_count())) {
    throw BasisMismatch("grid has " + std::to_string(grid.size()) + " nodes but basis has " +
                        std::to_string(basis.mode_count()) + " modes");
  }
}

void check_finite(std::span<const Complex> f, std::size_t expected) {
  if (f.size() != expected) throw InputError("mode function size does not match grid");
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!std::isfinite(f[j].real()) || !std::isfinite(f[j].imag())) {
      throw InputError("mode function is not finite at node " + std::to_string(j));
    }
  }
}

// Matrix of sum_j c_j a_j, assembled directly from the occupation table.
SparseMatrix lowering_matrix(const OccupationBasis& basis, std::span<const Complex> coefficients) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const auto modes = static_cast<std::size_t>(basis.mode_count());
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto occ = basis.state(col);
    for (std::size_t j = 0; j < modes; ++j) {
      if (occ[j] == 0 || coefficients[j] == Complex{0.0, 0.0}) continue;
      const auto row = basis.lowered(col, j);
      triplets.emplace_back(static_cast<int>(row), static_cast<int>(col),
                            coefficients[j] * std::sqrt(static_cast<Real>(occ[j])));
    }
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

std::vector<Complex> smearing_coefficients(const ModeGrid& grid, std::span<const Complex> f) {
  std::vector<Complex> c(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) c[j] = std::sqrt(grid.weight(j)) * std::conj(f[j]);
  return c;
}

}  // namespace

LinearOperator mode_annihilator(const BasisPtr& basis, std::size_t mode) {
  check_mode(*basis, mode);
  std::vector<Complex> c(static_cast<std::size_t>(basis->mode_count()), Complex{0.0, 0.0});
  c[mode] = 1.0;
  return {basis, lowering_matrix(*basis, c)};
}

LinearOperator mode_creator(const BasisPtr& basis, std::size_t mode) { return mode_annihilator(basis, mode).adjoint(); }

LinearOperator smeared_annihilator(const ModeGrid& grid, const BasisPtr& basis, std::span<const Complex> f) {
  check_grid(grid, *basis);
  check_finite(f, grid.size());
  return {basis, lowering_matrix(*basis, smearing_coefficients(grid, f))};
}

LinearOperator smeared_creator(const ModeGrid& grid, const BasisPtr& basis, std::span<const Complex> g) {
  return smeared_annihilator(grid, basis, g).adjoint();
}

LinearOperator segal_field(const ModeGrid& grid, const BasisPtr& basis, std::span<const Complex> f) {
  const LinearOperator a = smeared_annihilator(grid, basis, f);
  return (a + a.adjoint()) * Complex{1.0 / std::sqrt(2.0), 0.0};
}

LinearOperator segal_momentum(const ModeGrid& grid, const BasisPtr& basis, std::span<const Complex> g) {
  const LinearOperator a = smeared_annihilator(grid, basis, g);
  return (a.adjoint() - a) * Complex{0.0, 1.0 / std::sqrt(2.0)};
}

RealVector second_quantization_diagonal(const OccupationBasis& basis, std::span<const Real> multiplier) {
  if (multiplier.size() != static_cast<std::size_t>(basis.mode_count())) {
    throw InputError("multiplier size does not match mode count");
  }
  for (std::size_t j = 0; j < multiplier.size(); ++j) {
    if (!std::isfinite(multiplier[j]) || multiplier[j] < 0.0) {
      throw InputError("second-quantization multiplier must be finite and non-negative (node " +
                       std::to_string(j) + ")");
    }
  }
  RealVector diag(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Real s = 0.0;
    const auto occ = basis.state(i);
    for (std::size_t j = 0; j < occ.size(); ++j) s += occ[j] * multiplier[j];
    diag[static_cast<Eigen::Index>(i)] = s;
  }
  return diag;
}

LinearOperator second_quantization(const ModeGrid& grid, const BasisPtr& basis, std::span<const Real> multiplier) {
  check_grid(grid, *basis);
  const RealVector diag = second_quantization_diagonal(*basis, multiplier);
  const auto n = static_cast<Eigen::Index>(basis->size());
  SparseMatrix m(n, n);
  m.reserve(Eigen::VectorXi::Constant(n, 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (diag[i] != 0.0) m.insert(i, i) = diag[i];
  }
  return {basis, std::move(m)};
}

}  // namespace vanhove::fock
