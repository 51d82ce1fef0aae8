#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "vanhove/types.hpp"

namespace vanhove::fock {

/// Where the nodes sit inside each cell of width 2K/n.
enum class OffsetRule {
  kAuto,         // half_step for even n, quarter_step for odd n
  kHalfStep,     // cell midpoints; symmetric under k -> -k, contains 0 when n is odd
  kQuarterStep,  // quarter-cell offset; never hits the origin, not symmetric
};

struct GridSpec {
  int dimension = 1;
  int nodes_per_axis = 1;
  Real cutoff = 1.0;
  OffsetRule offset = OffsetRule::kAuto;
};

/// Finite quadrature discretization of momentum space: nodes k_j in R^d with
/// positive weights w_j. The grid inner product is (f,g) = sum_j w_j f_j* g_j.
class ModeGrid {
 public:
  /// Validates weights > 0 and consistent sizes; detects k -> -k symmetry.
  ModeGrid(int dimension, std::vector<Real> nodes, std::vector<Real> weights);

  int dimension() const { return dimension_; }
  std::size_t size() const { return weights_.size(); }

  std::span<const Real> node(std::size_t j) const {
    return {nodes_.data() + j * static_cast<std::size_t>(dimension_), static_cast<std::size_t>(dimension_)};
  }
  Real norm(std::size_t j) const;
  Real weight(std::size_t j) const { return weights_[j]; }

  std::span<const Real> flat_nodes() const { return nodes_; }
  std::span<const Real> weights() const { return weights_; }

  /// True iff every node has a mirror node -k_j with bitwise-equal weight.
  bool symmetric() const { return symmetric_; }
  /// Index of the node at -k_j, or size() when absent.
  std::size_t mirror(std::size_t j) const { return mirror_[j]; }

  bool contains_origin() const;

  Complex inner_product(std::span<const Complex> f, std::span<const Complex> g) const;
  Real l2_norm(std::span<const Complex> f) const;

  /// Samples a function of momentum on every node.
  ModeFunction sample(const std::function<Complex(std::span<const Real>)>& fn) const;

 private:
  int dimension_;
  std::vector<Real> nodes_;
  std::vector<Real> weights_;
  std::vector<std::size_t> mirror_;
  bool symmetric_ = false;
};

/// Tensor-product uniform grid over [-K, K]^d with w_j = (2K/n)^d.
ModeGrid build_grid(const GridSpec& spec);

}  // namespace vanhove::fock
