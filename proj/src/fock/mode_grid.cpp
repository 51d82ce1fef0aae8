#include "vanhove/fock/mode_grid.hpp"

#include <cmath>
#include <map>
#include <string>

namespace vanhove::fock {

ModeGrid::ModeGrid(int dimension, std::vector<Real> nodes, std::vector<Real> weights)
    : dimension_(dimension), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (dimension_ < 1) throw InvalidParameter("grid dimension must be >= 1");
  if (weights_.empty()) throw InvalidParameter("grid must contain at least one node");
  if (nodes_.size() != weights_.size() * static_cast<std::size_t>(dimension_)) {
    throw InvalidParameter("grid node array does not match weights x dimension");
  }
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j])) {
      throw InvalidParameter("grid weight " + std::to_string(j) + " is not a positive finite number");
    }
  }
  for (Real v : nodes_) {
    if (!std::isfinite(v)) throw InvalidParameter("grid node coordinate is not finite");
  }

  // Mirror detection is exact: -k must be present bitwise.
  std::map<std::vector<Real>, std::size_t> lookup;
  const auto d = static_cast<std::size_t>(dimension_);
  for (std::size_t j = 0; j < size(); ++j) {
    lookup.emplace(std::vector<Real>(nodes_.begin() + j * d, nodes_.begin() + (j + 1) * d), j);
  }
  mirror_.assign(size(), size());
  symmetric_ = true;
  for (std::size_t j = 0; j < size(); ++j) {
    std::vector<Real> neg(d);
    for (std::size_t a = 0; a < d; ++a) neg[a] = -nodes_[j * d + a] + 0.0;
    auto it = lookup.find(neg);
    if (it == lookup.end()) {
      // -0.0 and 0.0 compare equal as keys, so a miss here is a genuine miss.
      symmetric_ = false;
      continue;
    }
    mirror_[j] = it->second;
    if (weights_[it->second] != weights_[j]) symmetric_ = false;
  }
}

Real ModeGrid::norm(std::size_t j) const {
  Real s = 0.0;
  for (Real c : node(j)) s += c * c;
  return std::sqrt(s);
}

bool ModeGrid::contains_origin() const {
  for (std::size_t j = 0; j < size(); ++j) {
    if (norm(j) == 0.0) return true;
  }
  return false;
}

Complex ModeGrid::inner_product(std::span<const Complex> f, std::span<const Complex> g) const {
  if (f.size() != size() || g.size() != size()) {
    throw InputError("mode function size does not match grid");
  }
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < size(); ++j) acc += weights_[j] * std::conj(f[j]) * g[j];
  return acc;
}

Real ModeGrid::l2_norm(std::span<const Complex> f) const {
  return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

ModeFunction ModeGrid::sample(const std::function<Complex(std::span<const Real>)>& fn) const {
  ModeFunction out(size());
  for (std::size_t j = 0; j < size(); ++j) out[j] = fn(node(j));
  return out;
}

ModeGrid build_grid(const GridSpec& spec) {
  if (spec.dimension < 1) throw InvalidParameter("grid dimension must be >= 1");
  if (spec.nodes_per_axis < 1) throw InvalidParameter("nodes per axis must be >= 1");
  if (!(spec.cutoff > 0.0) || !std::isfinite(spec.cutoff)) {
    throw InvalidParameter("grid cutoff K must be positive");
  }

  const int n = spec.nodes_per_axis;
  OffsetRule rule = spec.offset;
  if (rule == OffsetRule::kAuto) rule = (n % 2 == 0) ? OffsetRule::kHalfStep : OffsetRule::kQuarterStep;
  const Real fraction = (rule == OffsetRule::kHalfStep) ? 0.5 : 0.25;

  const Real step = 2.0 * spec.cutoff / n;
  std::vector<Real> axis(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) axis[static_cast<std::size_t>(i)] = -spec.cutoff + (i + fraction) * step;
  if (rule == OffsetRule::kHalfStep) {
    // Force exact mirror pairs; the affine formula can miss by an ulp.
    for (int i = 0; i < n / 2; ++i) axis[static_cast<std::size_t>(n - 1 - i)] = -axis[static_cast<std::size_t>(i)];
    if (n % 2 == 1) axis[static_cast<std::size_t>(n / 2)] = 0.0;
  }

  const auto d = static_cast<std::size_t>(spec.dimension);
  std::size_t count = 1;
  for (std::size_t a = 0; a < d; ++a) count *= static_cast<std::size_t>(n);

  std::vector<Real> nodes(count * d);
  std::vector<Real> weights(count, std::pow(step, spec.dimension));
  for (std::size_t j = 0; j < count; ++j) {
    std::size_t rem = j;
    // Last axis varies fastest.
    for (std::size_t a = d; a-- > 0;) {
      nodes[j * d + a] = axis[rem % static_cast<std::size_t>(n)];
      rem /= static_cast<std::size_t>(n);
    }
  }
  return ModeGrid(spec.dimension, std::move(nodes), std::move(weights));
}

}  // namespace vanhove::fock
