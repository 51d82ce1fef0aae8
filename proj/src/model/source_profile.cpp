#include "vanhove/model/source_profile.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <string>

namespace vanhove::model {

SourceProfile SourceProfile::gaussian(Real amplitude, Real width, Real coupling, int dimension) {
  if (dimension < 1) throw InvalidParameter("source dimension must be >= 1");
  if (!(width > 0.0) || !std::isfinite(width)) throw InvalidParameter("gaussian width sigma must be > 0");
  if (!std::isfinite(amplitude)) throw InvalidParameter("gaussian amplitude must be finite");
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) throw InvalidParameter("coupling scale must be >= 0");
  SourceProfile p;
  p.kind_ = SourceKind::kGaussian;
  p.dimension_ = dimension;
  p.amplitude_ = amplitude;
  p.width_ = width;
  p.coupling_ = coupling;
  return p;
}

SourceProfile SourceProfile::tabulated(int dimension, std::vector<Real> nodes, std::vector<Complex> values,
                                       Real coupling) {
  if (dimension < 1) throw InvalidParameter("source dimension must be >= 1");
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) throw InvalidParameter("coupling scale must be >= 0");
  if (values.empty() || nodes.size() != values.size() * static_cast<std::size_t>(dimension)) {
    throw ProfileError("tabulated source: node table does not match value count");
  }
  const auto d = static_cast<std::size_t>(dimension);
  std::map<std::vector<Real>, std::size_t> rows;
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (!std::isfinite(values[r].real()) || !std::isfinite(values[r].imag())) {
      throw ProfileError("tabulated source: non-finite value in row " + std::to_string(r + 1));
    }
    rows.emplace(std::vector<Real>(nodes.begin() + r * d, nodes.begin() + (r + 1) * d), r);
  }
  for (const auto& [k, r] : rows) {
    std::vector<Real> neg(k.size());
    for (std::size_t a = 0; a < k.size(); ++a) neg[a] = -k[a] + 0.0;
    auto it = rows.find(neg);
    if (it == rows.end()) continue;
    const Complex expected = std::conj(values[r]);
    const Real scale = std::max<Real>(1e-300, std::max(std::abs(values[r]), std::abs(values[it->second])));
    if (std::abs(values[it->second] - expected) > 1e-12 * scale) {
      throw ProfileError("tabulated source is not Hermitian (rhohat(-k) != conj rhohat(k)); complex sources are rejected");
    }
  }
  SourceProfile p;
  p.kind_ = SourceKind::kTabulated;
  p.dimension_ = dimension;
  p.coupling_ = coupling;
  p.table_nodes_ = std::move(nodes);
  p.table_values_ = std::move(values);
  return p;
}

SourceProfile SourceProfile::with_coupling(Real coupling) const {
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) throw InvalidParameter("coupling scale must be >= 0");
  SourceProfile p = *this;
  p.coupling_ = coupling;
  return p;
}

Complex SourceProfile::rho_hat(std::span<const Real> k) const {
  if (k.size() != static_cast<std::size_t>(dimension_)) throw InputError("momentum has wrong dimension");
  if (kind_ == SourceKind::kGaussian) {
    Real k2 = 0.0;
    for (Real c : k) k2 += c * c;
    return coupling_ * amplitude_ * std::pow(width_, dimension_) * std::exp(-0.5 * width_ * width_ * k2);
  }
  const auto d = static_cast<std::size_t>(dimension_);
  std::size_t best = 0;
  Real best_dist = std::numeric_limits<Real>::infinity();
  for (std::size_t r = 0; r < table_values_.size(); ++r) {
    Real dist = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      const Real diff = table_nodes_[r * d + a] - k[a];
      dist += diff * diff;
    }
    if (dist < best_dist) {
      best_dist = dist;
      best = r;
    }
  }
  return coupling_ * table_values_[best];
}

std::optional<Real> SourceProfile::rho(std::span<const Real> x) const {
  if (kind_ != SourceKind::kGaussian) return std::nullopt;
  if (x.size() != static_cast<std::size_t>(dimension_)) throw InputError("position has wrong dimension");
  Real x2 = 0.0;
  for (Real c : x) x2 += c * c;
  return coupling_ * amplitude_ * std::exp(-x2 / (2.0 * width_ * width_));
}

ModeFunction SourceProfile::rho_hat_on(const fock::ModeGrid& grid) const {
  if (grid.dimension() != dimension_) throw BasisMismatch("source and grid dimensions differ");
  return grid.sample([this](std::span<const Real> k) { return rho_hat(k); });
}

SourceProfile gaussian_source(Real amplitude, Real width, Real coupling, int dimension) {
  return SourceProfile::gaussian(amplitude, width, coupling, dimension);
}

SourceProfile load_tabulated_source(const std::filesystem::path& path, int dimension, Real coupling) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open source table " + path.string());
  std::vector<Real> nodes;
  std::vector<Complex> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    std::vector<Real> cols;
    Real v;
    while (row >> v) cols.push_back(v);
    if (!row.eof()) throw ProfileError(path.string() + ":" + std::to_string(line_no) + ": unparsable number");
    if (cols.size() != static_cast<std::size_t>(dimension) + 2) {
      throw ProfileError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                         std::to_string(dimension + 2) + " columns, found " + std::to_string(cols.size()));
    }
    nodes.insert(nodes.end(), cols.begin(), cols.begin() + dimension);
    values.emplace_back(cols[static_cast<std::size_t>(dimension)], cols[static_cast<std::size_t>(dimension) + 1]);
  }
  return SourceProfile::tabulated(dimension, std::move(nodes), std::move(values), coupling);
}

void write_tabulated_source(const std::filesystem::path& path, const fock::ModeGrid& grid,
                            std::span<const Complex> values) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write source table " + path.string());
  out << "# momentum k (1/length), then Re rhohat, Im rhohat (symmetric Fourier convention)\n";
  out << std::setprecision(17);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (Real c : grid.node(j)) out << c << ' ';
    out << values[j].real() << ' ' << values[j].imag() << '\n';
  }
}

}  // namespace vanhove::model
