#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "vanhove/fock/mode_grid.hpp"
#include "vanhove/types.hpp"

namespace vanhove::model {

enum class SourceKind { kGaussian, kTabulated };

/// Static real source rho(x) and its Fourier transform under the symmetric
/// convention rhohat(k) = (2 pi)^{-d/2} int rho(x) e^{-ik.x} dx. The coupling
/// scale lambda multiplies rho.
class SourceProfile {
 public:
  /// rho(x) = lambda A exp(-|x|^2 / (2 sigma^2)), rhohat(k) = lambda A sigma^d exp(-sigma^2 |k|^2 / 2).
  static SourceProfile gaussian(Real amplitude, Real width, Real coupling, int dimension);

  /// rhohat given on scattered momenta (rows of `dimension` components);
  /// values off the table are taken from the nearest row. The table must be
  /// Hermitian on the mirror pairs it contains (real rho).
  static SourceProfile tabulated(int dimension, std::vector<Real> nodes, std::vector<Complex> values, Real coupling);

  SourceKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  Real coupling() const { return coupling_; }
  Real amplitude() const { return amplitude_; }
  Real width() const { return width_; }

  SourceProfile with_coupling(Real coupling) const;

  Complex rho_hat(std::span<const Real> k) const;
  /// Position-space density; nullopt for tabulated profiles.
  std::optional<Real> rho(std::span<const Real> x) const;
  bool has_position_form() const { return kind_ == SourceKind::kGaussian; }

  ModeFunction rho_hat_on(const fock::ModeGrid& grid) const;

 private:
  SourceProfile() = default;

  SourceKind kind_ = SourceKind::kGaussian;
  int dimension_ = 1;
  Real coupling_ = 0.0;
  Real amplitude_ = 0.0;
  Real width_ = 1.0;
  std::vector<Real> table_nodes_;
  std::vector<Complex> table_values_;
};

SourceProfile gaussian_source(Real amplitude, Real width, Real coupling, int dimension);

/// Whitespace-separated rows "k_1 ... k_d Re(rhohat) Im(rhohat)"; lines
/// beginning with '#' are comments.
SourceProfile load_tabulated_source(const std::filesystem::path& path, int dimension, Real coupling);

void write_tabulated_source(const std::filesystem::path& path, const fock::ModeGrid& grid,
                            std::span<const Complex> values);

}  // namespace vanhove::model
