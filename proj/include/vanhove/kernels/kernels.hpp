#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an
// OpenMP variant; the two must agree bit-for-bit because every output entry
// is computed by exactly one thread in the same summation order.

#include <cstddef>
#include <span>

#include "vanhove/types.hpp"

namespace vanhove::kernels {

/// Borrowed view of a compressed-row matrix (Eigen RowMajor layout, compressed).
struct CsrView {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::span<const int> outer;  // rows + 1 entries
  std::span<const int> inner;
  std::span<const Complex> values;
};

void spmv_serial(const CsrView& a, std::span<const Complex> x, std::span<Complex> y);
void spmv_parallel(const CsrView& a, std::span<const Complex> x, std::span<Complex> y);

/// Layout for the plane-wave sums: `nodes` holds mode_count rows of `dimension`
/// momenta, `points` holds point_count rows of `dimension` coordinates.
struct PlaneWaveBasis {
  std::size_t dimension = 0;
  std::span<const Real> nodes;
  std::span<const Real> points;
};

// out[p] = sum_j ( plus[j] e^{i k_j.x_p} + minus[j] e^{-i k_j.x_p} )
void plane_wave_sum_serial(const PlaneWaveBasis& basis, std::span<const Complex> plus,
                           std::span<const Complex> minus, std::span<Complex> out);
void plane_wave_sum_parallel(const PlaneWaveBasis& basis, std::span<const Complex> plus,
                             std::span<const Complex> minus, std::span<Complex> out);

}  // namespace vanhove::kernels
