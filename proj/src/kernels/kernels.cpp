#include "vanhove/kernels/kernels.hpp"

#include <cmath>
#include <cstdint>

namespace vanhove::kernels {

namespace {

inline Complex row_dot(const CsrView& a, std::size_t row, std::span<const Complex> x) {
  Complex acc{0.0, 0.0};
  for (int p = a.outer[row]; p < a.outer[row + 1]; ++p) {
    acc += a.values[static_cast<std::size_t>(p)] * x[static_cast<std::size_t>(a.inner[p])];
  }
  return acc;
}

inline Complex point_sum(const PlaneWaveBasis& basis, std::size_t p, std::span<const Complex> plus,
                         std::span<const Complex> minus) {
  const std::size_t d = basis.dimension;
  const Real* x = basis.points.data() + p * d;
  Complex acc{0.0, 0.0};
  for (std::size_t j = 0; j < plus.size(); ++j) {
    const Real* k = basis.nodes.data() + j * d;
    Real phase = 0.0;
    for (std::size_t a = 0; a < d; ++a) phase += k[a] * x[a];
    const Complex e{std::cos(phase), std::sin(phase)};
    acc += plus[j] * e + minus[j] * std::conj(e);
  }
  return acc;
}

}  // namespace

void spmv_serial(const CsrView& a, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t row = 0; row < a.rows; ++row) y[row] = row_dot(a, row, x);
}

void spmv_parallel(const CsrView& a, std::span<const Complex> x, std::span<Complex> y) {
  const auto rows = static_cast<std::int64_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::int64_t row = 0; row < rows; ++row) {
    y[static_cast<std::size_t>(row)] = row_dot(a, static_cast<std::size_t>(row), x);
  }
}

void plane_wave_sum_serial(const PlaneWaveBasis& basis, std::span<const Complex> plus,
                           std::span<const Complex> minus, std::span<Complex> out) {
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = point_sum(basis, p, plus, minus);
}

void plane_wave_sum_parallel(const PlaneWaveBasis& basis, std::span<const Complex> plus,
                             std::span<const Complex> minus, std::span<Complex> out) {
  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < count; ++p) {
    out[static_cast<std::size_t>(p)] = point_sum(basis, static_cast<std::size_t>(p), plus, minus);
  }
}

}  // namespace vanhove::kernels
