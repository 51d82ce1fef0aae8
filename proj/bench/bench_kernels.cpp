// Serial vs OpenMP timings for the two hot kernels.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <memory>
#include <random>
#include <vector>

#include "vanhove/fock/ladder.hpp"
#include "vanhove/kernels/kernels.hpp"

using namespace vanhove;

namespace {

template <class F>
double seconds_per_call(F&& f, int repeats) {
  f();
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < repeats; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / repeats;
}

void report(const char* name, double serial, double parallel, double diff) {
  std::printf("%-28s serial %10.3f ms  parallel %10.3f ms  speedup %5.2fx  max|diff| %.1e\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel, diff);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::mt19937_64 rng(7);
  std::normal_distribution<Real> g;

  {
    const int modes = 27;
    const auto basis = std::make_shared<const fock::OccupationBasis>(modes, 3);
    const auto grid = fock::build_grid({3, 3, 1.5});
    ModeFunction f(grid.size());
    for (auto& v : f) v = Complex{g(rng), g(rng)};
    const auto phi = fock::segal_field(grid, basis, f);
    const fock::SparseMatrix& m = phi.matrix();
    const auto rows = static_cast<std::size_t>(m.rows());
    const auto nnz = static_cast<std::size_t>(m.nonZeros());
    const kernels::CsrView view{rows, static_cast<std::size_t>(m.cols()), {m.outerIndexPtr(), rows + 1},
                                {m.innerIndexPtr(), nnz}, {m.valuePtr(), nnz}};
    std::vector<Complex> x(rows), ys(rows), yp(rows);
    for (auto& v : x) v = Complex{g(rng), g(rng)};
    const double s = seconds_per_call([&] { kernels::spmv_serial(view, x, ys); }, 50);
    const double p = seconds_per_call([&] { kernels::spmv_parallel(view, x, yp); }, 50);
    double diff = 0.0;
    for (std::size_t i = 0; i < rows; ++i) diff = std::max(diff, std::abs(ys[i] - yp[i]));
    std::printf("spmv: basis %zu, nnz %zu\n", rows, nnz);
    report("spmv (segal field, M=27 N=3)", s, p, diff);
  }

  {
    const std::size_t dim = 3;
    const std::size_t modes = 4096;
    const std::size_t points = 2048;
    std::vector<Real> nodes(modes * dim), xs(points * dim);
    for (auto& v : nodes) v = g(rng);
    for (auto& v : xs) v = g(rng);
    std::vector<Complex> plus(modes), minus(modes), os(points), op(points);
    for (auto& v : plus) v = Complex{g(rng), g(rng)};
    for (auto& v : minus) v = Complex{g(rng), g(rng)};
    const kernels::PlaneWaveBasis pw{dim, nodes, xs};
    const double s = seconds_per_call([&] { kernels::plane_wave_sum_serial(pw, plus, minus, os); }, 5);
    const double p = seconds_per_call([&] { kernels::plane_wave_sum_parallel(pw, plus, minus, op); }, 5);
    double diff = 0.0;
    for (std::size_t i = 0; i < points; ++i) diff = std::max(diff, std::abs(os[i] - op[i]));
    report("plane-wave sum (4096 x 2048)", s, p, diff);
  }
  return 0;
}
