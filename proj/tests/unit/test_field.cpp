#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "vanhove/evolution/evolution.hpp"
#include "vanhove/field/field.hpp"
#include "vanhove/kernels/kernels.hpp"
#include "vanhove/model/hamiltonian.hpp"

using namespace vanhove;
using namespace vanhove::field;
using evolution::AmplitudeField;
using vanhove::testing::make_basis;

namespace {

struct Fixture {
  fock::ModeGrid grid;
  model::Dispersion dispersion;
  model::SourceProfile profile;
  fock::BasisPtr basis;
};

Fixture massless_3d(Real lambda = 1.0) {
  return {fock::build_grid({3, 3, 1.5}), model::Dispersion::massless(), model::SourceProfile::gaussian(1.0, 1.0, lambda, 3),
          make_basis(27, 1)};
}

Fixture massive_1d(Real lambda = 1.0) {
  return {fock::build_grid({1, 8, 3.0}), model::Dispersion::massive(1.0), model::SourceProfile::gaussian(1.0, 1.0, lambda, 1),
          make_basis(8, 1)};
}

fock::StateVector one_particle_superposition(const fock::BasisPtr& basis, std::size_t mode) {
  return (fock::vacuum(basis) + fock::basis_state(basis, 1 + mode)) * Complex{1.0 / std::sqrt(2.0), 0.0};
}

Real max_abs(const std::vector<Complex>& v) {
  Real out = 0.0;
  for (auto x : v) out = std::max(out, std::abs(x));
  return out;
}

}  // namespace

TEST_CASE("classical field") {
  SUBCASE("zero amplitudes give zero") {
    const auto fx = massive_1d();
    AmplitudeField zero;
    zero.values.assign(fx.grid.size(), Complex{0.0, 0.0});
    const auto points = line_points(1, 4.0, 9);
    for (auto v : classical_field(zero, zero, fx.grid, fx.dispersion, points).values) CHECK(v == Complex{0.0, 0.0});
  }
  SUBCASE("dressed vacuum is the static Coulomb-type potential") {
    const auto fx = massless_3d();
    const auto v = fock::vacuum(fx.basis);
    const auto f0 = evolution::initial_amplitude(fx.grid, v, v);
    const auto points = line_points(3, 4.0, 41);
    const auto rho_hat = fx.profile.rho_hat_on(fx.grid);
    std::vector<Complex> reference;
    Real scale = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p) {
      Real sum = 0.0;
      for (std::size_t j = 0; j < fx.grid.size(); ++j) {
        Real kx = 0.0;
        for (std::size_t a = 0; a < 3; ++a) kx += fx.grid.node(j)[a] * points.point(p)[a];
        const Real w = fx.grid.norm(j);
        sum += fx.grid.weight(j) * rho_hat[j].real() * std::cos(kx) / (w * w);
      }
      reference.push_back(sum * std::pow(2.0 * kPi, -1.5));
      scale = std::max(scale, std::abs(reference.back()));
    }
    std::vector<Complex> first;
    for (Real t : {0.0, 0.5, 1.0}) {
      const auto f = evolution::closed_form_amplitude(fx.grid, fx.dispersion, fx.profile, f0, t);
      const auto phi = classical_field(f, f, fx.grid, fx.dispersion, points).values;
      if (first.empty()) first = phi;
      for (std::size_t p = 0; p < phi.size(); ++p) {
        CHECK(std::abs(phi[p] - reference[p]) < 1e-12 * scale);
        CHECK(std::abs(phi[p] - first[p]) < 1e-12 * scale);
        CHECK(std::abs(phi[p].imag()) < 1e-10 * scale);
      }
    }
  }
  SUBCASE("single mode reduces to a cosine") {
    const fock::ModeGrid grid(1, {0.5}, {1.0});
    const auto dispersion = model::Dispersion::massive(1.0);
    const Real omega = std::sqrt(1.25);
    AmplitudeField f;
    f.values = {Complex{0.3, -0.4}};
    const auto points = line_points(1, 6.0, 13);
    const auto phi = classical_field(f, f, grid, dispersion, points).values;
    for (std::size_t p = 0; p < points.size(); ++p) {
      const Real x = points.point(p)[0];
      // 2 Re(F e^{ikx}) / sqrt(2 pi 2 omega) = 2 |F| cos(kx + arg F) / sqrt(4 pi omega)
      const Real expected = 2.0 * 0.5 * std::cos(0.5 * x + std::arg(f.values[0])) / std::sqrt(4.0 * kPi * omega);
      CHECK(std::abs(phi[p] - expected) < 1e-15);
    }
  }
  SUBCASE("grid mismatch") {
    const auto fx = massive_1d();
    AmplitudeField a;
    a.values.assign(fx.grid.size(), Complex{1.0, 0.0});
    AmplitudeField b;
    b.values.assign(3, Complex{1.0, 0.0});
    CHECK_THROWS_AS(classical_field(a, b, fx.grid, fx.dispersion, line_points(1, 1.0, 3)), BasisMismatch);
  }
}

TEST_CASE("band-limited source") {
  SUBCASE("free theory") {
    const auto fx = massive_1d(0.0);
    for (Real v : bandlimited_source(fx.profile, fx.grid, line_points(1, 4.0, 5))) CHECK(v == 0.0);
  }
  SUBCASE("converges to rho(0) as the grid refines") {
    const auto profile = model::SourceProfile::gaussian(1.0, 1.0, 1.0, 1);
    const SamplePoints origin(1, {0.0});
    Real previous = 1e300;
    for (int n : {4, 8, 16, 32, 64}) {
      const auto grid = fock::build_grid({1, n, 8.0});
      const Real err = std::abs(bandlimited_source(profile, grid, origin)[0] - 1.0);
      CHECK(err <= std::max(previous, 1e-14));
      previous = err;
    }
    CHECK(previous < 1e-3);
  }
  SUBCASE("even source gives an even, real reconstruction on symmetric grids") {
    const auto grid = fock::build_grid({2, 6, 3.0});
    const auto profile = model::SourceProfile::gaussian(1.0, 0.7, 1.0, 2);
    const SamplePoints pts(2, {0.3, -0.2, -0.3, 0.2, 1.1, 0.4, -1.1, -0.4});
    const auto rho = bandlimited_source(profile, grid, pts);
    CHECK(rho[0] == doctest::Approx(rho[1]).epsilon(1e-13));
    CHECK(rho[2] == doctest::Approx(rho[3]).epsilon(1e-13));
    const auto raw = bandlimited_source_raw(profile, grid, pts);
    for (std::size_t p = 0; p < 4; ++p) {
      CHECK(std::abs(raw[p].imag()) < 1e-12);
      CHECK(std::abs(raw[p].real() - rho[p]) < 1e-12);
    }
  }
}

TEST_CASE("mode-wise residual") {
  SUBCASE("massless d=3 dressed vacuum") {
    const auto fx = massless_3d();
    const auto v = fock::vacuum(fx.basis);
    const auto f0 = evolution::initial_amplitude(fx.grid, v, v);
    const auto points = line_points(3, 4.0, 41);
    for (Real t : {0.0, 0.5, 1.0}) {
      const auto f = evolution::closed_form_amplitude(fx.grid, fx.dispersion, fx.profile, f0, t);
      const auto r = modewise_residual(f, f, fx.grid, fx.dispersion, fx.profile, points);
      CHECK(r.max_abs < 1e-10 * r.scale);
      CHECK(r.source_tag == "closed-form");
      CHECK(r.scale > 0.0);
    }
  }
  SUBCASE("massless d=3 dressed one-particle pair") {
    const auto fx = massless_3d();
    const auto s = one_particle_superposition(fx.basis, 4);
    const auto f0 = evolution::initial_amplitude(fx.grid, s, s);
    const auto f = evolution::closed_form_amplitude(fx.grid, fx.dispersion, fx.profile, f0, 0.7);
    const auto r = modewise_residual(f, f, fx.grid, fx.dispersion, fx.profile, line_points(3, 4.0, 41));
    CHECK(r.max_abs < 1e-10 * r.scale);
  }
  SUBCASE("massive d=1") {
    const auto fx = massive_1d();
    const auto s = one_particle_superposition(fx.basis, 2);
    const auto f0 = evolution::initial_amplitude(fx.grid, s, s);
    for (Real t : {0.0, 1.3}) {
      const auto f = evolution::closed_form_amplitude(fx.grid, fx.dispersion, fx.profile, f0, t);
      const auto r = modewise_residual(f, f, fx.grid, fx.dispersion, fx.profile, line_points(1, 4.0, 41));
      CHECK(r.max_abs < 1e-10 * r.scale);
    }
  }
  SUBCASE("free theory with numeric amplitudes solves the homogeneous equation") {
    const auto fx = massive_1d(0.0);
    const auto h = model::build_hamiltonian(fx.grid, fx.basis, fx.dispersion, fx.profile);
    const evolution::EvolutionContext ctx(h);
    std::mt19937_64 rng(3);
    const auto phi = fock::random_state(fx.basis, rng);
    const auto psi = fock::random_state(fx.basis, rng);
    const auto a = evolution::heisenberg_amplitude(ctx, phi, psi, 0.4);
    const auto b = evolution::heisenberg_amplitude(ctx, psi, phi, 0.4);
    const auto r = modewise_residual(a, b, fx.grid, fx.dispersion, fx.profile, line_points(1, 4.0, 21));
    CHECK(r.source_tag == "numeric-source");
    CHECK(r.max_abs < 1e-12 * std::max(r.scale, 1.0));
  }
  SUBCASE("amplitudes without a second derivative are rejected") {
    const auto fx = massive_1d();
    AmplitudeField f;
    f.values.assign(fx.grid.size(), Complex{1.0, 0.0});
    CHECK_THROWS_AS(modewise_residual(f, f, fx.grid, fx.dispersion, fx.profile, line_points(1, 1.0, 3)), InputError);
  }
}

TEST_CASE("finite-difference residual") {
  SUBCASE("single free mode matches the closed-form stencil error") {
    const fock::ModeGrid grid(1, {0.5}, {1.0});
    const auto dispersion = model::Dispersion::massive(1.0);
    const auto profile = model::SourceProfile::gaussian(1.0, 1.0, 0.0, 1);
    const auto basis = make_basis(1, 2);
    const auto s = one_particle_superposition(basis, 0);
    const auto f0 = evolution::initial_amplitude(grid, s, s);
    const auto sampler = closed_form_sampler(grid, dispersion, profile, f0, f0);
    const auto points = line_points(1, 4.0, 9);
    const Real omega = std::sqrt(1.25);
    for (Real h : {0.1, 0.05}) {
      const auto r = finite_difference_residual(sampler, profile, grid, dispersion, points, 0.3, h, h);
      // e^{i(kx - wt)}: D_t^2 -> -4 sin^2(wh/2)/h^2, D_x^2 -> -4 sin^2(kh/2)/h^2.
      const Real factor = -4.0 * std::pow(std::sin(omega * h / 2.0), 2) / (h * h) +
                          4.0 * std::pow(std::sin(0.5 * h / 2.0), 2) / (h * h) + 1.0;
      const auto phi = sampler(0.3, points);
      for (std::size_t p = 0; p < points.size(); ++p) CHECK(std::abs(r.residual[p] - factor * phi[p]) < 1e-11);
    }
  }
  SUBCASE("static d=3 field converges at second order") {
    const auto fx = massless_3d();
    const auto v = fock::vacuum(fx.basis);
    const auto f0 = evolution::initial_amplitude(fx.grid, v, v);
    const auto sampler = closed_form_sampler(fx.grid, fx.dispersion, fx.profile, f0, f0);
    const auto points = line_points(3, 4.0, 41);
    const std::vector<Real> steps = {0.1, 0.05, 0.025};
    const auto ladder = finite_difference_ladder(sampler, fx.profile, fx.grid, fx.dispersion, points, 0.5, steps);
    REQUIRE(ladder.orders.size() == 2);
    CHECK(ladder.final_order() >= 1.8);
    CHECK(ladder.final_order() <= 2.2);
    CHECK(ladder.monotone);
    // The time stencil alone sees a static field.
    const auto phi_a = sampler(0.4, points);
    const auto phi_b = sampler(0.6, points);
    for (std::size_t p = 0; p < points.size(); ++p) CHECK(std::abs(phi_a[p] - phi_b[p]) < 1e-12 * max_abs(phi_a));
    // Richardson extrapolation lands on the mode-wise residual.
    const auto f = evolution::closed_form_amplitude(fx.grid, fx.dispersion, fx.profile, f0, 0.5);
    const auto exact = modewise_residual(f, f, fx.grid, fx.dispersion, fx.profile, points);
    const Real coarse = ladder.reports.back().max_abs;
    for (std::size_t p = 0; p < points.size(); ++p) {
      CHECK(std::abs(ladder.extrapolated[p] - exact.residual[p]) <= std::max(coarse / 10.0, 10.0 * std::abs(exact.residual[p])));
    }
  }
}

TEST_CASE("integrability diagnostics") {
  std::mt19937_64 rng(13);
  const auto fx = massless_3d();
  const auto basis = make_basis(27, 2);
  SUBCASE("zero amplitude") {
    const auto v = fock::vacuum(basis);
    const auto report = integrability_diagnostics(evolution::initial_amplitude(fx.grid, v, v), fx.grid, fx.dispersion, 0, v, v);
    CHECK(report.lhs == 0.0);
    CHECK(report.holds);
  }
  SUBCASE("random truncated states") {
    int failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto phi = fock::random_state(basis, rng);
      const auto psi = fock::random_state(basis, rng);
      const auto f0 = evolution::initial_amplitude(fx.grid, phi, psi);
      for (int l : {0, 1, 2}) {
        if (!integrability_diagnostics(f0, fx.grid, fx.dispersion, l, phi, psi).holds) ++failures;
      }
    }
    CHECK(failures == 0);
  }
  SUBCASE("higher powers dominate away from the unit ball") {
    const auto grid = fock::build_grid({1, 4, 4.0});  // nodes +-1.5, +-0.5 ... only |k| > 1 carries weight below
    AmplitudeField f;
    f.values.assign(grid.size(), Complex{0.0, 0.0});
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if (grid.norm(j) > 1.0) f.values[j] = Complex{1.0, 0.0};
    }
    const auto b = make_basis(4, 1);
    const auto v = fock::vacuum(b);
    const auto l0 = integrability_diagnostics(f, grid, model::Dispersion::massless(), 0, v, v);
    const auto l2 = integrability_diagnostics(f, grid, model::Dispersion::massless(), 2, v, v);
    CHECK(l2.lhs > l0.lhs);
  }
  SUBCASE("power out of range") {
    const auto v = fock::vacuum(basis);
    const auto f0 = evolution::initial_amplitude(fx.grid, v, v);
    CHECK_THROWS_AS(integrability_diagnostics(f0, fx.grid, fx.dispersion, 3, v, v), InputError);
  }
}

TEST_CASE("serial and parallel plane-wave sums are identical") {
  std::mt19937_64 rng(1);
  const auto grid = fock::build_grid({3, 4, 2.0});
  const auto points = line_points(3, 6.0, 101);
  const auto plus = vanhove::testing::random_function(grid.size(), rng);
  const auto minus = vanhove::testing::random_function(grid.size(), rng);
  const kernels::PlaneWaveBasis basis{3, grid.flat_nodes(), points.flat()};
  std::vector<Complex> serial(points.size());
  std::vector<Complex> parallel(points.size());
  kernels::plane_wave_sum_serial(basis, plus, minus, serial);
  kernels::plane_wave_sum_parallel(basis, plus, minus, parallel);
  for (std::size_t p = 0; p < points.size(); ++p) CHECK(serial[p] == parallel[p]);
}
