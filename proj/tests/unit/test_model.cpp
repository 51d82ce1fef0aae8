#include <doctest.h>

#include <cmath>
#include <random>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "test_support.hpp"
#include "vanhove/fock/exponential.hpp"
#include "vanhove/model/conditions.hpp"
#include "vanhove/model/coupling.hpp"
#include "vanhove/model/dispersion.hpp"
#include "vanhove/model/dressing.hpp"
#include "vanhove/model/hamiltonian.hpp"
#include "vanhove/model/source_profile.hpp"

using namespace vanhove;
using namespace vanhove::model;
using vanhove::testing::make_basis;

namespace {

fock::ModeGrid single_mode() { return fock::ModeGrid(1, {0.0}, {1.0}); }

VanHoveHamiltonian single_mode_hamiltonian(int cutoff, Real lambda) {
  return build_hamiltonian(single_mode(), make_basis(1, cutoff), Dispersion::massive(1.0),
                           SourceProfile::gaussian(1.0, 1.0, lambda, 1));
}

// Trapezoid Fourier transform of the 1-d gaussian on [-L, L] (symmetric convention).
Complex fourier_1d(Real sigma, Real k) {
  const int n = 40000;
  const Real length = 40.0 * sigma;
  const Real dx = 2.0 * length / n;
  Complex sum{0.0, 0.0};
  for (int i = 0; i <= n; ++i) {
    const Real x = -length + i * dx;
    const Real w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * std::exp(-x * x / (2.0 * sigma * sigma)) * std::exp(Complex{0.0, -k * x});
  }
  return sum * dx / std::sqrt(2.0 * kPi);
}

// int_a^b r^{s-1} e^{-c r^2} dr via the lower incomplete gamma function.
Real radial_gaussian(Real s, Real c, Real a, Real b) {
  const Real h = 0.5 * s;
  return 0.5 * std::pow(c, -h) * (boost::math::tgamma_lower(h, c * b * b) - boost::math::tgamma_lower(h, c * a * a));
}

}  // namespace

TEST_CASE("dispersion relations") {
  const std::vector<Real> k345 = {3.0, 4.0, 0.0};
  CHECK(evaluate_dispersion(Dispersion::massless(), k345) == 5.0);
  const std::vector<Real> origin = {0.0};
  CHECK(evaluate_dispersion(Dispersion::massive(1.0), origin) == 1.0);
  CHECK(Dispersion::massive(3.0).of_norm(4.0) == doctest::Approx(5.0));
  CHECK(Dispersion::massless()(origin) == 0.0);
  CHECK_THROWS_AS(Dispersion::massive(0.0), InvalidParameter);
  CHECK_THROWS_AS(Dispersion::massive(-1.0), InvalidParameter);
}

TEST_CASE("gaussian source matches a numerical Fourier transform") {
  CHECK(SourceProfile::gaussian(1.0, 1.0, 0.0, 2).rho_hat(std::vector<Real>{0.3, 0.1}) == Complex{0.0, 0.0});
  const std::vector<Real> zero1 = {0.0};
  const std::vector<Real> zero3 = {0.0, 0.0, 0.0};
  CHECK(std::abs(SourceProfile::gaussian(1.0, 1.0, 1.0, 1).rho_hat(zero1) - 1.0) < 1e-15);
  CHECK(std::abs(SourceProfile::gaussian(1.0, 2.0, 1.0, 3).rho_hat(zero3) - 8.0) < 1e-14);

  CHECK(std::abs(fourier_1d(1.0, 0.0) - 1.0) < 1e-8);
  const Complex one_axis = fourier_1d(2.0, 0.0);
  CHECK(std::abs(one_axis * one_axis * one_axis - 8.0) < 1e-8);
  for (Real k : {0.3, 0.9, 1.7}) {
    const std::vector<Real> kv = {k};
    CHECK(std::abs(SourceProfile::gaussian(1.0, 1.3, 1.0, 1).rho_hat(kv) - fourier_1d(1.3, k)) < 1e-8);
  }
  const auto g = SourceProfile::gaussian(2.0, 0.5, 0.3, 2);
  const std::vector<Real> x = {0.5, -0.5};
  CHECK(*g.rho(x) == doctest::Approx(0.6 * std::exp(-1.0)));
  CHECK_THROWS_AS(SourceProfile::gaussian(1.0, 0.0, 1.0, 1), InvalidParameter);
  CHECK_THROWS_AS(SourceProfile::gaussian(1.0, 1.0, -1.0, 1), InvalidParameter);
}

TEST_CASE("tabulated sources") {
  SUBCASE("hermitian table") {
    const auto p = SourceProfile::tabulated(1, {-1.0, 1.0}, {Complex{1.0, 0.5}, Complex{1.0, -0.5}}, 2.0);
    CHECK(p.rho_hat(std::vector<Real>{0.9}) == Complex{2.0, -1.0});
    CHECK_FALSE(p.rho(std::vector<Real>{0.0}).has_value());
  }
  SUBCASE("non-hermitian mirror pair is rejected") {
    CHECK_THROWS_AS(SourceProfile::tabulated(1, {-1.0, 1.0}, {Complex{1.0, 0.5}, Complex{1.0, 0.5}}, 1.0),
                    ProfileError);
  }
  SUBCASE("round trip through a file") {
    const fock::ModeGrid grid = fock::build_grid({1, 4, 2.0});
    const auto gauss = SourceProfile::gaussian(1.0, 1.0, 1.0, 1);
    const auto values = gauss.rho_hat_on(grid);
    const auto path = std::filesystem::temp_directory_path() / "vanhove_tabulated_test.csv";
    write_tabulated_source(path, grid, values);
    const auto loaded = load_tabulated_source(path, 1, 1.0);
    const auto back = loaded.rho_hat_on(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) CHECK(std::abs(back[j] - values[j]) < 1e-15);
    std::filesystem::remove(path);
  }
}

TEST_CASE("coupling function") {
  const fock::ModeGrid grid(1, {0.25}, {1.0});
  const auto flat = SourceProfile::tabulated(1, {0.25}, {Complex{1.0, 0.0}}, 1.0);
  CHECK(std::abs(coupling(flat, Dispersion::massless(), grid).values[0] - 2.0) < 1e-15);
  CHECK(std::abs(coupling(SourceProfile::gaussian(1.0, 1.0, 1.0, 1), Dispersion::massive(1.0), single_mode()).values[0] -
                 1.0) < 1e-15);
  CHECK(coupling(SourceProfile::gaussian(1.0, 1.0, 0.0, 1), Dispersion::massless(), grid).values[0] == Complex{0.0, 0.0});
  CHECK_THROWS_AS(coupling(flat, Dispersion::massless(), single_mode()), ContractViolation);

  const fock::ModeGrid sym = fock::build_grid({2, 4, 1.0});
  const auto f = coupling(SourceProfile::gaussian(1.0, 0.8, 1.0, 2), Dispersion::massless(), sym).values;
  for (std::size_t j = 0; j < sym.size(); ++j) CHECK(std::abs(f[sym.mirror(j)] - std::conj(f[j])) < 1e-15);
}

TEST_CASE("condition integrals agree with closed-form radial integrals") {
  const LadderConfig config;
  auto annulus = [&](int level) {
    const Real scale = std::pow(config.refinement, level);
    return std::pair{config.inner_radius / scale, config.outer_radius * scale};
  };

  SUBCASE("d=3 massless gaussian") {
    const auto report = check_conditions(SourceProfile::gaussian(1.0, 1.0, 1.0, 3), Dispersion::massless(), 3);
    const Real area = 4.0 * kPi;
    const int last = config.levels - 1;
    const auto [a, b] = annulus(last);
    // |rhohat|^2 / omega^l = r^{-l} e^{-r^2}
    CHECK(report.find("rhohat_over_sqrt_omega_L2").ladder.back() ==
          doctest::Approx(area * radial_gaussian(2.0, 1.0, a, b)).epsilon(1e-9));
    CHECK(report.find("rhohat_over_omega_L2").ladder.back() ==
          doctest::Approx(area * radial_gaussian(1.0, 1.0, a, b)).epsilon(1e-9));
    CHECK(report.find("rhohat_L1").ladder.back() ==
          doctest::Approx(area * radial_gaussian(3.0, 0.5, a, b)).epsilon(1e-9));
    CHECK(report.find("rhohat_over_omega_squared_L1").ladder.back() ==
          doctest::Approx(area * radial_gaussian(1.0, 0.5, a, b)).epsilon(1e-9));
    CHECK(report.find("rho_L1").ladder.back() ==
          doctest::Approx(area * radial_gaussian(3.0, 0.5, a, b)).epsilon(1e-9));

    CHECK(report.find("rhohat_over_sqrt_omega_L2").verdict == Verdict::kSatisfied);
    CHECK(report.find("rhohat_over_omega_L2").verdict == Verdict::kSatisfied);
    CHECK(report.find("rhohat_L1").verdict == Verdict::kSatisfied);
    CHECK(report.find("rhohat_over_omega_squared_L1").verdict == Verdict::kSatisfied);
    CHECK(report.find("rho_L1").verdict == Verdict::kSatisfied);
    // r^2 * r^{-3} e^{-r^2} integrates to (E1(a^2) - E1(b^2)) / 2: each halving of the inner radius adds ~ ln 2.
    const auto& log_div = report.find("rhohat_over_omega_three_halves_L2");
    const auto n = log_div.ladder.size();
    CHECK(log_div.ladder.back() ==
          doctest::Approx(area * 0.5 * (boost::math::expint(1, a * a) - boost::math::expint(1, b * b))).epsilon(1e-9));
    CHECK(log_div.ladder[n - 1] - log_div.ladder[n - 2] == doctest::Approx(area * std::log(2.0)).epsilon(1e-4));
    CHECK(log_div.verdict == Verdict::kViolated);
    REQUIRE(report.small_k_exponent.has_value());
    CHECK(std::abs(*report.small_k_exponent) < 1e-2);
  }
  SUBCASE("d=1 massless gaussian violates the omega^3 weight") {
    const auto report = check_conditions(SourceProfile::gaussian(1.0, 1.0, 1.0, 1), Dispersion::massless(), 1);
    CHECK(report.find("rhohat_over_omega_three_halves_L2").verdict == Verdict::kViolated);
    CHECK(report.any_violated());
    CHECK(report.group_verdict("A.2") == Verdict::kViolated);
  }
  SUBCASE("massive dispersion satisfies every weighted condition") {
    for (int d : {1, 2, 3}) {
      for (Real sigma : {0.5, 1.0, 2.0}) {
        const auto report = check_conditions(SourceProfile::gaussian(1.0, sigma, 1.0, d), Dispersion::massive(1.0), d);
        CHECK(report.all_satisfied());
      }
    }
  }
  SUBCASE("ladder classification on synthetic sequences") {
    const std::vector<Real> geometric = {1.0, 1.5, 1.75, 1.875, 1.9375};
    const std::vector<Real> linear = {1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<Real> mixed = {1.0, 2.0, 2.9, 3.8, 4.5};
    CHECK(classify_ladder(geometric) == Verdict::kSatisfied);
    CHECK(classify_ladder(linear) == Verdict::kViolated);
    CHECK(classify_ladder(mixed) == Verdict::kInconclusive);
    const std::vector<Real> flat = {2.0, 2.0, 2.0};
    CHECK(classify_ladder(flat) == Verdict::kSatisfied);
  }
  SUBCASE("sphere areas") {
    CHECK(sphere_area(1) == doctest::Approx(2.0));
    CHECK(sphere_area(2) == doctest::Approx(2.0 * kPi));
    CHECK(sphere_area(3) == doctest::Approx(4.0 * kPi));
  }
}

TEST_CASE("van Hove Hamiltonian") {
  SUBCASE("single-mode energy shift and lambda^2 scaling") {
    CHECK(single_mode_hamiltonian(4, 1.0).energy_shift == doctest::Approx(-0.5));
    const Real e1 = single_mode_hamiltonian(4, 0.37).energy_shift;
    const Real e2 = single_mode_hamiltonian(4, 0.74).energy_shift;
    CHECK(std::abs(e2 / e1 - 4.0) < 1e-12);
  }
  SUBCASE("free theory spectrum") {
    const fock::ModeGrid grid = fock::build_grid({1, 2, 1.0});
    const auto basis = make_basis(2, 3);
    const auto h = build_hamiltonian(grid, basis, Dispersion::massless(), SourceProfile::gaussian(1.0, 1.0, 0.0, 1));
    CHECK((h.total.to_dense() - h.free.to_dense()).norm() == 0.0);
    CHECK(h.energy_shift == 0.0);
    const ComplexMatrix dense = h.total.to_dense();
    for (std::size_t i = 0; i < basis->size(); ++i) {
      const auto& n = basis->state(i);
      const auto idx = static_cast<Eigen::Index>(i);
      CHECK(dense(idx, idx).real() == doctest::Approx(0.5 * (n[0] + n[1])));
    }
  }
  SUBCASE("hermitian and real symmetric for a real source on a symmetric grid") {
    const fock::ModeGrid grid = fock::build_grid({2, 4, 1.0});
    const auto h = build_hamiltonian(grid, make_basis(grid.size(), 2), Dispersion::massless(),
                                     SourceProfile::gaussian(1.0, 1.0, 0.5, 2));
    CHECK(h.total.hermitian());
    CHECK(h.free.hermitian());
    CHECK(fock::hermiticity_defect(h.total.matrix()) < 1e-13);
    CHECK(h.total.to_dense().imag().norm() == 0.0);
    CHECK((h.total.to_dense() - h.free.to_dense() - h.interaction.to_dense()).norm() == 0.0);
    CHECK(h.energy_shift <= 0.0);
  }
  SUBCASE("ground energy converges monotonically to the shift") {
    Real previous = 1e300;
    for (int n = 4; n <= 20; n += 2) {
      const auto h = single_mode_hamiltonian(n, 1.0);
      const Real e = *ground_energy(h);
      CHECK(e <= previous + 1e-12);
      previous = e;
    }
    CHECK(std::abs(previous - (-0.5)) < 1e-8);
    CHECK(std::abs(*ground_energy(single_mode_hamiltonian(12, 0.1)) - (-0.005)) < 1e-6);
  }
}

TEST_CASE("relative bound") {
  std::mt19937_64 rng(31);
  SUBCASE("constants") {
    const auto h = single_mode_hamiltonian(4, 0.5);
    const auto b = relative_bound_constants(h, 2.0);
    CHECK(b.c_interaction == doctest::Approx(std::sqrt(2.0) * 0.5));
    CHECK(b.d_interaction == doctest::Approx(0.5 / (std::sqrt(2.0) * 2.0) + 0.5 / std::sqrt(2.0)));
    const auto h2 = single_mode_hamiltonian(4, 1.0);
    CHECK(relative_bound_constants(h2, 2.0).c_interaction == doctest::Approx(2.0 * b.c_interaction));
    const auto free = single_mode_hamiltonian(4, 0.0);
    CHECK(relative_bound_constants(free, 1.0).c_interaction == 0.0);
    CHECK(relative_bound_constants(free, 1.0).d_interaction == 0.0);
    CHECK_THROWS_AS(relative_bound_constants(h, 0.0), InputError);
  }
  SUBCASE("holds on random states for the d=3 gaussian") {
    const fock::ModeGrid grid = fock::build_grid({3, 3, 1.5});
    const auto h = build_hamiltonian(grid, make_basis(grid.size(), 2), Dispersion::massless(),
                                     SourceProfile::gaussian(1.0, 1.0, 1.0, 3));
    const std::vector<Real> eps = {0.1, 1.0, 10.0};
    const auto check = check_relative_bound(h, eps, 100, rng);
    CHECK(check.trials == 300);
    CHECK(check.violations == 0);
    CHECK(check.worst_ratio <= 1.0);
  }
}

TEST_CASE("dressing operator") {
  std::mt19937_64 rng(17);
  SUBCASE("free theory gives the identity") {
    const auto h = single_mode_hamiltonian(5, 0.0);
    CHECK((dressing_operator(h).to_dense() - fock::identity(h.basis).to_dense()).norm() < 1e-15);
    const auto report = diagonalization_check(h, dressing_operator(h), 2, 5, rng);
    CHECK(report.max_residual == 0.0);
  }
  SUBCASE("vacuum is mapped to a coherent state") {
    for (int n : {8, 10}) {
      const auto h = single_mode_hamiltonian(n, 0.3);
      const auto u = dressing_operator(h);
      const auto alpha = coherent_amplitudes(h);
      CHECK(std::abs(alpha[0] - 0.3 / std::sqrt(2.0)) < 1e-15);
      // e^{-|a|^2/2} a^k / sqrt(k!)
      fock::StateVector expected = fock::zero_state(h.basis);
      for (int k = 0; k <= n; ++k) {
        expected[static_cast<std::size_t>(k)] =
            std::exp(-0.5 * std::norm(alpha[0])) * std::pow(alpha[0], k) / std::sqrt(std::tgamma(k + 1.0));
      }
      const auto dressed = u.apply(fock::vacuum(h.basis));
      CHECK(std::abs(std::abs(expected.inner(dressed)) - 1.0) < 1e-8);
    }
  }
  SUBCASE("multimode coherent amplitudes") {
    const fock::ModeGrid grid = fock::build_grid({1, 2, 1.0});
    const auto h = build_hamiltonian(grid, make_basis(2, 8), Dispersion::massive(1.0),
                                     SourceProfile::gaussian(1.0, 1.0, 0.4, 1));
    const auto alpha = coherent_amplitudes(h);
    const auto dressed = dressing_operator(h).apply(fock::vacuum(h.basis));
    // One-particle coefficients of a coherent state are e^{-sum|a|^2/2} alpha_j.
    Real total = 0.0;
    for (auto a : alpha) total += std::norm(a);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(std::abs(dressed[1 + j] - std::exp(-0.5 * total) * alpha[j]) < 1e-8);
      CHECK(std::abs(alpha[j] - std::sqrt(grid.weight(j) / 2.0) * h.coupling[j] / h.omega[j]) < 1e-15);
    }
  }
  SUBCASE("unitarity") {
    const fock::ModeGrid grid = fock::build_grid({1, 3, 1.5, fock::OffsetRule::kHalfStep});
    const auto h = build_hamiltonian(grid, make_basis(3, 5), Dispersion::massive(1.0),
                                     SourceProfile::gaussian(1.0, 1.0, 0.5, 1));
    const auto u = dressing_operator(h);
    CHECK(dressing_generator(h).hermitian());
    for (int trial = 0; trial < 10; ++trial) {
      const auto phi = fock::random_state(h.basis, rng);
      const auto psi = fock::random_state(h.basis, rng);
      CHECK(std::abs(u.apply(phi).inner(u.apply(psi)) - phi.inner(psi)) < 1e-10);
    }
  }
  SUBCASE("diagonalization residual decreases with N") {
    Real previous = 1e300;
    for (int n : {6, 8, 10, 12}) {
      const auto h = single_mode_hamiltonian(n, 0.1);
      const auto report = diagonalization_check(h, dressing_operator(h), 2, 10, rng);
      if (n >= 10) CHECK(report.max_residual <= 1e-6);
      CHECK(report.max_residual <= std::max(previous, 1e-14));
      previous = report.max_residual;
      CHECK(report.max_conjugation_residual <= 1e-4);
    }
  }
  SUBCASE("conjugated second quantization on low shells") {
    const fock::ModeGrid grid = fock::build_grid({1, 2, 1.0});
    const std::vector<Real> t = {0.7, 1.9};
    const ModeFunction g = {Complex{0.05, 0.02}, Complex{-0.03, 0.06}};
    Real previous = 1e300;
    for (int n : {6, 8, 10}) {
      const Real r = conjugated_second_quantization_residual(grid, make_basis(2, n), t, g, 2, 10, rng);
      CHECK(r <= std::max(previous, 1e-14));
      previous = r;
    }
    CHECK(previous < 1e-6);
  }
}
