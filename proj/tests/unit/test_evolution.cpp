#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "vanhove/evolution/evolution.hpp"
#include "vanhove/model/dressing.hpp"

using namespace vanhove;
using namespace vanhove::evolution;
using vanhove::testing::make_basis;
using vanhove::testing::relative_error;

namespace {

model::VanHoveHamiltonian single_mode(int cutoff, Real lambda, Real amplitude = 1.0) {
  return model::build_hamiltonian(fock::ModeGrid(1, {0.0}, {1.0}), make_basis(1, cutoff), model::Dispersion::massive(1.0),
                                  model::SourceProfile::gaussian(amplitude, 1.0, lambda, 1));
}

model::VanHoveHamiltonian three_modes(int cutoff, Real lambda) {
  const fock::ModeGrid grid = fock::build_grid({1, 3, 1.5, fock::OffsetRule::kHalfStep});
  return model::build_hamiltonian(grid, make_basis(3, cutoff), model::Dispersion::massive(1.0),
                                  model::SourceProfile::gaussian(1.0, 1.0, lambda, 1));
}

fock::StateVector one_particle_superposition(const fock::BasisPtr& basis, std::size_t mode) {
  return (fock::vacuum(basis) + fock::basis_state(basis, 1 + mode)) * Complex{1.0 / std::sqrt(2.0), 0.0};
}

}  // namespace

TEST_CASE("evolve_state") {
  std::mt19937_64 rng(5);
  const EvolutionContext ctx(three_modes(4, 0.5));
  const auto h = ctx.hamiltonian().total;

  SUBCASE("cached eigendecomposition reconstructs H") {
    const fock::HermitianEigensystem eig(h);
    CHECK((eig.reconstruct() - h.to_dense()).norm() / h.to_dense().norm() < 1e-10);
  }
  SUBCASE("t = 0 is the identity") {
    const auto psi = fock::random_state(ctx.basis(), rng);
    CHECK(relative_error(evolve_state(ctx, psi, 0.0), psi) < 1e-14);
  }
  SUBCASE("norm, group law and energy conservation") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto psi = fock::random_state(ctx.basis(), rng);
      const Real t1 = 0.3 + 0.1 * trial;
      const Real t2 = 1.1 - 0.05 * trial;
      const auto a = evolve_state(ctx, evolve_state(ctx, psi, t2), t1);
      const auto b = evolve_state(ctx, psi, t1 + t2);
      CHECK(std::abs(b.norm() - 1.0) < 1e-10);
      CHECK(relative_error(a, b) < 1e-9);
      const Complex e0 = psi.inner(h.apply(psi));
      const Complex et = b.inner(h.apply(b));
      CHECK(std::abs(et - e0) < 1e-10);
    }
  }
  SUBCASE("free one-particle states only pick up a phase") {
    const auto free = three_modes(3, 0.0);
    const EvolutionContext free_ctx(free);
    for (std::size_t j = 0; j < 3; ++j) {
      const auto psi = fock::basis_state(free_ctx.basis(), 1 + j);
      const auto out = evolve_state(free_ctx, psi, 1.3);
      CHECK(relative_error(out, psi * std::exp(Complex{0.0, -1.3 * free.omega[j]})) < 1e-12);
    }
  }
  SUBCASE("Krylov context agrees with the dense one") {
    fock::ExponentialConfig small;
    small.dense_threshold = 5;
    const EvolutionContext krylov(three_modes(4, 0.5), small);
    const auto psi = fock::random_state(ctx.basis(), rng);
    CHECK(relative_error(evolve_state(krylov, psi, 2.0), evolve_state(ctx, psi, 2.0)) < 1e-10);
  }
  SUBCASE("basis mismatch") {
    CHECK_THROWS_AS(evolve_state(ctx, fock::vacuum(make_basis(3, 3)), 1.0), BasisMismatch);
  }
}

TEST_CASE("initial amplitudes") {
  const auto basis = make_basis(3, 3);
  const fock::ModeGrid grid(1, {-1.0, 0.0, 1.0}, {0.5, 0.25, 2.0});
  const auto omega = fock::vacuum(basis);
  SUBCASE("vacuum Psi gives zero") {
    for (auto v : initial_amplitude(grid, omega, omega).values) CHECK(v == Complex{0.0, 0.0});
  }
  SUBCASE("one-particle Psi") {
    for (std::size_t j = 0; j < 3; ++j) {
      const auto f = initial_amplitude(grid, omega, fock::basis_state(basis, 1 + j)).values;
      for (std::size_t i = 0; i < 3; ++i) {
        const Real expected = i == j ? 1.0 / std::sqrt(grid.weight(j)) : 0.0;
        CHECK(std::abs(f[i] - expected) < 1e-15);
      }
    }
  }
  SUBCASE("coherent states are eigenvectors of the annihilators") {
    const fock::ModeGrid single(1, {0.0}, {1.0});
    const auto h = single_mode(12, 0.3);
    const auto dressed = model::dressing_operator(h).apply(fock::vacuum(h.basis));
    const auto alpha = model::coherent_amplitudes(h);
    const auto f0 = initial_amplitude(h.grid, dressed, dressed).values;
    CHECK(std::abs(f0[0] - alpha[0] / std::sqrt(h.grid.weight(0))) < 1e-8);
  }
  SUBCASE("swapping the pair and conjugating gives the creation-operator pairing") {
    std::mt19937_64 rng(9);
    const auto phi = fock::random_state(basis, rng);
    const auto psi = fock::random_state(basis, rng);
    const auto swapped = initial_amplitude(grid, psi, phi).values;
    for (std::size_t j = 0; j < 3; ++j) {
      const Complex direct = phi.inner(fock::mode_creator(basis, j).apply(psi)) / std::sqrt(grid.weight(j));
      CHECK(std::abs(std::conj(swapped[j]) - direct) < 1e-14);
    }
  }
}

TEST_CASE("Heisenberg amplitudes") {
  SUBCASE("vacuum in the free theory") {
    const EvolutionContext ctx(three_modes(3, 0.0));
    const auto v = fock::vacuum(ctx.basis());
    const auto f = heisenberg_amplitude(ctx, v, v, 0.8);
    for (auto x : f.values) CHECK(std::abs(x) == 0.0);
  }
  SUBCASE("free phase rotation") {
    const auto h = three_modes(3, 0.0);
    const EvolutionContext ctx(h);
    for (std::size_t j = 0; j < 3; ++j) {
      const auto s = one_particle_superposition(ctx.basis(), j);
      const auto f0 = initial_amplitude(ctx.grid(), s, s);
      const auto ft = heisenberg_amplitude(ctx, s, s, 1.7);
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(ft.values[i] - std::exp(Complex{0.0, -1.7 * h.omega[i]}) * f0.values[i]) < 1e-12);
        CHECK(std::abs((*ft.second_time_derivative)[i] + h.omega[i] * h.omega[i] * ft.values[i]) < 1e-12);
      }
    }
  }
  SUBCASE("second time derivative matches a finite difference") {
    const EvolutionContext ctx(three_modes(6, 0.3));
    std::mt19937_64 rng(12);
    const auto phi = fock::random_state(ctx.basis(), rng, 3);
    const auto psi = fock::random_state(ctx.basis(), rng, 3);
    const Real t = 0.6;
    const Real dt = 1e-3;
    const auto mid = heisenberg_amplitude(ctx, phi, psi, t);
    const auto up = heisenberg_amplitude(ctx, phi, psi, t + dt);
    const auto down = heisenberg_amplitude(ctx, phi, psi, t - dt);
    for (std::size_t j = 0; j < 3; ++j) {
      const Complex fd = (up.values[j] - 2.0 * mid.values[j] + down.values[j]) / (dt * dt);
      CHECK(std::abs(fd - (*mid.second_time_derivative)[j]) < 1e-5);
    }
  }
}

TEST_CASE("closed form against the numeric Heisenberg amplitude") {
  SUBCASE("free theory reduces to a phase rotation") {
    const auto h = single_mode(4, 0.0);
    const auto s = one_particle_superposition(h.basis, 0);
    const auto f0 = initial_amplitude(h.grid, s, s);
    const auto cf = closed_form_amplitude(h.grid, h.dispersion, model::SourceProfile::gaussian(1.0, 1.0, 0.0, 1), f0, 2.0);
    CHECK(std::abs(cf.values[0] - std::exp(Complex{0.0, -2.0}) * f0.values[0]) < 1e-15);
  }
  SUBCASE("dressed vacuum is static") {
    const auto profile = model::SourceProfile::gaussian(1.0, 1.0, 0.1, 1);
    const auto h = single_mode(12, 0.1);
    const auto v = fock::vacuum(h.basis);
    const auto f0 = initial_amplitude(h.grid, v, v);
    for (Real t : {0.0, 0.5, 1.0}) {
      const auto cf = closed_form_amplitude(h.grid, h.dispersion, profile, f0, t);
      CHECK(std::abs(cf.values[0] - 0.1 / std::sqrt(2.0)) < 1e-15);
    }
  }
  SUBCASE("single-mode dressed pairs converge in N") {
    // A = 10 keeps the truncation error above round-off over the whole ladder.
    const auto profile = model::SourceProfile::gaussian(10.0, 1.0, 0.1, 1);
    Real previous = 1e300;
    for (int n : {6, 8, 10, 12}) {
      const auto h = single_mode(n, 0.1, 10.0);
      const EvolutionContext ctx(h);
      const auto u = model::dressing_operator(h);
      const auto s = one_particle_superposition(h.basis, 0);
      const auto f0 = initial_amplitude(h.grid, s, s);
      Real worst = 0.0;
      for (Real t : {0.0, 0.7, 1.4}) {
        const auto numeric = heisenberg_amplitude(ctx, u.apply(s), u.apply(s), t);
        const auto closed = closed_form_amplitude(h.grid, h.dispersion, profile, f0, t);
        worst = std::max(worst, max_node_difference(numeric, closed));
      }
      if (n >= 12) CHECK(worst <= 1e-6);
      CHECK(worst < 0.1 * previous);
      previous = worst;
    }
  }
  SUBCASE("weak coupling is exact to round-off already at small N") {
    const auto profile = model::SourceProfile::gaussian(1.0, 1.0, 0.1, 1);
    const auto h = single_mode(12, 0.1);
    const EvolutionContext ctx(h);
    const auto u = model::dressing_operator(h);
    const auto v = fock::vacuum(h.basis);
    const auto f0 = initial_amplitude(h.grid, v, v);
    const auto numeric = heisenberg_amplitude(ctx, u.apply(v), u.apply(v), 0.9);
    CHECK(max_node_difference(numeric, closed_form_amplitude(h.grid, h.dispersion, profile, f0, 0.9)) < 1e-8);
  }
  SUBCASE("precondition on the pair overlap") {
    const auto h = single_mode(4, 0.1);
    const auto s = fock::basis_state(h.basis, 1);
    const auto f0 = initial_amplitude(h.grid, fock::vacuum(h.basis), s);
    CHECK_THROWS_AS(closed_form_amplitude(h.grid, h.dispersion, model::SourceProfile::gaussian(1.0, 1.0, 0.1, 1), f0, 0.0),
                    ContractViolation);
  }
}

TEST_CASE("amplitude bound") {
  std::mt19937_64 rng(21);
  const EvolutionContext ctx(three_modes(4, 0.4));
  SUBCASE("free vacuum is tight at zero") {
    const EvolutionContext free_ctx(three_modes(3, 0.0));
    const auto v = fock::vacuum(free_ctx.basis());
    const auto b = amplitude_bound_check(free_ctx, heisenberg_amplitude(free_ctx, v, v, 0.5), v, v, 0.5);
    CHECK(b.lhs == 0.0);
    CHECK(b.rhs == 0.0);
    CHECK(b.holds);
  }
  SUBCASE("random states") {
    int failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto phi = fock::random_state(ctx.basis(), rng);
      const auto psi = fock::random_state(ctx.basis(), rng);
      for (Real t : {0.0, 0.9, 2.5}) {
        const auto b = amplitude_bound_check(ctx, heisenberg_amplitude(ctx, phi, psi, t), phi, psi, t);
        if (!b.holds) ++failures;
      }
    }
    CHECK(failures == 0);
  }
  SUBCASE("homogeneity in Phi") {
    const auto phi = fock::random_state(ctx.basis(), rng);
    const auto psi = fock::random_state(ctx.basis(), rng);
    const auto phi2 = phi * Complex{2.0, 0.0};
    const auto b1 = amplitude_bound_check(ctx, heisenberg_amplitude(ctx, phi, psi, 0.4), phi, psi, 0.4);
    const auto b2 = amplitude_bound_check(ctx, heisenberg_amplitude(ctx, phi2, psi, 0.4), phi2, psi, 0.4);
    CHECK(b2.lhs == doctest::Approx(2.0 * b1.lhs).epsilon(1e-12));
    CHECK(b2.rhs == doctest::Approx(2.0 * b1.rhs).epsilon(1e-12));
  }
}
