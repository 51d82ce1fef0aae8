#include "vanhove/model/conditions.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace vanhove::model {

namespace {

// Quasi-uniform unit directions; exact averaging for radial integrands.
std::vector<std::vector<Real>> directions(int dimension) {
  std::vector<std::vector<Real>> out;
  const auto d = static_cast<std::size_t>(dimension);
  if (dimension == 1) {
    out = {{1.0}, {-1.0}};
  } else if (dimension == 2) {
    constexpr int kCount = 32;
    for (int i = 0; i < kCount; ++i) {
      const Real theta = 2.0 * kPi * (i + 0.5) / kCount;
      out.push_back({std::cos(theta), std::sin(theta)});
    }
  } else if (dimension == 3) {
    constexpr int kCount = 96;
    const Real golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < kCount; ++i) {
      const Real z = 1.0 - 2.0 * (i + 0.5) / kCount;
      const Real rho = std::sqrt(1.0 - z * z);
      out.push_back({rho * std::cos(golden * i), rho * std::sin(golden * i), z});
    }
  } else {
    for (std::size_t a = 0; a < d; ++a) {
      for (Real s : {1.0, -1.0}) {
        std::vector<Real> u(d, 0.0);
        u[a] = s;
        out.push_back(u);
      }
    }
    if (dimension <= 8) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        std::vector<Real> u(d);
        for (std::size_t a = 0; a < d; ++a) u[a] = ((mask >> a) & 1U ? -1.0 : 1.0) / std::sqrt(static_cast<Real>(d));
        out.push_back(u);
      }
    }
  }
  return out;
}

Real shell_integral(const std::function<Real(Real)>& radial, Real a, Real b) {
  Real total = 0.0;
  // Split at doublings so each piece sees at most a factor-2 range of r.
  Real lo = a;
  while (lo < b) {
    const Real hi = std::min(b, 2.0 * lo);
    total += boost::math::quadrature::gauss_kronrod<Real, 31>::integrate(radial, lo, hi, 6, 1e-11);
    lo = hi;
  }
  return total;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kSatisfied:
      return "satisfied";
    case Verdict::kViolated:
      return "violated";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Real sphere_area(int dimension) {
  const Real half = 0.5 * dimension;
  return 2.0 * std::pow(kPi, half) / std::tgamma(half);
}

std::vector<Real> integrate_ladder(const std::function<Real(std::span<const Real>)>& integrand, int dimension,
                                   const LadderConfig& config) {
  if (dimension < 1) throw InvalidParameter("dimension must be >= 1");
  if (config.levels < 2) throw InvalidParameter("refinement ladder needs at least 2 levels");
  if (!(config.inner_radius > 0.0) || !(config.outer_radius > config.inner_radius) || !(config.refinement > 1.0)) {
    throw InvalidParameter("invalid ladder radii");
  }
  const auto dirs = directions(dimension);
  const Real area = sphere_area(dimension);
  std::function<Real(Real)> radial = [&](Real r) {
    std::vector<Real> k(static_cast<std::size_t>(dimension));
    Real acc = 0.0;
    for (const auto& u : dirs) {
      for (std::size_t a = 0; a < k.size(); ++a) k[a] = r * u[a];
      acc += integrand(k);
    }
    return area * std::pow(r, dimension - 1) * acc / static_cast<Real>(dirs.size());
  };

  std::vector<Real> ladder;
  Real inner = config.inner_radius;
  Real outer = config.outer_radius;
  Real total = shell_integral(radial, inner, outer);
  ladder.push_back(total);
  for (int level = 1; level < config.levels; ++level) {
    const Real next_inner = inner / config.refinement;
    total += shell_integral(radial, next_inner, inner);
    inner = next_inner;
    if (config.grow_outer) {
      const Real next_outer = outer * config.refinement;
      total += shell_integral(radial, outer, next_outer);
      outer = next_outer;
    }
    ladder.push_back(total);
  }
  return ladder;
}

Verdict classify_ladder(std::span<const Real> ladder, const LadderConfig& config) {
  if (ladder.size() < 3) return Verdict::kInconclusive;
  Real scale = 0.0;
  for (Real v : ladder) {
    if (!std::isfinite(v)) return Verdict::kViolated;
    scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0) return Verdict::kSatisfied;
  const Real floor = config.relative_floor * scale;

  std::vector<Real> diffs;
  for (std::size_t i = 1; i < ladder.size(); ++i) diffs.push_back(std::abs(ladder[i] - ladder[i - 1]));
  if (diffs.back() <= floor) return Verdict::kSatisfied;

  const std::size_t n = diffs.size();
  const Real last = diffs[n - 1] / std::max(diffs[n - 2], floor);
  const Real prev = n >= 3 ? diffs[n - 2] / std::max(diffs[n - 3], floor) : last;
  if (last <= config.contraction && prev <= config.contraction) return Verdict::kSatisfied;
  if (last >= config.divergence && prev >= config.divergence) return Verdict::kViolated;
  return Verdict::kInconclusive;
}

const ConditionEstimate& ConditionReport::find(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return c;
  }
  throw InputError("no condition named " + name);
}

Verdict ConditionReport::group_verdict(const std::string& group) const {
  Verdict out = Verdict::kSatisfied;
  for (const auto& c : conditions) {
    if (c.group != group) continue;
    if (c.verdict == Verdict::kViolated) return Verdict::kViolated;
    if (c.verdict == Verdict::kInconclusive) out = Verdict::kInconclusive;
  }
  return out;
}

bool ConditionReport::all_satisfied() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const auto& c) { return c.verdict == Verdict::kSatisfied; });
}

bool ConditionReport::any_violated() const {
  return std::any_of(conditions.begin(), conditions.end(),
                     [](const auto& c) { return c.verdict == Verdict::kViolated; });
}

ConditionReport check_conditions(const SourceProfile& profile, const Dispersion& dispersion, int dimension,
                                 const LadderConfig& config) {
  if (profile.dimension() != dimension) throw InvalidParameter("profile dimension differs from requested d");
  ConditionReport report;
  report.dimension = dimension;

  auto guarded = [&](auto&& fn) {
    return [&, fn](std::span<const Real> k) {
      const Real value = fn(k);
      if (!std::isfinite(value)) {
        Real norm = 0.0;
        for (Real c : k) norm += c * c;
        if (norm > 0.0) throw ProfileError("integrand is not finite away from the origin");
      }
      return value;
    };
  };

  auto rho_hat_abs = [&](std::span<const Real> k) { return std::abs(profile.rho_hat(k)); };
  auto add = [&](std::string name, std::string statement, std::string group,
                 const std::function<Real(std::span<const Real>)>& integrand) {
    ConditionEstimate est;
    est.name = std::move(name);
    est.statement = std::move(statement);
    est.group = std::move(group);
    est.ladder = integrate_ladder(integrand, dimension, config);
    est.verdict = classify_ladder(est.ladder, config);
    report.conditions.push_back(std::move(est));
  };

  if (profile.has_position_form()) {
    add("rho_L1", "int |rho(x)| dx < inf", "A.1",
        guarded([&](std::span<const Real> x) { return std::abs(*profile.rho(x)); }));
  } else {
    ConditionEstimate est;
    est.name = "rho_L1";
    est.statement = "int |rho(x)| dx < inf (position form unavailable for tabulated sources)";
    est.group = "A.1";
    est.verdict = Verdict::kInconclusive;
    report.conditions.push_back(est);
  }
  for (int l : {1, 2, 3}) {
    const std::string names[] = {"", "rhohat_over_sqrt_omega_L2", "rhohat_over_omega_L2",
                                 "rhohat_over_omega_three_halves_L2"};
    add(names[l], "int |rhohat|^2 / omega^" + std::to_string(l) + " dk < inf", l < 3 ? "A.1" : "A.2",
        guarded([&, l](std::span<const Real> k) {
          const Real a = rho_hat_abs(k);
          return a * a / std::pow(dispersion(k), l);
        }));
  }
  add("rhohat_L1", "int |rhohat| dk < inf", "A.2", guarded(rho_hat_abs));
  add("rhohat_over_omega_squared_L1", "int |rhohat| / omega^2 dk < inf", "A.2",
      guarded([&](std::span<const Real> k) {
        const Real w = dispersion(k);
        return rho_hat_abs(k) / (w * w);
      }));

  // Small-k power law of |rhohat|, direction averaged.
  const auto dirs = directions(dimension);
  std::vector<Real> xs;
  std::vector<Real> ys;
  for (int i = 0; i < 5; ++i) {
    const Real r = std::pow(10.0, -3.0 + 0.5 * i);
    Real acc = 0.0;
    std::vector<Real> k(static_cast<std::size_t>(dimension));
    for (const auto& u : dirs) {
      for (std::size_t a = 0; a < k.size(); ++a) k[a] = r * u[a];
      acc += rho_hat_abs(k);
    }
    acc /= static_cast<Real>(dirs.size());
    if (!(acc > 0.0) || !std::isfinite(acc)) {
      xs.clear();
      break;
    }
    xs.push_back(std::log(r));
    ys.push_back(std::log(acc));
  }
  if (!xs.empty()) {
    const Real n = static_cast<Real>(xs.size());
    Real sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    report.small_k_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return report;
}

}  // namespace vanhove::model
