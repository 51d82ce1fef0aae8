#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vanhove/model/dispersion.hpp"
#include "vanhove/model/source_profile.hpp"

namespace vanhove::model {

enum class Verdict { kSatisfied, kViolated, kInconclusive };

const char* to_string(Verdict v);

/// Radial refinement ladder: level i integrates over eps_0 r^-i <= |k| <= R_0 r^i.
struct LadderConfig {
  int levels = 7;
  Real inner_radius = 0.25;
  Real outer_radius = 4.0;
  Real refinement = 2.0;
  bool grow_outer = true;
  Real contraction = 0.75;    // successive-difference ratio at or below this -> Cauchy
  Real divergence = 0.95;     // ratio at or above this on the tail -> divergent
  Real relative_floor = 1e-12;
};

struct ConditionEstimate {
  std::string name;
  std::string statement;
  std::string group;  // "A.1" or "A.2"
  std::vector<Real> ladder;
  Verdict verdict = Verdict::kInconclusive;
};

struct ConditionReport {
  int dimension = 0;
  std::vector<ConditionEstimate> conditions;
  /// Least-squares slope of log|rhohat| vs log|k| near the origin; nullopt when rhohat vanishes there.
  std::optional<Real> small_k_exponent;

  const ConditionEstimate& find(const std::string& name) const;
  Verdict group_verdict(const std::string& group) const;
  bool all_satisfied() const;
  bool any_violated() const;
};

/// Surface area of the unit sphere S^{d-1}.
Real sphere_area(int dimension);

/// Ladder values of int_{R^d} integrand(k) dk over growing annuli, computed by
/// adaptive Gauss-Kronrod on the direction-averaged radial profile.
std::vector<Real> integrate_ladder(const std::function<Real(std::span<const Real>)>& integrand, int dimension,
                                   const LadderConfig& config = {});

Verdict classify_ladder(std::span<const Real> ladder, const LadderConfig& config = {});

ConditionReport check_conditions(const SourceProfile& profile, const Dispersion& dispersion, int dimension,
                                 const LadderConfig& config = {});

}  // namespace vanhove::model
