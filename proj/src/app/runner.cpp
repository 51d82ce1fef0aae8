#include "vanhove/app/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "vanhove/evolution/evolution.hpp"
#include "vanhove/field/field.hpp"
#include "vanhove/fock/occupation_basis.hpp"
#include "vanhove/model/conditions.hpp"
#include "vanhove/model/dressing.hpp"
#include "vanhove/model/hamiltonian.hpp"

namespace vanhove::app {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();

class Csv {
 public:
  explicit Csv(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw Error("cannot write " + path.string());
    out_ << std::setprecision(17);
  }
  template <class T>
  Csv& operator<<(const T& v) {
    out_ << v;
    return *this;
  }
  void cells(std::span<const Real> values) {
    for (Real v : values) out_ << ',' << v;
  }

 private:
  std::ofstream out_;
};

json number(Real v) { return std::isfinite(v) ? json(v) : json(nullptr); }

model::SourceProfile make_profile(const Scenario& s) {
  if (s.source == SourceKind::kGaussian) return model::SourceProfile::gaussian(s.amplitude, s.width, s.coupling, s.dimension);
  return model::load_tabulated_source(s.table, s.dimension, s.coupling);
}

std::string axis_header(char prefix, int d) {
  std::string out;
  for (int a = 0; a < d; ++a) out += std::string(",") + prefix + std::to_string(a + 1);
  return out;
}

struct Pipeline {
  fock::ModeGrid grid;
  fock::BasisPtr basis;
  model::Dispersion dispersion;
  model::SourceProfile profile;
  model::VanHoveHamiltonian hamiltonian;
};

Pipeline build_pipeline(const Scenario& s) {
  fock::ModeGrid grid = fock::build_grid(s.grid_spec());
  if (!fock::basis_size(static_cast<int>(grid.size()), s.excitation, s.limits.max_basis)) {
    throw CapacityError("basis for M = " + std::to_string(grid.size()) + ", N = " + std::to_string(s.excitation) +
                        " exceeds limits.max_basis = " + std::to_string(s.limits.max_basis));
  }
  auto basis = std::make_shared<const fock::OccupationBasis>(static_cast<int>(grid.size()), s.excitation, s.limits.max_basis);
  const model::Dispersion dispersion = s.make_dispersion();
  model::SourceProfile profile = make_profile(s);
  model::VanHoveHamiltonian h = model::build_hamiltonian(grid, basis, dispersion, profile);
  return {std::move(grid), std::move(basis), dispersion, std::move(profile), std::move(h)};
}

std::pair<fock::StateVector, fock::StateVector> undressed_pair(const Scenario& s, const fock::BasisPtr& basis) {
  switch (s.pair) {
    case PairKind::kDressedVacuum:
      return {fock::vacuum(basis), fock::vacuum(basis)};
    case PairKind::kDressedOneParticle: {
      if (s.mode >= static_cast<std::size_t>(basis->mode_count())) {
        throw InputError("states.mode = " + std::to_string(s.mode) + " is outside the grid");
      }
      const auto v = (fock::vacuum(basis) + fock::basis_state(basis, 1 + s.mode)) * Complex{1.0 / std::sqrt(2.0), 0.0};
      return {v, v};
    }
    case PairKind::kFile:
      return load_state_pair(s.pair_file, basis);
  }
  throw InputError("unknown state pair");
}

void write_conditions(const std::filesystem::path& path, const model::ConditionReport& report) {
  Csv csv(path);
  csv << "name,group,verdict,estimate,ladder\n";
  for (const auto& c : report.conditions) {
    csv << c.name << ',' << c.group << ',' << model::to_string(c.verdict) << ',';
    if (c.ladder.empty()) {
      csv << "nan,";
    } else {
      csv << c.ladder.back() << ',';
    }
    for (std::size_t i = 0; i < c.ladder.size(); ++i) csv << (i ? ";" : "") << c.ladder[i];
    csv << '\n';
  }
}

json conditions_json(const model::ConditionReport& report) {
  json out = json::object();
  for (const auto& c : report.conditions) {
    out[c.name] = {{"group", c.group},
                   {"verdict", model::to_string(c.verdict)},
                   {"estimate", c.ladder.empty() ? json(nullptr) : number(c.ladder.back())}};
  }
  out["small_k_exponent"] = report.small_k_exponent ? number(*report.small_k_exponent) : json(nullptr);
  return out;
}

class Recorder {
 public:
  CheckResult& add(std::string name, Stage stage, CheckStatus status, std::string detail = {}) {
    checks_.push_back({std::move(name), stage, status, std::move(detail), {}});
    return checks_.back();
  }
  CheckResult& pass_if(bool ok, std::string name, Stage stage, std::string detail = {}) {
    return add(std::move(name), stage, ok ? CheckStatus::kPass : CheckStatus::kFail, std::move(detail));
  }
  int exit_code() const {
    for (const auto& c : checks_) {
      if (c.status == CheckStatus::kFail) return static_cast<int>(c.stage);
    }
    return 0;
  }
  std::vector<CheckResult>& checks() { return checks_; }

 private:
  std::vector<CheckResult> checks_;
};

json checks_json(const std::vector<CheckResult>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    json entry = {{"name", c.name}, {"stage", to_string(c.stage)}, {"status", to_string(c.status)}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    for (const auto& [k, v] : c.metrics) entry[k] = number(v);
    out.push_back(entry);
  }
  return out;
}

json scenario_json(const Scenario& s) {
  return {{"name", s.name},
          {"file", s.source_file.string()},
          {"dimension", s.dimension},
          {"dispersion", s.dispersion == model::DispersionKind::kMassless ? "massless" : "massive"},
          {"mass", s.mass},
          {"nodes_per_axis", s.nodes_per_axis},
          {"cutoff", s.cutoff},
          {"N", s.excitation},
          {"source", s.source == SourceKind::kGaussian ? "gaussian" : "tabulated"},
          {"A", s.amplitude},
          {"sigma", s.width},
          {"lambda", s.coupling},
          {"pair", to_string(s.pair)},
          {"mode", s.mode},
          {"seed", s.seed},
          {"allow_ir_risk", s.allow_ir_risk}};
}

RunResult finish(const Scenario& s, Recorder& rec, json summary, bool aborted) {
  RunResult result;
  result.exit_code = rec.exit_code();
  result.checks = rec.checks();
  result.aborted = aborted;
  summary["scenario"] = scenario_json(s);
  summary["checks"] = checks_json(result.checks);
  summary["aborted"] = aborted;
  summary["exit_code"] = result.exit_code;
  summary["exit_stage"] = to_string(static_cast<Stage>(result.exit_code));
  summary["passed"] = result.exit_code == 0;
  result.summary_path = s.output / "summary.json";
  std::ofstream out(result.summary_path);
  out << std::setprecision(17) << summary.dump(2) << '\n';
  return result;
}

// Conditions stage shared by run and check-conditions. Returns false when the run must stop.
bool conditions_stage(const Scenario& s, const model::SourceProfile& profile, Recorder& rec, json& summary) {
  const model::ConditionReport report = model::check_conditions(profile, s.make_dispersion(), s.dimension);
  write_conditions(s.output / "conditions.csv", report);
  summary["conditions"] = conditions_json(report);
  const bool massless = s.dispersion == model::DispersionKind::kMassless;
  if (!report.any_violated()) {
    auto& c = rec.add("conditions", Stage::kConditions, CheckStatus::kPass);
    if (!report.all_satisfied()) c.detail = "some verdicts inconclusive";
    return true;
  }
  std::string violated;
  for (const auto& c : report.conditions) {
    if (c.verdict == model::Verdict::kViolated) violated += (violated.empty() ? "" : ", ") + c.name;
  }
  // A.1 failures leave H_I itself undefined; only A.2 (dressing) failures can be waived.
  const bool interaction_defined = report.group_verdict("A.1") != model::Verdict::kViolated;
  if (massless && s.allow_ir_risk && interaction_defined) {
    rec.add("conditions", Stage::kConditions, CheckStatus::kWaived, "violated: " + violated + " (IR risk accepted)");
    return true;
  }
  rec.add("conditions", Stage::kConditions, CheckStatus::kFail, "violated: " + violated);
  return !massless;
}

}  // namespace

const char* to_string(Stage stage) {
  switch (stage) {
    case Stage::kOk:
      return "ok";
    case Stage::kConfiguration:
      return "configuration";
    case Stage::kConditions:
      return "conditions";
    case Stage::kHamiltonian:
      return "hamiltonian";
    case Stage::kDiagonalization:
      return "diagonalization";
    case Stage::kAmplitudes:
      return "amplitudes";
    case Stage::kField:
      return "field";
    case Stage::kFiniteDifferences:
      return "finite-differences";
    case Stage::kBounds:
      return "bounds";
    case Stage::kCapacity:
      return "capacity";
    case Stage::kBudget:
      return "budget";
    case Stage::kInternal:
      return "internal";
  }
  return "internal";
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkipped:
      return "skipped";
    case CheckStatus::kWaived:
      return "waived";
  }
  return "fail";
}

const CheckResult* RunResult::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::pair<fock::StateVector, fock::StateVector> load_state_pair(const std::filesystem::path& path,
                                                                const fock::BasisPtr& basis) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file " + path.string());
  fock::StateVector phi = fock::zero_state(basis);
  fock::StateVector psi = fock::zero_state(basis);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::istringstream row(hash == std::string::npos ? raw : raw.substr(0, hash));
    std::string which;
    if (!(row >> which)) continue;
    Real re = 0.0;
    Real im = 0.0;
    if (!(row >> re >> im)) throw InputError(path.string() + ":" + std::to_string(line) + ": expected re im");
    std::vector<std::uint16_t> occ;
    long long n = 0;
    while (row >> n) {
      if (n < 0) throw InputError(path.string() + ":" + std::to_string(line) + ": negative occupation");
      occ.push_back(static_cast<std::uint16_t>(n));
    }
    if (occ.size() != static_cast<std::size_t>(basis->mode_count())) {
      throw InputError(path.string() + ":" + std::to_string(line) + ": expected " + std::to_string(basis->mode_count()) +
                       " occupations");
    }
    const auto index = basis->find(occ);
    if (!index) throw InputError(path.string() + ":" + std::to_string(line) + ": state outside the truncated basis");
    if (which == "phi") {
      phi[*index] += Complex{re, im};
    } else if (which == "psi") {
      psi[*index] += Complex{re, im};
    } else {
      throw InputError(path.string() + ":" + std::to_string(line) + ": first column must be phi or psi");
    }
  }
  return {phi, psi};
}

RunResult run_condition_check(const Scenario& s) {
  std::filesystem::create_directories(s.output);
  Recorder rec;
  json summary;
  const bool go_on = conditions_stage(s, make_profile(s), rec, summary);
  return finish(s, rec, summary, !go_on);
}

RunResult run_scenario(const Scenario& s) {
  const auto start = Clock::now();
  std::filesystem::create_directories(s.output);
  Recorder rec;
  json summary;
  std::mt19937_64 rng(s.seed);

  auto over_budget = [&] {
    const Real elapsed = std::chrono::duration<Real>(Clock::now() - start).count();
    if (elapsed <= s.limits.wall_seconds) return false;
    rec.add("budget", Stage::kBudget, CheckStatus::kFail,
            "wall time " + std::to_string(elapsed) + " s exceeds limits.wall_seconds");
    return true;
  };

  const model::SourceProfile profile = make_profile(s);
  if (!conditions_stage(s, profile, rec, summary)) return finish(s, rec, summary, true);

  std::optional<Pipeline> pipe;
  try {
    pipe.emplace(build_pipeline(s));
  } catch (const CapacityError& e) {
    rec.add("capacity", Stage::kCapacity, CheckStatus::kFail, e.what());
    return finish(s, rec, summary, true);
  } catch (const ContractViolation& e) {
    rec.add("configuration", Stage::kConfiguration, CheckStatus::kFail, e.what());
    return finish(s, rec, summary, true);
  }
  const auto& h = pipe->hamiltonian;
  const auto& grid = pipe->grid;
  const auto& basis = pipe->basis;
  const auto config = s.exponential_config();

  // Hamiltonian
  {
    const auto ground = model::ground_energy(h, config);
    json hs = {{"modes", grid.size()},
               {"basis_size", basis->size()},
               {"grid_symmetric", grid.symmetric()},
               {"energy_shift", h.energy_shift},
               {"min_eigenvalue", ground ? number(*ground) : json(nullptr)},
               {"hermitian", h.total.hermitian()}};
    summary["hamiltonian"] = hs;
    rec.pass_if(h.total.hermitian(), "hamiltonian_hermitian", Stage::kHamiltonian);
    const auto bound = model::check_relative_bound(h, s.epsilons, s.trials, rng);
    auto& c = rec.pass_if(bound.violations == 0, "relative_bound", Stage::kHamiltonian);
    c.metrics = {{"trials", bound.trials}, {"violations", bound.violations}, {"worst_ratio", bound.worst_ratio}};
    summary["relative_bound"] = {{"epsilons", s.epsilons},
                                 {"c_interaction", model::relative_bound_constants(h, 1.0).c_interaction},
                                 {"trials", bound.trials},
                                 {"violations", bound.violations},
                                 {"worst_ratio", bound.worst_ratio}};
  }
  if (over_budget()) return finish(s, rec, summary, true);

  // Diagonalization
  if (basis->size() > config.dense_threshold) {
    rec.add("diagonalization", Stage::kDiagonalization, CheckStatus::kSkipped, "basis above limits.dense_threshold");
  } else if (s.excitation < s.low_shell + 2) {
    rec.add("diagonalization", Stage::kDiagonalization, CheckStatus::kSkipped,
            "fock.N below run.low_shell + 2; truncation dominates the low shells");
  } else {
    const auto u = model::dressing_operator(h, config);
    const auto report = model::diagonalization_check(h, u, s.low_shell, s.trials, rng);
    auto& c = rec.pass_if(report.max_residual <= s.tolerances.diagonalization, "diagonalization", Stage::kDiagonalization);
    c.metrics = {{"low_shell", s.low_shell},
                 {"max_residual", report.max_residual},
                 {"max_conjugation_residual", report.max_conjugation_residual}};
    summary["diagonalization"] = {{"low_shell", s.low_shell},
                                  {"max_residual", report.max_residual},
                                  {"max_conjugation_residual", report.max_conjugation_residual}};
  }
  if (over_budget()) return finish(s, rec, summary, true);

  // Amplitudes
  const auto [phi, psi] = undressed_pair(s, basis);
  const bool same_pair = (phi - psi).norm() == 0.0;
  const auto f0 = evolution::initial_amplitude(grid, phi, psi);
  const auto g0 = evolution::initial_amplitude(grid, psi, phi);
  std::vector<evolution::AmplitudeField> closed_f;
  std::vector<evolution::AmplitudeField> closed_g;
  try {
    for (Real t : s.times) {
      closed_f.push_back(evolution::closed_form_amplitude(grid, pipe->dispersion, pipe->profile, f0, t));
      closed_g.push_back(evolution::closed_form_amplitude(grid, pipe->dispersion, pipe->profile, g0, t));
    }
  } catch (const ContractViolation& e) {
    rec.add("closed_form", Stage::kAmplitudes, CheckStatus::kFail, e.what());
    return finish(s, rec, summary, true);
  }
  {
    Csv fcsv(s.output / "amplitudes_phi_psi.csv");
    Csv gcsv(s.output / "amplitudes_psi_phi.csv");
    const std::string header = "t" + axis_header('k', s.dimension) + ",re,im\n";
    fcsv << header;
    gcsv << header;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        fcsv << s.times[i];
        fcsv.cells(grid.node(j));
        fcsv << ',' << closed_f[i].values[j].real() << ',' << closed_f[i].values[j].imag() << '\n';
        gcsv << s.times[i];
        gcsv.cells(grid.node(j));
        gcsv << ',' << closed_g[i].values[j].real() << ',' << closed_g[i].values[j].imag() << '\n';
      }
    }
  }
  if (s.numeric_amplitudes) {
    const evolution::EvolutionContext ctx(h, config);
    const fock::Propagator dress(model::dressing_generator(h), config);
    const auto dphi = dress.apply(phi, 1.0);
    const auto dpsi = dress.apply(psi, 1.0);
    Real worst = 0.0;
    int bound_failures = 0;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      const auto numeric = evolution::heisenberg_amplitude(ctx, dphi, dpsi, s.times[i]);
      worst = std::max(worst, evolution::max_node_difference(numeric, closed_f[i]));
      if (!evolution::amplitude_bound_check(ctx, numeric, dphi, dpsi, s.times[i]).holds) ++bound_failures;
    }
    auto& c = rec.pass_if(worst <= s.tolerances.amplitude, "amplitude_cross_check", Stage::kAmplitudes);
    c.metrics = {{"max_node_error", worst}, {"tolerance", s.tolerances.amplitude}};
    auto& b = rec.pass_if(bound_failures == 0, "amplitude_bound", Stage::kBounds);
    b.metrics = {{"failures", bound_failures}};
  } else {
    rec.add("amplitude_cross_check", Stage::kAmplitudes, CheckStatus::kSkipped, "evaluation.numeric_amplitudes = false");
  }
  {
    int failures = 0;
    for (int l : {0, 1, 2}) {
      if (!field::integrability_diagnostics(f0, grid, pipe->dispersion, l, phi, psi).holds) ++failures;
    }
    rec.pass_if(failures == 0, "integrability_bound", Stage::kBounds).metrics = {{"failures", failures}};
  }
  if (over_budget()) return finish(s, rec, summary, true);

  // Field and residuals
  const auto points = field::line_points(s.dimension, s.sample_length(), s.points);
  {
    Csv fcsv(s.output / "field.csv");
    Csv rcsv(s.output / "residual.csv");
    fcsv << "t" << axis_header('x', s.dimension) << ",re,im\n";
    rcsv << "t" << axis_header('x', s.dimension) << ",residual,method,h\n";
    Real worst_residual = 0.0;
    Real worst_imag = 0.0;
    Real worst_static = 0.0;
    Real scale = 0.0;
    std::vector<Complex> first;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      const auto sample = field::classical_field(closed_f[i], closed_g[i], grid, pipe->dispersion, points);
      const auto report = field::modewise_residual(closed_f[i], closed_g[i], grid, pipe->dispersion, pipe->profile, points);
      scale = std::max(scale, report.scale);
      worst_residual = std::max(worst_residual, report.max_abs);
      for (std::size_t p = 0; p < points.size(); ++p) {
        fcsv << s.times[i];
        fcsv.cells(points.point(p));
        fcsv << ',' << sample.values[p].real() << ',' << sample.values[p].imag() << '\n';
        rcsv << s.times[i];
        rcsv.cells(points.point(p));
        rcsv << ',' << std::abs(report.residual[p]) << ",modewise,0\n";
        worst_imag = std::max(worst_imag, std::abs(sample.values[p].imag()));
      }
      if (first.empty()) {
        first = sample.values;
      } else {
        for (std::size_t p = 0; p < points.size(); ++p) worst_static = std::max(worst_static, std::abs(sample.values[p] - first[p]));
      }

      if (s.finite_differences && s.fd_steps.size() >= 2 && report.scale == 0.0) {
        rec.add("finite_difference_order_t" + std::to_string(i), Stage::kFiniteDifferences, CheckStatus::kSkipped,
                "field and source vanish identically");
      } else if (s.finite_differences && s.fd_steps.size() >= 2) {
        const auto sampler = field::closed_form_sampler(grid, pipe->dispersion, pipe->profile, f0, g0);
        const auto ladder =
            field::finite_difference_ladder(sampler, pipe->profile, grid, pipe->dispersion, points, s.times[i], s.fd_steps);
        for (std::size_t r = 0; r < ladder.reports.size(); ++r) {
          for (std::size_t p = 0; p < points.size(); ++p) {
            rcsv << s.times[i];
            rcsv.cells(points.point(p));
            rcsv << ',' << std::abs(ladder.reports[r].residual[p]) << ",finite-difference," << ladder.steps[r] << '\n';
          }
        }
        const Real order = ladder.final_order();
        auto& c = rec.pass_if(order >= s.tolerances.fd_order_low && order <= s.tolerances.fd_order_high,
                              "finite_difference_order_t" + std::to_string(i), Stage::kFiniteDifferences);
        c.metrics = {{"t", s.times[i]}, {"order", order}, {"finest_residual", ladder.reports.back().max_abs}};
        if (!ladder.warnings.empty()) c.detail = ladder.warnings.front();
        Real agreement = 0.0;
        for (std::size_t p = 0; p < points.size(); ++p) {
          const Real limit = std::max(ladder.reports.back().max_abs / 10.0, 10.0 * std::abs(report.residual[p]));
          agreement = std::max(agreement, std::abs(ladder.extrapolated[p] - report.residual[p]) / std::max(limit, 1e-300));
        }
        rec.pass_if(agreement <= 1.0, "finite_difference_agreement_t" + std::to_string(i), Stage::kFiniteDifferences)
            .metrics = {{"t", s.times[i]}, {"ratio_to_limit", agreement}};
      }
    }
    auto& c = rec.pass_if(worst_residual <= s.tolerances.residual * scale, "modewise_residual", Stage::kField);
    c.metrics = {{"max_residual", worst_residual}, {"scale", scale}, {"relative", scale > 0.0 ? worst_residual / scale : 0.0}};
    if (same_pair) {
      rec.pass_if(worst_imag <= s.tolerances.reality * std::max(scale, 1e-300), "field_reality", Stage::kField).metrics = {
          {"max_imag", worst_imag}};
    }
    if (s.pair == PairKind::kDressedVacuum) {
      rec.pass_if(worst_static <= s.tolerances.static_field * std::max(scale, 1e-300), "field_static", Stage::kField)
          .metrics = {{"max_change", worst_static}};
    }
    summary["field"] = {{"points", points.size()}, {"line_length", s.sample_length()}, {"scale", scale},
                        {"max_residual", worst_residual}};
  }
  over_budget();
  return finish(s, rec, summary, false);
}

SweepAxis parse_sweep_axis(const std::string& text) {
  if (text == "N") return SweepAxis::kExcitation;
  if (text == "n") return SweepAxis::kNodes;
  if (text == "K") return SweepAxis::kCutoff;
  if (text == "h") return SweepAxis::kStep;
  throw ScenarioError("unknown sweep axis '" + text + "' (expected N, n, K or h)");
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kExcitation:
      return "N";
    case SweepAxis::kNodes:
      return "n";
    case SweepAxis::kCutoff:
      return "K";
    case SweepAxis::kStep:
      return "h";
  }
  return "N";
}

SweepResult convergence_sweep(const Scenario& base, SweepAxis axis) {
  const std::vector<Real>* values = nullptr;
  switch (axis) {
    case SweepAxis::kExcitation:
      values = &base.sweep_excitation;
      break;
    case SweepAxis::kNodes:
      values = &base.sweep_nodes;
      break;
    case SweepAxis::kCutoff:
      values = &base.sweep_cutoff;
      break;
    case SweepAxis::kStep:
      values = &base.sweep_steps;
      break;
  }
  if (values->size() < 3) {
    throw ScenarioError(std::string("key 'sweep.") + to_string(axis) + "': a sweep needs at least 3 values");
  }
  std::filesystem::create_directories(base.output);
  SweepResult result;
  result.axis = axis;
  std::mt19937_64 rng(base.seed);

  auto source_error = [](const Scenario& s, const Pipeline& p) {
    if (s.source != SourceKind::kGaussian || s.amplitude == 0.0 || s.coupling == 0.0) return kNaN;
    const field::SamplePoints origin(s.dimension, std::vector<Real>(static_cast<std::size_t>(s.dimension), 0.0));
    const Real exact = s.coupling * s.amplitude;
    return std::abs(field::bandlimited_source(p.profile, p.grid, origin)[0] - exact) / std::abs(exact);
  };

  if (axis == SweepAxis::kStep) {
    const Pipeline p = build_pipeline(base);
    const auto [phi, psi] = undressed_pair(base, p.basis);
    const auto f0 = evolution::initial_amplitude(p.grid, phi, psi);
    const auto g0 = evolution::initial_amplitude(p.grid, psi, phi);
    const auto sampler = field::closed_form_sampler(p.grid, p.dispersion, p.profile, f0, g0);
    const auto points = field::line_points(base.dimension, base.sample_length(), base.points);
    Real previous = kNaN;
    for (std::size_t i = 0; i < values->size(); ++i) {
      const Real h = (*values)[i];
      const auto r = field::finite_difference_residual(sampler, p.profile, p.grid, p.dispersion, points, base.times.front(), h, h);
      SweepRow row;
      row.value = h;
      row.basis_size = p.basis->size();
      row.amplitude_error = kNaN;
      row.diagonalization_residual = kNaN;
      row.source_error = source_error(base, p);
      row.fd_residual = r.max_abs;
      row.fd_order = i == 0 ? kNaN : std::log(previous / r.max_abs) / std::log((*values)[i - 1] / h);
      previous = r.max_abs;
      result.rows.push_back(row);
    }
  } else {
    for (Real v : *values) {
      Scenario s = base;
      switch (axis) {
        case SweepAxis::kExcitation:
          s.excitation = static_cast<int>(v);
          break;
        case SweepAxis::kNodes:
          s.nodes_per_axis = static_cast<int>(v);
          break;
        case SweepAxis::kCutoff:
          s.cutoff = v;
          break;
        case SweepAxis::kStep:
          break;
      }
      SweepRow row;
      row.value = v;
      row.fd_residual = kNaN;
      row.fd_order = kNaN;
      try {
        validate(s);
        const Pipeline p = build_pipeline(s);
        const auto config = s.exponential_config();
        row.basis_size = p.basis->size();
        row.source_error = source_error(s, p);
        const auto [phi, psi] = undressed_pair(s, p.basis);
        const auto f0 = evolution::initial_amplitude(p.grid, phi, psi);
        const evolution::EvolutionContext ctx(p.hamiltonian, config);
        const fock::Propagator dress(model::dressing_generator(p.hamiltonian), config);
        const auto dphi = dress.apply(phi, 1.0);
        const auto dpsi = dress.apply(psi, 1.0);
        row.amplitude_error = 0.0;
        for (Real t : s.times) {
          const auto numeric = evolution::heisenberg_amplitude(ctx, dphi, dpsi, t);
          const auto closed = evolution::closed_form_amplitude(p.grid, p.dispersion, p.profile, f0, t);
          row.amplitude_error = std::max(row.amplitude_error, evolution::max_node_difference(numeric, closed));
        }
        if (p.basis->size() <= config.dense_threshold && s.excitation >= s.low_shell + 2) {
          const auto u = model::dressing_operator(p.hamiltonian, config);
          row.diagonalization_residual = model::diagonalization_check(p.hamiltonian, u, s.low_shell, s.trials, rng).max_residual;
        } else {
          row.diagonalization_residual = kNaN;
        }
      } catch (const CapacityError& e) {
        row.truncated = true;
        row.note = e.what();
        result.rows.push_back(row);
        result.truncated = true;
        break;
      }
      result.rows.push_back(row);
    }
  }

  auto decreasing = [&](auto member) {
    std::vector<Real> seq;
    for (const auto& r : result.rows) {
      if (!r.truncated && std::isfinite(r.*member)) seq.push_back(r.*member);
    }
    if (seq.size() < 2) return false;
    for (std::size_t i = 1; i < seq.size(); ++i) {
      if (!(seq[i] < seq[i - 1])) return false;
    }
    return true;
  };
  result.amplitude_decreasing = decreasing(&SweepRow::amplitude_error);
  result.diagonalization_decreasing = decreasing(&SweepRow::diagonalization_residual);
  result.source_decreasing = decreasing(&SweepRow::source_error);

  result.table_path = base.output / (std::string("sweep_") + to_string(axis) + ".csv");
  Csv csv(result.table_path);
  csv << "axis,value,basis_size,amplitude_error,diagonalization_residual,source_error,fd_residual,fd_order,status\n";
  for (const auto& r : result.rows) {
    csv << to_string(axis) << ',' << r.value << ',' << r.basis_size << ',' << r.amplitude_error << ','
        << r.diagonalization_residual << ',' << r.source_error << ',' << r.fd_residual << ',' << r.fd_order << ','
        << (r.truncated ? "TRUNCATED: " + r.note : std::string("ok")) << '\n';
  }
  result.exit_code = result.truncated ? static_cast<int>(Stage::kCapacity) : 0;
  return result;
}

}  // namespace vanhove::app
