#include "vanhove/app/scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace vanhove::app {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

[[noreturn]] void fail(const std::string& key, int line, const std::string& what) {
  throw ScenarioError("line " + std::to_string(line) + ": key '" + key + "': " + what);
}

Real to_real(const std::string& key, const Entry& e) {
  Real v = 0.0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) fail(key, e.line, "expected a number, got '" + e.value + "'");
  return v;
}

long long to_integer(const std::string& key, const Entry& e) {
  long long v = 0;
  const char* begin = e.value.data();
  const char* end = begin + e.value.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) fail(key, e.line, "expected an integer, got '" + e.value + "'");
  return v;
}

std::uint64_t to_unsigned(const std::string& key, const Entry& e) {
  std::uint64_t v = 0;
  const bool hex = e.value.rfind("0x", 0) == 0;
  const char* begin = e.value.data() + (hex ? 2 : 0);
  const char* end = e.value.data() + e.value.size();
  auto [ptr, ec] = std::from_chars(begin, end, v, hex ? 16 : 10);
  if (ec != std::errc() || ptr != end) fail(key, e.line, "expected an unsigned integer, got '" + e.value + "'");
  return v;
}

bool to_bool(const std::string& key, const Entry& e) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  fail(key, e.line, "expected true or false, got '" + e.value + "'");
}

std::vector<Real> to_list(const std::string& key, const Entry& e) {
  std::vector<Real> out;
  std::stringstream ss(e.value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(to_real(key, {trim(item), e.line}));
  }
  if (out.empty()) fail(key, e.line, "expected a comma-separated list");
  return out;
}

}  // namespace

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::kDressedVacuum:
      return "dressed-vacuum";
    case PairKind::kDressedOneParticle:
      return "dressed-one-particle";
    case PairKind::kFile:
      return "file";
  }
  return "file";
}

model::Dispersion Scenario::make_dispersion() const {
  return dispersion == model::DispersionKind::kMassless ? model::Dispersion::massless() : model::Dispersion::massive(mass);
}

fock::ExponentialConfig Scenario::exponential_config() const {
  fock::ExponentialConfig config;
  config.dense_threshold = limits.dense_threshold;
  config.krylov_dimension = limits.krylov_dimension;
  return config;
}

void validate(const Scenario& s) {
  if (s.dimension < 1) throw ScenarioError("key 'model.dimension': must be >= 1");
  if (s.dispersion == model::DispersionKind::kMassless && s.dimension < 3 && !s.allow_ir_risk) {
    throw ScenarioError("key 'model.dimension': massless dispersion requires d ≥ 3 (got d = " +
                        std::to_string(s.dimension) + "); set run.allow_ir_risk = true or pass --allow-ir-risk");
  }
  if (s.dispersion == model::DispersionKind::kMassive && !(s.mass > 0.0)) {
    throw ScenarioError("key 'model.mass': massive dispersion needs mass > 0");
  }
  if (s.nodes_per_axis < 1) throw ScenarioError("key 'grid.nodes': must be >= 1");
  if (!(s.cutoff > 0.0)) throw ScenarioError("key 'grid.cutoff': must be > 0");
  if (s.excitation < 0) throw ScenarioError("key 'fock.N': must be >= 0");
  if (s.pair == PairKind::kDressedOneParticle && s.excitation < 1) {
    throw ScenarioError("key 'states.pair': one-particle states need fock.N >= 1");
  }
  if (s.source == SourceKind::kGaussian && !(s.width > 0.0)) throw ScenarioError("key 'source.sigma': must be > 0");
  if (s.coupling < 0.0) throw ScenarioError("key 'source.lambda': must be >= 0");
  if (s.points < 1) throw ScenarioError("key 'evaluation.points': must be >= 1");
  if (s.times.empty()) throw ScenarioError("key 'evaluation.times': at least one time is required");
  for (Real h : s.fd_steps) {
    if (!(h > 0.0)) throw ScenarioError("key 'evaluation.fd_steps': steps must be > 0");
  }
  if (s.trials < 1) throw ScenarioError("key 'run.trials': must be >= 1");
  for (Real e : s.epsilons) {
    if (!(e > 0.0)) throw ScenarioError("key 'run.epsilons': values must be > 0");
  }
}

Scenario parse_scenario_text(const std::string& text, const std::filesystem::path& origin,
                             const ScenarioOverrides& overrides) {
  Scenario s;
  s.source_file = origin;
  s.name = origin.empty() ? "scenario" : origin.stem().string();
  const std::filesystem::path base = origin.empty() ? std::filesystem::path{} : origin.parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
  };

  using Setter = std::function<void(const std::string&, const Entry&)>;
  const std::map<std::string, Setter> setters = {
      {"model.dimension", [&](auto& k, auto& e) { s.dimension = static_cast<int>(to_integer(k, e)); }},
      {"model.dispersion",
       [&](auto& k, auto& e) {
         if (e.value == "massless") {
           s.dispersion = model::DispersionKind::kMassless;
         } else if (e.value == "massive") {
           s.dispersion = model::DispersionKind::kMassive;
         } else {
           fail(k, e.line, "expected massless or massive");
         }
       }},
      {"model.mass", [&](auto& k, auto& e) { s.mass = to_real(k, e); }},
      {"grid.nodes", [&](auto& k, auto& e) { s.nodes_per_axis = static_cast<int>(to_integer(k, e)); }},
      {"grid.cutoff", [&](auto& k, auto& e) { s.cutoff = to_real(k, e); }},
      {"grid.offset",
       [&](auto& k, auto& e) {
         if (e.value == "auto") {
           s.offset = fock::OffsetRule::kAuto;
         } else if (e.value == "half") {
           s.offset = fock::OffsetRule::kHalfStep;
         } else if (e.value == "quarter") {
           s.offset = fock::OffsetRule::kQuarterStep;
         } else {
           fail(k, e.line, "expected auto, half or quarter");
         }
       }},
      {"fock.N", [&](auto& k, auto& e) { s.excitation = static_cast<int>(to_integer(k, e)); }},
      {"source.kind",
       [&](auto& k, auto& e) {
         if (e.value == "gaussian") {
           s.source = SourceKind::kGaussian;
         } else if (e.value == "tabulated") {
           s.source = SourceKind::kTabulated;
         } else {
           fail(k, e.line, "expected gaussian or tabulated");
         }
       }},
      {"source.A", [&](auto& k, auto& e) { s.amplitude = to_real(k, e); }},
      {"source.sigma", [&](auto& k, auto& e) { s.width = to_real(k, e); }},
      {"source.lambda", [&](auto& k, auto& e) { s.coupling = to_real(k, e); }},
      {"source.table", [&](auto&, auto& e) { s.table = resolve(e.value); }},
      {"states.pair",
       [&](auto& k, auto& e) {
         if (e.value == "dressed-vacuum") {
           s.pair = PairKind::kDressedVacuum;
         } else if (e.value == "dressed-one-particle") {
           s.pair = PairKind::kDressedOneParticle;
         } else if (e.value == "file") {
           s.pair = PairKind::kFile;
         } else {
           fail(k, e.line, "expected dressed-vacuum, dressed-one-particle or file");
         }
       }},
      {"states.mode",
       [&](auto& k, auto& e) {
         const long long v = to_integer(k, e);
         if (v < 0) fail(k, e.line, "mode index must be >= 0");
         s.mode = static_cast<std::size_t>(v);
       }},
      {"states.file", [&](auto&, auto& e) { s.pair_file = resolve(e.value); }},
      {"evaluation.times", [&](auto& k, auto& e) { s.times = to_list(k, e); }},
      {"evaluation.line_length", [&](auto& k, auto& e) { s.line_length = to_real(k, e); }},
      {"evaluation.points", [&](auto& k, auto& e) { s.points = static_cast<int>(to_integer(k, e)); }},
      {"evaluation.fd_steps", [&](auto& k, auto& e) { s.fd_steps = to_list(k, e); }},
      {"evaluation.finite_differences", [&](auto& k, auto& e) { s.finite_differences = to_bool(k, e); }},
      {"evaluation.numeric_amplitudes", [&](auto& k, auto& e) { s.numeric_amplitudes = to_bool(k, e); }},
      {"tolerances.residual", [&](auto& k, auto& e) { s.tolerances.residual = to_real(k, e); }},
      {"tolerances.static", [&](auto& k, auto& e) { s.tolerances.static_field = to_real(k, e); }},
      {"tolerances.reality", [&](auto& k, auto& e) { s.tolerances.reality = to_real(k, e); }},
      {"tolerances.amplitude", [&](auto& k, auto& e) { s.tolerances.amplitude = to_real(k, e); }},
      {"tolerances.diagonalization", [&](auto& k, auto& e) { s.tolerances.diagonalization = to_real(k, e); }},
      {"tolerances.fd_order_low", [&](auto& k, auto& e) { s.tolerances.fd_order_low = to_real(k, e); }},
      {"tolerances.fd_order_high", [&](auto& k, auto& e) { s.tolerances.fd_order_high = to_real(k, e); }},
      {"limits.max_basis", [&](auto& k, auto& e) { s.limits.max_basis = to_unsigned(k, e); }},
      {"limits.dense_threshold", [&](auto& k, auto& e) { s.limits.dense_threshold = to_unsigned(k, e); }},
      {"limits.krylov_dimension", [&](auto& k, auto& e) { s.limits.krylov_dimension = static_cast<int>(to_integer(k, e)); }},
      {"limits.wall_seconds", [&](auto& k, auto& e) { s.limits.wall_seconds = to_real(k, e); }},
      {"run.seed", [&](auto& k, auto& e) { s.seed = to_unsigned(k, e); }},
      {"run.allow_ir_risk", [&](auto& k, auto& e) { s.allow_ir_risk = to_bool(k, e); }},
      {"run.low_shell", [&](auto& k, auto& e) { s.low_shell = static_cast<int>(to_integer(k, e)); }},
      {"run.trials", [&](auto& k, auto& e) { s.trials = static_cast<int>(to_integer(k, e)); }},
      {"run.epsilons", [&](auto& k, auto& e) { s.epsilons = to_list(k, e); }},
      {"run.output", [&](auto&, auto& e) { s.output = resolve(e.value); }},
      {"sweep.N", [&](auto& k, auto& e) { s.sweep_excitation = to_list(k, e); }},
      {"sweep.n", [&](auto& k, auto& e) { s.sweep_nodes = to_list(k, e); }},
      {"sweep.K", [&](auto& k, auto& e) { s.sweep_cutoff = to_list(k, e); }},
      {"sweep.h", [&](auto& k, auto& e) { s.sweep_steps = to_list(k, e); }},
  };
  const std::set<std::string> sections = {"model", "grid", "fock", "source", "states", "evaluation",
                                          "tolerances", "limits", "run", "sweep"};
  const std::vector<std::string> required = {"model.dimension", "model.dispersion", "grid.nodes", "grid.cutoff", "fock.N"};

  std::set<std::string> seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') throw ScenarioError("line " + std::to_string(line) + ": malformed section header");
      section = trim(content.substr(1, content.size() - 2));
      if (!sections.count(section)) {
        throw ScenarioError("line " + std::to_string(line) + ": unknown section '" + section + "'");
      }
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ScenarioError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (section.empty()) fail(key, line, "key outside of any section");
    const std::string full = section + "." + key;
    const auto it = setters.find(full);
    if (it == setters.end()) fail(full, line, "unknown key");
    if (!seen.insert(full).second) fail(full, line, "duplicate key");
    if (value.empty()) fail(full, line, "missing value");
    it->second(full, Entry{value, line});
  }
  for (const auto& key : required) {
    if (!seen.count(key)) throw ScenarioError("missing required key '" + key + "'");
  }
  if (s.dispersion == model::DispersionKind::kMassive && !seen.count("model.mass")) {
    throw ScenarioError("missing required key 'model.mass' for a massive dispersion");
  }
  if (s.source == SourceKind::kTabulated && s.table.empty()) throw ScenarioError("missing required key 'source.table'");
  if (s.pair == PairKind::kFile && s.pair_file.empty()) throw ScenarioError("missing required key 'states.file'");
  if (s.output.empty()) s.output = std::filesystem::path(s.name + "_out");
  if (overrides.allow_ir_risk) s.allow_ir_risk = *overrides.allow_ir_risk;
  if (overrides.seed) s.seed = *overrides.seed;
  if (overrides.output) s.output = *overrides.output;
  validate(s);
  return s;
}

Scenario parse_scenario(const std::filesystem::path& path, const ScenarioOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str(), path, overrides);
}

}  // namespace vanhove::app
