#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vanhove/fock/exponential.hpp"
#include "vanhove/fock/mode_grid.hpp"
#include "vanhove/model/dispersion.hpp"
#include "vanhove/types.hpp"

namespace vanhove::app {

/// Raised for malformed scenario files; the message names the key and line.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

enum class SourceKind { kGaussian, kTabulated };
enum class PairKind { kDressedVacuum, kDressedOneParticle, kFile };

const char* to_string(PairKind kind);

struct Tolerances {
  Real residual = 1e-10;         // mode-wise residual, relative to the field scale
  Real static_field = 1e-12;     // dressed vacuum time independence, relative
  Real reality = 1e-10;          // Im phi for Phi = Psi, relative
  Real amplitude = 1e-6;         // closed form vs numeric, absolute per node
  Real diagonalization = 1e-6;   // low-shell residual of U* H U - H_0 - E_shift
  Real fd_order_low = 1.8;
  Real fd_order_high = 2.2;
};

struct Limits {
  std::size_t max_basis = 200000;
  std::size_t dense_threshold = 4000;
  int krylov_dimension = 30;
  Real wall_seconds = 600.0;
};

struct Scenario {
  std::filesystem::path source_file;
  std::string name;

  // [model]
  int dimension = 0;
  model::DispersionKind dispersion = model::DispersionKind::kMassive;
  Real mass = 0.0;

  // [grid]
  int nodes_per_axis = 0;
  Real cutoff = 0.0;
  fock::OffsetRule offset = fock::OffsetRule::kAuto;

  // [fock]
  int excitation = 0;

  // [source]
  SourceKind source = SourceKind::kGaussian;
  Real amplitude = 1.0;
  Real width = 1.0;
  Real coupling = 1.0;
  std::filesystem::path table;

  // [states]
  PairKind pair = PairKind::kDressedVacuum;
  std::size_t mode = 0;
  std::filesystem::path pair_file;

  // [evaluation]
  std::vector<Real> times = {0.0, 0.5, 1.0};
  std::optional<Real> line_length;  // default 4 sigma
  int points = 41;
  std::vector<Real> fd_steps = {0.1, 0.05, 0.025};
  bool finite_differences = true;
  bool numeric_amplitudes = true;

  Tolerances tolerances;
  Limits limits;

  // [run]
  std::uint64_t seed = 0x5eedf00dcafe1234ULL;
  bool allow_ir_risk = false;
  int low_shell = 2;
  int trials = 20;
  std::vector<Real> epsilons = {0.1, 1.0, 10.0};
  std::filesystem::path output;

  // [sweep]
  std::vector<Real> sweep_excitation;
  std::vector<Real> sweep_nodes;
  std::vector<Real> sweep_cutoff;
  std::vector<Real> sweep_steps;

  Real sample_length() const { return line_length.value_or(4.0 * width); }
  fock::GridSpec grid_spec() const { return {dimension, nodes_per_axis, cutoff, offset}; }
  model::Dispersion make_dispersion() const;
  fock::ExponentialConfig exponential_config() const;
};

/// Massless scenarios need d >= 3 unless the IR risk is accepted.
void validate(const Scenario& scenario);

/// Command-line values that take precedence over the file.
struct ScenarioOverrides {
  std::optional<bool> allow_ir_risk;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> output;
};

Scenario parse_scenario_text(const std::string& text, const std::filesystem::path& origin = {},
                             const ScenarioOverrides& overrides = {});
Scenario parse_scenario(const std::filesystem::path& path, const ScenarioOverrides& overrides = {});

}  // namespace vanhove::app
