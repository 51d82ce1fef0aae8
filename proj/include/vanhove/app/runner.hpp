#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "vanhove/app/scenario.hpp"
#include "vanhove/fock/state_vector.hpp"

namespace vanhove::app {

/// Process exit statuses; non-zero values name the first failing stage.
enum class Stage : int {
  kOk = 0,
  kConfiguration = 2,
  kConditions = 3,
  kHamiltonian = 4,
  kDiagonalization = 5,
  kAmplitudes = 6,
  kField = 7,
  kFiniteDifferences = 8,
  kBounds = 9,
  kCapacity = 10,
  kBudget = 11,
  kInternal = 12,
};

const char* to_string(Stage stage);

enum class CheckStatus { kPass, kFail, kSkipped, kWaived };

const char* to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  Stage stage = Stage::kOk;
  CheckStatus status = CheckStatus::kSkipped;
  std::string detail;
  std::vector<std::pair<std::string, Real>> metrics;
};

struct RunResult {
  int exit_code = 0;
  std::vector<CheckResult> checks;
  std::filesystem::path summary_path;
  bool aborted = false;

  const CheckResult* find(const std::string& name) const;
};

/// Undressed pair read from a file of rows `phi|psi re im n_1 ... n_M`.
std::pair<fock::StateVector, fock::StateVector> load_state_pair(const std::filesystem::path& path,
                                                                const fock::BasisPtr& basis);

RunResult run_scenario(const Scenario& scenario);

/// Condition report only; exits non-zero when a massless scenario has a
/// violated verdict and the IR risk was not accepted.
RunResult run_condition_check(const Scenario& scenario);

enum class SweepAxis { kExcitation, kNodes, kCutoff, kStep };

SweepAxis parse_sweep_axis(const std::string& text);
const char* to_string(SweepAxis axis);

struct SweepRow {
  Real value = 0.0;
  std::size_t basis_size = 0;
  Real amplitude_error = 0.0;
  Real diagonalization_residual = 0.0;
  Real source_error = 0.0;
  Real fd_residual = 0.0;
  Real fd_order = 0.0;
  bool truncated = false;
  std::string note;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::kExcitation;
  std::vector<SweepRow> rows;
  bool truncated = false;
  bool amplitude_decreasing = false;
  bool diagonalization_decreasing = false;
  bool source_decreasing = false;
  std::filesystem::path table_path;
  int exit_code = 0;
};

SweepResult convergence_sweep(const Scenario& scenario, SweepAxis axis);

}  // namespace vanhove::app
