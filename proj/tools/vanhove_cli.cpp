#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vanhove/app/runner.hpp"
#include "vanhove/app/scenario.hpp"

using namespace vanhove;

namespace {

void print_checks(const app::RunResult& result) {
  for (const auto& c : result.checks) {
    std::printf("%-34s %-8s %s\n", c.name.c_str(), app::to_string(c.status), c.detail.c_str());
  }
  std::printf("summary: %s\n", result.summary_path.string().c_str());
  if (result.exit_code != 0) {
    std::printf("failed stage: %s (exit %d)\n", app::to_string(static_cast<app::Stage>(result.exit_code)), result.exit_code);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"van Hove model: truncated Fock-space verification of the classical field equation"};
  cli.require_subcommand(1);

  std::string file;
  std::string axis;
  bool allow_ir_risk = false;
  std::uint64_t seed = 0;
  std::string out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("scenario", file, "scenario file")->required()->check(CLI::ExistingFile);
    sub->add_flag("--allow-ir-risk", allow_ir_risk, "accept massless scenarios with d < 3 or violated IR conditions");
    sub->add_option("--seed", seed, "seed for randomized checks");
    sub->add_option("--out", out, "output directory");
  };
  auto* run = cli.add_subcommand("run", "run every check of a scenario");
  add_common(run);
  auto* conditions = cli.add_subcommand("check-conditions", "infrared condition report only");
  add_common(conditions);
  auto* sweep = cli.add_subcommand("sweep", "convergence sweep along one axis");
  add_common(sweep);
  sweep->add_option("--axis", axis, "N, n, K or h")->required()->check(CLI::IsMember({"N", "n", "K", "h"}));

  CLI11_PARSE(cli, argc, argv);

  app::ScenarioOverrides overrides;
  if (allow_ir_risk) overrides.allow_ir_risk = true;
  if (cli.get_subcommands().front()->count("--seed") > 0) overrides.seed = seed;
  if (!out.empty()) overrides.output = out;

  try {
    const app::Scenario scenario = app::parse_scenario(file, overrides);
    if (run->parsed()) {
      const auto result = app::run_scenario(scenario);
      print_checks(result);
      return result.exit_code;
    }
    if (conditions->parsed()) {
      const auto result = app::run_condition_check(scenario);
      print_checks(result);
      return result.exit_code;
    }
    const auto result = app::convergence_sweep(scenario, app::parse_sweep_axis(axis));
    std::printf("%-12s %-10s %-24s %-24s %-24s %-24s %-10s\n", axis.c_str(), "basis", "amplitude_error",
                "diagonalization", "source_error", "fd_residual", "fd_order");
    for (const auto& r : result.rows) {
      if (r.truncated) {
        std::printf("%-12.6g TRUNCATED: %s\n", r.value, r.note.c_str());
        continue;
      }
      std::printf("%-12.6g %-10zu %-24.17g %-24.17g %-24.17g %-24.17g %-10.4g\n", r.value, r.basis_size,
                  r.amplitude_error, r.diagonalization_residual, r.source_error, r.fd_residual, r.fd_order);
    }
    std::printf("monotone: amplitude=%s diagonalization=%s source=%s\n", result.amplitude_decreasing ? "yes" : "no",
                result.diagonalization_decreasing ? "yes" : "no", result.source_decreasing ? "yes" : "no");
    std::printf("table: %s\n", result.table_path.string().c_str());
    return result.exit_code;
  } catch (const app::ScenarioError& e) {
    std::fprintf(stderr, "scenario error: %s\n", e.what());
    return static_cast<int>(app::Stage::kConfiguration);
  } catch (const CapacityError& e) {
    std::fprintf(stderr, "capacity error: %s\n", e.what());
    return static_cast<int>(app::Stage::kCapacity);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(app::Stage::kInternal);
  }
}
