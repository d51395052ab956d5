//
// Copyright 2026 The gdpaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <omp.h>

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gdpaudit/accounting.h"
#include "gdpaudit/csv.h"
#include "gdpaudit/runner.h"

namespace {

using gdpaudit::runner::AuditConfig;
using gdpaudit::runner::AuditOutcome;
using gdpaudit::runner::TableRow;

void PrintConvert(double epsilon, double delta) {
  const auto budget = gdpaudit::accounting::PrivacyBudget::FromDp(epsilon, delta);
  const double loose =
      gdpaudit::accounting::ZcdpEpsilonSimple(budget.rho, delta);
  std::printf("epsilon            %s\n",
              gdpaudit::csv::FormatDouble(epsilon).c_str());
  std::printf("delta              %s\n",
              gdpaudit::csv::FormatDouble(delta).c_str());
  std::printf("rho                %s\n",
              gdpaudit::csv::FormatDouble(budget.rho).c_str());
  std::printf("implied_mu         %s\n",
              gdpaudit::csv::FormatDouble(budget.mu_implied).c_str());
  std::printf("mu_direct          %s\n",
              gdpaudit::csv::FormatDouble(budget.mu_direct).c_str());
  std::printf("zcdp_epsilon_loose %s\n",
              gdpaudit::csv::FormatDouble(loose).c_str());
}

void PrintOutcome(const AuditOutcome& outcome, const std::string& out_dir) {
  std::printf("rho             %s\n",
              gdpaudit::csv::FormatDouble(outcome.rho).c_str());
  std::printf("implied_mu      %s\n",
              gdpaudit::csv::FormatDouble(outcome.implied_mu).c_str());
  std::printf("mu_direct       %s\n",
              gdpaudit::csv::FormatDouble(outcome.mu_direct).c_str());
  std::printf("sigma           %s\n",
              gdpaudit::csv::FormatDouble(outcome.sigma).c_str());
  std::printf("tau_star        %s\n",
              gdpaudit::csv::FormatDouble(outcome.tau_star).c_str());
  std::printf("test_counts     tp=%lld fp=%lld tn=%lld fn=%lld\n",
              static_cast<long long>(outcome.test_counts.tp),
              static_cast<long long>(outcome.test_counts.fp),
              static_cast<long long>(outcome.test_counts.tn),
              static_cast<long long>(outcome.test_counts.fn));
  std::printf("mu_emp          %s (credibility %s)\n",
              gdpaudit::csv::FormatDouble(outcome.mu.mu_emp).c_str(),
              gdpaudit::csv::FormatDouble(outcome.mu.credibility).c_str());
  std::printf("baseline_mu_lb  %s\n",
              gdpaudit::csv::FormatDouble(outcome.baseline_mu_lb).c_str());
  std::printf("wall_time       %.2fs\n", outcome.wall_seconds);
  std::printf("artifacts       %s\n", out_dir.c_str());
}

void PrintTable(const std::vector<TableRow>& rows) {
  std::printf("%-24s %-10s %-12s %-10s %-10s\n", "variant", "mu_emp",
              "tau_star", "test_fpr", "test_fnr");
  for (const auto& row : rows) {
    std::printf("%-24s %-10.4f %-12.4g %-10.4f %-10.4f\n", row.variant.c_str(),
                row.mu_emp, row.tau_star, row.test_fpr, row.test_fnr);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empirical Gaussian-DP audit of marginal-based synthetic data"};
  app.require_subcommand(1);

  double epsilon = 1.0;
  double delta = 1e-2;
  auto* convert =
      app.add_subcommand("convert", "Print the accounting for (epsilon, delta)");
  convert->add_option("epsilon", epsilon, "privacy budget epsilon")->required();
  convert->add_option("delta", delta, "privacy budget delta")->required();

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int trials = 0;
  int threads = 0;

  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "key=value config file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", seed, "override master_seed");
    cmd->add_option("--out-dir", out_dir, "artifact directory");
    cmd->add_option("--trials", trials, "override n_trials (re-splits 40/20/40)");
    cmd->add_option("--threads", threads, "worker thread count");
  };

  auto* audit = app.add_subcommand("audit", "Run the full audit pipeline");
  add_run_options(audit);
  auto* ablate =
      app.add_subcommand("ablate", "One-factor-at-a-time audit ablation");
  add_run_options(ablate);
  auto* marginals = app.add_subcommand(
      "marginals", "Sweep workload order x {black, hybrid} threat");
  add_run_options(marginals);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 2;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);

    if (convert->parsed()) {
      PrintConvert(epsilon, delta);
      return 0;
    }

    CLI::App* run_cmd = audit->parsed() ? audit
                        : ablate->parsed() ? ablate
                                           : marginals;
    AuditConfig config = gdpaudit::runner::ParseConfigFile(config_path);
    if (run_cmd->count("--seed") > 0) {
      config.game.master_seed = seed;
      config.FinalizeSeeds();
    }
    if (run_cmd->count("--trials") > 0) {
      gdpaudit::runner::ApplyTrialsOverride(config, trials);
    }

    if (audit->parsed()) {
      const AuditOutcome outcome = gdpaudit::runner::RunAudit(config, out_dir);
      PrintOutcome(outcome, out_dir);
    } else if (ablate->parsed()) {
      PrintTable(gdpaudit::runner::RunAblation(config, out_dir));
    } else if (marginals->parsed()) {
      PrintTable(gdpaudit::runner::RunMarginals(config, out_dir));
    }
    return 0;
  } catch (const gdpaudit::runner::ConfigError& error) {
    std::fprintf(stderr, "config error: %s\n", error.what());
    return 2;
  } catch (const std::invalid_argument& error) {
    std::fprintf(stderr, "config error: %s\n", error.what());
    return 2;
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 3;
  }
}
