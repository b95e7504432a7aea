// Copyright 2026 The cobosim Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line experiment runner.  One subcommand per scenario; flags
// override values from --config <file> (a JSON document mirroring the
// RunConfig field names).  Exit status: 0 = all checks pass, 1 = a
// prediction check failed, 2 = configuration/usage error.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "cobosim/runner.hpp"

namespace {

constexpr const char* kFooter = R"(Spectra:
  uniform              lambda_i = 1/d (maximally entangled coboson)
  0.7,0.3              explicit weights (must sum to 1, length must equal d)
  random:<seed>:<n>    n seeded spectra per d; spectrum k draws d standard
                       normals from mt19937_64(seed+k) (Box-Muller on uniforms
                       (x>>11)*2^-53), squares and normalizes them

Sweeps:
  --d accepts "3", "2..6" or "2,4,6"; --gamma accepts "20" or "10,20,40";
  --times accepts "0.5,1.0" or "linspace:<a>:<b>:<n>" (bs-interacting scans a
  documented two-stage grid when --times is omitted).

Reports:
  json: top-level fields schema_version, scenario, config, results, checks,
        all_pass; complex numbers appear as {"re":x,"im":y}.
  csv:  header row followed by one record per row; column order is the field
        order of the json records, complex fields split into _re/_im columns,
        plus a final "pass" column.
  Columns per scenario:
    ladder          d,spectrum,N,chi_N,chi_ratio,alpha_N,eps_norm_formula,
                    eps_norm_constructed,bound_low,bound_high,purity,pass
    rdm             d,spectrum,lambdas,purity_spectrum,purity_rho_a,
                    purity_rho_b,max_eigenvalue_delta,pass
    bs-independent  d,spectrum,fidelity_decayed,split_probability,
                    purity_before,purity_after,unitarity_defect,pass
    bs-interacting  d,spectrum,gamma,best_t,best_gauged_fidelity_sq,
                    strict_fidelity_sq_at_best,relative_phase,purity_at_best,
                    leakage_at_best,pass
    bunch-ideal     d,spectrum,norm_initial,norm_final,purity1_initial,
                    purity1_final,purity2_initial,purity2_final,
                    rdm_equality_defect,pass
    bunch-nonlocal  d,spectrum,purity,success_probability,predicted_success,
                    abs_delta,residual_probability,completeness_defect,
                    amplitude_psi_f_re,amplitude_psi_f_im,amplitude_gamma_re,
                    amplitude_gamma_im,unitarity_defect,pass
    verify          d,hermiticity_defect,commutator_max_abs,
                    mode_map_deviation,unitarity_defect,completeness_defect,
                    pass

Output is byte-identical for identical configs and seeds.  NO_COLOR disables
the colored summary line.)";

struct Flags {
  std::string config_file;
  std::string d, spectrum, gamma, times, output, format;
  double tolerance = 0.0;
  int d_cap = 0;
  int jobs = -1;
};

void add_common_options(CLI::App* cmd, Flags& flags, bool with_gamma) {
  cmd->add_option("--config", flags.config_file,
                  "JSON config file mirroring the RunConfig fields; "
                  "explicit flags override it");
  cmd->add_option("--d", flags.d, "internal dimension: int, a..b or list");
  cmd->add_option("--spectrum", flags.spectrum,
                  "uniform | lambda list | random:<seed>:<count>");
  if (with_gamma)
    cmd->add_option("--gamma", flags.gamma,
                    "interaction strength: number or comma list");
  cmd->add_option("--times", flags.times,
                  "time grid: comma list or linspace:<a>:<b>:<n>");
  cmd->add_option("--output", flags.output, "report file (default: stdout)");
  cmd->add_option("--format", flags.format, "json (default) or csv");
  cmd->add_option("--tolerance", flags.tolerance,
                  "prediction check tolerance (default 1e-9)");
  cmd->add_option("--d-cap", flags.d_cap,
                  "bunch-nonlocal dimension guard (default 6)");
  cmd->add_option("--jobs", flags.jobs,
                  "worker pool size (default: hardware threads)");
}

cobosim::runner::RunConfig merge(const std::string& scenario, CLI::App* cmd,
                                 const Flags& flags) {
  cobosim::runner::RunConfig cfg;
  if (!flags.config_file.empty())
    cfg = cobosim::runner::load_config_file(flags.config_file);
  cfg.scenario = scenario;
  auto given = [&](const std::string& name) {
    const CLI::Option* option = cmd->get_option_no_throw(name);
    return option != nullptr && option->count() > 0;
  };
  if (given("--d")) cfg.d = flags.d;
  if (given("--spectrum")) cfg.spectrum = flags.spectrum;
  if (given("--gamma")) cfg.gamma = flags.gamma;
  if (given("--times")) cfg.times = flags.times;
  if (given("--output")) cfg.output = flags.output;
  if (given("--format")) cfg.format = flags.format;
  if (given("--tolerance")) cfg.tolerance = flags.tolerance;
  if (given("--d-cap")) cfg.d_cap = flags.d_cap;
  if (given("--jobs")) cfg.jobs = flags.jobs;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cobosim: exact simulator for composite bosons built from "
               "entangled fermion pairs"};
  app.footer(kFooter);
  app.require_subcommand(1);

  struct Scenario {
    const char* name;
    const char* help;
    bool gamma;
  };
  const Scenario scenarios[] = {
      {"ladder", "chi_N, alpha_N and epsilon-norm ladder table", false},
      {"rdm", "single-coboson reduced density matrices and purities", false},
      {"bs-independent", "independent beam splitting (coboson decay)", false},
      {"bs-interacting", "interacting beam splitting (collective motion)",
       true},
      {"bunch-ideal", "two-coboson bunching state analysis", false},
      {"bunch-nonlocal", "nonlocal bunching protocol (success = 1 - P)",
       false},
      {"verify", "mode maps, hermiticity, commutation and unitarity checks",
       false},
  };

  std::vector<std::pair<CLI::App*, Flags>> commands;
  commands.reserve(std::size(scenarios));
  for (const auto& scenario : scenarios) {
    CLI::App* cmd = app.add_subcommand(scenario.name, scenario.help);
    commands.emplace_back(cmd, Flags{});
    add_common_options(cmd, commands.back().second, scenario.gamma);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0, usage errors exit 2
  }

  try {
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (commands[i].first->parsed())
        return cobosim::runner::run(
            merge(scenarios[i].name, commands[i].first, commands[i].second));
    }
    std::cerr << "no scenario selected\n";
    return 2;
  } catch (const cobosim::runner::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
