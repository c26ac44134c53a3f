// Copyright 2026 The bureslab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bures/analysis.hpp"

namespace {

// Exit codes: 0 success, 1 config error, 2 numerical failure, 3 theorem
// violation (a mathematically guaranteed property observed to fail).
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitTheorem = 3;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> tol_psd;
  std::optional<double> tol_fix;
  std::optional<std::string> output;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("config", opts.config_path,
                  "JSON run configuration ('-' reads standard input)")
      ->required();
  cmd->add_option("--seed", opts.seed, "Override the run seed");
  cmd->add_option("--samples", opts.samples, "Override every sample budget");
  cmd->add_option("--tol-psd", opts.tol_psd, "Override the positivity clip tolerance");
  cmd->add_option("--tol-fix", opts.tol_fix, "Override the eigenspace threshold tolerance");
  cmd->add_option("--output", opts.output,
                  "Output format: structured-report | eigenvalue-table");
}

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw bures::ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(const CommonOptions& opts, const std::optional<std::vector<std::string>>& force_analyses) {
  bures::RunConfig cfg = bures::parse_config(read_all(opts.config_path));
  if (opts.seed) {
    cfg.seed = *opts.seed;
    cfg.echo["seed"] = cfg.seed;
  }
  if (opts.samples) {
    const int n = *opts.samples;
    if (n < 1) throw bures::ConfigError("--samples: must be >= 1");
    cfg.samples = bures::SampleBudgets{n, n, n, n};
    cfg.echo["samples"] = {{"pairs", n}, {"schwarz", n}, {"k_positive", n}, {"irreducibility", n}};
  }
  if (opts.tol_psd) {
    cfg.tol.psd = *opts.tol_psd;
    cfg.echo["tolerances"]["psd"] = cfg.tol.psd;
  }
  if (opts.tol_fix) {
    cfg.tol.fix = *opts.tol_fix;
    cfg.echo["tolerances"]["fix"] = cfg.tol.fix;
  }
  if (opts.output) {
    if (*opts.output != "structured-report" && *opts.output != "eigenvalue-table") {
      throw bures::ConfigError("--output: unknown format '" + *opts.output + "'");
    }
    cfg.output = *opts.output;
    cfg.echo["output"] = cfg.output;
  }
  if (force_analyses) {
    cfg.analyses = *force_analyses;
    cfg.echo["analyses"] = cfg.analyses;
  }

  const bures::AnalysisReport report = bures::analyze(cfg);
  std::cout << bures::emit(report, cfg.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bures geometry and channel analysis on tracial matrix algebras"};
  app.require_subcommand(1);

  CommonOptions analyze_opts, metrics_opts, spectrum_opts, probe_opts;
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Run the selected analyses and emit a full report");
  add_common(analyze_cmd, analyze_opts);
  CLI::App* metrics_cmd =
      app.add_subcommand("metrics", "Pairwise fidelity and distance table over the states");
  add_common(metrics_cmd, metrics_opts);
  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "Superoperator spectrum and Perron data");
  add_common(spectrum_cmd, spectrum_opts);
  CLI::App* probe_cmd =
      app.add_subcommand("probe", "Bures contractivity probe");
  add_common(probe_cmd, probe_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (analyze_cmd->parsed()) return run(analyze_opts, std::nullopt);
    if (metrics_cmd->parsed()) return run(metrics_opts, std::vector<std::string>{"metrics"});
    if (spectrum_cmd->parsed()) return run(spectrum_opts, std::vector<std::string>{"spectrum"});
    if (probe_cmd->parsed()) return run(probe_opts, std::vector<std::string>{"contraction"});
    std::cerr << "error: no subcommand selected\n";
    return kExitConfig;
  } catch (const bures::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bures::TheoremViolation& e) {
    std::cerr << "theorem violation: " << e.what() << "\n";
    return kExitTheorem;
  } catch (const bures::Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
