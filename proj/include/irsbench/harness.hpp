/**
 * @file harness.hpp
 * @brief Experiment configuration, Monte-Carlo orchestration and CSV output.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "irsbench/schemes.hpp"

namespace irsbench {

enum class SweepVariable { pilot_len, noise_inv_db, n_irs };
enum class Metric { dl_sum, ul_sum };

std::string to_string(SweepVariable v);
std::string to_string(Metric m);

struct ExperimentSpec {
  SystemConfig base;
  SweepVariable variable = SweepVariable::pilot_len;
  std::vector<double> values = {16.0};
  std::vector<SchemeId> schemes;
  int n_trials = 100;
  Metric metric = Metric::dl_sum;
  std::string output_path = "results.csv";
  void validate() const;  // throws ConfigError
};

/// Parses the line-oriented key=value format with [section] headers (see the
/// README). Unknown keys and sections are rejected with their line number.
ExperimentSpec load_config(const std::string& path);
ExperimentSpec parse_config(std::istream& in, const std::string& name);

struct ResultTable {
  SweepVariable variable = SweepVariable::pilot_len;
  Metric metric = Metric::dl_sum;
  std::vector<double> values;        // sweep values, config units
  std::vector<SchemeId> schemes;
  mat mean_rate;                     // values x schemes
  mat stderr_rate;                   // values x schemes
  arma::imat ok_trials;              // trials that contributed per cell
};

/// Returns the config with the sweep variable applied.
SystemConfig apply_sweep(const SystemConfig& base, SweepVariable variable,
                         double value);

/// Runs every (sweep value, trial, scheme) cell. Trials are paired: all
/// schemes of one trial share the realization and the pilot/noise seeds.
/// Trials are distributed over n_threads workers (0 = hardware default);
/// results do not depend on the worker count.
ResultTable run_experiment(const ExperimentSpec& spec, int n_threads = 0);

/// One verbose trial of a single scheme at the first sweep value.
SchemeResult run_single_trial(const ExperimentSpec& spec, SchemeId id,
                              int trial);

/// Column name of the sweep variable in emitted files.
std::string sweep_column_name(SweepVariable v);
/// Value written to the sweep column (noise sweeps emit linear 1/sigma_n^2).
double sweep_emit_value(SweepVariable v, double config_value);

/// UTF-8 CSV: sweep column, one mean column per scheme, then per-scheme
/// standard errors suffixed "_se"; 6 significant digits.
void emit_csv(const ResultTable& table, const std::string& path);
void write_csv(const ResultTable& table, std::ostream& out);

}  // namespace irsbench
