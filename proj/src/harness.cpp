#include "irsbench/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace irsbench {

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::pilot_len:
      return "T";
    case SweepVariable::noise_inv_db:
      return "noise_inv_db";
    case SweepVariable::n_irs:
      return "N_IRS";
  }
  return "?";
}

std::string to_string(Metric m) {
  return m == Metric::dl_sum ? "dl_sum" : "ul_sum";
}

void ExperimentSpec::validate() const {
  base.validate();
  if (values.empty()) throw ConfigError("sweep_values must not be empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      std::ostringstream msg;
      msg << "sweep_values must be strictly ascending; offending list:";
      for (double v : values) msg << " " << v;
      throw ConfigError(msg.str());
    }
  }
  if (schemes.empty()) throw ConfigError("schemes must not be empty");
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  for (double v : values) apply_sweep(base, variable, v).validate();
}

SystemConfig apply_sweep(const SystemConfig& base, SweepVariable variable,
                         double value) {
  SystemConfig cfg = base;
  switch (variable) {
    case SweepVariable::pilot_len: {
      if (value < 1.0 || value != std::floor(value)) {
        throw ConfigError("sweep over T needs positive integer values");
      }
      cfg.pilot_len = static_cast<int>(value);
      break;
    }
    case SweepVariable::noise_inv_db: {
      cfg.noise_var = std::pow(10.0, -value / 10.0);
      break;
    }
    case SweepVariable::n_irs: {
      if (value < 0.0 || value != std::floor(value)) {
        throw ConfigError("sweep over N_IRS needs non-negative integer values");
      }
      cfg.n_irs = static_cast<int>(value);
      break;
    }
  }
  return cfg;
}

namespace {

struct Line {
  std::string section;
  std::string key;
  std::string value;
  int number = 0;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const Line& ln, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << ln.number << ": " << what;
  throw ConfigError(msg.str());
}

double parse_double(const Line& ln) {
  try {
    std::size_t used = 0;
    const double v = std::stod(ln.value, &used);
    if (used != ln.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(ln, "expected a number for key '" + ln.key + "', got '" + ln.value + "'");
  }
}

int parse_int(const Line& ln) {
  const double v = parse_double(ln);
  if (v != std::floor(v)) {
    fail(ln, "expected an integer for key '" + ln.key + "'");
  }
  return static_cast<int>(v);
}

std::uint64_t parse_u64(const Line& ln) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(ln.value, &used);
    if (used != ln.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(ln, "expected an unsigned integer for key '" + ln.key + "'");
  }
}

bool parse_bool(const Line& ln) {
  if (ln.value == "true" || ln.value == "1") return true;
  if (ln.value == "false" || ln.value == "0") return false;
  fail(ln, "expected true/false for key '" + ln.key + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

ExperimentSpec parse_config(std::istream& in, const std::string& name) {
  ExperimentSpec spec;
  spec.schemes.clear();
  bool have_schemes = false;

  std::string raw;
  std::string section;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto comment = raw.find('#');
    if (comment != std::string::npos) raw.erase(comment);
    const std::string text = trim(raw);
    if (text.empty()) continue;

    Line ln{section, "", "", number};
    if (text.front() == '[') {
      if (text.back() != ']') fail(ln, "malformed section header '" + text + "'");
      section = trim(text.substr(1, text.size() - 2));
      if (section != "system" && section != "optimizer" && section != "experiment") {
        fail(ln, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) fail(ln, "expected key = value, got '" + text + "'");
    ln.section = section;
    ln.key = trim(text.substr(0, eq));
    ln.value = trim(text.substr(eq + 1));
    if (ln.section.empty()) fail(ln, "key '" + ln.key + "' appears before any [section]");

    SystemConfig& sys = spec.base;
    OptimizerSettings& opt = spec.base.opt;
    if (ln.section == "system") {
      if (ln.key == "num_cells") sys.num_cells = parse_int(ln);
      else if (ln.key == "users_per_cell") sys.users_per_cell = parse_int(ln);
      else if (ln.key == "n_irs") sys.n_irs = parse_int(ln);
      else if (ln.key == "bts_antennas") sys.bts_antennas = parse_int(ln);
      else if (ln.key == "ue_antennas") sys.ue_antennas = parse_int(ln);
      else if (ln.key == "rician_factor") sys.rician_factor = parse_double(ln);
      else if (ln.key == "cross_gain") sys.cross_gain = parse_double(ln);
      else if (ln.key == "tx_power") sys.tx_power = parse_double(ln);
      else if (ln.key == "noise_var") sys.noise_var = parse_double(ln);
      else if (ln.key == "pilot_len") sys.pilot_len = parse_int(ln);
      else if (ln.key == "n_fb") sys.n_fb = parse_int(ln);
      else if (ln.key == "rng_seed") sys.rng_seed = parse_u64(ln);
      else if (ln.key == "noise_mismatch_db") sys.noise_mismatch_db = parse_double(ln);
      else if (ln.key == "csi_joint_ls") sys.csi_joint_ls = parse_bool(ln);
      else if (ln.key == "n_alt") sys.n_alt = parse_int(ln);
      else if (ln.key == "pilot_kind") {
        if (ln.value == "random") sys.pilot_kind = PilotKind::random;
        else if (ln.value == "walsh") sys.pilot_kind = PilotKind::walsh;
        else fail(ln, "pilot_kind must be random or walsh");
      } else if (ln.key == "codebook") {
        if (ln.value == "dft") sys.codebook = CodebookKind::dft;
        else if (ln.value == "hadamard") sys.codebook = CodebookKind::hadamard;
        else fail(ln, "codebook must be dft or hadamard");
      } else {
        fail(ln, "unknown key '" + ln.key + "' in section [system]");
      }
    } else if (ln.section == "optimizer") {
      if (ln.key == "grid_points") opt.grid_points = parse_int(ln);
      else if (ln.key == "max_iters") opt.max_iters = parse_int(ln);
      else if (ln.key == "grad_tol") opt.grad_tol = parse_double(ln);
      else if (ln.key == "armijo_c1") opt.armijo_c1 = parse_double(ln);
      else if (ln.key == "armijo_beta") opt.armijo_beta = parse_double(ln);
      else if (ln.key == "max_backtracks") opt.max_backtracks = parse_int(ln);
      else if (ln.key == "fd_step") opt.fd_step = parse_double(ln);
      else if (ln.key == "n_starts") opt.n_starts = parse_int(ln);
      else fail(ln, "unknown key '" + ln.key + "' in section [optimizer]");
    } else {  // experiment
      if (ln.key == "sweep_variable") {
        if (ln.value == "T") spec.variable = SweepVariable::pilot_len;
        else if (ln.value == "noise_inv_db") spec.variable = SweepVariable::noise_inv_db;
        else if (ln.value == "N_IRS") spec.variable = SweepVariable::n_irs;
        else fail(ln, "sweep_variable must be T, noise_inv_db or N_IRS");
      } else if (ln.key == "sweep_values") {
        spec.values.clear();
        for (const std::string& item : split_list(ln.value)) {
          Line vl = ln;
          vl.value = item;
          spec.values.push_back(parse_double(vl));
        }
        if (spec.values.empty()) fail(ln, "sweep_values must not be empty");
      } else if (ln.key == "schemes") {
        spec.schemes.clear();
        try {
          for (const std::string& item : split_list(ln.value)) {
            spec.schemes.push_back(scheme_from_string(item));
          }
        } catch (const ConfigError& e) {
          fail(ln, e.what());
        }
        have_schemes = true;
      } else if (ln.key == "n_trials") {
        spec.n_trials = parse_int(ln);
      } else if (ln.key == "metric") {
        if (ln.value == "dl_sum") spec.metric = Metric::dl_sum;
        else if (ln.value == "ul_sum") spec.metric = Metric::ul_sum;
        else fail(ln, "metric must be dl_sum or ul_sum");
      } else if (ln.key == "output") {
        spec.output_path = ln.value;
      } else {
        fail(ln, "unknown key '" + ln.key + "' in section [experiment]");
      }
    }
  }

  if (!have_schemes) {
    throw ConfigError(name + ": missing required key 'schemes' in section [experiment]");
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

ResultTable run_experiment(const ExperimentSpec& spec, int n_threads) {
  spec.validate();
  const int n_values = static_cast<int>(spec.values.size());
  const int n_schemes = static_cast<int>(spec.schemes.size());
  const int n_trials = spec.n_trials;

  arma::cube samples(n_values, n_schemes, n_trials);
  samples.fill(arma::datum::nan);

  std::atomic<int> next{0};
  const int total = n_values * n_trials;
  auto worker = [&] {
    for (int task = next.fetch_add(1); task < total; task = next.fetch_add(1)) {
      const int vi = task / n_trials;
      const int trial = task % n_trials;
      const SystemConfig cfg = apply_sweep(spec.base, spec.variable, spec.values[vi]);
      const TrialSeeds seeds = TrialSeeds::for_trial(cfg.rng_seed, trial);
      const NetworkRealization real = draw_realization(cfg, seeds.channel);
      for (int si = 0; si < n_schemes; ++si) {
        try {
          const SchemeResult r = run_scheme(spec.schemes[si], real, cfg, seeds);
          samples(vi, si, trial) = spec.metric == Metric::dl_sum
                                       ? r.dl_sum_rate
                                       : r.ul_sum_rate;
        } catch (const std::exception&) {
          // flagged by the NaN slot; excluded from the mean below
        }
      }
    }
  };

  int workers = n_threads > 0 ? n_threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, total);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ResultTable table;
  table.variable = spec.variable;
  table.metric = spec.metric;
  table.values = spec.values;
  table.schemes = spec.schemes;
  table.mean_rate.set_size(n_values, n_schemes);
  table.stderr_rate.set_size(n_values, n_schemes);
  table.ok_trials.set_size(n_values, n_schemes);
  for (int vi = 0; vi < n_values; ++vi) {
    for (int si = 0; si < n_schemes; ++si) {
      double sum = 0.0;
      int n_ok = 0;
      for (int t = 0; t < n_trials; ++t) {
        const double x = samples(vi, si, t);
        if (std::isfinite(x)) {
          sum += x;
          ++n_ok;
        }
      }
      const double mean = n_ok > 0 ? sum / n_ok : arma::datum::nan;
      double var = 0.0;
      for (int t = 0; t < n_trials; ++t) {
        const double x = samples(vi, si, t);
        if (std::isfinite(x)) var += (x - mean) * (x - mean);
      }
      table.mean_rate(vi, si) = mean;
      table.stderr_rate(vi, si) =
          n_ok > 1 ? std::sqrt(var / (n_ok - 1) / n_ok) : 0.0;
      table.ok_trials(vi, si) = n_ok;
    }
  }
  return table;
}

SchemeResult run_single_trial(const ExperimentSpec& spec, SchemeId id,
                              int trial) {
  const SystemConfig cfg =
      apply_sweep(spec.base, spec.variable, spec.values.front());
  cfg.validate();
  const TrialSeeds seeds = TrialSeeds::for_trial(cfg.rng_seed, trial);
  const NetworkRealization real = draw_realization(cfg, seeds.channel);
  return run_scheme(id, real, cfg, seeds);
}

std::string sweep_column_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::pilot_len:
      return "N_samples";
    case SweepVariable::noise_inv_db:
      return "one_over_sigma_n_sq";
    case SweepVariable::n_irs:
      return "N_IRS";
  }
  return "?";
}

double sweep_emit_value(SweepVariable v, double config_value) {
  if (v == SweepVariable::noise_inv_db) {
    return std::pow(10.0, config_value / 10.0);  // linear 1/sigma_n^2
  }
  return config_value;
}

namespace {

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out) {
  if (table.values.empty() || table.schemes.empty()) {
    throw StructuralError("write_csv: empty table");
  }
  out << sweep_column_name(table.variable);
  for (SchemeId id : table.schemes) out << "," << csv_column(id);
  for (SchemeId id : table.schemes) out << "," << csv_column(id) << "_se";
  out << "\n";
  for (std::size_t vi = 0; vi < table.values.size(); ++vi) {
    out << fmt6(sweep_emit_value(table.variable, table.values[vi]));
    for (std::size_t si = 0; si < table.schemes.size(); ++si) {
      out << "," << fmt6(table.mean_rate(vi, si));
    }
    for (std::size_t si = 0; si < table.schemes.size(); ++si) {
      out << "," << fmt6(table.stderr_rate(vi, si));
    }
    out << "\n";
  }
}

void emit_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  write_csv(table, out);
  out.flush();
  if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

}  // namespace irsbench
