// Copyright 2026 The onebit Authors.
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

#include "cli.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "onebit/errors.h"
#include "onebit/report.h"
#include "onebit/sim.h"

namespace onebit::cli {
namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitCsv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct RunArgs {
  SimConfig cfg;
  std::string snr = "10";
  std::string precoders = "lp";
  std::string out_csv;
  std::string out_json;
  std::string out_plot;
  bool no_timing = false;
};

void AddRunOptions(CLI::App* run, RunArgs& a) {
  run->add_option("--nt", a.cfg.nt, "transmit antennas")->capture_default_str();
  run->add_option("--k", a.cfg.k, "single-antenna users")->capture_default_str();
  run->add_option("--mod", a.cfg.modulation,
                  "bpsk|qpsk|8psk|16psk|16qam|64qam|256qam")
      ->capture_default_str();
  run->add_option("--snr", a.snr, "SNR grid in dB, start:step:stop")
      ->capture_default_str();
  run->add_option("--slots", a.cfg.slots, "symbol slots per SNR")
      ->capture_default_str();
  run->add_option("--seed", a.cfg.master_seed, "master seed")
      ->capture_default_str();
  run->add_option("--precoders", a.precoders, "comma-separated registry names")
      ->capture_default_str();
  run->add_option("--threads", a.cfg.threads, "worker threads")
      ->capture_default_str();
  run->add_option("--pt", a.cfg.pt, "total transmit power")->capture_default_str();
  run->add_option("--out", a.out_csv, "CSV output path")->required();
  run->add_option("--json", a.out_json, "JSON output path");
  run->add_option("--plot", a.out_plot, "SVG plot output path");
  run->add_flag("--no-timing", a.no_timing, "write 0 for wallclock_ms");
  run->add_option("--c2po-iterations", a.cfg.options.c2po_iterations)
      ->capture_default_str();
  run->add_option("--squid-iterations", a.cfg.options.squid_iterations)
      ->capture_default_str();
  run->add_option("--ss-max-passes", a.cfg.options.ss_max_passes)
      ->capture_default_str();
  run->add_option("--pbb-node-limit", a.cfg.options.pbb_node_limit)
      ->capture_default_str();
  run->add_option("--pbb-fix-threshold", a.cfg.options.pbb_fix_threshold)
      ->capture_default_str();
}

int DoRun(RunArgs& a, std::ostream& out) {
  a.cfg.snr_db = ParseSnrGrid(a.snr);
  a.cfg.precoders = SplitCsv(a.precoders);
  a.cfg.record_timing = !a.no_timing;
  ValidateConfig(a.cfg);
  const BerCurves curves = RunBerSim(a.cfg);
  EmitCsv(curves, a.out_csv);
  if (!a.out_json.empty()) EmitJson(curves, a.out_json);
  if (!a.out_plot.empty()) EmitPlot(curves, a.out_plot);

  out << std::left << std::setw(12) << "precoder" << std::setw(10) << "snr_db"
      << std::setw(14) << "ber" << "bit_errors/bits\n";
  for (const BerPoint& p : curves.points) {
    out << std::setw(12) << p.precoder << std::setw(10) << p.snr_db
        << std::setw(14) << p.ber << p.bit_errors << "/" << p.bits << "\n";
  }
  out << "wrote " << a.out_csv << "\n";
  return kExitOk;
}

// Puts file-derived tokens right after the subcommand so that later
// command-line tokens win under the take-last policy.
std::vector<std::string> ExpandConfig(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a path");
      from_file = ReadConfigFile(args[++i]);
    } else if (a.rfind("--config=", 0) == 0) {
      from_file = ReadConfigFile(a.substr(9));
    } else {
      rest.push_back(a);
    }
  }
  if (from_file.empty()) return rest;
  if (rest.empty() || rest.front().rfind("-", 0) == 0) {
    throw ConfigError("--config requires a subcommand");
  }
  std::vector<std::string> merged = {rest.front()};
  merged.insert(merged.end(), from_file.begin(), from_file.end());
  merged.insert(merged.end(), rest.begin() + 1, rest.end());
  return merged;
}

}  // namespace

std::vector<std::string> ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    }
    std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty() || key == "config") {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": bad key");
    }
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

int Main(const std::vector<std::string>& raw_args, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"1-bit massive-MIMO precoding benchmark", "onebit"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  // Handled by ExpandConfig; declared so it shows up in --help.
  std::string config_path;
  app.add_option("--config", config_path, "flat key=value file; flags override it");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Monte-Carlo uncoded BER sweep");
  AddRunOptions(run, run_args);

  int rc_nt = 512, rc_trials = 200;
  std::uint64_t rc_seed = 1;
  CLI::App* range = app.add_subcommand(
      "range-check", "mean 1-bit matched-filter amplitude ratio");
  range->add_option("--nt", rc_nt)->capture_default_str();
  range->add_option("--trials", rc_trials)->capture_default_str();
  range->add_option("--seed", rc_seed)->capture_default_str();

  int st_instances = 200;
  std::uint64_t st_seed = 1;
  CLI::App* selftest = app.add_subcommand(
      "selftest", "full branch-and-bound against exhaustive search");
  selftest->add_option("--instances", st_instances)->capture_default_str();
  selftest->add_option("--seed", st_seed)->capture_default_str();

  try {
    std::vector<std::string> args = ExpandConfig(raw_args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (run->parsed()) return DoRun(run_args, out);
    if (range->parsed()) {
      const double ratio = DynamicRangeExperiment(rc_nt, rc_trials, rc_seed);
      out << std::setprecision(6) << "ratio " << ratio << "\n";
      return kExitOk;
    }
    if (selftest->parsed()) {
      const SelftestResult r = RunOracleSelftest(st_instances, st_seed);
      out << "instances " << r.instances << "\n"
          << "oracle_mismatches " << r.oracle_mismatches << "\n"
          << "relaxation_violations " << r.relaxation_violations << "\n"
          << "worst_gap " << r.worst_gap << "\n";
      const bool ok = r.oracle_mismatches == 0 && r.relaxation_violations == 0;
      out << (ok ? "selftest PASS\n" : "selftest FAIL\n");
      return ok ? kExitOk : kExitNumerical;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace onebit::cli
