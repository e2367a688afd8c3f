// Copyright 2026 The qwalk2 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QW2_CLI_IO_HPP
#define QW2_CLI_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qw2/evolution.hpp"
#include "qw2/spectral.hpp"
#include "qw2/walk_core.hpp"

namespace qw2::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericalError = 3, kIoError = 4 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { Spectrum, Catalog, Evolve };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

/// Inclusive linear sweep "start:stop:count", or a single value.
struct Sweep {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  static Sweep single(double v) { return {v, v, 1}; }
  static Sweep parse(const std::string& text);
  std::vector<double> values() const;
  bool is_single() const { return count == 1; }

  friend bool operator==(const Sweep&, const Sweep&) = default;
};

struct InitConfig {
  std::string kind = "point";  ///< point | segment | gaussian
  std::string coords = "x1x2";  ///< point only: x1x2 | rhosigma
  long a = 0, b = 0;            ///< point coordinates
  std::vector<cplx> coin{1.0, 0.0, 0.0, 0.0};  ///< normalized on use
  // segment
  std::vector<long> rho_sites{1};
  long sigma_min = -13, sigma_max = 13;
  std::string molecule;  ///< "" | boson | fermion: project onto k = 0 states
  double molecule_omega = 1.0;
  int molecule_index = 0;  ///< which matching state, in eigensystem order
  // gaussian
  double x1_center = 60.0, x2_center = -60.0, width = 5.0;
  double k1 = kPi / 2, k2 = kPi / 2;
};

/// Everything a run depends on; embedded verbatim in the output metadata.
struct RunConfig {
  Command command = Command::Spectrum;
  Sweep phi = Sweep::single(1.0);
  Sweep phi0 = Sweep::single(0.0);
  Parity parity = Parity::Odd;
  int lc = 191;
  int ring_sites = 0;  ///< overrides lc when > 0
  int k_points = 129;
  double k = 0.0;
  std::string degenerate_basis;  ///< "" = per-command default
  InitConfig init;
  int t_max = 100;
  int stride = 1;
  std::vector<int> marginal_times;
  std::vector<int> joint_times;
  std::vector<int> dump_times;
  std::string out_dir = "qw2_out";

  /// Parameters for one sweep point.
  WalkParams params(double phi_value, double phi0_value) const;
  void validate() const;
};

nlohmann::json to_json(const RunConfig& c);
/// Accepts a bare config object or a metadata document with a "config" key.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& file);

/// Locale-independent shortest round-trip formatting with up to 17
/// significant digits.
std::string format_double(double v);

struct RunResult {
  std::vector<std::filesystem::path> files;
  bool partial = false;
  std::vector<std::string> failures;
};

/// Each writes its CSV tables plus metadata.json into config.out_dir.
RunResult cmd_spectrum(const RunConfig& config);
RunResult cmd_catalog(const RunConfig& config);
RunResult cmd_evolve(const RunConfig& config);
RunResult run(const RunConfig& config);

/// The initial state a config describes.
InitialStateSpec make_initial_state(const RunConfig& config, const WalkParams& params);

/// Runs `config`, mapping failures to exit codes and messages on `err`.
int run_and_report(const RunConfig& config, std::ostream& err);

/// Applies the QW2_THREADS environment override to the OpenMP runtime.
void apply_thread_override();

}  // namespace qw2::cli

#endif  // QW2_CLI_IO_HPP
