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

// qw2: band scans, bound-state catalogs and time evolution of the
// two-walker lattice model.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qw2/cli_io.hpp"

namespace {

using qw2::cli::RunConfig;

// Flag values; unset ones leave the config-file (or default) value alone.
struct Flags {
  std::string config_file;
  std::optional<std::string> phi, phi0, parity, basis, out, init_kind, init_coords, molecule;
  std::optional<int> molecule_index, lc, ring_sites, k_points, t_max, stride;
  std::optional<double> k, molecule_omega, x1, x2, width, k1, k2;
  std::optional<long> a, b, sigma_min, sigma_max;
  std::optional<std::vector<double>> coin;
  std::optional<std::vector<long>> rho_sites;
  std::optional<std::vector<int>> marginal_times, joint_times, dump_times;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_file, "JSON config, or a previous run's metadata.json");
  sub->add_option("--phi", f.phi, "interaction phase: value or start:stop:count");
  sub->add_option("--phi0", f.phi0, "contact phase: value or start:stop:count");
  sub->add_option("--parity", f.parity, "relative-coordinate sector: odd | even");
  sub->add_option("--lc", f.lc, "ring length (odd sector: sites; even sector: 2 x sites)");
  sub->add_option("--ring-sites", f.ring_sites, "number of ring sites; overrides --lc");
  sub->add_option("--out", f.out, "output directory");
}

void add_init(CLI::App* sub, Flags& f) {
  sub->add_option("--init", f.init_kind, "initial state: point | segment | gaussian");
  sub->add_option("--coords", f.init_coords, "point state coordinates: x1x2 | rhosigma");
  sub->add_option("--a", f.a, "point state first coordinate");
  sub->add_option("--b", f.b, "point state second coordinate");
  sub->add_option("--coin", f.coin, "coin R D U L as 4 reals or 8 (re im) pairs")->expected(4, 8);
  sub->add_option("--rho", f.rho_sites, "segment rho sites")->expected(1, -1);
  sub->add_option("--sigma-min", f.sigma_min, "segment lowest sigma");
  sub->add_option("--sigma-max", f.sigma_max, "segment highest sigma");
  sub->add_option("--molecule", f.molecule, "project the segment onto k = 0 states: boson | fermion");
  sub->add_option("--molecule-omega", f.molecule_omega, "eigenphase of the projection target");
  sub->add_option("--molecule-index", f.molecule_index, "which matching state when several share omega and label");
  sub->add_option("--x1", f.x1, "gaussian centre of walker 1");
  sub->add_option("--x2", f.x2, "gaussian centre of walker 2");
  sub->add_option("--width", f.width, "gaussian position standard deviation");
  sub->add_option("--k1", f.k1, "gaussian momentum of walker 1");
  sub->add_option("--k2", f.k2, "gaussian momentum of walker 2");
  sub->add_option("--t-max", f.t_max, "number of steps");
  sub->add_option("--stride", f.stride, "record moments every n steps");
  sub->add_option("--marginal-times", f.marginal_times, "times to dump rho and sigma marginals")->expected(1, -1);
  sub->add_option("--joint-times", f.joint_times, "times to dump the joint probability")->expected(1, -1);
  sub->add_option("--dump-times", f.dump_times, "times to dump complex amplitudes")->expected(1, -1);
}

template <class T, class U>
void apply(const std::optional<T>& flag, U& field) {
  if (flag) field = *flag;
}

RunConfig build_config(const Flags& f, qw2::cli::Command command) {
  RunConfig c = f.config_file.empty() ? RunConfig{} : qw2::cli::load_config(f.config_file);
  c.command = command;
  if (f.phi) c.phi = qw2::cli::Sweep::parse(*f.phi);
  if (f.phi0) c.phi0 = qw2::cli::Sweep::parse(*f.phi0);
  if (f.parity) {
    try {
      c.parity = qw2::parity_from_string(*f.parity);
    } catch (const std::exception& e) {
      throw qw2::cli::ConfigError(e.what());
    }
  }
  apply(f.lc, c.lc);
  apply(f.ring_sites, c.ring_sites);
  apply(f.k_points, c.k_points);
  apply(f.k, c.k);
  apply(f.basis, c.degenerate_basis);
  apply(f.out, c.out_dir);
  apply(f.t_max, c.t_max);
  apply(f.stride, c.stride);
  apply(f.marginal_times, c.marginal_times);
  apply(f.joint_times, c.joint_times);
  apply(f.dump_times, c.dump_times);
  auto& i = c.init;
  apply(f.init_kind, i.kind);
  apply(f.init_coords, i.coords);
  apply(f.a, i.a);
  apply(f.b, i.b);
  apply(f.rho_sites, i.rho_sites);
  apply(f.sigma_min, i.sigma_min);
  apply(f.sigma_max, i.sigma_max);
  apply(f.molecule, i.molecule);
  apply(f.molecule_omega, i.molecule_omega);
  apply(f.molecule_index, i.molecule_index);
  apply(f.x1, i.x1_center);
  apply(f.x2, i.x2_center);
  apply(f.width, i.width);
  apply(f.k1, i.k1);
  apply(f.k2, i.k2);
  if (f.coin) {
    const auto& v = *f.coin;
    i.coin.clear();
    if (v.size() == 4)
      for (double x : v) i.coin.emplace_back(x, 0.0);
    else if (v.size() == 8)
      for (std::size_t n = 0; n < 4; ++n) i.coin.emplace_back(v[2 * n], v[2 * n + 1]);
    else
      throw qw2::cli::ConfigError("--coin takes 4 reals or 8 numbers");
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-walker lattice model: spectra, bound-state catalogs, time evolution"};
  app.require_subcommand(1);
  Flags f;

  auto* spectrum = app.add_subcommand("spectrum", "eigenphases over a uniform k grid");
  add_common(spectrum, f);
  spectrum->add_option("--k-points", f.k_points, "number of k values in [-pi/2, pi/2)");
  spectrum->add_option("--degenerate-basis", f.basis, "delocalized (default) | localized");

  auto* catalog = app.add_subcommand("catalog", "bound states at one k, optionally over a phase sweep");
  add_common(catalog, f);
  catalog->add_option("--k", f.k, "pseudo-momentum in [-pi/2, pi/2)");
  catalog->add_option("--degenerate-basis", f.basis, "localized (default) | delocalized");

  auto* evolve = app.add_subcommand("evolve", "time evolution from an initial state");
  add_common(evolve, f);
  add_init(evolve, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : qw2::cli::kConfigError;
  }

  qw2::cli::Command command = qw2::cli::Command::Spectrum;
  if (catalog->parsed()) command = qw2::cli::Command::Catalog;
  if (evolve->parsed()) command = qw2::cli::Command::Evolve;

  RunConfig config;
  try {
    qw2::cli::apply_thread_override();
    config = build_config(f, command);
  } catch (const qw2::cli::IoError& e) {
    std::cerr << "qw2: I/O error: " << e.what() << '\n';
    return qw2::cli::kIoError;
  } catch (const std::exception& e) {
    std::cerr << "qw2: config error: " << e.what() << '\n';
    return qw2::cli::kConfigError;
  }
  return qw2::cli::run_and_report(config, std::cerr);
}
