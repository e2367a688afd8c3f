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

#include "qw2/cli_io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qw2/boundstates.hpp"
#include "qw2/errors.hpp"
#include "qw2/observables.hpp"

#ifndef QW2_VERSION
#define QW2_VERSION "0.0.0"
#endif

namespace qw2::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::string to_string(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Catalog: return "catalog";
    case Command::Evolve: return "evolve";
  }
  return "?";
}

Command command_from_string(const std::string& s) {
  if (s == "spectrum") return Command::Spectrum;
  if (s == "catalog") return Command::Catalog;
  if (s == "evolve") return Command::Evolve;
  throw ConfigError("unknown command '" + s + "'");
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

namespace {

double parse_number(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw ConfigError("cannot parse " + what + " '" + text + "'");
  return v;
}

}  // namespace

Sweep Sweep::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() == 1) return single(parse_number(parts[0], "value"));
  if (parts.size() != 3) throw ConfigError("sweep must be 'value' or 'start:stop:count', got '" + text + "'");
  Sweep s{parse_number(parts[0], "sweep start"), parse_number(parts[1], "sweep stop"), 0};
  const double n = parse_number(parts[2], "sweep count");
  if (n < 1 || n != std::floor(n) || n > 1e6) throw ConfigError("sweep count must be a positive integer");
  s.count = static_cast<int>(n);
  if (s.count == 1 && s.start != s.stop) throw ConfigError("a one-point sweep needs start == stop");
  return s;
}

std::vector<double> Sweep::values() const {
  if (count < 1) throw ConfigError("sweep count must be >= 1");
  if (count == 1) return {start};
  std::vector<double> v;
  for (int i = 0; i < count; ++i)
    v.push_back(i == count - 1 ? stop : start + (stop - start) * i / (count - 1));
  return v;
}

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

WalkParams RunConfig::params(double phi_value, double phi0_value) const {
  if (ring_sites > 0) return WalkParams{phi_value, phi0_value, parity, ring_sites};
  try {
    return WalkParams::from_ring_length(phi_value, phi0_value, parity, lc);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad ring length: ") + e.what());
  }
}

void RunConfig::validate() const {
  auto check = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  check(phi.count >= 1 && phi0.count >= 1, "sweep counts must be >= 1");
  check(std::isfinite(phi.start) && std::isfinite(phi.stop) && std::isfinite(phi0.start) &&
            std::isfinite(phi0.stop),
        "interaction phases must be finite");
  check(ring_sites > 0 || lc > 0, "ring length must be positive");
  (void)params(phi.start, phi0.start);
  check(k_points >= 1, "k-points must be >= 1");
  check(k >= -kPi / 2 && k < kPi / 2, "k must lie in [-pi/2, pi/2)");
  check(degenerate_basis.empty() || degenerate_basis == "delocalized" ||
            degenerate_basis == "localized",
        "degenerate-basis must be delocalized or localized");
  check(t_max >= 0, "t-max must be non-negative");
  check(stride >= 1, "stride must be >= 1");
  for (const auto* times : {&marginal_times, &joint_times, &dump_times})
    for (int t : *times) check(t >= 0 && t <= t_max, "snapshot time " + std::to_string(t) + " outside [0, t-max]");
  check(init.kind == "point" || init.kind == "segment" || init.kind == "gaussian",
        "init kind must be point, segment or gaussian");
  check(init.coords == "x1x2" || init.coords == "rhosigma", "init coords must be x1x2 or rhosigma");
  check(init.coin.size() == 4, "coin needs four components");
  double n2 = 0.0;
  for (const auto& c : init.coin) n2 += std::norm(c);
  check(n2 > 0.0 && std::isfinite(n2), "coin must be finite and nonzero");
  check(init.molecule.empty() || init.molecule == "boson" || init.molecule == "fermion",
        "molecule must be boson or fermion");
  check(init.molecule_index >= 0, "molecule index must be non-negative");
  check(!init.rho_sites.empty(), "segment needs at least one rho site");
  check(init.sigma_min <= init.sigma_max, "sigma-min must not exceed sigma-max");
  check(init.width > 0.0, "gaussian width must be positive");
  if (command == Command::Evolve)
    check(phi.is_single() && phi0.is_single(), "evolve takes a single phi and phi0");
  check(!out_dir.empty(), "output directory must be set");
}

namespace {

json sweep_to_json(const Sweep& s) {
  if (s.is_single()) return s.start;
  return json{{"start", s.start}, {"stop", s.stop}, {"count", s.count}};
}

Sweep sweep_from_json(const json& j) {
  if (j.is_number()) return Sweep::single(j.get<double>());
  if (j.is_string()) return Sweep::parse(j.get<std::string>());
  Sweep s{j.at("start").get<double>(), j.at("stop").get<double>(), j.at("count").get<int>()};
  if (s.count < 1) throw ConfigError("sweep count must be >= 1");
  return s;
}

json coin_to_json(const std::vector<cplx>& coin) {
  json a = json::array();
  for (const auto& c : coin) a.push_back(json::array({c.real(), c.imag()}));
  return a;
}

std::vector<cplx> coin_from_json(const json& j) {
  std::vector<cplx> out;
  for (const auto& e : j) {
    if (e.is_number()) out.emplace_back(e.get<double>(), 0.0);
    else out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  }
  return out;
}

}  // namespace

json to_json(const RunConfig& c) {
  const InitConfig& i = c.init;
  return json{
      {"command", to_string(c.command)},
      {"phi", sweep_to_json(c.phi)},
      {"phi0", sweep_to_json(c.phi0)},
      {"parity", qw2::to_string(c.parity)},
      {"lc", c.lc},
      {"ring_sites", c.ring_sites},
      {"k_points", c.k_points},
      {"k", c.k},
      {"degenerate_basis", c.degenerate_basis},
      {"init",
       {{"kind", i.kind},
        {"coords", i.coords},
        {"a", i.a},
        {"b", i.b},
        {"coin", coin_to_json(i.coin)},
        {"rho_sites", i.rho_sites},
        {"sigma_min", i.sigma_min},
        {"sigma_max", i.sigma_max},
        {"molecule", i.molecule},
        {"molecule_omega", i.molecule_omega},
        {"molecule_index", i.molecule_index},
        {"x1_center", i.x1_center},
        {"x2_center", i.x2_center},
        {"width", i.width},
        {"k1", i.k1},
        {"k2", i.k2}}},
      {"t_max", c.t_max},
      {"stride", c.stride},
      {"marginal_times", c.marginal_times},
      {"joint_times", c.joint_times},
      {"dump_times", c.dump_times},
      {"out_dir", c.out_dir},
  };
}

RunConfig config_from_json(const json& doc) {
  const json& j = doc.contains("config") ? doc.at("config") : doc;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    auto get = [&j](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    };
    if (j.contains("command")) c.command = command_from_string(j.at("command").get<std::string>());
    if (j.contains("phi")) c.phi = sweep_from_json(j.at("phi"));
    if (j.contains("phi0")) c.phi0 = sweep_from_json(j.at("phi0"));
    if (j.contains("parity")) c.parity = parity_from_string(j.at("parity").get<std::string>());
    get("lc", c.lc);
    get("ring_sites", c.ring_sites);
    get("k_points", c.k_points);
    get("k", c.k);
    get("degenerate_basis", c.degenerate_basis);
    get("t_max", c.t_max);
    get("stride", c.stride);
    get("marginal_times", c.marginal_times);
    get("joint_times", c.joint_times);
    get("dump_times", c.dump_times);
    get("out_dir", c.out_dir);
    if (j.contains("init")) {
      const json& ij = j.at("init");
      InitConfig& i = c.init;
      auto iget = [&ij](const char* key, auto& field) {
        if (ij.contains(key)) field = ij.at(key).get<std::remove_reference_t<decltype(field)>>();
      };
      iget("kind", i.kind);
      iget("coords", i.coords);
      iget("a", i.a);
      iget("b", i.b);
      if (ij.contains("coin")) i.coin = coin_from_json(ij.at("coin"));
      iget("rho_sites", i.rho_sites);
      iget("sigma_min", i.sigma_min);
      iget("sigma_max", i.sigma_max);
      iget("molecule", i.molecule);
      iget("molecule_omega", i.molecule_omega);
      iget("molecule_index", i.molecule_index);
      iget("x1_center", i.x1_center);
      iget("x2_center", i.x2_center);
      iget("width", i.width);
      iget("k1", i.k1);
      iget("k2", i.k2);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot read config file " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + file.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw IoError("number formatting failed");
  return std::string(buf, ptr);
}

namespace {

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, RunResult& result) : path_(path) {
    out_.open(path, std::ios::binary);
    if (!out_) throw IoError("cannot write " + path.string());
    result.files.push_back(path.filename());
  }

  CsvWriter& cell(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }
  CsvWriter& cell(double v) { return cell(format_double(v)); }
  CsvWriter& cell(long v) { return cell(std::to_string(v)); }
  CsvWriter& cell(int v) { return cell(std::to_string(v)); }
  CsvWriter& cell(cplx v) { return cell(v.real()).cell(v.imag()); }

  void end_row() {
    out_ << '\n';
    first_ = true;
    if (!out_) throw IoError("write failed on " + path_.string());
  }

  void close() {
    out_.close();
    if (!out_) throw IoError("write failed on " + path_.string());
  }

 private:
  fs::path path_;
  std::ofstream out_;
  bool first_ = true;
};

fs::path prepare_out_dir(const RunConfig& config) {
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());
  return dir;
}

using Clock = std::chrono::steady_clock;

void write_metadata(const fs::path& dir, const RunConfig& config, RunResult& result,
                    Clock::time_point started) {
  json files = json::array();
  for (const auto& f : result.files) files.push_back(f.string());
  const double seconds = std::chrono::duration<double>(Clock::now() - started).count();
  const json meta{{"tool", "qw2"},
                  {"version", QW2_VERSION},
                  {"command", to_string(config.command)},
                  {"config", to_json(config)},
                  {"files", files},
                  {"partial", result.partial},
                  {"failures", result.failures},
                  {"timings", {{"wall_seconds", seconds}}}};
  const fs::path path = dir / "metadata.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << meta.dump(2) << '\n';
  out.close();
  if (!out) throw IoError("write failed on " + path.string());
  result.files.push_back(path.filename());
}

DegenerateBasis basis_or(const RunConfig& config, DegenerateBasis fallback) {
  if (config.degenerate_basis == "delocalized") return DegenerateBasis::Delocalized;
  if (config.degenerate_basis == "localized") return DegenerateBasis::Localized;
  return fallback;
}

std::vector<std::pair<double, double>> sweep_points(const RunConfig& config) {
  std::vector<std::pair<double, double>> pts;
  for (double p : config.phi.values())
    for (double p0 : config.phi0.values()) pts.emplace_back(p, p0);
  return pts;
}

// Probability on the smallest-|rho| sites of the sector.
double contact_probability(const WalkParams& params, const Eigen::VectorXcd& v) {
  const auto p = rho_profile(v);
  double sum = 0.0;
  for (int j = 0; j < params.ring_sites; ++j) {
    const long r = std::labs(ring_rho(params, j));
    if (r == (params.parity == Parity::Odd ? 1 : 0)) sum += p[static_cast<std::size_t>(j)];
  }
  return sum;
}

}  // namespace

RunResult cmd_spectrum(const RunConfig& config) {
  config.validate();
  const auto started = Clock::now();
  const fs::path dir = prepare_out_dir(config);
  RunResult result;
  CsvWriter csv(dir / "spectrum.csv", result);
  for (const char* h : {"phi", "phi0", "k", "omega", "ipr", "support_radius", "exchange_label",
                        "bound_flag", "cluster_multiplicity"})
    csv.cell(std::string(h));
  csv.end_row();
  const auto grid = uniform_k_grid(config.k_points);
  for (const auto& [phi, phi0] : sweep_points(config)) {
    const WalkParams params = config.params(phi, phi0);
    const SpectrumTable table =
        band_scan(params, grid, {basis_or(config, DegenerateBasis::Delocalized), false});
    for (const auto& row : table.rows) {
      csv.cell(phi).cell(phi0).cell(row.k).cell(row.omega).cell(row.ipr).cell(row.support_radius);
      csv.cell(to_string(row.exchange_label)).cell(row.bound ? 1 : 0).cell(row.cluster_multiplicity);
      csv.end_row();
    }
    for (const auto& f : table.failures)
      result.failures.push_back("phi=" + format_double(phi) + " phi0=" + format_double(phi0) + ": " + f);
  }
  csv.close();
  result.partial = !result.failures.empty();
  write_metadata(dir, config, result, started);
  return result;
}

RunResult cmd_catalog(const RunConfig& config) {
  config.validate();
  const auto started = Clock::now();
  const fs::path dir = prepare_out_dir(config);
  RunResult result;
  const WalkParams shape = config.params(config.phi.start, config.phi0.start);

  CsvWriter cat(dir / "catalog.csv", result);
  for (const char* h : {"phi", "phi0", "k", "omega", "exchange_label", "multiplicity", "ipr",
                        "support_radius"})
    cat.cell(std::string(h));
  for (int j = 0; j < shape.ring_sites; ++j) cat.cell("P_rho=" + std::to_string(ring_rho(shape, j)));
  cat.end_row();

  CsvWriter comp(dir / "catalog_components.csv", result);
  for (const char* h : {"phi", "phi0", "state", "rho", "R2", "D2", "U2", "L2"}) comp.cell(std::string(h));
  comp.end_row();

  // Every eigenphase per sweep point, for phase-vs-coupling plots.
  CsvWriter all(dir / "sweep_spectrum.csv", result);
  for (const char* h : {"phi", "phi0", "omega", "exchange_label", "ipr", "support_radius",
                        "bound_flag", "p_contact"})
    all.cell(std::string(h));
  all.end_row();

  const DegenerateBasis how = basis_or(config, DegenerateBasis::Localized);
  for (const auto& [phi, phi0] : sweep_points(config)) {
    const WalkParams params = config.params(phi, phi0);
    std::vector<EigenState> states;
    try {
      states = eigensystem(build_bloch(config.k, params), {how, false});
    } catch (const NumericalError& e) {
      result.failures.push_back("phi=" + format_double(phi) + " phi0=" + format_double(phi0) + ": " + e.what());
      continue;
    }
    int state_id = 0;
    for (const auto& s : states) {
      const bool bound = is_bound(s, params);
      all.cell(phi).cell(phi0).cell(s.omega).cell(to_string(s.exchange_label)).cell(s.ipr);
      all.cell(s.support_radius).cell(bound ? 1 : 0).cell(contact_probability(params, s.vector));
      all.end_row();
      if (!bound) continue;
      const MoleculeRecord m = to_molecule(s, params);
      cat.cell(phi).cell(phi0).cell(m.k).cell(m.omega).cell(to_string(m.exchange_label));
      cat.cell(m.multiplicity).cell(m.ipr).cell(m.support_radius);
      for (double p : m.p_rho) cat.cell(p);
      cat.end_row();
      for (std::size_t j = 0; j < m.rho.size(); ++j) {
        if (m.p_rho[j] == 0.0) continue;
        comp.cell(phi).cell(phi0).cell(state_id).cell(m.rho[j]);
        comp.cell(m.r2[j]).cell(m.d2[j]).cell(m.u2[j]).cell(m.l2[j]);
        comp.end_row();
      }
      ++state_id;
    }
  }
  cat.close();
  comp.close();
  all.close();
  result.partial = !result.failures.empty();
  write_metadata(dir, config, result, started);
  return result;
}

InitialStateSpec make_initial_state(const RunConfig& config, const WalkParams& params) {
  const InitConfig& i = config.init;
  CoinVector coin;
  for (std::size_t c = 0; c < 4; ++c) coin[c] = i.coin[c];
  coin = coin.normalized();
  if (i.kind == "point") {
    const Coords coords = i.coords == "x1x2" ? Coords::X1X2 : Coords::RhoSigma;
    return PointState{coords, i.a, i.b, coin};
  }
  if (i.kind == "gaussian")
    return GaussianPair{i.x1_center, i.x2_center, i.width, i.k1, i.k2, coin};

  SigmaSegment seg;
  seg.sigma_min = i.sigma_min;
  seg.sigma_max = i.sigma_max;
  for (long rho : i.rho_sites) seg.profile.push_back(RhoCoin{rho, coin});
  if (!i.molecule.empty()) {
    const ExchangeLabel label = i.molecule == "boson" ? ExchangeLabel::Boson : ExchangeLabel::Fermion;
    const EigenState target = select_state(params, i.molecule_omega, label, i.molecule_index);
    const Eigen::VectorXcd v = project_onto(target, ring_vector(params, seg.profile));
    seg.profile = ring_profile(params, v);
  }
  return seg;
}

RunResult cmd_evolve(const RunConfig& config) {
  config.validate();
  const auto started = Clock::now();
  const fs::path dir = prepare_out_dir(config);
  RunResult result;
  const WalkParams params = config.params(config.phi.start, config.phi0.start);
  const InitialStateSpec init = make_initial_state(config, params);

  auto listed = [](const std::vector<int>& v, int t) { return std::find(v.begin(), v.end(), t) != v.end(); };
  EvolveOptions opts;
  opts.stride = config.stride;
  opts.marginal_times = config.marginal_times;
  opts.joint_times = config.joint_times;
  opts.observe_times = config.dump_times;
  opts.observer = [&](int t, const AmplitudeField& field) {
    if (!listed(config.dump_times, t)) return;
    CsvWriter csv(dir / ("field_t" + std::to_string(t) + ".csv"), result);
    const bool xy = field.coords() == Coords::X1X2;
    csv.cell(std::string(xy ? "x1" : "rho")).cell(std::string(xy ? "x2" : "sigma"));
    for (const char* h : {"R_re", "R_im", "D_re", "D_im", "U_re", "U_im", "L_re", "L_im"})
      csv.cell(std::string(h));
    csv.end_row();
    const IndexBox box = field.support();
    for (long i = box.lo0; i <= box.hi0; ++i)
      for (long j = box.lo1; j <= box.hi1; ++j) {
        const CoinVector& c = field.at(i, j);
        if (c.is_zero()) continue;
        csv.cell(field.axis0().at(i)).cell(field.axis1().at(j));
        for (std::size_t k = 0; k < 4; ++k) csv.cell(c[k]);
        csv.end_row();
      }
    csv.close();
  };

  ObservableSeries series;
  try {
    series = evolve(init, params, config.t_max, opts);
  } catch (const PartialResultsError& e) {
    series = e.partial();
    result.partial = true;
    result.failures.push_back(e.what());
  }

  const Coords coords = natural_coords(init);
  const bool xy = coords == Coords::X1X2;
  CsvWriter ser(dir / "series.csv", result);
  for (const char* h : {"t", "norm", "mean_rho", "mean_sigma", "var_rho", "var_sigma", "mean_x1", "mean_x2"})
    ser.cell(std::string(h));
  ser.end_row();
  for (const auto& r : series.records) {
    const Moments& m = r.m;
    ser.cell(r.t).cell(m.norm).cell(m.mean_rho).cell(m.mean_sigma).cell(m.var_rho).cell(m.var_sigma);
    ser.cell(m.mean_x1).cell(m.mean_x2);
    ser.end_row();

    if (r.marginals) {
      CsvWriter csv(dir / ("marginals_t" + std::to_string(r.t) + ".csv"), result);
      csv.cell(std::string("axis")).cell(std::string("value")).cell(std::string("p"));
      csv.end_row();
      auto dump = [&csv](const char* name, const Distribution1D& d) {
        for (long i = 0; i < d.axis.count; ++i) {
          csv.cell(std::string(name)).cell(d.axis.at(i)).cell(d.p[static_cast<std::size_t>(i)]);
          csv.end_row();
        }
      };
      dump("rho", r.marginals->rho);
      dump("sigma", r.marginals->sigma);
      csv.close();
    }
    if (r.joint) {
      CsvWriter csv(dir / ("joint_t" + std::to_string(r.t) + ".csv"), result);
      csv.cell(std::string(xy ? "x1" : "rho")).cell(std::string(xy ? "x2" : "sigma")).cell(std::string("p"));
      csv.end_row();
      const ProbabilityGrid& g = *r.joint;
      for (long i = 0; i < g.axis0.count; ++i)
        for (long j = 0; j < g.axis1.count; ++j) {
          const double p = g.at_index(i, j);
          if (p == 0.0) continue;
          csv.cell(g.axis0.at(i)).cell(g.axis1.at(j)).cell(p);
          csv.end_row();
        }
      csv.close();
    }
  }
  ser.close();
  write_metadata(dir, config, result, started);
  return result;
}

RunResult run(const RunConfig& config) {
  switch (config.command) {
    case Command::Spectrum: return cmd_spectrum(config);
    case Command::Catalog: return cmd_catalog(config);
    case Command::Evolve: return cmd_evolve(config);
  }
  throw ConfigError("unknown command");
}

int run_and_report(const RunConfig& config, std::ostream& err) {
  try {
    const RunResult r = run(config);
    if (r.partial) {
      for (const auto& f : r.failures) err << "qw2: " << f << '\n';
      err << "qw2: partial results written to " << config.out_dir << '\n';
      return kNumericalError;
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "qw2: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ContractError& e) {
    err << "qw2: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "qw2: config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "qw2: I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "qw2: I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "qw2: numerical error: " << e.what() << '\n';
    return kNumericalError;
  }
}

void apply_thread_override() {
  const char* env = std::getenv("QW2_THREADS");
  if (env == nullptr || *env == '\0') return;
  int n = 0;
  const char* last = env + std::char_traits<char>::length(env);
  auto [ptr, ec] = std::from_chars(env, last, n);
  if (ec != std::errc() || ptr != last || n < 1) throw ConfigError("QW2_THREADS must be a positive integer");
#ifdef _OPENMP
  omp_set_num_threads(n);
#endif
}

}  // namespace qw2::cli
