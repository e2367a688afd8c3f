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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qw2/boundstates.hpp"
#include "qw2/cli_io.hpp"
#include "qw2/errors.hpp"
#include "qw2/evolution.hpp"
#include "qw2/observables.hpp"
#include "qw2/spectral.hpp"
#include "qw2/walk_core.hpp"

namespace py = pybind11;
using namespace qw2;

namespace {

CoinVector coin_from(const std::vector<cplx>& c) {
  if (c.size() != 4) throw DomainError("coin needs four components (R, D, U, L)");
  return CoinVector{c[0], c[1], c[2], c[3]};
}

std::vector<cplx> coin_to(const CoinVector& c) { return {c[0], c[1], c[2], c[3]}; }

DegenerateBasis basis_from(const std::string& s) {
  if (s == "delocalized") return DegenerateBasis::Delocalized;
  if (s == "localized") return DegenerateBasis::Localized;
  throw DomainError("degenerate basis must be 'delocalized' or 'localized'");
}

// Columns of a table as numpy arrays.
py::dict series_to_dict(const ObservableSeries& s) {
  const std::size_t n = s.records.size();
  py::array_t<int> t(static_cast<py::ssize_t>(n));
  // Built one by one: copies of a py::array share its buffer.
  std::vector<py::array_t<double>> cols;
  for (int c = 0; c < 7; ++c) cols.emplace_back(static_cast<py::ssize_t>(n));
  auto tt = t.mutable_unchecked<1>();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = s.records[i];
    const auto k = static_cast<py::ssize_t>(i);
    tt(k) = r.t;
    const double v[7] = {r.m.norm, r.m.mean_rho, r.m.mean_sigma, r.m.var_rho,
                         r.m.var_sigma, r.m.mean_x1, r.m.mean_x2};
    for (std::size_t c = 0; c < 7; ++c) cols[c].mutable_unchecked<1>()(k) = v[c];
  }
  py::dict d;
  d["t"] = t;
  const char* names[7] = {"norm", "mean_rho", "mean_sigma", "var_rho", "var_sigma", "mean_x1", "mean_x2"};
  for (std::size_t c = 0; c < 7; ++c) d[names[c]] = cols[c];
  py::dict marg;
  for (const auto& r : s.records) {
    if (!r.marginals) continue;
    py::dict m;
    for (const auto* dist : {&r.marginals->rho, &r.marginals->sigma}) {
      std::vector<long> axis;
      for (long i = 0; i < dist->axis.count; ++i) axis.push_back(dist->axis.at(i));
      m[dist == &r.marginals->rho ? "rho" : "sigma"] =
          py::make_tuple(py::array(py::cast(axis)), py::array(py::cast(dist->p)));
    }
    marg[py::int_(r.t)] = m;
  }
  d["marginals"] = marg;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two interacting walkers on a line: spectra, bound states and evolution.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<GrowthError>(m, "GrowthError", PyExc_RuntimeError);

  py::enum_<Parity>(m, "Parity").value("EVEN", Parity::Even).value("ODD", Parity::Odd);
  py::enum_<ExchangeLabel>(m, "ExchangeLabel")
      .value("BOSON", ExchangeLabel::Boson)
      .value("FERMION", ExchangeLabel::Fermion)
      .value("MIXED", ExchangeLabel::Mixed);

  py::class_<WalkParams>(m, "WalkParams")
      .def(py::init([](double phi, double phi0, Parity parity, int ring_sites) {
             WalkParams p{phi, phi0, parity, ring_sites};
             p.validate();
             return p;
           }),
           py::arg("phi"), py::arg("phi0") = 0.0, py::arg("parity") = Parity::Odd,
           py::arg("ring_sites") = 191)
      .def_static("from_ring_length", &WalkParams::from_ring_length, py::arg("phi"), py::arg("phi0"),
                  py::arg("parity"), py::arg("lc"))
      .def_readwrite("phi", &WalkParams::phi)
      .def_readwrite("phi0", &WalkParams::phi0)
      .def_readwrite("parity", &WalkParams::parity)
      .def_readwrite("ring_sites", &WalkParams::ring_sites)
      .def("ring_length", &WalkParams::ring_length)
      .def("__repr__", [](const WalkParams& p) {
        return "WalkParams(phi=" + cli::format_double(p.phi) + ", phi0=" + cli::format_double(p.phi0) +
               ", parity=" + to_string(p.parity) + ", ring_sites=" + std::to_string(p.ring_sites) + ")";
      });

  m.def("reduce_phase", &reduce_phase, py::arg("phase"));
  m.def("coupling", &coupling, py::arg("rho"), py::arg("params"));
  m.def("ring_rho", &ring_rho, py::arg("params"), py::arg("site"));
  m.def("ring_site", &ring_site, py::arg("params"), py::arg("rho"));

  py::class_<EigenState>(m, "EigenState")
      .def_readonly("omega", &EigenState::omega)
      .def_readonly("k", &EigenState::k)
      .def_readonly("vector", &EigenState::vector)
      .def_readonly("exchange_label", &EigenState::exchange_label)
      .def_readonly("exchange_expectation", &EigenState::exchange_expectation)
      .def_readonly("ipr", &EigenState::ipr)
      .def_readonly("support_radius", &EigenState::support_radius)
      .def_readonly("cluster_multiplicity", &EigenState::cluster_multiplicity);

  m.def(
      "bloch_matrix", [](double k, const WalkParams& p) { return build_bloch(k, p).matrix; }, py::arg("k"),
      py::arg("params"), "Dense Bloch operator at pseudo-momentum k; basis index 4 * site + component.");
  m.def(
      "eigensystem",
      [](double k, const WalkParams& p, const std::string& basis, bool values_only) {
        return eigensystem(build_bloch(k, p), {basis_from(basis), values_only});
      },
      py::arg("k"), py::arg("params"), py::arg("degenerate_basis") = "delocalized",
      py::arg("values_only") = false);
  m.def(
      "eigenphases",
      [](double k, const WalkParams& p) {
        std::vector<double> w;
        for (const auto& s : eigensystem(build_bloch(k, p), {DegenerateBasis::Delocalized, true}))
          w.push_back(s.omega);
        return py::array(py::cast(w));
      },
      py::arg("k"), py::arg("params"));
  m.def("uniform_k_grid", &uniform_k_grid, py::arg("points") = 129);
  m.def(
      "band_scan",
      [](const WalkParams& p, const std::vector<double>& ks, const std::string& basis) {
        const SpectrumTable t = band_scan(p, ks, {basis_from(basis), false});
        py::list rows;
        for (const auto& r : t.rows) {
          py::dict d;
          d["k"] = r.k;
          d["omega"] = r.omega;
          d["ipr"] = r.ipr;
          d["support_radius"] = r.support_radius;
          d["exchange_label"] = r.exchange_label;
          d["bound"] = r.bound;
          d["cluster_multiplicity"] = r.cluster_multiplicity;
          rows.append(d);
        }
        return py::make_tuple(rows, t.failures);
      },
      py::arg("params"), py::arg("k_grid"), py::arg("degenerate_basis") = "delocalized",
      "Returns (rows, failures); rows are dicts sorted by k, then omega.");
  m.def("phase_multiset_distance", &phase_multiset_distance, py::arg("a"), py::arg("b"));

  py::class_<MoleculeRecord>(m, "MoleculeRecord")
      .def_readonly("omega", &MoleculeRecord::omega)
      .def_readonly("k", &MoleculeRecord::k)
      .def_readonly("exchange_label", &MoleculeRecord::exchange_label)
      .def_readonly("exchange_expectation", &MoleculeRecord::exchange_expectation)
      .def_readonly("multiplicity", &MoleculeRecord::multiplicity)
      .def_readonly("ipr", &MoleculeRecord::ipr)
      .def_readonly("support_radius", &MoleculeRecord::support_radius)
      .def_readonly("rho", &MoleculeRecord::rho)
      .def_readonly("p_rho", &MoleculeRecord::p_rho);

  m.def("catalog", &catalog, py::arg("params"), py::arg("k") = 0.0);
  m.def("build_dimer", &build_dimer, py::arg("rho0"), py::arg("params"));
  m.def("build_phi0_state", &build_phi0_state, py::arg("params"));
  m.def("eigen_residual", &eigen_residual, py::arg("state"), py::arg("params"));
  m.def("is_bound", &is_bound, py::arg("state"), py::arg("params"));

  m.def(
      "evolve_point",
      [](long a, long b, const std::vector<cplx>& coin, const WalkParams& p, int t_max, bool rho_sigma,
         int stride, std::vector<int> marginal_times) {
        const PointState init{rho_sigma ? Coords::RhoSigma : Coords::X1X2, a, b, coin_from(coin).normalized()};
        EvolveOptions opts;
        opts.stride = stride;
        opts.marginal_times = std::move(marginal_times);
        return series_to_dict(evolve(init, p, t_max, opts));
      },
      py::arg("a"), py::arg("b"), py::arg("coin"), py::arg("params"), py::arg("t_max"),
      py::arg("rho_sigma") = false, py::arg("stride") = 1, py::arg("marginal_times") = std::vector<int>{});
  m.def(
      "evolve_gaussian",
      [](double x1, double x2, double width, double k1, double k2, const std::vector<cplx>& coin,
         const WalkParams& p, int t_max, int stride) {
        const GaussianPair init{x1, x2, width, k1, k2, coin_from(coin).normalized()};
        EvolveOptions opts;
        opts.stride = stride;
        return series_to_dict(evolve(init, p, t_max, opts));
      },
      py::arg("x1_center"), py::arg("x2_center"), py::arg("width"), py::arg("k1"), py::arg("k2"),
      py::arg("coin"), py::arg("params"), py::arg("t_max"), py::arg("stride") = 1);

  m.def(
      "run_config",
      [](const std::string& json_text) {
        const cli::RunConfig config = cli::config_from_json(nlohmann::json::parse(json_text));
        const cli::RunResult r = cli::run(config);
        std::vector<std::string> files;
        for (const auto& f : r.files) files.push_back(f.string());
        return py::make_tuple(files, r.partial, r.failures);
      },
      py::arg("config_json"), "Runs a CLI configuration given as JSON text; returns (files, partial, failures).");
  m.def("coin_swap_du", [](const std::vector<cplx>& c) { return coin_to(swap_du(coin_from(c))); });
}
