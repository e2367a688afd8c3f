# Copyright 2026 The qwalk2 Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Two interacting walkers on a line: spectra, bound states and evolution."""

from ._core import (
    ContractError,
    DomainError,
    EigenState,
    ExchangeLabel,
    GrowthError,
    MoleculeRecord,
    NumericalError,
    Parity,
    WalkParams,
    band_scan,
    bloch_matrix,
    build_dimer,
    build_phi0_state,
    catalog,
    coin_swap_du,
    coupling,
    eigen_residual,
    eigenphases,
    eigensystem,
    evolve_gaussian,
    evolve_point,
    is_bound,
    phase_multiset_distance,
    reduce_phase,
    ring_rho,
    ring_site,
    run_config,
    uniform_k_grid,
)

__version__ = "0.1.0"
