"""Polarization-controlled optomechanical entanglement.

A two-polarization (TE/TM) driven cavity couples both optical modes to one
mechanical oscillator; rotating the drive polarization angle steers which
optical mode is entangled with the mechanics. This package computes steady
states, stability, stationary Gaussian covariance matrices (intracavity and
for filtered output modes), and logarithmic negativity, plus parameter
sweeps and a small CLI.
"""

from .config import (CONFIG_KEYS, PAPER_BASELINE, ConfigError, build_params,
                     params_record, paper_params, parse_config)
from .constants import C_LIGHT, HBAR, K_BOLTZMANN, PLANCK_H
from .figures import FIGURES, reproduce_figure
from .dynamics import (BASIS_LABELS, STABILITY_MARGIN, DriftDiffusion,
                       assemble_drift, characteristic_polynomial,
                       diffusion_matrix, drift_diffusion, drift_matrix,
                       is_stable_eigen, is_stable_routh_hurwitz,
                       spectral_abscissa)
from .gaussian import (BipartiteCM, PhysicalityReport, log_negativity,
                       min_symplectic_pt, min_symplectic_pt_spectral,
                       reduce_bipartite, symplectic_eigenvalues,
                       symplectic_form, validate_cm)
from .lyapunov import (CovarianceMatrix, LyapunovError, lyapunov_residual,
                       solve_lyapunov, solve_lyapunov_kron, write_debug_dump)
from .outputfield import (FilterSpec, IntegrationConfig, dump_integrand,
                          filter_fourier, intracavity_cm_spectral,
                          mech_noise_psd, output_cm, transfer_matrix)
from .params import (DerivedParams, ParameterError, SystemParams,
                     derive_constants, mean_phonon_number, polarization_split)
from .pipeline import (entanglement, intracavity_cm, operating_point,
                       output_cm_at)
from .steadystate import (SteadyState, UnstableOperatingPointError,
                          effective_couplings, solve_steady_state)
from .sweep import (AXIS_NAMES, TARGETS, Axis, ResultTable, SweepSpec,
                    run_sweep)

__version__ = "0.1.0"

__all__ = [
    "AXIS_NAMES", "Axis", "BASIS_LABELS", "BipartiteCM", "CONFIG_KEYS",
    "C_LIGHT", "ConfigError", "CovarianceMatrix", "DerivedParams",
    "DriftDiffusion", "FIGURES", "FilterSpec", "HBAR", "IntegrationConfig",
    "K_BOLTZMANN", "LyapunovError", "PAPER_BASELINE", "PLANCK_H",
    "ParameterError", "PhysicalityReport", "ResultTable", "STABILITY_MARGIN",
    "SteadyState", "SweepSpec", "SystemParams", "TARGETS",
    "UnstableOperatingPointError", "assemble_drift",
    "build_params", "characteristic_polynomial", "derive_constants",
    "diffusion_matrix", "drift_diffusion", "drift_matrix", "dump_integrand",
    "effective_couplings", "entanglement", "filter_fourier",
    "intracavity_cm", "intracavity_cm_spectral", "is_stable_eigen",
    "is_stable_routh_hurwitz", "log_negativity", "lyapunov_residual",
    "mean_phonon_number", "min_symplectic_pt", "min_symplectic_pt_spectral",
    "operating_point", "output_cm", "output_cm_at", "paper_params",
    "params_record", "parse_config", "polarization_split", "reduce_bipartite",
    "reproduce_figure", "run_sweep", "solve_lyapunov", "solve_lyapunov_kron",
    "solve_steady_state", "spectral_abscissa", "symplectic_eigenvalues",
    "symplectic_form", "transfer_matrix", "validate_cm", "write_debug_dump",
]
