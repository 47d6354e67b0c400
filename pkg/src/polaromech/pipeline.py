"""One-call workflows from physical parameters to entanglement numbers."""

from .gaussian import log_negativity, reduce_bipartite
from .lyapunov import solve_lyapunov
from .dynamics import drift_diffusion
from .outputfield import FilterSpec, output_cm
from .params import derive_constants
from .steadystate import solve_steady_state

PAIRS = (("te", "mech"), ("tm", "mech"), ("te", "tm"))


def operating_point(params):
    """Derived constants plus the selected stable steady state."""
    dp = derive_constants(params)
    ss = solve_steady_state(dp, params)
    return dp, ss


def intracavity_cm(params):
    """Stationary intracavity covariance from the Lyapunov route."""
    dp, ss = operating_point(params)
    dd = drift_diffusion(ss, dp)
    return solve_lyapunov(dd.drift, dd.diffusion), dp, ss


def output_cm_at(params, epsilon, omega_over_omega_m, cfg=None):
    """Filtered-output covariance with both polarizations sharing one filter.

    Both output modes are read through the same (epsilon, Omega) window;
    a per-polarization choice is available through output_cm directly.
    """
    dp, ss = operating_point(params)
    spec = FilterSpec.from_epsilon(epsilon, omega_over_omega_m * dp.mech_freq,
                                   dp.mech_freq)
    return output_cm(ss, dp, spec, spec, cfg=cfg), dp, ss


def entanglement(params, pair=("te", "mech"), where="intracavity",
                 epsilon=10.0, omega_over_omega_m=-1.0, cfg=None):
    """Logarithmic negativity of one mode pair, intracavity or at the output."""
    if tuple(pair) not in PAIRS:
        raise ValueError("unknown mode pair %r; expected one of %r"
                         % (pair, PAIRS))
    if where == "intracavity":
        v, _, _ = intracavity_cm(params)
    elif where == "output":
        v, _, _ = output_cm_at(params, epsilon, omega_over_omega_m, cfg=cfg)
    else:
        raise ValueError("where must be 'intracavity' or 'output', got %r" % where)
    return log_negativity(reduce_bipartite(v, pair))
