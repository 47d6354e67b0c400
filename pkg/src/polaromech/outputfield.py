"""Covariance matrix of filtered cavity output modes, by spectral quadrature.

Each polarization's output field is projected onto a single causal filter
mode (central frequency Omega, window length tau); the mechanical mode rides
along unfiltered with its colored thermal noise N_m(omega). The stationary
output covariance is the frequency integral of

    T(w) [M(w) + P/(2 kappa)] D(w) [M(w) + P/(2 kappa)]^H T(w)^H

with M(w) = (i w + A)^(-1), P the optical projector, D(w) the noise
spectral densities, and T(w) carrying the filter transforms on the optical
blocks and a flat 1/sqrt(2 pi) on the mechanical block.

Numerically the integral is evaluated as a difference against a
zero-coupling reference system sharing the same integrand structure: the
reference optical output is filtered vacuum (exactly I/2 by filter
normalization), and the reference mechanical block is a cheap dedicated 2x2
quadrature. The difference integrand vanishes identically on decoupled
blocks, so pure modes come out exactly pure instead of carrying quadrature
truncation noise, and its high-frequency tail falls off two powers faster.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import HBAR, K_BOLTZMANN
from .dynamics import STABILITY_MARGIN, assemble_drift, drift_matrix, spectral_abscissa
from .gaussian import validate_cm
from .lyapunov import CovarianceMatrix, MODES

TWO_PI = 2.0 * math.pi

# The colored mechanical momentum spectrum grows ~ gamma_m |w| at large
# frequency, so its variance integral has a (physically cut off) logarithmic
# tail; the reference window below fixes the convention. At Q_m = 1e5 the
# sensitivity to this choice is ~1e-8 relative.
_MECH_REFERENCE_WINDOW = 400.0


@dataclass(frozen=True)
class FilterSpec:
    """Causal single-mode output filter.

    central_freq is the detection frequency Omega in rad/s (negative for the
    Stokes sideband, Omega = -omega_m); filter_time is the window length tau
    in seconds; epsilon = omega_m * tau is the dimensionless inverse
    bandwidth the two must stay consistent with.
    """

    central_freq: float
    filter_time: float
    epsilon: float

    def __post_init__(self):
        if not (math.isfinite(self.central_freq) and math.isfinite(self.filter_time)
                and math.isfinite(self.epsilon)):
            raise ValueError("filter spec fields must be finite")
        if self.filter_time <= 0 or self.epsilon <= 0:
            raise ValueError("filter_time and epsilon must be positive")

    @classmethod
    def from_epsilon(cls, epsilon, central_freq, mech_freq):
        """Build a spec from the dimensionless bandwidth, tau = epsilon/omega_m."""
        return cls(central_freq=float(central_freq),
                   filter_time=float(epsilon) / float(mech_freq),
                   epsilon=float(epsilon))

    @classmethod
    def stokes(cls, epsilon, mech_freq):
        """Filter centered on the Stokes sideband Omega = -omega_m."""
        return cls.from_epsilon(epsilon, -float(mech_freq), mech_freq)


@dataclass(frozen=True)
class IntegrationConfig:
    """Quadrature controls for the output-field integral.

    freq_cutoff: half-width of the integration window in units of omega_m
    (the window also extends to cover the filter main lobes). tolerance:
    convergence bound on the max entry change of V under one panel doubling,
    relative to the largest entry of V (floor 1).
    """

    freq_cutoff: float = 40.0
    tolerance: float = 1e-9
    gauss_order: int = 12
    max_doublings: int = 6

    def __post_init__(self):
        if self.freq_cutoff < 4:
            raise ValueError("freq_cutoff must be at least 4 mechanical frequencies")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.gauss_order < 2 or self.max_doublings < 0:
            raise ValueError("gauss_order must be >= 2 and max_doublings >= 0")


def filter_fourier(spec, omega):
    """Fourier transform of the causal filter at angular frequency omega.

    g(w) = sqrt(tau/2pi) exp(i (w - Omega) tau / 2) sinc((w - Omega) tau / 2)
    with sinc(x) = sin(x)/x. Normalized so integral |g|^2 dw = 1. Accepts
    scalar or array omega in the same units as spec.central_freq.
    """
    z = (np.asarray(omega, dtype=float) - spec.central_freq) * spec.filter_time / 2.0
    out = (math.sqrt(spec.filter_time / TWO_PI)
           * np.exp(1j * z) * np.sinc(z / np.pi))
    if np.isscalar(omega):
        return complex(out)
    return out


def mech_noise_psd(omega, dp, temperature):
    """Colored mechanical noise density N_m(w) = (gamma_m w / omega_m) coth(hbar w / 2 kB T).

    Dimensionless rate (units of gamma_m when w ~ omega_m); even in w. The
    w -> 0 limit is 2 gamma_m kB T / (hbar omega_m); at T = 0 it reduces to
    gamma_m |w| / omega_m. Near w = +-omega_m it approaches the Markovian
    gamma_m (2 n_m + 1).
    """
    w = np.asarray(omega, dtype=float)
    scale = dp.mech_damping / dp.mech_freq
    if temperature == 0.0:
        out = scale * np.abs(w)
    else:
        b = HBAR / (2.0 * K_BOLTZMANN * temperature)
        x = b * w
        with np.errstate(invalid="ignore"):
            out = np.where(x == 0.0, scale / b, scale * w / np.tanh(x))
    if np.isscalar(omega):
        return float(out)
    return out


def transfer_matrix(omega, a):
    """Matrix inverse of (i omega I + A); omega and A in consistent units.

    Raises numpy.linalg.LinAlgError at a singular point (marginal A with
    omega on an undamped resonance).
    """
    a = np.asarray(a, dtype=float)
    return np.linalg.inv(1j * float(omega) * np.eye(a.shape[0]) + a)


def _check_filter(spec, mech_freq, label):
    eps = mech_freq * spec.filter_time
    if abs(eps - spec.epsilon) > 1e-9 * max(spec.epsilon, eps):
        raise ValueError("%s filter: epsilon=%g inconsistent with "
                         "omega_m * tau = %g" % (label, spec.epsilon, eps))


def _beta_bar(thermal_occupancy):
    """Dimensionless hbar omega_m / (2 kB T), recovered exactly from n_m."""
    if thermal_occupancy == 0.0:
        return math.inf
    return 0.5 * math.log1p(1.0 / thermal_occupancy)


def _colored_noise(w, gamma_bar, beta_bar):
    """N_m in omega_m units on a positive-frequency grid."""
    if math.isinf(beta_bar):
        return gamma_bar * np.abs(w)
    return gamma_bar * w / np.tanh(beta_bar * w)


def _gauss_panels(edges, order):
    """Gauss-Legendre nodes/weights on each panel of a sorted edge array."""
    x, wt = np.polynomial.legendre.leggauss(order)
    a = edges[:-1][:, None]
    b = edges[1:][:, None]
    nodes = (0.5 * (b - a) * x[None, :] + 0.5 * (b + a)).ravel()
    weights = (0.5 * (b - a) * wt[None, :]).ravel()
    return nodes, weights


def _graded_edges(features, width, spacing=0.25, max_between=6):
    """Panel edges on [0, width], geometrically graded around each feature.

    features is a list of (center, scale) pairs: edges accumulate at
    center +- scale * 2^k, resolving structure down to the given scale while
    staying cheap far away. Long gaps are subdivided toward the target
    spacing, capped at max_between extra panels per gap.
    """
    pts = {0.0, float(width)}
    for center, scale in features:
        if 0.0 < center < width:
            pts.add(float(center))
        for sign in (-1.0, 1.0):
            for k in range(24):
                e = center + sign * scale * 2.0 ** k
                if 0.0 < e < width:
                    pts.add(float(e))
    edges = sorted(pts)
    # merge near-coincident edges so no panel degenerates to zero width
    merged = [edges[0]]
    for e in edges[1:]:
        if e - merged[-1] > 1e-9 * max(1.0, e):
            merged.append(e)
    merged[-1] = edges[-1]
    edges = merged
    out = [edges[0]]
    for a, b in zip(edges[:-1], edges[1:]):
        n = max(1, min(max_between, int((b - a) / spacing)))
        step = (b - a) / n
        out.extend(a + step * (i + 1) for i in range(n))
    return np.array(out)


def _eigen_features(a):
    """(|Im|, |Re|) of each eigenvalue, the resonance positions and widths."""
    evs = np.linalg.eigvals(a)
    return [(abs(e.imag), max(abs(e.real), 1e-7)) for e in evs]


def _filter_blocks(w, spec_scaled):
    """Quadrature-basis filter entries (F_x, F_y) on a positive frequency grid.

    The quadrature transform mixes g at +w and -w; evaluating both here is
    what lets the integral fold onto w >= 0.
    """
    gp = filter_fourier(spec_scaled, w)
    gm = filter_fourier(spec_scaled, -w)
    fx = 0.5 * (gp + np.conj(gm))
    fy = (gp - np.conj(gm)) / 2j
    return fx, fy


def _output_transform(w, spec_te, spec_tm, kappa_bar):
    """Stacked T(w) matrices, (len(w), 6, 6) complex."""
    t = np.zeros((len(w), 6, 6), dtype=complex)
    sq = math.sqrt(2.0 * kappa_bar)
    for offset, spec in ((0, spec_te), (2, spec_tm)):
        fx, fy = _filter_blocks(w, spec)
        t[:, offset, offset] = sq * fx
        t[:, offset + 1, offset + 1] = sq * fx
        t[:, offset, offset + 1] = -sq * fy
        t[:, offset + 1, offset] = sq * fy
    t[:, 4, 4] = t[:, 5, 5] = 1.0 / math.sqrt(TWO_PI)
    return t


_P_OUT = np.diag([1.0, 1.0, 1.0, 1.0, 0.0, 0.0])


def _difference_integrand(w, a, a_ref, kappa_bar, gamma_bar, beta_bar,
                          spec_te, spec_tm):
    """Realified integrand of (full - reference), stacked over w >= 0.

    The integrand is Hermitian with H(-w) = conj(H(w)), so folding the
    negative-frequency half gives 2 Re H; the result is manifestly real and
    symmetric up to quadrature error.
    """
    eye = np.eye(6)
    m_full = np.linalg.inv(1j * w[:, None, None] * eye + a[None])
    m_ref = np.linalg.inv(1j * w[:, None, None] * eye + a_ref[None])
    dmat = np.zeros((len(w), 6, 6))
    for i in range(4):
        dmat[:, i, i] = kappa_bar
    dmat[:, 5, 5] = _colored_noise(w, gamma_bar, beta_bar)
    t = _output_transform(w, spec_te, spec_tm, kappa_bar)
    t_h = np.conj(np.swapaxes(t, 1, 2))
    x_full = m_full + _P_OUT[None] / (2.0 * kappa_bar)
    x_ref = m_ref + _P_OUT[None] / (2.0 * kappa_bar)
    h_full = t @ x_full @ dmat @ np.conj(np.swapaxes(x_full, 1, 2)) @ t_h
    h_ref = t @ x_ref @ dmat @ np.conj(np.swapaxes(x_ref, 1, 2)) @ t_h
    return 2.0 * np.real(h_full - h_ref)


def _converge_panels(edges, order, evaluate, tolerance, max_doublings):
    """Integrate evaluate(w) with panel doubling until entries stop moving.

    Returns (value, achieved_change); raises ArithmeticError when doubling
    max_doublings times still moves some entry beyond tolerance.
    """
    prev = None
    change = math.inf
    for _ in range(max_doublings + 1):
        nodes, weights = _gauss_panels(edges, order)
        val = np.einsum("i,ijk->jk", weights, evaluate(nodes))
        if prev is not None:
            change = float(np.max(np.abs(val - prev)))
            if change < tolerance * max(1.0, float(np.max(np.abs(val)))):
                return val, change
        prev = val
        edges = np.sort(np.concatenate([edges, 0.5 * (edges[:-1] + edges[1:])]))
    raise ArithmeticError("output quadrature did not converge: last panel "
                          "doubling still moved entries by %g" % change)


def _mech_reference_cm(a_mech, gamma_bar, beta_bar, cfg):
    """Stationary 2x2 mechanical covariance of the uncoupled colored model."""
    width = max(cfg.freq_cutoff, _MECH_REFERENCE_WINDOW)
    edges = _graded_edges([(1.0, max(gamma_bar / 2.0, 1e-7))], width)
    eye = np.eye(2)

    def evaluate(w):
        m = np.linalg.inv(1j * w[:, None, None] * eye + a_mech[None])
        dmat = np.zeros((len(w), 2, 2))
        dmat[:, 1, 1] = _colored_noise(w, gamma_bar, beta_bar)
        h = m @ dmat @ np.conj(np.swapaxes(m, 1, 2))
        return 2.0 * np.real(h) / TWO_PI

    val, _ = _converge_panels(edges, max(cfg.gauss_order, 16), evaluate,
                              cfg.tolerance, cfg.max_doublings)
    return val


def _scaled_setup(ss, dp):
    w = dp.mech_freq
    a = drift_matrix(ss, dp)
    kappa_bar = dp.cavity_decay / w
    gamma_bar = dp.mech_damping / w
    a_ref = assemble_drift(kappa_bar, ss.detuning / w, 0.0, 0.0, gamma_bar)
    return a, a_ref, kappa_bar, gamma_bar, _beta_bar(dp.thermal_occupancy)


def _window(cfg, kappa_bar, specs):
    lobe = max(abs(s.central_freq) + 60.0 * math.pi / s.epsilon for s in specs)
    return max(cfg.freq_cutoff, lobe, 3.0 + 20.0 * kappa_bar)


def output_cm(ss, dp, spec_te, spec_tm, cfg=None):
    """Stationary covariance of (filtered TE out, filtered TM out, mechanics).

    Basis (X_te_out, Y_te_out, X_tm_out, Y_tm_out, q, p), vacuum variance
    1/2. The system must be stable; the result is checked for physicality
    and an unphysical matrix is a hard error (it would indicate a broken
    sign convention, not a tolerance issue).
    """
    if cfg is None:
        cfg = IntegrationConfig()
    w_m = dp.mech_freq
    _check_filter(spec_te, w_m, "TE")
    _check_filter(spec_tm, w_m, "TM")
    a, a_ref, kappa_bar, gamma_bar, beta_bar = _scaled_setup(ss, dp)
    if spectral_abscissa(a) >= -STABILITY_MARGIN:
        raise ValueError("cannot form the stationary output of an unstable system")

    # Internally everything runs in omega_m units (tau -> epsilon).
    te = FilterSpec(spec_te.central_freq / w_m, spec_te.epsilon, spec_te.epsilon)
    tm = FilterSpec(spec_tm.central_freq / w_m, spec_tm.epsilon, spec_tm.epsilon)
    features = _eigen_features(a) + _eigen_features(a_ref)
    features += [(abs(te.central_freq), TWO_PI / te.epsilon),
                 (abs(tm.central_freq), TWO_PI / tm.epsilon),
                 (1.0, 1e-6)]
    edges = _graded_edges(features, _window(cfg, kappa_bar, (te, tm)))

    def evaluate(w):
        return _difference_integrand(w, a, a_ref, kappa_bar, gamma_bar,
                                     beta_bar, te, tm)

    diff, _ = _converge_panels(edges, cfg.gauss_order, evaluate,
                               cfg.tolerance, cfg.max_doublings)

    reference = np.zeros((6, 6))
    for i in range(4):
        reference[i, i] = 0.5  # filtered vacuum, exact by filter normalization
    reference[4:, 4:] = _mech_reference_cm(a[4:, 4:], gamma_bar, beta_bar, cfg)
    v = diff + reference

    asym = float(np.max(np.abs(v - v.T)))
    if asym > 1e-9 * max(1.0, float(np.max(np.abs(v)))):
        raise ArithmeticError("output covariance asymmetric beyond tolerance: %g"
                              % asym)
    v = 0.5 * (v + v.T)
    report = validate_cm(v)
    if not report.physical:
        raise ArithmeticError("output covariance is unphysical (margin %g); "
                              "this indicates a convention bug, not a "
                              "tolerance problem" % report.margin)
    return CovarianceMatrix(v, modes=MODES)


def intracavity_cm_spectral(ss, dp, cfg=None):
    """Intracavity covariance by wide-band Markovian spectral integration.

    No filters, constant mechanical noise gamma_m (2 n_m + 1): this is the
    Parseval equivalent of the Lyapunov solution and must reproduce it. The
    neglected tail beyond the window is added in closed form as D / (pi W).
    """
    if cfg is None:
        cfg = IntegrationConfig()
    a, _, kappa_bar, gamma_bar, _ = _scaled_setup(ss, dp)
    if spectral_abscissa(a) >= -STABILITY_MARGIN:
        raise ValueError("cannot form the stationary state of an unstable system")
    dmat = np.diag([kappa_bar] * 4
                   + [0.0, gamma_bar * (2.0 * dp.thermal_occupancy + 1.0)])
    width = cfg.freq_cutoff
    edges = _graded_edges(_eigen_features(a), width)
    eye = np.eye(6)

    def evaluate(w):
        m = np.linalg.inv(1j * w[:, None, None] * eye + a[None])
        h = m @ dmat[None] @ np.conj(np.swapaxes(m, 1, 2))
        return 2.0 * np.real(h) / TWO_PI

    val, _ = _converge_panels(edges, cfg.gauss_order, evaluate,
                              cfg.tolerance, cfg.max_doublings)
    v = val + dmat / (math.pi * width)
    v = 0.5 * (v + v.T)
    return CovarianceMatrix(v, modes=MODES)


def dump_integrand(path, ss, dp, spec_te, spec_tm, cfg=None):
    """Write integrand samples (omega, 36 row-major entries) as delimited text.

    Diagnostic hook: the sampled quantity is the realified difference
    integrand actually used by output_cm, on its initial panel grid.
    """
    if cfg is None:
        cfg = IntegrationConfig()
    w_m = dp.mech_freq
    a, a_ref, kappa_bar, gamma_bar, beta_bar = _scaled_setup(ss, dp)
    te = FilterSpec(spec_te.central_freq / w_m, spec_te.epsilon, spec_te.epsilon)
    tm = FilterSpec(spec_tm.central_freq / w_m, spec_tm.epsilon, spec_tm.epsilon)
    features = _eigen_features(a) + _eigen_features(a_ref)
    features += [(abs(te.central_freq), TWO_PI / te.epsilon),
                 (abs(tm.central_freq), TWO_PI / tm.epsilon),
                 (1.0, 1e-6)]
    edges = _graded_edges(features, _window(cfg, kappa_bar, (te, tm)))
    nodes, _ = _gauss_panels(edges, cfg.gauss_order)
    h = _difference_integrand(nodes, a, a_ref, kappa_bar, gamma_bar,
                              beta_bar, te, tm)
    with open(path, "w") as fh:
        fh.write("omega_over_omega_m," +
                 ",".join("h_%d%d" % (i, j) for i in range(6) for j in range(6))
                 + "\n")
        for wv, mat in zip(nodes, h):
            fh.write("%.17g," % wv
                     + ",".join("%.17g" % x for x in mat.ravel()) + "\n")
    return path
