"""User-facing physical parameters (SI) and the secondary rates derived from them.

The drive couples to two degenerate, orthogonally polarized cavity modes,
labeled TE (vertical) and TM (horizontal). Everything downstream of this
module is nondimensionalized by the mechanical frequency; the conversion
happens exactly once, at the operating-point solve.
"""

import math
from dataclasses import dataclass

from .constants import C_LIGHT, HBAR, K_BOLTZMANN

TWO_PI = 2.0 * math.pi


class ParameterError(ValueError):
    """A physical parameter is non-finite or outside its allowed range."""

    def __init__(self, field_name, message):
        super().__init__("%s: %s" % (field_name, message))
        self.field_name = field_name


def _checked(name, value, positive=True, allow_zero=False):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ParameterError(name, "not a number: %r" % (value,)) from None
    if not math.isfinite(value):
        raise ParameterError(name, "must be finite, got %r" % value)
    if positive and allow_zero and value < 0:
        raise ParameterError(name, "must be nonnegative, got %r" % value)
    if positive and not allow_zero and value <= 0:
        raise ParameterError(name, "must be strictly positive, got %r" % value)
    return value


@dataclass(frozen=True)
class SystemParams:
    """Primary physical inputs, all SI.

    mass is metadata only: it never enters the equations of motion (it is
    absorbed into the single-photon coupling), but is kept for provenance.
    """

    wavelength: float               # m, drive laser wavelength
    mech_freq: float                # rad/s, mechanical resonance omega_m
    single_photon_coupling: float   # rad/s, g_0
    optical_quality: float          # dimensionless, Q_c = omega_c / kappa
    mech_quality: float             # dimensionless, Q_m = omega_m / gamma_m
    temperature: float              # K, environment temperature
    drive_power: float              # W
    cavity_detuning: float          # rad/s, Delta_c = omega_c - omega_L
    polarization_angle: float       # rad, theta in [0, 2*pi)
    mass: float | None = None       # kg, metadata

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "wavelength", _checked("wavelength", self.wavelength))
        set_(self, "mech_freq", _checked("mech_freq", self.mech_freq))
        set_(self, "single_photon_coupling",
             _checked("single_photon_coupling", self.single_photon_coupling))
        set_(self, "optical_quality", _checked("optical_quality", self.optical_quality))
        set_(self, "mech_quality", _checked("mech_quality", self.mech_quality))
        set_(self, "temperature",
             _checked("temperature", self.temperature, allow_zero=True))
        set_(self, "drive_power", _checked("drive_power", self.drive_power))
        set_(self, "cavity_detuning",
             _checked("cavity_detuning", self.cavity_detuning, positive=False))
        theta = _checked("polarization_angle", self.polarization_angle,
                         positive=False)
        if not 0.0 <= theta < TWO_PI:
            raise ParameterError("polarization_angle",
                                 "must lie in [0, 2*pi), got %r" % theta)
        set_(self, "polarization_angle", theta)
        if self.mass is not None:
            set_(self, "mass", _checked("mass", self.mass))


@dataclass(frozen=True)
class DerivedParams:
    """Rates derived from SystemParams; all SI.

    mech_freq is copied through so downstream spectral code can scale
    frequencies without dragging the full SystemParams along.
    """

    drive_freq: float          # rad/s, omega_L = 2 pi c / lambda
    cavity_freq: float         # rad/s, omega_c = omega_L + Delta_c
    cavity_decay: float        # rad/s, kappa = omega_c / Q_c
    mech_damping: float        # rad/s, gamma_m = omega_m / Q_m
    drive_amplitude: float     # s^(-1/2), S = sqrt(P / (hbar omega_L))
    thermal_occupancy: float   # dimensionless, n_m
    mech_freq: float           # rad/s, copy of SystemParams.mech_freq


def mean_phonon_number(mech_freq, temperature):
    """Bose occupancy 1/(exp(hbar omega / k_B T) - 1), with the T = 0 limit 0."""
    if temperature == 0.0:
        return 0.0
    x = HBAR * mech_freq / (K_BOLTZMANN * temperature)
    try:
        return 1.0 / math.expm1(x)
    except OverflowError:
        # so cold the occupancy underflows
        return 0.0


def derive_constants(p):
    """Compute all secondary rates for a SystemParams.

    omega_c is defined per operating point as omega_L + Delta_c, so kappa
    tracks the (numerically negligible) detuning dependence unambiguously.
    """
    drive_freq = TWO_PI * C_LIGHT / p.wavelength
    cavity_freq = drive_freq + p.cavity_detuning
    if cavity_freq <= 0:
        raise ParameterError("cavity_detuning",
                             "detuning %r pushes the cavity frequency below zero"
                             % p.cavity_detuning)
    return DerivedParams(
        drive_freq=drive_freq,
        cavity_freq=cavity_freq,
        cavity_decay=cavity_freq / p.optical_quality,
        mech_damping=p.mech_freq / p.mech_quality,
        drive_amplitude=math.sqrt(p.drive_power / (HBAR * drive_freq)),
        thermal_occupancy=mean_phonon_number(p.mech_freq, p.temperature),
        mech_freq=p.mech_freq,
    )


# cos/sin at integer multiples of pi/2 do not round to exact 0/1 in floating
# point (cos(pi/2) ~ 6.1e-17), but the drive projections at those angles are
# exactly axis-aligned, and downstream block decoupling relies on the zeros
# being exact. Keyed on the float representations of 0, pi/2, pi, 3pi/2, 2pi.
_AXIS_PROJECTIONS = {
    0.0: (1.0, 0.0),
    math.pi / 2: (0.0, 1.0),
    math.pi: (-1.0, 0.0),
    3 * (math.pi / 2): (0.0, -1.0),
    TWO_PI: (1.0, 0.0),
}


def polarization_split(amplitude, angle):
    """Project a linearly polarized drive amplitude onto the TE/TM mode axes.

    Returns (S_te, S_tm) = (S cos(theta), S sin(theta)). Total power is
    conserved: S_te**2 + S_tm**2 == S**2 up to rounding.
    """
    amplitude = float(amplitude)
    angle = float(angle)
    if not (math.isfinite(amplitude) and math.isfinite(angle)):
        raise ParameterError("polarization_angle" if math.isfinite(amplitude)
                             else "drive_amplitude", "must be finite")
    if amplitude < 0:
        raise ParameterError("drive_amplitude",
                             "must be nonnegative, got %r" % amplitude)
    axis = _AXIS_PROJECTIONS.get(angle)
    if axis is not None:
        return amplitude * axis[0], amplitude * axis[1]
    return amplitude * math.cos(angle), amplitude * math.sin(angle)
