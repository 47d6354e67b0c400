"""Physical constants (CODATA 2018, SI units).

h, k_B and c are exact by definition since the 2019 SI redefinition, so the
values below carry no measurement uncertainty.
"""

import math

PLANCK_H = 6.62607015e-34          # J s, exact
HBAR = PLANCK_H / (2.0 * math.pi)  # J s
K_BOLTZMANN = 1.380649e-23         # J / K, exact
C_LIGHT = 299792458.0              # m / s, exact
