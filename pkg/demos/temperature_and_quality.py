#!/usr/bin/env python3
"""How hot and how lossy can the device get?"""

from polaromech import derive_constants, entanglement, paper_params


def main():
    # temperature: intracavity vs filtered output
    print("temperature robustness (theta = 0, Stokes filter, epsilon = 10)")
    print()
    print("T [K]    E_N intracavity   E_N output")
    for t in (0.1, 0.4, 1.0, 2.0, 3.0, 5.0, 8.0, 10.0):
        p = paper_params(polarization_angle=0.0, temperature=t)
        en_in = entanglement(p)
        en_out = entanglement(p, where="output", epsilon=10.0,
                              omega_over_omega_m=-1.0)
        print("%5.1f    %.6f          %.6f" % (t, en_in, en_out))
    print()
    print("the filtered output mode keeps its entanglement well past the")
    print("point where the intracavity state has gone separable")
    print()

    # cavity quality: how good a cavity does switching need
    p0 = paper_params()
    print("cavity quality threshold (Delta_c = 0.6 omega_m, theta = 0)")
    print()
    print("Q_c        kappa/omega_m   E_N intracavity")
    for q_c in (3e6, 1e7, 3e7, 1e8, 3e8, 1e9):
        p = paper_params(polarization_angle=0.0,
                         cavity_detuning=0.6 * p0.mech_freq,
                         optical_quality=q_c)
        en = entanglement(p)
        dp = derive_constants(p)
        print("%8.0e   %.4f          %.6f"
              % (q_c, dp.cavity_decay / p.mech_freq, en))
    print()
    print("the linewidth has to be narrow enough to resolve the sidebands")
    print("before anything survives, yet an arbitrarily narrow line starves")
    print("the dissipative channel again, so there is a broad sweet spot")


if __name__ == "__main__":
    main()
