#!/usr/bin/env python3
"""Where in detuning does the entanglement live?

Scans the cavity detuning through the red sideband with all light in TE.
Entanglement peaks below Delta = omega_m because the static radiation
pressure shifts the effective detuning the oscillator actually sees.
"""

from polaromech import (UnstableOperatingPointError, entanglement,
                        operating_point, paper_params)


def main():
    p0 = paper_params(polarization_angle=0.0)
    print("detuning scan at theta = 0 (all drive in TE)")
    print()
    print("Delta_c/omega_m   E_N(TE-mech)")
    best = (0.0, 0.0)
    for i in range(21):
        ratio = 0.5 + 0.05 * i
        p = paper_params(polarization_angle=0.0,
                         cavity_detuning=ratio * p0.mech_freq)
        try:
            en = entanglement(p)
        except UnstableOperatingPointError:
            print("  %.2f            unstable" % ratio)
            continue
        bar = "#" * int(round(en * 400))
        print("  %.2f            %.6f  %s" % (ratio, en, bar))
        if en > best[1]:
            best = (ratio, en)

    print()
    best_p = paper_params(polarization_angle=0.0,
                          cavity_detuning=best[0] * p0.mech_freq)
    dp, ss = operating_point(best_p)
    print("peak at Delta_c = %.2f omega_m with E_N = %.4f" % best)
    print("static radiation-pressure shift g_0*q_s = %.3f omega_m,"
          % (best_p.single_photon_coupling * ss.q_s / best_p.mech_freq))
    print("so the bare detuning must sit below the sideband to compensate")


if __name__ == "__main__":
    main()
