import math

import pytest

from polaromech import (CONFIG_KEYS, PAPER_BASELINE, ConfigError,
                        build_params, params_record, paper_params,
                        parse_config)

FULL_TEXT = "\n".join("%s = %r" % (k, v) for k, v in PAPER_BASELINE.items())


def test_parse_full_file():
    p = parse_config(FULL_TEXT)
    assert p == paper_params()


def test_comments_and_blank_lines():
    text = "# header\n\n" + FULL_TEXT + "\n  # trailing comment\n"
    assert parse_config(text) == paper_params()


def test_inline_comment():
    text = FULL_TEXT.replace("temperature_k = 0.4",
                             "temperature_k = 0.4  # bath")
    assert parse_config(text) == paper_params()


def test_defaults_fill_missing_keys():
    p = parse_config("theta_rad = 0.5\n", defaults="paper")
    assert p.polarization_angle == 0.5
    assert p.drive_power == PAPER_BASELINE["power_w"]


def test_missing_key_error_names_key():
    text = "\n".join(l for l in FULL_TEXT.splitlines()
                     if not l.startswith("q_mech"))
    with pytest.raises(ConfigError) as err:
        parse_config(text)
    assert err.value.key == "q_mech"
    assert "missing" in str(err.value)


def test_unknown_key_error():
    with pytest.raises(ConfigError) as err:
        parse_config(FULL_TEXT + "\nbogus_key = 1\n")
    assert err.value.key == "bogus_key"


def test_unknown_key_rejected_even_with_defaults():
    with pytest.raises(ConfigError):
        parse_config("bogus_key = 1\n", defaults="paper")


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError) as err:
        parse_config(FULL_TEXT + "\npower_w = 0.05\n")
    assert err.value.key == "power_w"


def test_malformed_number_reports_line():
    with pytest.raises(ConfigError) as err:
        parse_config("power_w = thirty\n", defaults="paper")
    assert err.value.key == "power_w"
    assert err.value.line == 1


def test_malformed_line_reports_line():
    with pytest.raises(ConfigError) as err:
        parse_config("just words\n", defaults="paper")
    assert err.value.line == 1


def test_out_of_range_value_reports_key_and_line():
    with pytest.raises(ConfigError) as err:
        parse_config("# c\npower_w = -3\n", defaults="paper")
    assert err.value.key == "power_w"
    assert err.value.line == 2


def test_detuning_key_scales_with_mech_freq():
    p = parse_config("delta_c_over_omega_m = 0.6\n", defaults="paper")
    assert p.cavity_detuning == pytest.approx(0.6 * p.mech_freq, rel=1e-15)


def test_build_params_missing_first_in_key_order():
    with pytest.raises(ConfigError) as err:
        build_params({})
    assert err.value.key == CONFIG_KEYS[0]


def test_record_round_trip():
    p = paper_params(polarization_angle=0.3,
                     cavity_detuning=0.77 * PAPER_BASELINE["omega_m_rad_s"])
    rec = params_record(p)
    assert set(rec) == set(CONFIG_KEYS)
    p2 = build_params(rec)
    assert p2.polarization_angle == p.polarization_angle
    assert p2.cavity_detuning == pytest.approx(p.cavity_detuning, rel=1e-15)


def test_paper_params_overrides():
    p = paper_params(temperature=2.0)
    assert p.temperature == 2.0
    assert p.wavelength == PAPER_BASELINE["wavelength_m"]


def test_baseline_values():
    p = paper_params()
    assert p.mech_freq == pytest.approx(2 * math.pi * 10e6)
    assert p.single_photon_coupling == pytest.approx(2 * math.pi * 68.5)
    assert p.optical_quality == 4.94e7
    assert p.mech_quality == 1e5
    assert p.temperature == 0.4
    assert p.drive_power == 0.030
    assert p.cavity_detuning == pytest.approx(p.mech_freq)
    assert p.polarization_angle == 0.0
