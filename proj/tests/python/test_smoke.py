import math

import pytest

import modvar


C = modvar.PhysicalConstants()


def spec(alpha=0.0, k=0.1):
    return modvar.make_superposition(50.0, 1.0, k, alpha, C)


def test_closed_system_initial_value():
    value, approximate = modvar.modular_expectation(spec(), C, 0.0)
    assert value == pytest.approx(0.5 * math.exp(-0.005), rel=1e-14)
    assert not approximate


def test_cl_closed_form_matches_quadrature():
    bath = modvar.BathParams(0.001, 2.0, C)
    for t in (0.5, 1.0, 2.0):
        s = spec(math.pi / 4)
        closed = modvar.cl_modular_closed(s, bath, C, t)
        quad, _ = modvar.cl_modular_quadrature(s, bath, C, t)
        assert abs(closed.value - quad) <= 1e-8 * closed.envelope


def test_cl_reduces_to_schrodinger_without_bath():
    s = spec(math.pi / 3)
    closed = modvar.cl_modular_closed(s, modvar.BathParams.none(), C, 1.5)
    value, _ = modvar.modular_expectation(s, C, 1.5)
    assert closed.value == pytest.approx(value, abs=1e-12)


def test_windows():
    t = modvar.overlap_window(modvar.Framework.SCHRODINGER, spec(), modvar.BathParams.none(), C)
    assert t == pytest.approx(10.002, rel=5e-4)
    bath = modvar.BathParams(0.001, 2.0, C)
    t_cl = modvar.overlap_window(modvar.Framework.CALDEIRA_LEGGETT, spec(), bath, C)
    assert t_cl < t


def test_two_particle_statistics():
    s = spec(k=0.0)
    mb = modvar.modular_mb(s, C)
    disjoint = modvar.modular_indistinguishable(
        s, modvar.CompanionState.disjoint(), modvar.Statistics.BE, C
    )
    assert abs(disjoint / mb) == pytest.approx(0.5, rel=1e-12)


def test_bad_parameters_raise():
    with pytest.raises(ValueError):
        modvar.make_superposition(50.0, -1.0, 0.1, 0.0, C)
    with pytest.raises(modvar.ConfigError):
        modvar.generate_figure("fig2", {"gama": "1"})


def test_generate_figure():
    files = modvar.generate_figure("fig2", {"samples": "11"})
    assert list(files) == ["fig2.csv"]
    text = files["fig2.csv"]
    assert text.startswith("# modvar")
    rows = [line for line in text.splitlines() if not line.startswith("#")]
    assert len(rows) == 12
