import math

import pytest
from hypothesis import given, strategies as st

from coulomb_sphere.expansion import (ExpansionCoefficients, coefficients, det_coefficients,
                                      evaluate, evaluate_n_form, fit_coefficients,
                                      pfaff_coefficients, residual_sweep,
                                      spherical_example_coefficients,
                                      spherical_example_expansion)
from coulomb_sphere.free_energy import log_z_spherical_closed_form
from coulomb_sphere.measure import functionals, mixture, scaled, spherical
from coulomb_sphere.norms import ChargedEnsemble, Kind
from coulomb_sphere.specfun import zeta_prime_minus_one

FS = functionals(spherical())
L2P = math.log(2 * math.pi)
ZP = zeta_prime_minus_one()
charges = st.floats(0.0, 3.0)


def test_spherical_det_zero_charges():
    co = det_coefficients(FS, 0.0, 0.0)
    expect = (-0.5, 0.5, 0.5 * L2P - 1, 1 / 3, 0.5 * L2P - 1 / 12 + 2 * ZP)
    for got, want in zip(co.values, expect):
        assert got == pytest.approx(want, abs=1e-12)


def test_spherical_pfaff_zero_charges():
    co = pfaff_coefficients(FS, 0.0, 0.0)
    assert co.c3 == pytest.approx(0.5 * math.log(4 * math.pi) - 2, abs=1e-12)
    assert co.c4 == pytest.approx(5 / 12, abs=1e-15)
    assert co.c5 == pytest.approx(0.5 * L2P - 13 / 24 + 5 * math.log(2) / 12 + ZP, abs=1e-12)
    assert co.names == ("d1", "d2", "d3", "d4", "d5")


@given(charges, charges)
def test_spherical_general_charges(alpha, c):
    det = det_coefficients(FS, alpha, c)
    assert det.c3 == pytest.approx(0.5 * L2P - 1 - (alpha + c), abs=1e-12)
    assert det.c4 == (alpha**2 + c**2) / 2 + 1 / 3
    pf = pfaff_coefficients(FS, alpha, c)
    assert pf.c3 == pytest.approx(0.5 * math.log(4 * math.pi) - 2 - 2 * (alpha + c), abs=1e-12)
    assert pf.c4 == alpha**2 + alpha / 2 + c**2 + c / 2 + 5 / 12
    for kind in Kind:
        co = coefficients(FS, alpha, c, kind)
        for x, y in zip(co.values, spherical_example_coefficients(alpha, c, kind)):
            assert x == pytest.approx(y, abs=1e-12)


MEASURE_FUNCTIONALS = [FS, functionals(scaled(0.3)), functionals(mixture(0.5, 2.0))]


@given(charges, charges, st.sampled_from(list(Kind)), st.sampled_from(MEASURE_FUNCTIONALS))
def test_structure_and_breakdown(alpha, c, kind, f):
    co = coefficients(f, alpha, c, kind)
    assert co.c2 == 0.5
    for name, value in co.as_dict().items():
        assert value == math.fsum(co.breakdown[name].values())
    swapped = coefficients(f, c, alpha, kind)
    if kind is Kind.DET:
        assert co.c4 == swapped.c4
    else:
        # summed left to right, so the swap may move the last bit
        assert co.c4 == pytest.approx(swapped.c4, rel=4e-16)


def test_scaled_leading_coefficient():
    for a in (0.5, 3.0):
        co = det_coefficients(functionals(scaled(a)), 0.0, 0.0)
        assert co.c1 == pytest.approx(-(0.5 + math.log(a)), abs=1e-10)


def test_pfaff_barnes_term():
    alpha, c = 0.7, 1.2
    from coulomb_sphere.specfun import log_barnes_g as G
    want = -(G(c + 1) + G(c + 1.5) + G(alpha + 1) + G(alpha + 1.5))
    assert pfaff_coefficients(FS, alpha, c).breakdown["d5"]["barnes"] == want


def test_evaluate_examples():
    unit = ExpansionCoefficients(Kind.DET, 0, 0, 0, 0, 0, 0, 2.5)
    assert evaluate(unit, 17) == 2.5
    co = det_coefficients(FS, 0, 0)
    assert evaluate(co, 1) == pytest.approx(-0.5 + co.c3 + co.c5, abs=1e-14)
    with pytest.raises(ValueError):
        evaluate(co, 0)


@given(st.integers(1, 10**6), charges, charges, st.sampled_from(list(Kind)))
def test_n_form_agrees_with_c_form(N, alpha, c, kind):
    f = FS
    a = evaluate_n_form(f, alpha, c, N, kind)
    b = evaluate(coefficients(f, alpha, c, kind), N)
    assert abs(a - b) <= 1e-12 * max(1.0, abs(b))


def test_n_form_energy_leading_term():
    f = functionals(mixture(0.5, 2.0))
    for kind, k in ((Kind.DET, 1.0), (Kind.PFAFF, 2.0)):
        big = 1e7
        lead = evaluate_n_form(f, 0.0, 0.0, big, kind) / (big + 1) ** 2
        assert lead == pytest.approx(-k * f.energy, rel=1e-5)


def test_spherical_example_expansion_residual_decay():
    for kind in Kind:
        r = {N: log_z_spherical_closed_form(N, 0.5, 1.0, kind)
             - spherical_example_expansion(N, 0.5, 1.0, kind) for N in (100, 200, 400, 800)}
        for N in (100, 200, 400):
            assert 0.3 <= r[2 * N] / r[N] <= 0.7
    assert spherical_example_coefficients(0, 0, "det")[3] == 1 / 3
    assert spherical_example_coefficients(0, 0, "pfaff")[3] == 5 / 12


def test_residual_sweep_spherical():
    template = ChargedEnsemble(spherical(), 50)
    rep = residual_sweep(template, [50, 100, 200, 400], fit=False)
    scaled_r = [r * N for r, N in zip(rep.residual, rep.N_grid)]
    assert max(scaled_r) - min(scaled_r) <= 0.02 * abs(scaled_r[-1])
    assert rep.fitted_constants is None


def test_residual_sweep_mixture_decreasing():
    rep = residual_sweep(ChargedEnsemble(mixture(0.5, 2.0), 50), [50, 100, 200, 400], fit=False)
    mags = [abs(r) for r in rep.residual]
    assert all(b < a for a, b in zip(mags, mags[1:]))


def test_fit_recovers_spherical_c1():
    grid = list(range(100, 401, 25))
    vals = [log_z_spherical_closed_form(N, 0, 0, "det") for N in grid]
    assert fit_coefficients(grid, vals)[0] == pytest.approx(-0.5, abs=1e-5)
    with pytest.raises(ValueError):
        fit_coefficients(grid[:4], vals[:4])


def test_residual_sweep_validation():
    t = ChargedEnsemble(spherical(), 10)
    with pytest.raises(ValueError):
        residual_sweep(t, [100, 50])
    with pytest.raises(ValueError):
        residual_sweep(t, [1, 5])
