import math

import pytest

from sievebound import ConstraintViolated, SieveParams, default_params, parse_real, validate


def test_default_values():
    p = default_params()
    assert p.sigma == pytest.approx(1.0 / 20.31, abs=1e-12)
    assert p.varpi == pytest.approx(1.0 / 1400.0, abs=1e-15)
    assert p.epsilon == 1e-9
    # sigma - 2*varpi evaluated in extended precision: 0.0478082577196...
    assert p.lo == pytest.approx(0.04780825771963, abs=1e-11)


def test_default_passes_validate():
    validate(default_params())


def test_window_ordering():
    p = default_params()
    a, b = p.window_minus
    c, d = p.window_plus
    assert 0.5 - p.sigma == a < b == 0.5 - 2 * p.varpi
    assert 0.5 + 2 * p.varpi == c < d == 0.5 + p.sigma
    assert b < c


def test_linear_constraint_rejects_large_sigma():
    p = SieveParams(sigma=0.06, varpi=1.0 / 1400.0, epsilon=1e-9)
    with pytest.raises(ConstraintViolated) as exc:
        validate(p)
    assert exc.value.which == "linear_constraint"


def test_sigma_below_two_varpi_rejected():
    p = SieveParams(sigma=0.002, varpi=0.002, epsilon=1e-9)
    with pytest.raises(ConstraintViolated) as exc:
        validate(p)
    assert exc.value.which == "window_order"


def test_range_checks():
    with pytest.raises(ConstraintViolated):
        validate(SieveParams(sigma=0.6, varpi=1e-3))
    with pytest.raises(ConstraintViolated):
        validate(SieveParams(sigma=0.04, varpi=0.2))
    with pytest.raises(ConstraintViolated):
        validate(SieveParams(sigma=0.04, varpi=1e-3, epsilon=0.0))


def test_accepted_params_have_ordered_windows():
    # every accepted parameter set satisfies lo > 0 and the window chain
    import numpy as np

    rng = np.random.default_rng(7)
    checked = 0
    for _ in range(500):
        s = rng.uniform(0.001, 0.055)
        w = rng.uniform(1e-5, 0.02)
        p = SieveParams(sigma=float(s), varpi=float(w))
        try:
            validate(p)
        except ConstraintViolated:
            continue
        checked += 1
        assert p.lo > 0
        assert 0.5 - p.sigma < 0.5 - 2 * p.varpi < 0.5 + 2 * p.varpi < 0.5 + p.sigma
    assert checked > 50


def test_parse_real():
    assert parse_real("0.25") == 0.25
    assert parse_real("1/1400") == pytest.approx(1.0 / 1400.0, abs=1e-18)
    assert parse_real("1/20.31") == pytest.approx(1.0 / 20.31, abs=1e-15)
    assert parse_real(" 3 ") == 3.0
    assert math.isclose(parse_real("7/2"), 3.5)
    with pytest.raises(ValueError):
        parse_real("1/0")
