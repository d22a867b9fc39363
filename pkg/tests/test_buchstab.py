import math

import numpy as np
import pytest

from sievebound import build_table, omega, omega_lower, omega_simple_upper, omega_upper
from sievebound.buchstab import DomainError, InvalidGrid

# Frozen oracle for the [3, 4) closed form at u = 3.5:
#   (1 + log 2.5)/3.5 + (1/3.5) * int_2^{2.5} log(t-1)/t dt
# computed beforehand with adaptive quadrature (scipy.integrate.quad,
# epsabs=1e-15); the integral term is 0.046610293706405806.
OMEGA_3_5 = 0.5608288644515887


def closed_form(u):
    if u < 2:
        return 1.0 / u
    return (1.0 + math.log(u - 1.0)) / u


def test_seed_interval_is_exact(table):
    n = table.cells_per_unit
    grid = table.grid
    assert np.allclose(table.values[: n + 1], 1.0 / grid[: n + 1], rtol=0, atol=1e-15)


def test_closed_forms_on_second_interval(table):
    n = table.cells_per_unit
    idx = np.arange(n, 2 * n + 1, 7)
    u = table.grid[idx]
    ref = (1.0 + np.log(u - 1.0)) / u
    assert np.max(np.abs(table.values[idx] - ref)) < 1e-9


def test_point_values(table):
    assert table.at(1.5) == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert table.at(2.5) == pytest.approx((1.0 + math.log(1.5)) / 2.5, abs=1e-12)
    assert table.at(1.0) == pytest.approx(1.0, abs=1e-12)
    assert table.at(2.0) == pytest.approx(0.5, abs=1e-10)
    assert table.at(3.0) == pytest.approx((1.0 + math.log(2.0)) / 3.0, abs=1e-10)


def test_three_term_oracle_value(table):
    assert table.at(3.5) == pytest.approx(OMEGA_3_5, abs=1e-12)
    assert omega_lower(3.5) == pytest.approx(OMEGA_3_5, abs=1e-12)
    assert omega_upper(3.5) == pytest.approx(OMEGA_3_5, abs=1e-12)


def test_tail_window(table):
    n = table.cells_per_unit
    tail = table.values[3 * n :]
    assert tail.min() >= 0.5612
    assert tail.max() <= 0.5617


def test_continuity_at_breakpoints(table):
    for u0 in (2.0, 3.0, 4.0):
        left = omega(table, u0 - 1e-9)
        right = omega(table, u0 + 1e-9)
        assert abs(left - right) < 1e-8


def test_v_is_nondecreasing(table):
    grid = table.grid
    v = grid * table.values
    start = np.searchsorted(grid, 2.0)
    assert np.all(np.diff(v[start:]) >= -1e-15)


def test_envelopes_bracket_omega(table, rng):
    u = rng.uniform(1.0, 10.0, 20_000)
    w = omega(table, u)
    assert np.all(omega_lower(u) - 1e-9 <= w)
    assert np.all(w <= omega_upper(u) + 1e-9)
    assert np.all(w <= omega_simple_upper(u) + 1e-9)


def test_envelopes_coincide_below_three(rng):
    u = rng.uniform(1.0, 3.0 - 1e-12, 5_000)
    assert np.array_equal(omega_lower(u), omega_upper(u))


def test_envelope_clamps_on_three_four():
    u = np.linspace(3.0, 4.0 - 1e-9, 1_000)
    lo = omega_lower(u)
    hi = omega_upper(u)
    assert np.all(lo >= 0.5607)
    assert np.all(hi <= 0.5644)
    assert omega_lower(5.0) == 0.5612
    assert omega_upper(5.0) == 0.5617


def test_simple_upper_values():
    assert omega_simple_upper(1.25) == pytest.approx(0.8)
    assert omega_simple_upper(2.0) == 0.5672
    assert omega_simple_upper(10.0) == 0.5672


def test_tail_extrapolation(table):
    assert omega(table, table.u_max + 5.0) == table.tail_value


def test_domain_errors(table):
    with pytest.raises(DomainError):
        omega(table, 0.5)
    with pytest.raises(DomainError):
        omega_lower(0.99)
    with pytest.raises(DomainError):
        omega_simple_upper(0.0)


def test_invalid_grid():
    with pytest.raises(InvalidGrid):
        build_table(u_max=10.0, step=0.0)
    with pytest.raises(InvalidGrid):
        build_table(u_max=1.5, step=1e-3)


def test_coarse_table_still_accurate():
    t = build_table(u_max=6.0, step=1e-3)
    assert t.at(3.5) == pytest.approx(OMEGA_3_5, abs=1e-9)
