# -*- coding: utf-8 -*-
"""Buchstab's function omega(u) and its piecewise envelopes.

omega is fixed by omega(u) = 1/u on [1, 2] and (u*omega(u))' = omega(u-1)
for u >= 2.  Closed forms exist up to u = 4:

    [1, 2):  1/u
    [2, 3):  (1 + log(u-1)) / u
    [3, 4):  (1 + log(u-1)) / u + (1/u) * int_2^{u-1} log(t-1)/t dt

Beyond that the delay structure is solved numerically: on each interval
[k, k+1] the derivative of v(u) = u*omega(u) is a known function (omega one
interval back), so v is obtained by pure quadrature of already-computed grid
values.  No ODE stepper is involved and each unit interval costs one cumsum.

The published envelopes omega_0 <= omega <= omega_1 share the closed forms on
[1, 3), carry the three-term formula on [3, 4) clamped by the constants
0.5607 / 0.5644, and flatten to 0.5612 / 0.5617 for u >= 4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

OMEGA_LOWER_34_CLAMP = 0.5607
OMEGA_UPPER_34_CLAMP = 0.5644
OMEGA_LOWER_TAIL = 0.5612
OMEGA_UPPER_TAIL = 0.5617
OMEGA_SIMPLE_CAP = 0.5672

DEFAULT_U_MAX = 20.0
DEFAULT_STEP = 1e-4


class InvalidGrid(ValueError):
    pass


class DomainError(ValueError):
    """Argument below the left end (u < 1) of omega's domain."""


# 24-point Gauss-Legendre rule: the [3,4) tail integral's integrand is
# analytic on [2, u-1], so this is accurate far beyond the 1e-10 target.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def _tail_integral(u):
    """int_2^{u-1} log(t-1)/t dt for u in [3, 4), vectorized."""
    u = np.asarray(u, dtype=float)
    half = 0.5 * (u - 3.0)
    mid = 0.5 * (u - 1.0 + 2.0)
    t = mid[..., None] + half[..., None] * _GL_NODES
    return half * np.sum(_GL_WEIGHTS * np.log(t - 1.0) / t, axis=-1)


def _three_term(u):
    """The exact omega value on [3, 4)."""
    u = np.asarray(u, dtype=float)
    return (1.0 + np.log(u - 1.0)) / u + _tail_integral(u) / u


@dataclass(frozen=True)
class BuchstabTable:
    """Solved omega on a uniform grid over [1, u_max].

    values[j] approximates omega(1 + j/n) with n = round(1/step) grid cells
    per unit interval; integer u's land exactly on grid indices, which is what
    keeps the delayed-argument lookups exact.
    """

    u_max: float
    step: float
    values: np.ndarray

    @property
    def cells_per_unit(self) -> int:
        return round(1.0 / self.step)

    @property
    def grid(self) -> np.ndarray:
        n = self.cells_per_unit
        return 1.0 + np.arange(self.values.size) / n

    @property
    def tail_value(self) -> float:
        return float(self.values[-1])

    def at(self, u):
        return omega(self, u)


def build_table(u_max: float = DEFAULT_U_MAX, step: float = DEFAULT_STEP) -> BuchstabTable:
    """Solve the delay equation on [1, u_max] by interval-wise quadrature.

    v(u) = u*omega(u) satisfies v' (u) = omega(u-1); on [k, k+1] all needed
    omega(u-1) samples sit on the already-solved grid exactly one unit (n
    indices) back.  Each grid cell is integrated with a 4-point Newton-Cotes
    rule whose stencil never crosses an integer breakpoint, so the O(h^4)
    accuracy is not spoiled by omega's derivative jumps at u = 2, 3, 4.
    """
    if step <= 0.0:
        raise InvalidGrid(f"step must be positive, got {step!r}")
    if u_max < 2.0:
        raise InvalidGrid(f"u_max must be >= 2, got {u_max!r}")
    n = round(1.0 / step)
    if n < 4:
        raise InvalidGrid(f"step {step!r} gives fewer than 4 cells per unit interval")
    units = int(round(u_max - 1.0))
    size = units * n + 1
    u = 1.0 + np.arange(size) / n
    w = np.empty(size)
    w[: n + 1] = 1.0 / u[: n + 1]
    v = u * w

    h = 1.0 / n
    for k in range(1, units):
        a = k * n
        g = w[a - n : a + 1]
        cells = np.empty(n)
        cells[0] = h * (9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]) / 24.0
        cells[-1] = h * (g[-4] - 5.0 * g[-3] + 19.0 * g[-2] + 9.0 * g[-1]) / 24.0
        cells[1:-1] = h * (-g[:-3] + 13.0 * g[1:-2] + 13.0 * g[2:-1] - g[3:]) / 24.0
        v[a + 1 : a + n + 1] = v[a] + np.cumsum(cells)
        w[a + 1 : a + n + 1] = v[a + 1 : a + n + 1] / u[a + 1 : a + n + 1]

    return BuchstabTable(u_max=1.0 + units, step=step, values=w)


def omega(table: BuchstabTable, u):
    """omega(u) from the solved table, for scalar or array u >= 1.

    Cubic interpolation on the uniform grid with the stencil clamped inside
    each unit interval (omega is smooth there), so interpolation error is at
    the rounding level rather than O(step^2).  Above u_max the constant tail
    value is returned.
    """
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr < 1.0):
        bad = float(np.min(u_arr))
        raise DomainError(f"omega argument {bad!r} < 1")
    scalar = u_arr.ndim == 0
    x = np.atleast_1d(u_arr)
    w = table.values
    n = table.cells_per_unit
    last = w.size - 1

    j = np.floor((x - 1.0) * n).astype(np.int64)
    j = np.clip(j, 0, last - 1)
    unit = np.minimum(j // n, (w.size - 1) // n - 1)
    s = np.clip(j - 1, unit * n, (unit + 1) * n - 3)
    r = (x - 1.0) * n - s
    f0, f1, f2, f3 = w[s], w[s + 1], w[s + 2], w[s + 3]
    out = (
        f0 * (-(r - 1.0) * (r - 2.0) * (r - 3.0) / 6.0)
        + f1 * (r * (r - 2.0) * (r - 3.0) / 2.0)
        + f2 * (-r * (r - 1.0) * (r - 3.0) / 2.0)
        + f3 * (r * (r - 1.0) * (r - 2.0) / 6.0)
    )
    out = np.where(x >= table.u_max, w[last], out)
    return float(out[0]) if scalar else out


def _envelope(u, clamp_34, tail):
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr < 1.0):
        raise DomainError(f"envelope argument {float(np.min(u_arr))!r} < 1")
    scalar = u_arr.ndim == 0
    x = np.atleast_1d(u_arr).astype(float)
    out = np.empty_like(x)
    m1 = x < 2.0
    m2 = (x >= 2.0) & (x < 3.0)
    m3 = (x >= 3.0) & (x < 4.0)
    m4 = x >= 4.0
    out[m1] = 1.0 / x[m1]
    out[m2] = (1.0 + np.log(x[m2] - 1.0)) / x[m2]
    if m3.any():
        out[m3] = clamp_34(_three_term(x[m3]))
    out[m4] = tail
    return float(out[0]) if scalar else out


def omega_lower(u):
    """Published lower envelope omega_0(u)."""
    return _envelope(
        u, lambda v: np.maximum(v, OMEGA_LOWER_34_CLAMP), OMEGA_LOWER_TAIL
    )


def omega_upper(u):
    """Published upper envelope omega_1(u)."""
    return _envelope(
        u, lambda v: np.minimum(v, OMEGA_UPPER_34_CLAMP), OMEGA_UPPER_TAIL
    )


def omega_simple_upper(u):
    """Coarse bound max(1/u, 0.5672), used for the highest-dimensional loss."""
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr < 1.0):
        raise DomainError(f"argument {float(np.min(u_arr))!r} < 1")
    out = np.maximum(1.0 / u_arr, OMEGA_SIMPLE_CAP)
    return float(out) if u_arr.ndim == 0 else out
