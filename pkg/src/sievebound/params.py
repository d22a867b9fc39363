# -*- coding: utf-8 -*-
"""Global sieve parameters and admissibility checks.

Everything downstream (region geometry, loss integrals) is driven by the
pair (sigma, varpi).  epsilon is bookkeeping only: it enters the linear
admissibility constraint and nothing else, so none of the region
predicates depend on it.
"""

from __future__ import annotations

from dataclasses import dataclass


class ConstraintViolated(ValueError):
    """An admissibility constraint failed; `which` names the inequality."""

    def __init__(self, which: str, detail: str = ""):
        self.which = which
        msg = which if not detail else f"{which}: {detail}"
        super().__init__(msg)


@dataclass(frozen=True)
class SieveParams:
    """Immutable parameter triple (sigma, varpi, epsilon).

    Derived quantities:
      lo            -- sigma - 2*varpi, the common lower bound of every
                       integration variable (all regions are empty if <= 0)
      window_minus  -- [1/2 - sigma, 1/2 - 2*varpi]
      window_plus   -- [1/2 + 2*varpi, 1/2 + sigma]
      type_i_n_max  -- 1/8 + sigma/2 - 5*varpi/2, the second-coordinate cap
                       in the two-variable asymptotic region
    """

    sigma: float
    varpi: float
    epsilon: float = 1e-9

    @property
    def lo(self) -> float:
        return self.sigma - 2.0 * self.varpi

    @property
    def window_minus(self) -> tuple[float, float]:
        return (0.5 - self.sigma, 0.5 - 2.0 * self.varpi)

    @property
    def window_plus(self) -> tuple[float, float]:
        return (0.5 + 2.0 * self.varpi, 0.5 + self.sigma)

    @property
    def type_i_n_max(self) -> float:
        return 0.125 + 0.5 * self.sigma - 2.5 * self.varpi


def default_params() -> SieveParams:
    """The published choice: sigma = 1/20.31, varpi = 1/1400, epsilon = 1e-9."""
    p = SieveParams(sigma=1.0 / 20.31, varpi=1.0 / 1400.0, epsilon=1e-9)
    validate(p)
    return p


def validate(p: SieveParams) -> None:
    """Raise ConstraintViolated unless all admissibility constraints hold.

    Checks, in order: basic ranges, the linear constraint
    19*sigma + 90*varpi + 71*epsilon < 1, and sigma > 2*varpi (which makes
    lo positive and both windows nonempty).
    """
    if not (0.0 < p.sigma < 0.5):
        raise ConstraintViolated("sigma_range", f"sigma={p.sigma!r} not in (0, 1/2)")
    if not (0.0 < p.varpi < 0.125):
        raise ConstraintViolated("varpi_range", f"varpi={p.varpi!r} not in (0, 1/8)")
    if not p.epsilon > 0.0:
        raise ConstraintViolated("epsilon_range", f"epsilon={p.epsilon!r} not > 0")
    lhs = 19.0 * p.sigma + 90.0 * p.varpi + 71.0 * p.epsilon
    if not lhs < 1.0:
        raise ConstraintViolated(
            "linear_constraint",
            f"19*sigma + 90*varpi + 71*epsilon = {lhs!r} >= 1",
        )
    if not p.sigma > 2.0 * p.varpi:
        raise ConstraintViolated(
            "window_order",
            f"sigma - 2*varpi = {p.lo!r} <= 0; every region is empty",
        )


def parse_real(text: str) -> float:
    """Parse a decimal or `p/q` rational literal ('0.0492', '1/20.31', '1/1400')."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        d = float(den)
        if d == 0.0:
            raise ValueError(f"zero denominator in {text!r}")
        return float(num) / d
    return float(s)
