# -*- coding: utf-8 -*-
"""Desk-scale witness search: primes p with d^2 | (p - a) and d^2 >= p^theta.

The default exponent is theta = 1/2 + 1/700.  For each d the search
enumerates the progression n = a (mod d^2) up to d^(2/theta), the largest p
for which d^2 >= p^theta can still hold, and keeps the primes.  Primality is
the deterministic Miller-Rabin variant that is exact for all 64-bit inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

DEFAULT_THETA = 0.5 + 1.0 / 700.0
_MAX_P = 2**63 - 1

# These seven bases decide primality correctly for every n < 2^64.
_MR_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


class RangeOverflow(OverflowError):
    pass


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= n < 2^64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_squarefree(d: int) -> bool:
    if d % 4 == 0:
        return False
    q = 3
    while q * q <= d:
        if d % (q * q) == 0:
            return False
        q += 2
    return True


@dataclass(frozen=True)
class WitnessRecord:
    p: int
    d: int
    a: int
    theta: float

    def to_dict(self) -> dict:
        return {"p": self.p, "d": self.d, "a": self.a, "theta": self.theta}


def _exponent_ok(p: int, d: int, theta: float) -> bool:
    # d^2 >= p^theta, compared in log space; exact ties cannot occur for
    # prime p unless theta * log p / (2 log d) is rational with tiny height
    return 2.0 * math.log(d) >= theta * math.log(p)


def is_witness(p: int, d: int, a: int, theta: float = DEFAULT_THETA) -> bool:
    """All record invariants: p prime, a nonzero, p > |a|, d >= 2,
    d^2 | (p - a) and d^2 >= p^theta."""
    if a == 0 or d < 2 or p < 2 or p <= abs(a):
        return False
    if (p - a) % (d * d) != 0:
        return False
    if not _exponent_ok(p, d, theta):
        return False
    return is_prime_u64(p)


def search_bound(d: int, theta: float) -> int:
    """Largest p worth testing for this d: floor(d^(2/theta))."""
    bound = math.floor(d ** (2.0 / theta))
    if bound > _MAX_P:
        raise RangeOverflow(
            f"search bound d^(2/theta) = {bound} for d={d} exceeds 63-bit range"
        )
    return bound


def find_witnesses(
    a: int,
    d_min: int,
    d_max: int,
    theta: float = DEFAULT_THETA,
    squarefree_only: bool = False,
) -> list[WitnessRecord]:
    """All witnesses with d in [d_min, d_max], sorted by (p, d).

    Every candidate passing the progression scan is re-validated through
    is_witness, so float rounding in the search bound cannot leak a bad
    record into the output."""
    if a == 0:
        raise ValueError("a must be nonzero")
    if not (2 <= d_min <= d_max):
        raise ValueError("need 2 <= d_min <= d_max")
    out: list[WitnessRecord] = []
    for d in range(d_min, d_max + 1):
        if squarefree_only and not is_squarefree(d):
            continue
        sq = d * d
        bound = search_bound(d, theta)
        start = a % sq
        if start == 0:
            start = sq
        lo = max(abs(a) + 1, 2)
        if start < lo:
            start += ((lo - start) + sq - 1) // sq * sq
        for n in range(start, bound + 1, sq):
            if is_prime_u64(n) and is_witness(n, d, a, theta):
                out.append(WitnessRecord(p=n, d=d, a=a, theta=theta))
    out.sort(key=lambda r: (r.p, r.d))
    return out


def iter_json_lines(records: Iterable[WitnessRecord]):
    import json

    for r in records:
        yield json.dumps(r.to_dict(), sort_keys=True)
