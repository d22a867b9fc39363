# -*- coding: utf-8 -*-
"""Asymptotic regions, partition predicates, and the ten integration domains.

Two kinds of information regions over exponent space (all exponents are
relative to log X):

  region_I(m, n)  -- a single product of size m+n <= 1/2 + 2*varpi, or a
                     bilinear shape with m <= 1/2 - sigma and
                     n < 1/8 + sigma/2 - 5*varpi/2.
  region_II(m, n) -- m, n, or m+n inside [1/2-sigma, 1/2-2*varpi], or m+n
                     inside the mirrored window [1/2+2*varpi, 1/2+sigma].

"Partitioned into (m, n) in R" asks whether a tuple of exponents can be
split into two groups whose sums land in R:

* target I: every binary assignment of the tuple into two (possibly empty)
  groups is tried, in both orders, against region_I verbatim.
* target II: a group sum may itself certify membership by landing in either
  window.  A group sum s in the upper window means the complementary product
  (the rest of the tuple together with the un-split cofactor, of size 1-s)
  lands in the lower window, which is the same bilinear range; the pair-level
  region_II above is exactly this rule written out for two variables, where
  the single-coordinate upper-window cases are vacuous.  Equivalently: some
  nonempty subset sum lies in either window.

The thirteen named domains transcribe the published condition chains clause
by clause.  Each domain also carries a sampling chart: the chain of one-
dimensional bracket intervals together with the power of 1/t_i carried by
the loss integrand in that coordinate, which the quadrature engine uses as
an importance map (the bracket chains are far too thin in 5-8 dimensions
for raw box sampling to resolve).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .params import SieveParams

DOMAIN_NAMES = (
    "SA51", "SA52", "SA53", "SA54",
    "SB51", "SB52", "SB53",
    "SC", "SC2", "SC4",
)

CLASS_LABELS = ("OutOfBase", "II", "A", "B", "C")


class UnknownDomain(KeyError):
    pass


# ---------------------------------------------------------------------------
# region predicates (work on scalars and on numpy arrays alike)
# ---------------------------------------------------------------------------

def region_I(p: SieveParams, m, n):
    """m+n <= 1/2+2*varpi, or (m <= 1/2-sigma and n < 1/8+sigma/2-5*varpi/2)."""
    return (m + n <= 0.5 + 2.0 * p.varpi) | (
        (m <= 0.5 - p.sigma) & (n < p.type_i_n_max)
    )


def region_II(p: SieveParams, m, n):
    """Window membership of m, n, or m+n, exactly as published (all inclusive)."""
    w1lo, w1hi = p.window_minus
    w2lo, w2hi = p.window_plus
    s = m + n
    return (
        ((w1lo <= m) & (m <= w1hi))
        | ((w1lo <= n) & (n <= w1hi))
        | ((w1lo <= s) & (s <= w1hi))
        | ((w2lo <= s) & (s <= w2hi))
    )


def _window_hit(p: SieveParams, s):
    """s inside either Type-II window."""
    w1lo, w1hi = p.window_minus
    w2lo, w2hi = p.window_plus
    return ((w1lo <= s) & (s <= w1hi)) | ((w2lo <= s) & (s <= w2hi))


# ---------------------------------------------------------------------------
# partition predicates
# ---------------------------------------------------------------------------

def _partition_cols(p: SieveParams, cols: Sequence[np.ndarray], target: str) -> np.ndarray:
    """Vectorized partition test over parallel tuples.

    cols is a list of k same-length arrays; entry j of the result answers the
    partition question for the tuple (cols[0][j], ..., cols[k-1][j]).
    Enumerates group assignments by bitmask; complements supply the swapped
    order for target I, so masks only need to cover half the lattice there.
    """
    k = len(cols)
    n_pts = cols[0].shape[0]
    total = np.zeros(n_pts)
    for c in cols:
        total = total + c
    out = np.zeros(n_pts, dtype=bool)
    if target == "I":
        for mask in range(2 ** k):
            m = np.zeros(n_pts)
            for i in range(k):
                if (mask >> i) & 1:
                    m = m + cols[i]
            out |= region_I(p, m, total - m)
            if out.all():
                break
    elif target == "II":
        # group sum in either window, or whole-tuple sum in either window
        out = _window_hit(p, total)
        for mask in range(1, 2 ** k - 1):
            m = np.zeros(n_pts)
            for i in range(k):
                if (mask >> i) & 1:
                    m = m + cols[i]
            out |= _window_hit(p, m)
            if out.all():
                break
    else:
        raise ValueError(f"target must be 'I' or 'II', got {target!r}")
    return out


def can_partition(p: SieveParams, ts: Sequence[float], target: str) -> bool:
    """Scalar entry point: can the tuple be split into (m, n) in the target region."""
    cols = [np.asarray([float(t)]) for t in ts]
    return bool(_partition_cols(p, cols, target)[0])


# ---------------------------------------------------------------------------
# classification of the base pair
# ---------------------------------------------------------------------------

def _base_mask(p: SieveParams, t1, t2):
    lo = p.lo
    return (lo <= t1) & (t1 < 0.5) & (lo <= t2) & (t2 < np.minimum(t1, 0.5 * (1.0 - t1)))


def class_masks(p: SieveParams, t1: np.ndarray, t2: np.ndarray) -> dict[str, np.ndarray]:
    """Boolean masks for OutOfBase / II / A / B / C over parallel pair arrays."""
    t1 = np.asarray(t1, dtype=float)
    t2 = np.asarray(t2, dtype=float)
    base = _base_mask(p, t1, t2)
    is2 = base & region_II(p, t1, t2)
    rest = base & ~is2
    isa = rest & _partition_cols(p, [t1, t2, t2], "I")
    rest = rest & ~isa
    isb = rest & region_I(p, t1, t2) & region_I(p, 1.0 - t1 - t2, t2)
    isc = rest & ~isb
    return {"OutOfBase": ~base, "II": is2, "A": isa, "B": isb, "C": isc}


def classify_pair(p: SieveParams, t1: float, t2: float) -> str:
    """One of 'OutOfBase', 'II', 'A', 'B', 'C' for a single pair."""
    masks = class_masks(p, np.asarray([t1]), np.asarray([t2]))
    for label in CLASS_LABELS:
        if masks[label][0]:
            return label
    raise AssertionError("classification is exhaustive")  # pragma: no cover


# ---------------------------------------------------------------------------
# domain specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Clause:
    """One named condition in a domain's chain; fn maps survivor columns to bools."""

    name: str
    fn: Callable[[list[np.ndarray]], np.ndarray]


@dataclass(frozen=True)
class ChartCoord:
    """One coordinate of the sampling chart.

    weight is the power of 1/t this coordinate carries in the loss integrand
    (0, 1 or 2); lower/upper give the bracket interval as functions of the
    previously mapped coordinates.
    """

    weight: int
    lower: Callable[[list[np.ndarray]], np.ndarray | float]
    upper: Callable[[list[np.ndarray]], np.ndarray | float]


@dataclass(frozen=True)
class RegionSpec:
    """A named integration domain: box, ordered clause chain, sampling chart."""

    name: str
    dim: int
    bounds: tuple[tuple[float, float], ...]
    clauses: tuple[Clause, ...]
    chart: tuple[ChartCoord, ...]
    params: SieveParams = field(repr=False)

    def mask(self, pts: np.ndarray) -> np.ndarray:
        """Membership for an (N, dim) array of points."""
        pts = np.asarray(pts, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise ValueError(f"expected (N, {self.dim}) points for {self.name}")
        n = pts.shape[0]
        alive = np.ones(n, dtype=bool)
        idx = np.arange(n)
        cols = [pts[:, i] for i in range(self.dim)]
        for clause in self.clauses:
            keep = clause.fn(cols)
            if not keep.all():
                idx = idx[keep]
                cols = [c[keep] for c in cols]
            if idx.size == 0:
                break
        out = np.zeros(n, dtype=bool)
        out[idx] = True
        return out

    def member(self, *ts: float) -> bool:
        if len(ts) != self.dim:
            raise ValueError(f"{self.name} takes {self.dim} coordinates, got {len(ts)}")
        return bool(self.mask(np.asarray([ts], dtype=float))[0])

    def first_failing_clause(self, *ts: float) -> str | None:
        if len(ts) != self.dim:
            raise ValueError(f"{self.name} takes {self.dim} coordinates, got {len(ts)}")
        cols = [np.asarray([float(t)]) for t in ts]
        for clause in self.clauses:
            if not clause.fn(cols)[0]:
                return clause.name
        return None


def _class_clause(p: SieveParams, label: str) -> Clause:
    def fn(cols):
        return class_masks(p, cols[0], cols[1])[label]

    return Clause(f"class_{label}", fn)


def _bracket(p, i, upper_fn, lower_fn=None, name=None):
    """Bracket clause for t_i: 'sigma-2*varpi <= t_i < upper' by default, or
    'lower < t_i < upper' when an explicit (strict) lower bound is given."""
    lo = p.lo

    def fn(cols):
        t = cols[i]
        if lower_fn is None:
            return (lo <= t) & (t < upper_fn(cols))
        return (lower_fn(cols) < t) & (t < upper_fn(cols))

    return Clause(name or f"t{i + 1}_bracket", fn)


def _part_clause(p, target, want, cols_fn, name):
    def fn(cols):
        res = _partition_cols(p, cols_fn(cols), target)
        return res if want else ~res

    return Clause(name, fn)


def _prefix(cols, k):
    return cols[:k]


def _prefix_dup(cols, k):
    return cols[:k] + [cols[k - 1]]


def _reversed_tuple(cols, k):
    """(1-t1-t2-t3, t2, t3, t4, ...) truncated to k entries."""
    beta = 1.0 - cols[0] - cols[1] - cols[2]
    return ([beta] + cols[1:])[:k]


def _reversed_dup(cols, k):
    return _reversed_tuple(cols, k) + [cols[k - 1]]


def _sum(cols, k):
    s = cols[0]
    for c in cols[1:k]:
        s = s + c
    return s


def domain(p: SieveParams, name: str, sa54_strict_descent: bool = False) -> RegionSpec:
    """Build the RegionSpec for one of the ten named domains.

    sa54_strict_descent switches the upper bounds of t7 and t8 in SA54 from
    the published min(t5, .) to min(t6, .) / min(t7, .) for sensitivity runs.
    """
    if name not in DOMAIN_NAMES:
        raise UnknownDomain(name)
    lo = p.lo

    def desc(i):
        # sigma-2*varpi <= t_{i+1} < min(t_i, (1 - running sum)/2)
        return _bracket(
            p, i, lambda cols, i=i: np.minimum(cols[i - 1], 0.5 * (1.0 - _sum(cols, i)))
        )

    def desc_chart(i, weight):
        return ChartCoord(
            weight,
            lambda cols: lo,
            lambda cols, i=i: np.minimum(cols[i - 1], 0.5 * (1.0 - _sum(cols, i))),
        )

    t1_chart = ChartCoord(1, lambda cols: lo, lambda cols: 0.5)
    t2_chart = ChartCoord(
        1, lambda cols: lo, lambda cols: np.minimum(cols[0], 0.5 * (1.0 - cols[0]))
    )
    box12 = ((lo, 0.5), (lo, 1.0 / 3.0))

    if name == "SC":
        return RegionSpec(
            name="SC",
            dim=2,
            bounds=box12,
            clauses=(_class_clause(p, "C"),),
            chart=(
                t1_chart,
                ChartCoord(2, lambda cols: lo, lambda cols: np.minimum(cols[0], 0.5 * (1.0 - cols[0]))),
            ),
            params=p,
        )

    if name == "SC2":
        return RegionSpec(
            name="SC2",
            dim=3,
            bounds=box12 + ((lo, 0.5 * (1.0 - 2.0 * lo)),),
            clauses=(
                _class_clause(p, "C"),
                _bracket(p, 2, lambda cols: 0.5 * (1.0 - cols[0] - cols[1]), lower_fn=lambda cols: cols[1]),
                _part_clause(p, "II", True, lambda cols: _prefix(cols, 3), "split_II_t123"),
            ),
            chart=(
                t1_chart,
                ChartCoord(1, lambda cols: lo, lambda cols: np.minimum(cols[0], 0.5 * (1.0 - cols[0]))),
                ChartCoord(2, lambda cols: cols[1], lambda cols: 0.5 * (1.0 - cols[0] - cols[1])),
            ),
            params=p,
        )

    if name == "SC4":
        return RegionSpec(
            name="SC4",
            dim=4,
            bounds=box12 + ((lo, 0.5 * (1.0 - 2.0 * lo)), (lo, 0.5 * (1.0 - 3.0 * lo))),
            clauses=(
                _class_clause(p, "C"),
                _bracket(p, 2, lambda cols: 0.5 * (1.0 - cols[0] - cols[1]), lower_fn=lambda cols: cols[1]),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 3), "no_split_II_t123"),
                _bracket(p, 3, lambda cols: 0.5 * (1.0 - _sum(cols, 3)), lower_fn=lambda cols: cols[2]),
                _part_clause(p, "II", True, lambda cols: _prefix(cols, 4), "split_II_t1234"),
            ),
            chart=(
                t1_chart,
                ChartCoord(1, lambda cols: lo, lambda cols: np.minimum(cols[0], 0.5 * (1.0 - cols[0]))),
                ChartCoord(1, lambda cols: cols[1], lambda cols: 0.5 * (1.0 - cols[0] - cols[1])),
                ChartCoord(2, lambda cols: cols[2], lambda cols: 0.5 * (1.0 - _sum(cols, 3))),
            ),
            params=p,
        )

    if name == "SA51":
        return RegionSpec(
            name="SA51",
            dim=4,
            bounds=box12 + ((lo, 0.25), (lo, 0.2)),
            clauses=(
                _class_clause(p, "A"),
                desc(2),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 3), "no_split_II_t123"),
                desc(3),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 4), "no_split_II_t1234"),
                _part_clause(p, "I", False, lambda cols: _prefix_dup(cols, 4), "no_split_I_t1234_dup"),
            ),
            chart=(t1_chart, t2_chart, desc_chart(2, 1), desc_chart(3, 2)),
            params=p,
        )

    if name == "SA52":
        return RegionSpec(
            name="SA52",
            dim=5,
            bounds=box12 + ((lo, 0.25), (lo, 0.2), (lo, 0.5 * (1.0 - 4.0 * lo))),
            clauses=(
                _class_clause(p, "A"),
                desc(2),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 3), "no_split_II_t123"),
                desc(3),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 4), "no_split_II_t1234"),
                _part_clause(p, "I", False, lambda cols: _prefix_dup(cols, 4), "no_split_I_t1234_dup"),
                _bracket(p, 4, lambda cols: 0.5 * (1.0 - _sum(cols, 4)), lower_fn=lambda cols: cols[3]),
                _part_clause(p, "II", True, lambda cols: _prefix(cols, 5), "split_II_t12345"),
            ),
            chart=(
                t1_chart,
                t2_chart,
                desc_chart(2, 1),
                desc_chart(3, 1),
                ChartCoord(2, lambda cols: cols[3], lambda cols: 0.5 * (1.0 - _sum(cols, 4))),
            ),
            params=p,
        )

    if name == "SA53":
        return RegionSpec(
            name="SA53",
            dim=6,
            bounds=box12 + ((lo, 0.25), (lo, 0.2), (lo, 1.0 / 6.0), (lo, 1.0 / 7.0)),
            clauses=(
                _class_clause(p, "A"),
                desc(2),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 3), "no_split_II_t123"),
                desc(3),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 4), "no_split_II_t1234"),
                _part_clause(p, "I", True, lambda cols: _prefix_dup(cols, 4), "split_I_t1234_dup"),
                desc(4),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 5), "no_split_II_t12345"),
                desc(5),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 6), "no_split_II_t123456"),
                _part_clause(p, "I", False, lambda cols: _prefix_dup(cols, 6), "no_split_I_t123456_dup"),
            ),
            chart=(
                t1_chart, t2_chart,
                desc_chart(2, 1), desc_chart(3, 1), desc_chart(4, 1), desc_chart(5, 2),
            ),
            params=p,
        )

    if name == "SA54":
        ref7 = 5 if sa54_strict_descent else 4
        ref8 = 6 if sa54_strict_descent else 4

        def up7(cols):
            return np.minimum(cols[ref7], 0.5 * (1.0 - _sum(cols, 6)))

        def up8(cols):
            return np.minimum(cols[ref8], 0.5 * (1.0 - _sum(cols, 7)))

        return RegionSpec(
            name="SA54",
            dim=8,
            bounds=box12
            + ((lo, 0.25), (lo, 0.2), (lo, 1.0 / 6.0), (lo, 1.0 / 7.0), (lo, 1.0 / 6.0), (lo, 1.0 / 6.0)),
            clauses=(
                _class_clause(p, "A"),
                desc(2),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 3), "no_split_II_t123"),
                desc(3),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 4), "no_split_II_t1234"),
                _part_clause(p, "I", True, lambda cols: _prefix_dup(cols, 4), "split_I_t1234_dup"),
                desc(4),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 5), "no_split_II_t12345"),
                desc(5),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 6), "no_split_II_t123456"),
                _part_clause(p, "I", True, lambda cols: _prefix_dup(cols, 6), "split_I_t123456_dup"),
                Clause("t7_bracket", lambda cols: (lo <= cols[6]) & (cols[6] < up7(cols))),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 7), "no_split_II_t1234567"),
                Clause("t8_bracket", lambda cols: (lo <= cols[7]) & (cols[7] < up8(cols))),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 8), "no_split_II_t12345678"),
            ),
            chart=(
                t1_chart, t2_chart,
                desc_chart(2, 1), desc_chart(3, 1), desc_chart(4, 1), desc_chart(5, 1),
                ChartCoord(1, lambda cols: lo, up7),
                ChartCoord(2, lambda cols: lo, up8),
            ),
            params=p,
        )

    # role-reversed family: tuples start with beta = 1 - t1 - t2 - t3
    if name == "SB51":
        return RegionSpec(
            name="SB51",
            dim=4,
            bounds=box12 + ((lo, 0.25), (lo, 0.25)),
            clauses=(
                _class_clause(p, "B"),
                desc(2),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 3), "no_split_II_t123"),
                _bracket(p, 3, lambda cols: 0.5 * cols[0], name="t4_bracket"),
                _part_clause(p, "II", False, lambda cols: _reversed_tuple(cols, 4), "no_split_II_rev4"),
                _part_clause(p, "I", False, lambda cols: _reversed_dup(cols, 4), "no_split_I_rev4_dup"),
            ),
            chart=(
                ChartCoord(0, lambda cols: lo, lambda cols: 0.5),
                t2_chart,
                desc_chart(2, 2),
                ChartCoord(2, lambda cols: lo, lambda cols: 0.5 * cols[0]),
            ),
            params=p,
        )

    if name == "SB52":
        return RegionSpec(
            name="SB52",
            dim=5,
            bounds=box12 + ((lo, 0.25), (lo, 0.25), (lo, 0.25 - 0.5 * lo)),
            clauses=(
                _class_clause(p, "B"),
                desc(2),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 3), "no_split_II_t123"),
                _bracket(p, 3, lambda cols: 0.5 * cols[0], name="t4_bracket"),
                _part_clause(p, "II", False, lambda cols: _reversed_tuple(cols, 4), "no_split_II_rev4"),
                _part_clause(p, "I", False, lambda cols: _reversed_dup(cols, 4), "no_split_I_rev4_dup"),
                _bracket(p, 4, lambda cols: 0.5 * (cols[0] - cols[3]), lower_fn=lambda cols: cols[3]),
                _part_clause(p, "II", True, lambda cols: _reversed_tuple(cols, 5), "split_II_rev5"),
            ),
            chart=(
                ChartCoord(0, lambda cols: lo, lambda cols: 0.5),
                t2_chart,
                desc_chart(2, 2),
                ChartCoord(1, lambda cols: lo, lambda cols: 0.5 * cols[0]),
                ChartCoord(2, lambda cols: cols[3], lambda cols: 0.5 * (cols[0] - cols[3])),
            ),
            params=p,
        )

    if name == "SB53":
        return RegionSpec(
            name="SB53",
            dim=6,
            bounds=box12 + ((lo, 0.25), (lo, 0.25), (lo, 1.0 / 6.0), (lo, 0.125)),
            clauses=(
                _class_clause(p, "B"),
                desc(2),
                _part_clause(p, "II", False, lambda cols: _prefix(cols, 3), "no_split_II_t123"),
                _bracket(p, 3, lambda cols: 0.5 * cols[0], name="t4_bracket"),
                _part_clause(p, "II", False, lambda cols: _reversed_tuple(cols, 4), "no_split_II_rev4"),
                _part_clause(p, "I", True, lambda cols: _reversed_dup(cols, 4), "split_I_rev4_dup"),
                Clause(
                    "t5_bracket",
                    lambda cols: (lo <= cols[4])
                    & (cols[4] < np.minimum(cols[3], 0.5 * (cols[0] - cols[3]))),
                ),
                _part_clause(p, "II", False, lambda cols: _reversed_tuple(cols, 5), "no_split_II_rev5"),
                Clause(
                    "t6_bracket",
                    lambda cols: (lo <= cols[5])
                    & (cols[5] < np.minimum(cols[4], 0.5 * (cols[0] - cols[3] - cols[4]))),
                ),
                _part_clause(p, "II", False, lambda cols: _reversed_tuple(cols, 6), "no_split_II_rev6"),
            ),
            chart=(
                ChartCoord(0, lambda cols: lo, lambda cols: 0.5),
                t2_chart,
                desc_chart(2, 2),
                ChartCoord(1, lambda cols: lo, lambda cols: 0.5 * cols[0]),
                ChartCoord(1, lambda cols: lo, lambda cols: np.minimum(cols[3], 0.5 * (cols[0] - cols[3]))),
                ChartCoord(2, lambda cols: lo, lambda cols: np.minimum(cols[4], 0.5 * (cols[0] - cols[3] - cols[4]))),
            ),
            params=p,
        )

    raise UnknownDomain(name)  # pragma: no cover
