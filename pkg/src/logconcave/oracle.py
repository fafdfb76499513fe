"""Brute-force oracles and randomized instance generators.

The oracles here deliberately avoid the production algorithms: geometry is
re-decided from scratch on materialized Fractions (no Coefficient comparison
shortcuts, no monotone chain, no DP), and max-product tables are found by
enumerating whole composition tuples.  Generators are deterministic functions
of the supplied rng so every randomized suite replays bit-identically.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, product

from .errors import CapExceeded, FatalInconsistency
from .geometry import LogPoint, PointSet, _as_points
from .limits import LIMITS
from .polynomials import Coefficient, Polynomial, SparsePoly, check_tau_logconcave
from . import sps as _sps


# ---------------------------------------------------------------------------
# independent exact geometry on materialized Fractions
# ---------------------------------------------------------------------------


class _FractionGeometry:
    """Cross-product signs and y-order for a fixed point list, computed with
    plain Fraction arithmetic and memoized per index tuple."""

    def __init__(self, points, tau):
        pts = list(points)
        self.x = [p.x for p in pts]
        self.r = [p.r.as_fraction() for p in pts]
        self.h = [p.tau_halves for p in pts]
        self.tau = Fraction(tau)
        if self.tau <= 1:
            raise ValueError("tau must be a rational > 1")
        self.n = len(pts)
        self._cross: dict[tuple[int, int, int], int] = {}
        self._y: dict[tuple[int, int], int] = {}

    def _cross_raw(self, i, j, k) -> int:
        a = self.x[j] - self.x[i]
        b = self.x[k] - self.x[i]
        t = a * (self.h[k] - self.h[i]) - b * (self.h[j] - self.h[i])
        value = (
            self.r[k] ** (2 * a)
            * self.r[j] ** (-2 * b)
            * self.r[i] ** (2 * (b - a))
            * self.tau**t
        )
        return (value > 1) - (value < 1)

    def cross(self, i, j, k) -> int:
        lo, mid, hi = sorted((i, j, k))
        key = (lo, mid, hi)
        if key not in self._cross:
            self._cross[key] = self._cross_raw(lo, mid, hi)
        base = self._cross[key]
        # odd permutations of the arguments flip the sign
        flips = (i > j) + (i > k) + (j > k)
        return -base if flips % 2 else base

    def y_cmp(self, i, j) -> int:
        if i == j:
            return 0
        key = (i, j) if i < j else (j, i)
        if key not in self._y:
            a, b = key
            ya = self.r[a] ** 2 * self.tau ** self.h[a]
            yb = self.r[b] ** 2 * self.tau ** self.h[b]
            self._y[key] = (ya > yb) - (ya < yb)
        return self._y[key] if (i, j) == key or i == j else -self._y[key]

    def coincident(self, i, j) -> bool:
        return self.x[i] == self.x[j] and self.y_cmp(i, j) == 0

    def on_segment(self, i, j, p) -> bool:
        if self.coincident(i, j):
            return self.coincident(i, p)
        if self.cross(i, j, p) != 0:
            return False
        if self.x[i] != self.x[j]:
            return min(self.x[i], self.x[j]) <= self.x[p] <= max(self.x[i], self.x[j])
        if self.x[p] != self.x[i]:
            return False
        lo, hi = (i, j) if self.y_cmp(i, j) <= 0 else (j, i)
        return self.y_cmp(lo, p) <= 0 <= self.y_cmp(hi, p)

    def in_hull(self, others, p) -> bool:
        for i in others:
            if self.coincident(i, p):
                return True
        for i, j in combinations(others, 2):
            if self.on_segment(i, j, p):
                return True
        for i, j, k in combinations(others, 3):
            if self.cross(i, j, k) == 0:
                continue
            signs = {self.cross(i, j, p), self.cross(j, k, p), self.cross(k, i, p)}
            if not ({1, -1} <= signs):
                return True
        return False

    def independent(self, idxs) -> bool:
        if len(idxs) <= 2:
            return True
        return not any(
            self.in_hull([j for j in idxs if j != i], i) for i in idxs
        )


def point_on_segment(p: LogPoint, a: LogPoint, b: LogPoint, tau) -> bool:
    geo = _FractionGeometry([a, b, p], tau)
    return geo.on_segment(0, 1, 2)


def point_in_hull(p: LogPoint, others, tau) -> bool:
    pts = list(_as_points(others))
    geo = _FractionGeometry(pts + [p], tau)
    return geo.in_hull(range(len(pts)), len(pts))


def brute_convexly_independent(points, tau) -> bool:
    pts = _as_points(points)
    geo = _FractionGeometry(pts, tau)
    return geo.independent(list(range(len(pts))))


def brute_max_convex_subset(points, tau) -> tuple[int, PointSet]:
    """Largest convexly independent subset, by enumeration from the top size
    down.  Signs are cached per instance, so the subset loop is cheap."""
    pts = _as_points(points)
    n = len(pts)
    if n > LIMITS.max_brute_points:
        raise CapExceeded(f"{n} points exceeds max_brute_points")
    if n <= 2:
        return n, PointSet(pts)
    geo = _FractionGeometry(pts, tau)
    for size in range(n, 2, -1):
        for idxs in combinations(range(n), size):
            if geo.independent(idxs):
                return size, PointSet(pts[i] for i in idxs)
    return 2, PointSet(pts[:2])


def brute_minkowski(sets) -> PointSet:
    """Fold pointwise sums over any number of point sets by full enumeration."""
    groups = [_as_points(s) for s in sets]
    if not groups:
        raise ValueError("need at least one point set")
    out = []
    for combo in product(*groups):
        r = Coefficient(1)
        for p in combo:
            r = r * p.r
        out.append(
            LogPoint(
                sum(p.x for p in combo), r, sum(p.tau_halves for p in combo)
            )
        )
    return PointSet(out)


# ---------------------------------------------------------------------------
# max-product tables by whole-tuple enumeration
# ---------------------------------------------------------------------------


def brute_max_convolution(e) -> list[dict[int, Coefficient]]:
    """Per row: the best product over full composition tuples, one exponent at
    a time.  Independent of the layered pairwise route in module sps."""
    tables = []
    for row in e.products:
        work = 1
        for f in row:
            work *= f.term_count()
        if work > 4096:
            raise CapExceeded("row has too many composition tuples")
        table: dict[int, Coefficient] = {}
        for combo in product(*[f.terms for f in row]):
            exp = sum(term[0] for term in combo)
            value = Coefficient(1)
            for term in combo:
                value = value * term[1]
            if exp not in table or value.compare(table[exp]) > 0:
                table[exp] = value
        tables.append(table)
    return tables


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def _ceil_log2(fr: Fraction) -> int:
    """Least g with 2^g >= fr, for fr > 0."""
    if fr <= 0:
        raise ValueError("need a positive value")
    g = fr.numerator.bit_length() - fr.denominator.bit_length() - 2
    while Fraction(2) ** g < fr:
        g += 1
    return g


_ODD_MANTISSAS = (1, 3, 5, 7)


def _concave_exponents(rng, count: int, margin: int) -> list[int]:
    """Strictly concave integer sequence: second differences >= margin,
    peak near the middle so magnitudes stay balanced."""
    slope = (count // 2) * margin + rng.randint(0, margin)
    out = [0]
    for _ in range(count - 1):
        out.append(out[-1] + slope)
        slope -= margin + rng.randint(0, 3)
    return out


def random_kurtz_polynomial(rng, d: int, tau) -> Polynomial:
    """Random dense polynomial passing the strict tau-log-concavity check by
    construction: dyadic coefficients whose exponents form a strictly concave
    sequence with gaps wide enough to absorb the small odd mantissas."""
    tau = Fraction(tau)
    if d < 2:
        raise ValueError("need degree >= 2")
    if tau <= 0 or tau > Fraction(2) ** 60:
        raise ValueError("tau must be in (0, 2^60]")
    margin = max(_ceil_log2(tau), 0) + 7
    coeffs = [
        Coefficient(rng.choice(_ODD_MANTISSAS), e)
        for e in _concave_exponents(rng, d + 1, margin)
    ]
    p = Polynomial(coeffs)
    if not check_tau_logconcave(p, tau).holds:  # belt and braces
        raise FatalInconsistency("generator produced a non-log-concave polynomial")
    return p


def _random_factor(rng, max_t: int, max_exponent: int, coeff_pow: int) -> SparsePoly:
    t = rng.randint(1, max_t)
    exps = rng.sample(range(max_exponent + 1), min(t, max_exponent + 1))
    return SparsePoly(
        (e, Coefficient(rng.choice(_ODD_MANTISSAS), rng.randint(-coeff_pow, coeff_pow)))
        for e in exps
    )


def _concave_sparse_factor(rng, terms: int, margin: int) -> SparsePoly:
    """Dense factor 0..terms-1 whose dyadic exponents are strictly concave
    with second differences >= margin."""
    return SparsePoly(
        (i, Coefficient(rng.choice(_ODD_MANTISSAS), e))
        for i, e in enumerate(_concave_exponents(rng, terms, margin))
    )


def random_sps_expression(
    rng,
    max_k: int = 3,
    max_m: int = 3,
    max_t: int = 4,
    max_exponent: int = 8,
    coeff_pow: int = 8,
) -> _sps.SpsExpression:
    """Random expression; roughly one in ten is built to satisfy the strong
    log-concavity condition on its expansion (one dense strongly concave
    factor, padded with constant-or-X companions), so downstream suites see a
    steady stream of applicable instances."""
    if rng.random() < 0.1 and max_t >= 3:
        m = rng.randint(1, max_m)
        # at most one X companion: a second shift would zero the expansion's
        # linear coefficient and sink the positivity half of the check
        shifts = [0] * (m - 1)
        if shifts and rng.random() < 0.5:
            shifts[rng.randrange(len(shifts))] = 1
        dense_terms = rng.randint(3, max_t)
        degree = dense_terms - 1 + sum(shifts)
        margin = math.ceil(2 * degree * math.log2(degree)) + 7
        factors = [_concave_sparse_factor(rng, dense_terms, margin)]
        factors += [
            SparsePoly([(shift, Coefficient(1))]) for shift in shifts
        ]
        rng.shuffle(factors)
        e = _sps.SpsExpression([factors])
        if not check_tau_logconcave(  # belt and braces
            _sps.expand(e), Fraction(degree) ** (2 * degree)
        ).holds:
            raise FatalInconsistency("constructed instance missed the strong condition")
        return e
    rows = [
        [
            _random_factor(rng, max_t, max_exponent, coeff_pow)
            for _ in range(rng.randint(1, max_m))
        ]
        for _ in range(rng.randint(1, max_k))
    ]
    return _sps.SpsExpression(rows)


def random_lifting_expression(
    rng, tau, max_k: int = 3, max_terms: int = 4
) -> _sps.SpsExpression:
    """Random 2-factor-row expression whose expansion passes the strict
    tau-log-concavity check.

    Row 1 dominates: its two factors take dyadic exponent slopes from one
    globally separated descending grid, so the exponents of the expanded row
    are strictly concave with room to spare; the remaining rows are scaled far
    enough down that adding them moves no coefficient by more than a sliver.
    """
    tau = Fraction(tau)
    r = rng.randint(1, max_terms)
    s = rng.randint(1, max_terms)
    if r + s < 4:  # keep the expansion degree >= 2 so the check bites
        r, s = 2, 2
    gap = max(_ceil_log2(tau), 1) + 2 * max(r, s).bit_length() + 3
    nslopes = r + s - 2
    slope = (nslopes - nslopes // 2) * (gap + 3)
    slopes = []
    for _ in range(nslopes):
        slopes.append(slope)
        slope -= gap + rng.randint(0, 3)
    picks = sorted(rng.sample(range(nslopes), r - 1))
    left_slopes = [slopes[i] for i in picks]
    right_slopes = [slopes[i] for i in range(nslopes) if i not in set(picks)]

    def factor(slopes_for, base):
        exps = [base]
        for v in slopes_for:
            exps.append(exps[-1] + v)
        return SparsePoly((i, Coefficient(1, e)) for i, e in enumerate(exps))

    left = factor(left_slopes, rng.randint(0, 4))
    right = factor(right_slopes, rng.randint(0, 4))
    rows = [(left, right)]

    d = left.degree + right.degree
    low = min(c.pow2 for _, c in (left * right).terms)
    k = rng.randint(1, max_k)
    for _ in range(k - 1):
        u = rng.randint(0, d // 2)
        v = rng.randint(0, d - u)
        # the PRODUCT of the two factor coefficients carries 2*tiny, and it has
        # to sit far below the dominant row's smallest exponent
        tiny = (low - 60) // 2 - rng.randint(0, 5)
        rows.append(
            (
                SparsePoly([(u, Coefficient(1, tiny))]),
                SparsePoly([(v, Coefficient(1, tiny))]),
            )
        )
    e = _sps.SpsExpression(rows)
    if not check_tau_logconcave(_sps.expand(e), tau).holds:  # belt and braces
        raise FatalInconsistency("lifting generator broke its own contract")
    return e


# ---------------------------------------------------------------------------
# extremal search driver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    trials: int = 1000
    max_k: int = 3
    max_m: int = 3
    max_t: int = 4
    max_exponent: int = 8
    coeff_pow: int = 8
    tau: Fraction = Fraction(4)


@dataclass(frozen=True)
class BestFound:
    expression: _sps.SpsExpression
    params: _sps.SpsParams
    d: int
    trivial: int
    thm1_shape: float
    trial: int
    hits: int  # how many generated instances passed the tau check


def search_extremal_kurtz(cfg: ExperimentConfig, on_improvement=None) -> BestFound | None:
    """Maximize expansion degree over random expressions whose expansion
    passes the tau-log-concavity check (tau from cfg; 4 = the classic case).
    Report-only; `on_improvement` sees every new best as it is found, so a
    caller can stream one report line per improving instance."""
    best: BestFound | None = None
    hits = 0
    for trial in range(cfg.trials):
        rng = random.Random(cfg.seed ^ (0x9E3779B9 * (trial + 1)))
        e = random_sps_expression(
            rng,
            max_k=cfg.max_k,
            max_m=cfg.max_m,
            max_t=cfg.max_t,
            max_exponent=cfg.max_exponent,
            coeff_pow=cfg.coeff_pow,
        )
        a = _sps.expand(e)
        if a.degree < 1 or not check_tau_logconcave(a, cfg.tau).holds:
            continue
        hits += 1
        if best is None or a.degree > best.d:
            rep = _sps.bounds_report(e)
            best = BestFound(
                expression=e,
                params=_sps.params(e),
                d=a.degree,
                trivial=rep.trivial,
                thm1_shape=rep.thm1_shape,
                trial=trial,
                hits=hits,
            )
            if on_improvement is not None:
                on_improvement(best)
    if best is not None:
        best = replace(best, hits=hits)
    return best
