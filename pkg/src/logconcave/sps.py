"""Sums of products of sparse nonnegative polynomials.

An expression is k rows, each a product of sparse factors with positive
coefficients.  This module expands such expressions exactly, verifies the
degree bound for strongly log-concave expansions, extracts the dense-factor
witness behind that bound, and builds/verifies the lifted point-set
construction that turns a log-concave expansion into a convexly independent
chain inside a small Minkowski-sum cover.

Failure taxonomy matters here: a violated *input* hypothesis raises
PreconditionFailed, while a violated *proved* step raises FatalInconsistency
(it can only mean a defect in this package, never a property of the input).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import (
    FatalInconsistency,
    FormatError,
    PreconditionFailed,
    ResourceLimit,
    ShapeError,
)
from .geometry import (
    LogPoint,
    PointSet,
    is_convexly_independent,
    minkowski_sum,
    upper_envelope,
)
from .limits import LIMITS
from .polynomials import (
    Coefficient,
    Polynomial,
    SparsePoly,
    check_strong,
    check_tau_logconcave,
    format_coefficient,
    parse_coefficient,
)

ONE = Coefficient(1)

# tau passed to geometry when no point carries a tau offset; any value works
# because every tau_halves is zero, so pick the smallest convenient one
_TAU_UNUSED = Fraction(2)


class SpsExpression:
    """k rows of sparse factors; the represented value is sum of row products."""

    __slots__ = ("products",)

    def __init__(self, products):
        rows = []
        for row in products:
            factors = tuple(row)
            if not factors:
                raise ShapeError("empty product row")
            for f in factors:
                if not isinstance(f, SparsePoly):
                    raise TypeError(f"factor is not a SparsePoly: {f!r}")
                if f.is_zero:
                    raise ShapeError("zero factor in a product row")
            rows.append(factors)
        if not rows:
            raise ShapeError("expression needs at least one row")
        object.__setattr__(self, "products", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("SpsExpression is immutable")

    def __eq__(self, other):
        if not isinstance(other, SpsExpression):
            return NotImplemented
        return self.products == other.products

    def __hash__(self):
        return hash(self.products)

    def row_count(self) -> int:
        return len(self.products)

    def __repr__(self):
        return f"SpsExpression({list(map(list, self.products))!r})"


@dataclass(frozen=True)
class SpsParams:
    """Shape parameters: rows k, max factors per row m, max terms per factor t,
    expansion degree d.  Note d <= k*t^m only holds for expansions that are
    dense up to their degree; it is not an unconditional invariant."""

    k: int
    m: int
    t: int
    d: int


@dataclass(frozen=True)
class Theorem2Verdict:
    applicable: bool  # expansion satisfies the strong (d^2d) condition
    bound_holds: bool  # d <= k*m*t
    params: SpsParams


@dataclass(frozen=True)
class WitnessReport:
    """Dense-factor extraction: some factor of product `product_index` has at
    least d/(k*m) monomials; `dominant_exponents` are the exponents where that
    product's best single composition attains the global per-exponent max."""

    product_index: int
    factor_index: int
    dominant_exponents: tuple[int, ...]
    factor_terms: int
    threshold: Fraction  # d / (k*m)


@dataclass(frozen=True)
class LiftingArtifacts:
    """Everything the lifted-chain construction produces for a 2-factor-row
    expression whose expansion is tau-log-concave.

    peaks[l-1] is the largest single pairwise product hitting exponent l;
    steps[l-1] is the least integer step count quantizing the gap between
    that peak and the true coefficient on the tau**(1/2) grid.  The chain
    point for exponent l is (l, peaks[l-1], tau_halves=steps[l-1]).
    """

    tau: Fraction
    peaks: tuple[Coefficient, ...]  # indexed by exponent 1..d
    steps: tuple[int, ...]
    left_sets: tuple[PointSet, ...]  # lifted first factors, one per row
    right_sets: tuple[PointSet, ...]  # lifted second factors
    step_grid: PointSet  # {(0, 1, h)} for h = 0..max_step
    unit_grid: PointSet  # {(0, 1, h)} for h = 0..stride
    stride_grid: PointSet  # {(0, 1, v*stride)} for v = 0..stride
    chain: PointSet
    max_step: int  # least u >= 0 with tau^u >= (k*r)^2, r = max left terms
    stride: int  # least v >= 0 with tau^(v*v) >= (k*r)^2


@dataclass(frozen=True)
class LiftingVerdict:
    chain_in_cover: bool  # chain subset of union(left+right) + step grid
    chain_independent: bool
    grid_covered: bool  # step grid subset of unit grid + stride grid
    size: int

    @property
    def holds(self) -> bool:
        return self.chain_in_cover and self.chain_independent and self.grid_covered


@dataclass(frozen=True)
class BoundsReport:
    trivial: int  # k * t^m
    thm1_shape: float  # k * m^(2/3) * t^(2m/3) * log^(2/3)(kt), constant-free
    thm2: int  # k * m * t
    d: int


# ---------------------------------------------------------------------------
# expansion and parameters
# ---------------------------------------------------------------------------


def _expansion_work(e: SpsExpression) -> int:
    total = 0
    for row in e.products:
        w = 1
        for f in row:
            w *= f.term_count()
        total += w
    return total


def expand(e: SpsExpression) -> Polynomial:
    """Exact expansion; every coefficient is nonnegative by construction."""
    if _expansion_work(e) > LIMITS.max_expansion_work:
        raise ResourceLimit("expansion term work exceeds cap")
    acc: dict[int, Coefficient] = {}
    for row in e.products:
        prod = reduce(lambda a, b: a * b, row)
        for exp, c in prod.terms:
            acc[exp] = acc[exp] + c if exp in acc else c
    degree = max(acc)
    if degree > LIMITS.max_expansion_degree:
        raise ResourceLimit(f"expansion degree {degree} exceeds cap")
    out = [Coefficient(0)] * (degree + 1)
    for exp, c in acc.items():
        out[exp] = c
    return Polynomial(out)


def params(e: SpsExpression) -> SpsParams:
    return SpsParams(
        k=len(e.products),
        m=max(len(row) for row in e.products),
        t=max(f.term_count() for row in e.products for f in row),
        d=expand(e).degree,
    )


# ---------------------------------------------------------------------------
# max-convolution tables (the layered production route; the oracle module
# recomputes them by full composition enumeration)
# ---------------------------------------------------------------------------


def _point_map(f: SparsePoly) -> dict[int, Coefficient]:
    return dict(f.terms)


def _max_convolve(a: dict[int, Coefficient], b: dict[int, Coefficient]):
    out: dict[int, Coefficient] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            v = c1 * c2
            if e not in out or v.compare(out[e]) > 0:
                out[e] = v
    return out


def max_product_table(e: SpsExpression) -> list[dict[int, Coefficient]]:
    """Per row, the best single composition value at each reachable exponent."""
    return [reduce(_max_convolve, map(_point_map, row)) for row in e.products]


# ---------------------------------------------------------------------------
# degree bound (strong condition) and the witness behind it
# ---------------------------------------------------------------------------


def sparse_factor_witness(e: SpsExpression) -> WitnessReport:
    """Extract a factor with at least d/(k*m) monomials.

    Requires the expansion to be strictly k^2 d^(2m) log-concave with positive
    interior coefficients.  The route mirrors the degree-bound argument:
    single-composition maxima sandwich the true coefficients within a factor
    of k*d^m, so the per-exponent maxima of the dominant row are strict
    vertices of the upper envelope of its Minkowski sum, and those vertices
    are spread over the row's factors.
    """
    p = params(e)
    a = expand(e)
    d = p.d
    if d < 1:
        raise PreconditionFailed("expansion is constant")
    hyp = Fraction(p.k) ** 2 * Fraction(d) ** (2 * p.m)
    if not check_tau_logconcave(a, hyp).holds:
        raise PreconditionFailed(
            "expansion does not satisfy the k^2 d^(2m) log-concavity hypothesis"
        )

    tables = max_product_table(e)
    best: dict[int, Coefficient] = {}
    for table in tables:
        for exp, v in table.items():
            if exp not in best or v.compare(best[exp]) > 0:
                best[exp] = v

    # sandwich: best_l <= a_l <= k d^m best_l for every interior exponent
    slack = Coefficient(Fraction(p.k) * Fraction(d) ** p.m)
    for l in range(1, d + 1):
        if l not in best:
            raise FatalInconsistency(f"no composition reaches exponent {l}")
        if best[l].compare(a.coeffs[l]) > 0:
            raise FatalInconsistency(f"max composition exceeds coefficient at {l}")
        if a.coeffs[l].compare(slack * best[l]) > 0:
            raise FatalInconsistency(f"coefficient outruns k*d^m slack at {l}")

    achieved = [
        tuple(
            l for l in range(1, d + 1) if l in table and table[l] == best[l]
        )
        for table in tables
    ]
    i0 = max(range(p.k), key=lambda i: (len(achieved[i]), -i))
    dominant = achieved[i0]
    if len(dominant) * p.k < d:
        raise FatalInconsistency("dominant row covers fewer than d/k exponents")

    row = e.products[i0]
    factor_sets = [
        PointSet(LogPoint(exp, c) for exp, c in f.terms) for f in row
    ]
    total = reduce(minkowski_sum, factor_sets)
    envelope = upper_envelope(total, _TAU_UNUSED)
    vertex_set = set(envelope)
    for l in dominant:
        if LogPoint(l, best[l]) not in vertex_set:
            raise FatalInconsistency(
                f"dominant point at exponent {l} is not an envelope vertex"
            )
    factor_envelopes = [len(upper_envelope(s, _TAU_UNUSED)) for s in factor_sets]
    if len(envelope) > sum(factor_envelopes):
        raise FatalInconsistency("envelope of the sum outgrew its parts")

    j0 = max(range(len(row)), key=lambda j: (factor_envelopes[j], -j))
    terms = row[j0].term_count()
    if terms * p.k * p.m < d:
        raise FatalInconsistency("witness factor is too sparse for the bound")
    return WitnessReport(
        product_index=i0,
        factor_index=j0,
        dominant_exponents=dominant,
        factor_terms=terms,
        threshold=Fraction(d, p.k * p.m),
    )


def verify_theorem2(e: SpsExpression) -> Theorem2Verdict:
    """Degree bound d <= k*m*t for strongly log-concave expansions.

    Not applicable when the expansion fails the strong condition; when it is
    applicable, a violated bound (or a failed witness extraction) is a defect,
    never a property of the input, hence FatalInconsistency.
    """
    p = params(e)
    a = expand(e)
    applicable = p.d >= 1 and check_strong(a).holds
    bound_holds = p.d <= p.k * p.m * p.t
    if applicable and p.d > p.k and p.d > p.m:
        # strong condition implies the witness hypothesis: d^(2d) >= d^2 d^(2m)
        # > k^2 d^(2m) once d exceeds both k and m
        try:
            sparse_factor_witness(e)
        except PreconditionFailed as exc:
            raise FatalInconsistency(
                f"strong condition held but witness hypothesis failed: {exc}"
            ) from exc
    if applicable and not bound_holds:
        raise FatalInconsistency(
            f"degree bound violated: d={p.d} > k*m*t={p.k * p.m * p.t}"
        )
    return Theorem2Verdict(applicable=applicable, bound_holds=bound_holds, params=p)


# ---------------------------------------------------------------------------
# two-factor rows: splitting and the lifted-chain construction
# ---------------------------------------------------------------------------


def split_products(e: SpsExpression) -> SpsExpression:
    """Regroup every row into exactly two expanded factors (first half times
    second half); the expansion is unchanged."""
    if any(len(row) < 2 for row in e.products):
        raise PreconditionFailed("every row needs at least 2 factors to split")
    if _expansion_work(e) > LIMITS.max_expansion_work:
        raise ResourceLimit("split expansion work exceeds cap")
    rows = []
    for row in e.products:
        mid = len(row) // 2
        left = reduce(lambda a, b: a * b, row[:mid])
        right = reduce(lambda a, b: a * b, row[mid:])
        rows.append((left, right))
    return SpsExpression(rows)


def _least_power_at_least(tau: Fraction, target: Fraction) -> int:
    """Least u >= 0 with tau^u >= target (tau > 1)."""
    u = 0
    acc = Fraction(1)
    while acc < target:
        acc *= tau
        u += 1
    return u


def build_lifting(e: SpsExpression, tau) -> LiftingArtifacts:
    """Lift a 2-factor-row expression with a tau-log-concave expansion.

    For each exponent l of the expansion, the chain keeps the best single
    pairwise product (the peak) and quantizes the gap to the true coefficient
    as an integer number of half-log-tau steps, so the chain stays within one
    step grid of the union of pairwise Minkowski sums while inheriting strict
    concavity from the expansion.
    """
    tau = Fraction(tau)
    if tau <= 1:
        raise ValueError("tau must be a rational > 1")
    for row in e.products:
        if len(row) != 2:
            raise ShapeError("lifting needs exactly 2 factors per row")
    a = expand(e)
    d = a.degree
    if d < 1:
        raise PreconditionFailed("expansion is constant")
    if not check_tau_logconcave(a, tau).holds:
        raise PreconditionFailed("expansion is not tau-log-concave")

    k = len(e.products)
    left_terms = max(row[0].term_count() for row in e.products)
    kr2 = Fraction(k * left_terms) ** 2
    max_step = _least_power_at_least(tau, kr2)
    stride = 0
    while Fraction(tau) ** (stride * stride) < kr2:
        stride += 1

    tau_c = Coefficient(tau)
    peaks: list[Coefficient] = []
    steps: list[int] = []
    tables = max_product_table(e)
    for l in range(1, d + 1):
        peak = None
        for table in tables:
            v = table.get(l)
            if v is not None and (peak is None or v.compare(peak) > 0):
                peak = v
        if peak is None:
            raise FatalInconsistency(f"no pairwise product reaches exponent {l}")
        target = a.coeffs[l] * a.coeffs[l]
        acc = peak * peak
        step = 0
        while acc.compare(target) < 0:
            acc = acc * tau_c
            step += 1
            if step > max_step:
                raise FatalInconsistency(
                    f"step count at exponent {l} exceeds the proved bound"
                )
        peaks.append(peak)
        steps.append(step)

    return LiftingArtifacts(
        tau=tau,
        peaks=tuple(peaks),
        steps=tuple(steps),
        left_sets=tuple(
            PointSet(LogPoint(x, c) for x, c in row[0].terms) for row in e.products
        ),
        right_sets=tuple(
            PointSet(LogPoint(x, c) for x, c in row[1].terms) for row in e.products
        ),
        step_grid=PointSet(LogPoint(0, ONE, h) for h in range(max_step + 1)),
        unit_grid=PointSet(LogPoint(0, ONE, h) for h in range(stride + 1)),
        stride_grid=PointSet(LogPoint(0, ONE, v * stride) for v in range(stride + 1)),
        chain=PointSet(
            LogPoint(l, peaks[l - 1], steps[l - 1]) for l in range(1, d + 1)
        ),
        max_step=max_step,
        stride=stride,
    )


def verify_lifting(art: LiftingArtifacts) -> LiftingVerdict:
    """Check the three proved properties of the lifted chain; any failure is
    a defect in the construction, so it raises FatalInconsistency."""
    cover = None
    for left, right in zip(art.left_sets, art.right_sets):
        pairs = minkowski_sum(left, right)
        cover = pairs if cover is None else cover | pairs
    cover = minkowski_sum(cover, art.step_grid)
    in_cover = art.chain.points <= cover.points
    independent = is_convexly_independent(art.chain, art.tau)
    covered_grid = art.step_grid.points <= minkowski_sum(
        art.unit_grid, art.stride_grid
    ).points
    verdict = LiftingVerdict(
        chain_in_cover=in_cover,
        chain_independent=independent,
        grid_covered=covered_grid,
        size=len(art.chain),
    )
    if not verdict.holds:
        raise FatalInconsistency(f"lifting verification failed: {verdict}")
    return verdict


# ---------------------------------------------------------------------------
# report-only bound summary
# ---------------------------------------------------------------------------


def bounds_report(e: SpsExpression) -> BoundsReport:
    """Reports the trivial and product-parameter bounds next to the degree.
    Informational only: nothing here asserts, because d can exceed k*t^m for
    lacunary expansions (a single monomial X^100 already does it)."""
    p = params(e)
    shape = (
        p.k
        * p.m ** (2 / 3)
        * p.t ** (2 * p.m / 3)
        * math.log(p.k * p.t) ** (2 / 3)
    )
    return BoundsReport(
        trivial=p.k * p.t**p.m,
        thm1_shape=shape,
        thm2=p.k * p.m * p.t,
        d=p.d,
    )


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def parse_sps(text: str) -> tuple[SpsExpression, Fraction | None]:
    """JSON format: {"tau": "p/q"?, "products": [[{"terms": [[exp, "coeff"]..]}..]..]}"""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"bad JSON: {exc}") from exc
    if not isinstance(payload, dict) or "products" not in payload:
        raise FormatError("expected an object with a 'products' key")
    tau = None
    if payload.get("tau") is not None:
        try:
            tau = Fraction(str(payload["tau"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad tau: {payload['tau']!r}") from exc
    rows = []
    products = payload["products"]
    if not isinstance(products, list) or not products:
        raise FormatError("'products' must be a nonempty list of rows")
    for row in products:
        if not isinstance(row, list) or not row:
            raise FormatError("every row must be a nonempty list of factors")
        factors = []
        for factor in row:
            if not isinstance(factor, dict) or "terms" not in factor:
                raise FormatError("every factor needs a 'terms' list")
            terms = []
            for item in factor["terms"]:
                if not isinstance(item, (list, tuple)) or len(item) != 2:
                    raise FormatError(f"bad term {item!r}")
                exp, coeff = item
                if not isinstance(exp, int) or isinstance(exp, bool) or exp < 0:
                    raise FormatError(f"bad exponent {exp!r}")
                terms.append((exp, parse_coefficient(str(coeff))))
            sp = SparsePoly(terms)
            if sp.is_zero:
                raise FormatError("zero factor")
            factors.append(sp)
        rows.append(factors)
    try:
        return SpsExpression(rows), tau
    except ShapeError as exc:
        raise FormatError(str(exc)) from exc


def format_sps(e: SpsExpression, tau: Fraction | None = None) -> str:
    payload = {
        "products": [
            [
                {"terms": [[exp, format_coefficient(c)] for exp, c in f.terms]}
                for f in row
            ]
            for row in e.products
        ]
    }
    if tau is not None:
        payload = {"tau": str(tau), **payload}
    return json.dumps(payload, indent=2) + "\n"
