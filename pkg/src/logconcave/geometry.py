"""Exact planar geometry over log-lifted points.

A LogPoint (x, r, h) denotes the real point (x, log r + (h/2)·log tau) for a
per-call rational tau > 1.  Every predicate reduces to comparing a product of
rational powers against 1, so all geometry here is decided by big-integer
arithmetic — no floating point, no epsilons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .errors import CapExceeded, FormatError, ShapeError
from .limits import LIMITS
from .polynomials import Coefficient, format_coefficient

ONE = Coefficient(1)


@dataclass(frozen=True)
class LogPoint:
    """Lifted point (x, log r + (tau_halves/2)·log tau); r strictly positive.

    Equality is structural: same x, same r, same tau_halves.  Two points may
    coincide geometrically while remaining distinct set elements; every
    predicate below treats such pairs as collinear-degenerate, which is the
    safe reading for hulls and independence checks.
    """

    x: int
    r: Coefficient
    tau_halves: int = 0

    def __post_init__(self):
        if not isinstance(self.r, Coefficient):
            object.__setattr__(self, "r", Coefficient(self.r))
        if self.r.is_zero:
            raise ValueError("LogPoint needs r > 0")
        object.__setattr__(self, "x", int(self.x))
        object.__setattr__(self, "tau_halves", int(self.tau_halves))

    def _sort_key(self):
        return (self.x, self.tau_halves, self.r.pow2, self.r.mantissa)


class PointSet:
    """Deduplicated, immutable set of LogPoints with deterministic iteration."""

    __slots__ = ("points", "_ordered")

    def __init__(self, points=()):
        pts = frozenset(points)
        for p in pts:
            if not isinstance(p, LogPoint):
                raise TypeError(f"not a LogPoint: {p!r}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_ordered", tuple(sorted(pts, key=LogPoint._sort_key)))

    def __setattr__(self, name, value):
        raise AttributeError("PointSet is immutable")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self._ordered)

    def __contains__(self, p):
        return p in self.points

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.points | other.points)

    def __repr__(self):
        return f"PointSet({list(self._ordered)!r})"


def _as_points(obj) -> tuple[LogPoint, ...]:
    if isinstance(obj, PointSet):
        return obj._ordered
    return PointSet(obj)._ordered


def _tau_coefficient(tau) -> Coefficient:
    if isinstance(tau, Coefficient):
        value = tau
    else:
        value = Coefficient(Fraction(tau))
    if value.compare(ONE) <= 0:
        raise ValueError("tau must be a rational > 1")
    return value


def orientation(p1: LogPoint, p2: LogPoint, p3: LogPoint, tau) -> int:
    """Sign of the cross product (p2-p1) x (p3-p1) in the lifted plane.

    Twice the signed area equals the log of
        r3^(2a) * r2^(-2b) * r1^(2(b-a)) * tau^(a(h3-h1) - b(h2-h1))
    with a = x2-x1 and b = x3-x1, so the sign is an exact comparison of that
    rational against 1.  +1 is a left (counterclockwise) turn.
    """
    tau_c = _tau_coefficient(tau)
    a = p2.x - p1.x
    b = p3.x - p1.x
    t = a * (p3.tau_halves - p1.tau_halves) - b * (p2.tau_halves - p1.tau_halves)
    value = p3.r ** (2 * a) * p2.r ** (-2 * b) * p1.r ** (2 * (b - a)) * tau_c**t
    return value.compare(ONE)


def _y_compare(p: LogPoint, q: LogPoint, tau_c: Coefficient) -> int:
    """Compare lifted y-coordinates: r_p^2 tau^hp vs r_q^2 tau^hq."""
    return (p.r**2 * tau_c**p.tau_halves).compare(q.r**2 * tau_c**q.tau_halves)


def _lex_compare(p: LogPoint, q: LogPoint, tau_c: Coefficient) -> int:
    if p.x != q.x:
        return -1 if p.x < q.x else 1
    return _y_compare(p, q, tau_c)


def minkowski_sum(a, b) -> PointSet:
    """Pointwise sums: x-coordinates add, r's multiply, tau offsets add."""
    return PointSet(
        LogPoint(p.x + q.x, p.r * q.r, p.tau_halves + q.tau_halves)
        for p in _as_points(a)
        for q in _as_points(b)
    )


def convex_hull_vertices(a, tau) -> list[LogPoint]:
    """Strict convex-hull vertices in counterclockwise order.

    Monotone chain with the exact orientation predicate; points lying on the
    interior of hull edges are dropped.  Starts at the lexicographic minimum.
    """
    tau_c = _tau_coefficient(tau)
    pts = _as_points(a)
    if not pts:
        raise ShapeError("hull of an empty point set")
    pts = sorted(pts, key=cmp_to_key(lambda p, q: _lex_compare(p, q, tau_c)))
    if len(pts) == 1:
        return [pts[0]]

    def build(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], p, tau_c) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(reversed(pts))
    return lower[:-1] + upper[:-1]


def upper_envelope(a, tau) -> list[LogPoint]:
    """Hull vertices visible from y = +infinity, left to right."""
    tau_c = _tau_coefficient(tau)
    pts = _as_points(a)
    if not pts:
        raise ShapeError("envelope of an empty point set")
    top: dict[int, LogPoint] = {}
    for p in pts:
        best = top.get(p.x)
        if best is None or _y_compare(p, best, tau_c) > 0:
            top[p.x] = p
    env: list[LogPoint] = []
    for x in sorted(top):
        p = top[x]
        while len(env) >= 2 and orientation(env[-2], env[-1], p, tau_c) >= 0:
            env.pop()
        env.append(p)
    return env


def is_convexly_independent(c, tau) -> bool:
    """True iff every point is a strict hull vertex; size <= 2 is true by
    convention (a segment or a point has no interior to speak of)."""
    pts = _as_points(c)
    if len(pts) <= 2:
        return True
    return len(convex_hull_vertices(pts, tau)) == len(pts)


def max_convex_chain(a, tau) -> tuple[int, PointSet]:
    """Largest convexly independent subset, with a witness.

    Dynamic program over ordered pairs: for each pivot taken as the
    lexicographically smallest vertex of the subset, candidates are sorted by
    angle and T[a][b] is the longest strictly convex chain ending with edge
    qa -> qb.  Exact orientation guards at every turn plus the closing guard
    make any reported polygon strictly convex; cost grows like n^4, so inputs
    are capped.
    """
    tau_c = _tau_coefficient(tau)
    pts = _as_points(a)
    n = len(pts)
    if n > LIMITS.max_chain_points:
        raise CapExceeded(f"{n} points exceeds max_chain_points")
    if n <= 2:
        return n, PointSet(pts)

    lex = cmp_to_key(lambda p, q: _lex_compare(p, q, tau_c))
    ordered = sorted(pts, key=lex)
    best_size = 2
    best_witness = [ordered[0], ordered[-1]]

    for pi, p0 in enumerate(ordered):
        cand = [q for q in ordered[pi + 1 :] if _lex_compare(q, p0, tau_c) > 0]
        m = len(cand)
        if m + 1 <= best_size:
            continue

        def angle_cmp(u, v):
            s = orientation(p0, u, v, tau_c)
            if s:
                return -s
            du, dv = abs(u.x - p0.x), abs(v.x - p0.x)
            if du != dv:
                return -1 if du < dv else 1
            return _y_compare(u, v, tau_c)

        cand.sort(key=cmp_to_key(angle_cmp))
        table = [[0] * m for _ in range(m)]
        parent: list[list[int | None]] = [[None] * m for _ in range(m)]
        for ia in range(m):
            for ib in range(ia + 1, m):
                if orientation(p0, cand[ia], cand[ib], tau_c) > 0:
                    table[ia][ib] = 3
                for ih in range(ia):
                    if (
                        table[ih][ia] >= 3
                        and table[ih][ia] + 1 > table[ia][ib]
                        and orientation(cand[ih], cand[ia], cand[ib], tau_c) > 0
                    ):
                        table[ia][ib] = table[ih][ia] + 1
                        parent[ia][ib] = ih
        for ia in range(m):
            for ib in range(ia + 1, m):
                if table[ia][ib] > best_size and orientation(
                    cand[ia], cand[ib], p0, tau_c
                ) > 0:
                    best_size = table[ia][ib]
                    chain = [cand[ib], cand[ia]]
                    ah, bh = ia, ib
                    while parent[ah][bh] is not None:
                        ah, bh = parent[ah][bh], ah
                        chain.append(cand[ah])
                    chain.append(p0)
                    best_witness = chain
    return best_size, PointSet(best_witness)


# ---------------------------------------------------------------------------
# CSV interchange: one `x,mantissa,pow2,tau_halves` line per point
# ---------------------------------------------------------------------------


def parse_pointset(text: str) -> PointSet:
    points = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 4:
            raise FormatError(f"line {lineno}: expected x,mantissa,pow2,tau_halves")
        try:
            x = int(parts[0])
            mantissa = Fraction(parts[1])
            pow2 = int(parts[2])
            halves = int(parts[3])
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
        if mantissa <= 0:
            raise FormatError(f"line {lineno}: mantissa must be positive")
        points.append(LogPoint(x, Coefficient(mantissa, pow2), halves))
    return PointSet(points)


def format_pointset(a) -> str:
    lines = [
        f"{p.x},{p.r.mantissa},{p.r.pow2},{p.tau_halves}" for p in _as_points(a)
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def point_as_dict(p: LogPoint) -> dict:
    return {
        "x": p.x,
        "mantissa": str(p.r.mantissa),
        "pow2": p.r.pow2,
        "tau_halves": p.tau_halves,
        "r": format_coefficient(p.r),
    }
