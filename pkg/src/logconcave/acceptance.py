"""The ten-point acceptance gate.

Every criterion is a fixed, seeded workload with an explicit runtime budget;
a criterion passes only if all its checks hold AND it finishes within budget.
The pytest gate (tests/test_acceptance.py) and the CLI `selftest` subcommand
both run exactly these functions, so the gate is identical everywhere.

Seeds are frozen constants; per-trial generators derive independent streams
via seed XOR golden-ratio multiples, the same scheme the search driver uses.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from . import sps
from .errors import FatalInconsistency
from .families import check_g, gen_f, verify_substitution_identity
from .geometry import (
    LogPoint,
    PointSet,
    convex_hull_vertices,
    is_convexly_independent,
    max_convex_chain,
)
from .oracle import (
    ExperimentConfig,
    brute_max_convex_subset,
    brute_max_convolution,
    brute_minkowski,
    random_kurtz_polynomial,
    random_lifting_expression,
    random_sps_expression,
    search_extremal_kurtz,
)
from .polynomials import (
    Coefficient,
    Polynomial,
    check_newton,
    check_strong,
    check_tau_logconcave,
    sturm_distinct_real_roots,
)

_GOLD = 0x9E3779B9


def _stream(seed: int, trial: int) -> random.Random:
    return random.Random(seed ^ (_GOLD * (trial + 1)))


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.number:2d} {self.name}: {self.detail}"
            f" ({self.seconds:.2f}s / budget {self.budget:.0f}s)"
        )


def _result(number, name, budget, start, problems, detail) -> CriterionResult:
    seconds = time.perf_counter() - start
    if seconds > budget:
        problems = problems + [f"over budget ({seconds:.2f}s > {budget:.0f}s)"]
    passed = not problems
    if problems:
        detail = f"{detail}; " + "; ".join(problems[:3])
    return CriterionResult(number, name, passed, detail, seconds, budget)


def criterion_1() -> CriterionResult:
    """10^4 seeded expressions: strong expansions respect d <= k*m*t and the
    verifier never reports an internal inconsistency."""
    start = time.perf_counter()
    budget, trials = 60.0, 10_000
    problems: list[str] = []
    applicable = 0
    for trial in range(trials):
        e = random_sps_expression(_stream(101, trial))
        try:
            v = sps.verify_theorem2(e)
        except FatalInconsistency as exc:
            problems.append(f"trial {trial}: fatal: {exc}")
            continue
        if v.applicable:
            applicable += 1
            if not v.bound_holds:
                problems.append(f"trial {trial}: bound violated")
    if applicable == 0:
        problems.append("no applicable instances in the stream")
    detail = f"{trials} instances, {applicable} applicable, 0 fatal"
    return _result(1, "degree bound on strong expansions", budget, start, problems, detail)


def criterion_2() -> CriterionResult:
    """Witness pipeline: table cross-check on >= 200 instances; on every
    hypothesis-passing instance the sandwich and the size contract hold."""
    start = time.perf_counter()
    budget, trials = 30.0, 400
    problems: list[str] = []
    crosschecked = 0
    witnessed = 0
    for trial in range(trials):
        e = random_sps_expression(_stream(202, trial))
        tables = sps.max_product_table(e)
        if tables != brute_max_convolution(e):
            problems.append(f"trial {trial}: table mismatch")
            continue
        crosschecked += 1
        p = sps.params(e)
        if p.d < 1:
            continue
        a = sps.expand(e)
        hyp = Fraction(p.k) ** 2 * Fraction(p.d) ** (2 * p.m)
        if not check_tau_logconcave(a, hyp).holds:
            continue
        try:
            w = sps.sparse_factor_witness(e)
        except FatalInconsistency as exc:
            problems.append(f"trial {trial}: fatal: {exc}")
            continue
        if w.factor_terms * p.k * p.m < p.d:
            problems.append(f"trial {trial}: witness too sparse")
        # the sandwich, re-checked here against the brute table directly
        slack = Coefficient(Fraction(p.k) * Fraction(p.d) ** p.m)
        best: dict[int, Coefficient] = {}
        for table in brute_max_convolution(e):
            for exp, v in table.items():
                if exp not in best or v.compare(best[exp]) > 0:
                    best[exp] = v
        for l in range(1, p.d + 1):
            if best[l].compare(a.coeffs[l]) > 0 or a.coeffs[l].compare(
                slack * best[l]
            ) > 0:
                problems.append(f"trial {trial}: sandwich fails at {l}")
                break
        witnessed += 1
    if crosschecked < 200:
        problems.append(f"only {crosschecked} cross-checks")
    if witnessed < 10:
        problems.append(f"only {witnessed} hypothesis-passing instances")
    detail = f"{crosschecked} table cross-checks, {witnessed} witnessed"
    return _result(2, "dense-factor witness and sandwich", budget, start, problems, detail)


def criterion_3() -> CriterionResult:
    """100 generated 4-log-concave polynomials: Sturm counts exactly d
    distinct real roots every time."""
    start = time.perf_counter()
    budget, count = 30.0, 100
    problems: list[str] = []
    for i in range(count):
        d = 2 + i % 11  # degrees 2..12
        p = random_kurtz_polynomial(_stream(303, i), d, 4)
        roots = sturm_distinct_real_roots(p)
        if roots != d:
            problems.append(f"poly {i}: {roots} roots, wanted {d}")
    detail = f"{count} polynomials, degrees 2..12, all full-root"
    return _result(3, "real-rootedness by Sturm count", budget, start, problems, detail)


def _distinct_positive_roots(rng: random.Random, d: int) -> list[Fraction]:
    roots: set[Fraction] = set()
    while len(roots) < d:
        roots.add(Fraction(rng.randint(1, 60), rng.randint(1, 60)))
    return sorted(roots)


def criterion_4() -> CriterionResult:
    """Products of distinct positive linear factors pass strict Newton;
    repeated-root powers give exact equality at every interior index."""
    start = time.perf_counter()
    budget, count = 10.0, 100
    problems: list[str] = []
    one = Coefficient(1)
    for i in range(count):
        rng = _stream(404, i)
        d = rng.randint(2, 10)
        p = reduce(
            lambda acc, r: acc * Polynomial([Coefficient(r), one]),
            _distinct_positive_roots(rng, d),
            Polynomial([one]),
        )
        rep = check_newton(p)
        if not rep.holds_strict:
            problems.append(f"poly {i}: strict Newton fails at {rep.failures}")
    for c, d in ((Fraction(1), 4), (Fraction(3, 7), 5), (Fraction(2), 9)):
        p = reduce(
            lambda acc, _: acc * Polynomial([Coefficient(c), one]),
            range(d),
            Polynomial([one]),
        )
        rep = check_newton(p)
        if not rep.holds_weak or rep.holds_strict:
            problems.append(f"(X+{c})^{d}: expected weak-only Newton")
        a = p.coeffs
        for i in range(1, d):
            lhs = Coefficient(i * (d - i)) * a[i] * a[i]
            rhs = Coefficient((d - i + 1) * (i + 1)) * a[i - 1] * a[i + 1]
            if lhs.compare(rhs) != 0:
                problems.append(f"(X+{c})^{d}: no equality at index {i}")
    detail = f"{count} distinct-root products strict; 3 powers all-equality"
    return _result(4, "Newton inequalities", budget, start, problems, detail)


def _random_point(rng: random.Random) -> LogPoint:
    return LogPoint(
        rng.randint(-8, 8),
        Coefficient(rng.choice((1, 3, 5, 7)), rng.randint(-6, 6)),
        rng.randint(-3, 3),
    )


def criterion_5() -> CriterionResult:
    """Hull of a brute-force pointwise sum never has more vertices than the
    summand sets have points in total."""
    start = time.perf_counter()
    budget, count = 30.0, 100
    problems: list[str] = []
    for i in range(count):
        rng = _stream(505, i)
        groups = [
            PointSet(_random_point(rng) for _ in range(rng.randint(1, 6)))
            for _ in range(rng.randint(1, 4))
        ]
        total = sum(len(g) for g in groups)
        hull = convex_hull_vertices(brute_minkowski(groups), 4)
        if len(hull) > total:
            problems.append(f"instance {i}: {len(hull)} vertices > {total}")
    detail = f"{count} instances, hull size <= sum of set sizes"
    return _result(5, "pointwise-sum hull size", budget, start, problems, detail)


def criterion_6() -> CriterionResult:
    """Exponent families: margin check across the (n, s) grid; the strong
    member has degree 2^n - 1 and passes the strong condition."""
    start = time.perf_counter()
    budget = 10.0
    problems: list[str] = []
    for n in range(2, 11):
        for s in (1, 7, n * 2 ** (n + 1)):
            if not check_g(n, s):
                problems.append(f"check_g({n}, {s}) false")
    for n in range(2, 9):
        p = gen_f(n)
        if p.degree != 2**n - 1:
            problems.append(f"gen_f({n}) degree {p.degree}")
        if not check_strong(p).holds:
            problems.append(f"gen_f({n}) fails the strong condition")
    detail = "check_g grid n=2..10; gen_f strong n=2..8"
    return _result(6, "explicit family margins", budget, start, problems, detail)


def criterion_7() -> CriterionResult:
    """The carrier substitution reproduces the strong member exactly."""
    start = time.perf_counter()
    budget = 10.0
    problems: list[str] = []
    for n in (1, 2, 3):
        try:
            v = verify_substitution_identity(n)
        except FatalInconsistency as exc:
            problems.append(f"n={n}: {exc}")
            continue
        if not v.matches or v.coefficients != 2**n:
            problems.append(f"n={n}: unexpected verdict {v}")
    detail = "exact big-integer equality for n = 1, 2, 3"
    return _result(7, "substitution identity", budget, start, problems, detail)


def criterion_8() -> CriterionResult:
    """500 random two-factor instances: the lifted chain is convexly
    independent, sits inside the pairwise-sum-plus-grid cover, the step grid
    splits into unit and stride grids, and step counts respect the bound."""
    start = time.perf_counter()
    budget, count = 60.0, 500
    problems: list[str] = []
    tau = Fraction(4)
    for i in range(count):
        e = random_lifting_expression(_stream(808, i), tau)
        try:
            art = sps.build_lifting(e, tau)
            verdict = sps.verify_lifting(art)
        except FatalInconsistency as exc:
            problems.append(f"instance {i}: fatal: {exc}")
            continue
        if not verdict.holds:
            problems.append(f"instance {i}: verdict {verdict}")
        if verdict.size != sps.expand(e).degree:
            problems.append(f"instance {i}: chain size != degree")
        if any(s < 0 or s > art.max_step for s in art.steps):
            problems.append(f"instance {i}: step out of range")
    detail = f"{count} lifted chains verified"
    return _result(8, "lifted-chain construction", budget, start, problems, detail)


def criterion_9() -> CriterionResult:
    """The convex-chain dynamic program agrees with exhaustive subset
    enumeration on 50 random point sets of up to 12 points."""
    start = time.perf_counter()
    budget, count = 30.0, 50
    problems: list[str] = []
    for i in range(count):
        rng = _stream(909, i)
        pts = PointSet(_random_point(rng) for _ in range(rng.randint(4, 12)))
        dp_size, witness = max_convex_chain(pts, 4)
        brute_size, _ = brute_max_convex_subset(pts, 4)
        if dp_size != brute_size:
            problems.append(f"instance {i}: dp {dp_size} != brute {brute_size}")
        if len(witness) != dp_size or not is_convexly_independent(witness, 4):
            problems.append(f"instance {i}: bad witness")
    detail = f"{count} point sets, dp == brute everywhere"
    return _result(9, "convex-chain oracle equivalence", budget, start, problems, detail)


def criterion_10() -> CriterionResult:
    """Search is report-only: every reported best respects the trivial
    k*t^m bound; nothing else is asserted about the bound curves."""
    start = time.perf_counter()
    budget = 60.0
    problems: list[str] = []
    improvements: list = []
    cfg = ExperimentConfig(seed=1010, trials=400)
    best = search_extremal_kurtz(cfg, on_improvement=improvements.append)
    if best is None:
        problems.append("search found no instance passing the check")
    else:
        for found in improvements + [best]:
            if found.d > found.trivial:
                problems.append(f"trial {found.trial}: d {found.d} > trivial {found.trivial}")
    detail = (
        f"{cfg.trials} trials, {best.hits if best else 0} hits,"
        f" best d={best.d if best else '-'}"
    )
    return _result(10, "report-only search bounds", budget, start, problems, detail)


ALL_CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
)


def run_all(emit=None) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        r = fn()
        results.append(r)
        if emit is not None:
            emit(r.line)
    return results
