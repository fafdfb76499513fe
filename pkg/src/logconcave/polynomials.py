"""Exact univariate polynomial arithmetic over nonnegative dyadic-rational
coefficients, log-concavity checkers, and Sturm real-root counting.

Every value is a `Coefficient`: an exact rational mantissa times a power of
two, with the power kept as a separate big integer.  Keeping the exponent
symbolic lets the checkers compare numbers like 2^(10^9) by integer
arithmetic on the exponents instead of materializing gigabit integers.
All comparisons are exact; there is no floating point in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import (
    DegreeTooSmall,
    ExponentOverflow,
    FormatError,
    ResourceLimit,
    ZeroPolynomial,
)
from .limits import LIMITS

RationalLike = "int | Fraction | Coefficient | str"


def _odd_part(n: int) -> tuple[int, int]:
    """Split positive n as odd * 2^e; returns (odd, e)."""
    e = (n & -n).bit_length() - 1
    return n >> e, e


class Coefficient:
    """Exact nonnegative value mantissa * 2^pow2.

    Canonical form: zero is (0, 0); otherwise the mantissa is a positive
    rational with odd numerator and odd denominator, so equal values have
    identical representations and equality is structural.
    """

    __slots__ = ("mantissa", "pow2")

    def __init__(self, mantissa: "int | Fraction | Coefficient | str" = 0, pow2: int = 0):
        if isinstance(mantissa, Coefficient):
            m, p = mantissa.mantissa, mantissa.pow2 + pow2
        else:
            m = mantissa if isinstance(mantissa, Fraction) else Fraction(mantissa)
            p = pow2
        if m == 0:
            object.__setattr__(self, "mantissa", Fraction(0))
            object.__setattr__(self, "pow2", 0)
            return
        if m < 0:
            raise ValueError("Coefficient must be nonnegative")
        num, den = m.numerator, m.denominator
        odd_num, en = _odd_part(num)
        odd_den, ed = _odd_part(den)
        object.__setattr__(self, "mantissa", Fraction(odd_num, odd_den))
        object.__setattr__(self, "pow2", p + en - ed)

    def __setattr__(self, name, value):
        raise AttributeError("Coefficient is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.mantissa

    def as_fraction(self) -> Fraction:
        """Materialize the exact value; refuses astronomically large exponents."""
        if self.is_zero:
            return Fraction(0)
        if abs(self.pow2) > LIMITS.max_materialize_bits:
            raise ResourceLimit(
                f"materializing 2^{self.pow2} exceeds max_materialize_bits"
            )
        if self.pow2 >= 0:
            return self.mantissa * (1 << self.pow2)
        return self.mantissa / (1 << -self.pow2)

    def __mul__(self, other: "Coefficient") -> "Coefficient":
        if not isinstance(other, Coefficient):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ZERO
        return Coefficient(self.mantissa * other.mantissa, self.pow2 + other.pow2)

    def __add__(self, other: "Coefficient") -> "Coefficient":
        if not isinstance(other, Coefficient):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo, hi = (self, other) if self.pow2 <= other.pow2 else (other, self)
        shift = hi.pow2 - lo.pow2
        if shift > LIMITS.max_shift_bits:
            raise ResourceLimit(
                f"aligning dyadic exponents needs a 2^{shift} shift"
            )
        return Coefficient(hi.mantissa * (1 << shift) + lo.mantissa, lo.pow2)

    def __pow__(self, exponent: int) -> "Coefficient":
        if self.is_zero:
            if exponent <= 0:
                raise ZeroDivisionError("0 cannot be raised to a nonpositive power")
            return ZERO
        if exponent == 0:
            return ONE
        bits = max(
            self.mantissa.numerator.bit_length(),
            self.mantissa.denominator.bit_length(),
        )
        if bits * abs(exponent) > LIMITS.max_pow_bits:
            raise ExponentOverflow(
                f"{bits}-bit mantissa to power {exponent} exceeds max_pow_bits"
            )
        return Coefficient(self.mantissa**exponent, self.pow2 * exponent)

    def compare(self, other: "Coefficient") -> int:
        """Exact three-way comparison; bit-length screening avoids huge shifts."""
        if self.is_zero:
            return 0 if other.is_zero else -1
        if other.is_zero:
            return 1
        if self.mantissa == other.mantissa and self.pow2 == other.pow2:
            return 0
        # value order of m1*2^p1 vs m2*2^p2 == order of L*2^s vs R with
        # L = n1*d2, R = n2*d1, s = p1-p2; both sides positive integers.
        left = self.mantissa.numerator * other.mantissa.denominator
        right = other.mantissa.numerator * self.mantissa.denominator
        shift = self.pow2 - other.pow2
        gap = left.bit_length() + shift - right.bit_length()
        if gap > 0:
            return 1
        if gap < 0:
            return -1
        # bit lengths tie: one aligned comparison, shift bounded by operand size
        if shift >= 0:
            left <<= shift
        else:
            right <<= -shift
        return (left > right) - (left < right)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.mantissa == other.mantissa and self.pow2 == other.pow2

    def __hash__(self) -> int:
        return hash((self.mantissa, self.pow2))

    def __lt__(self, other: "Coefficient") -> bool:
        return self.compare(other) < 0

    def __le__(self, other: "Coefficient") -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: "Coefficient") -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: "Coefficient") -> bool:
        return self.compare(other) >= 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"Coefficient({format_coefficient(self)!r})"


ZERO = Coefficient(0)
ONE = Coefficient(1)


def format_coefficient(c: Coefficient) -> str:
    """Render in the exact text grammar: INT, INT/INT, 2^INT or INT/INT*2^INT."""
    if c.is_zero:
        return "0"
    m = c.mantissa
    if c.pow2 == 0:
        return str(m.numerator) if m.denominator == 1 else f"{m.numerator}/{m.denominator}"
    if m == 1:
        return f"2^{c.pow2}"
    return f"{m.numerator}/{m.denominator}*2^{c.pow2}"


def parse_coefficient(text: str) -> Coefficient:
    """Parse the text grammar back into a Coefficient (nonnegative)."""
    sign, frac = _parse_signed(text)
    if sign < 0:
        raise FormatError(f"negative coefficient not allowed here: {text!r}")
    return frac


def _parse_signed(text: str) -> tuple[int, Coefficient]:
    """Parse the grammar with an optional leading '-'; returns (sign, magnitude)."""
    s = text.strip()
    if not s:
        raise FormatError("empty coefficient")
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    mant_part, _, pow_part = s.partition("*")
    try:
        if not pow_part and mant_part.startswith("2^"):
            return sign, Coefficient(1, int(mant_part[2:]))
        pow2 = 0
        if pow_part:
            if not pow_part.startswith("2^"):
                raise ValueError(pow_part)
            pow2 = int(pow_part[2:])
        num, _, den = mant_part.partition("/")
        mant = Fraction(int(num), int(den)) if den else Fraction(int(num))
        return sign, Coefficient(mant, pow2)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad coefficient {text!r}") from exc


class Polynomial:
    """Dense polynomial over nonnegative Coefficients; immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        items = [c if isinstance(c, Coefficient) else Coefficient(c) for c in coeffs]
        while len(items) > 1 and items[-1].is_zero:
            items.pop()
        if not items:
            items = [ZERO]
        if len(items) - 1 > LIMITS.max_dense_degree:
            raise ResourceLimit(f"degree {len(items) - 1} exceeds max_dense_degree")
        object.__setattr__(self, "coeffs", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_zero

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        short, long_ = sorted((self.coeffs, other.coeffs), key=len)
        out = list(long_)
        for i, c in enumerate(short):
            out[i] = out[i] + c
        return Polynomial(out)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial([ZERO])
        out = [ZERO] * (self.degree + other.degree + 1)
        for i, ci in enumerate(self.coeffs):
            if ci.is_zero:
                continue
            for j, cj in enumerate(other.coeffs):
                if cj.is_zero:
                    continue
                out[i + j] = out[i + j] + ci * cj
        return Polynomial(out)

    def eval(self, x: Fraction) -> Fraction:
        """Exact evaluation (Horner) at a rational point."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c.as_fraction()
        return acc

    def __repr__(self) -> str:
        return f"Polynomial({[format_coefficient(c) for c in self.coeffs]})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


class SparsePoly:
    """Sparse polynomial: strictly increasing exponents, positive coefficients.

    Exponents are unbounded big integers; only dense materialization is capped.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        acc: dict[int, Coefficient] = {}
        for exponent, coeff in terms:
            c = coeff if isinstance(coeff, Coefficient) else Coefficient(coeff)
            if c.is_zero:
                continue
            e = int(exponent)
            if e < 0:
                raise ValueError("negative exponent")
            acc[e] = acc[e] + c if e in acc else c
        object.__setattr__(
            self, "terms", tuple(sorted(acc.items()))
        )

    def __setattr__(self, name, value):
        raise AttributeError("SparsePoly is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("zero sparse polynomial has no degree")
        return self.terms[-1][0]

    def term_count(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            return NotImplemented
        acc: dict[int, Coefficient] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                prod = c1 * c2
                acc[e] = acc[e] + prod if e in acc else prod
        return SparsePoly(acc.items())

    def to_polynomial(self) -> Polynomial:
        if not self.terms:
            return Polynomial([ZERO])
        d = self.terms[-1][0]
        if d > LIMITS.max_expansion_degree:
            raise ResourceLimit(f"dense form of degree {d} exceeds cap")
        out = [ZERO] * (d + 1)
        for e, c in self.terms:
            out[e] = c
        return Polynomial(out)

    def eval(self, x: Fraction) -> Fraction:
        return sum((c.as_fraction() * x**e for e, c in self.terms), Fraction(0))

    def __repr__(self) -> str:
        return f"SparsePoly({[(e, format_coefficient(c)) for e, c in self.terms]})"


@dataclass(frozen=True)
class NewtonReport:
    holds_weak: bool
    holds_strict: bool
    failures: tuple[int, ...]  # indices violating the weak inequality


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    failures: tuple[int, ...]


def check_newton(p: Polynomial) -> NewtonReport:
    """Check a_i^2 >= ((d-i+1)/(d-i))((i+1)/i) a_{i-1} a_{i+1} at every interior i.

    Cross-multiplied: i(d-i) a_i^2 vs (d-i+1)(i+1) a_{i-1} a_{i+1}; exact.
    """
    d = p.degree
    if d < 2:
        raise DegreeTooSmall(f"Newton check needs degree >= 2, got {d}")
    a = p.coeffs
    weak_failures = []
    strict = True
    for i in range(1, d):
        lhs = Coefficient(i * (d - i)) * a[i] * a[i]
        rhs = Coefficient((d - i + 1) * (i + 1)) * a[i - 1] * a[i + 1]
        cmp = lhs.compare(rhs)
        if cmp < 0:
            weak_failures.append(i)
            strict = False
        elif cmp == 0:
            strict = False
    return NewtonReport(not weak_failures, strict, tuple(weak_failures))


def check_tau_logconcave(p: Polynomial, tau) -> ConditionReport:
    """Check a_i > 0 for 1 <= i <= d and a_i^2 > tau a_{i-1} a_{i+1} strictly.

    The constant term may be zero.  failures collects every violating index
    (positivity failures and inequality failures alike).
    """
    if isinstance(tau, Coefficient):
        tau = tau.as_fraction()
    tau = Fraction(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    d = p.degree
    if d < 1:
        raise DegreeTooSmall(f"log-concavity check needs degree >= 1, got {d}")
    a = p.coeffs
    failures = [i for i in range(1, d + 1) if a[i].is_zero]
    if not failures:
        tau_c = Coefficient(tau)
        for i in range(1, d):
            lhs = a[i] * a[i]
            rhs = tau_c * a[i - 1] * a[i + 1]
            if lhs.compare(rhs) <= 0:
                failures.append(i)
    return ConditionReport(not failures, tuple(sorted(failures)))


def check_kurtz(p: Polynomial) -> ConditionReport:
    """The tau=4 instance of the log-concavity condition."""
    return check_tau_logconcave(p, 4)


def check_strong(p: Polynomial) -> ConditionReport:
    """The tau = d^(2d) instance, with d^(2d) materialized exactly."""
    d = p.degree
    if d < 1:
        raise DegreeTooSmall(f"strong check needs degree >= 1, got {d}")
    if d > LIMITS.max_strong_degree:
        raise ResourceLimit(f"d^(2d) for d={d} exceeds max_strong_degree")
    return check_tau_logconcave(p, Fraction(d) ** (2 * d))


# ---------------------------------------------------------------------------
# Sturm real-root counting (distinct roots; accepts signed coefficients)
# ---------------------------------------------------------------------------


def _int_primitive(coeffs: list[Fraction], keep_sign: bool = True) -> list[int]:
    """Clear denominators and divide by content; preserves sign if asked."""
    denom = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    ints = [int(c * denom) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    if not keep_sign and ints and ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def _trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _derivative(poly: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(poly)][1:]


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b, scaled so it equals rem(a, b) up to a
    positive rational factor (sign-corrected when lead(b) < 0)."""
    lead = b[-1]
    rem = _trim(list(a))
    steps = 0
    while len(rem) >= len(b):
        steps += 1
        shift = len(rem) - len(b)
        top = rem[-1]
        rem = [c * lead for c in rem]
        for i, bc in enumerate(b):
            rem[shift + i] -= top * bc
        _trim(rem)  # the top term cancels exactly, so this always shrinks rem
    if lead < 0 and steps % 2:
        rem = [-c for c in rem]
    return rem


def _poly_gcd(a: list[int], b: list[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_pseudo_rem(a, b))
        if b:
            b = _int_primitive([Fraction(c) for c in b], keep_sign=False)
    return _int_primitive([Fraction(c) for c in a], keep_sign=False)


def _exact_div(a: list[int], b: list[int]) -> list[Fraction]:
    """Exact polynomial division a / b in Q[X]; b must divide a."""
    rem = [Fraction(c) for c in a]
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = Fraction(b[-1])
    for shift in range(len(a) - len(b), -1, -1):
        q = rem[shift + len(b) - 1] / lead
        quot[shift] = q
        for i, bc in enumerate(b):
            rem[shift + i] -= q * bc
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return quot


def _sign_variations(signs: list[int]) -> int:
    signs = [s for s in signs if s]
    return sum(1 for x, y in zip(signs, signs[1:]) if x * y < 0)


def sturm_distinct_real_roots(p) -> int:
    """Number of distinct real roots, by an exact Sturm chain.

    Accepts a Polynomial or a sequence of signed ints/Fractions (constant
    term first).  Multiplicities are collapsed via a squarefree reduction,
    and the chain uses primitive-part pseudo-remainders over the integers.
    """
    if isinstance(p, Polynomial):
        coeffs = [c.as_fraction() for c in p.coeffs]
    else:
        coeffs = [Fraction(c) for c in p]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ZeroPolynomial("Sturm count undefined for the zero polynomial")
    if len(coeffs) == 1:
        return 0
    poly = _int_primitive(coeffs)
    deriv = _derivative(poly)
    g = _poly_gcd(poly, deriv)
    if len(g) > 1:
        poly = _int_primitive(_exact_div(poly, g))
    if len(poly) == 2:
        return 1
    chain = [poly, _derivative(poly)]
    while len(chain[-1]) > 1:
        rem = _pseudo_rem(chain[-2], chain[-1])
        if not _trim(rem):
            break
        rem = [-c for c in rem]
        chain.append(_int_primitive([Fraction(c) for c in rem]))
    at_pos = [(1 if q[-1] > 0 else -1) for q in chain]
    at_neg = [s * (-1) ** (len(q) - 1) for s, q in zip(at_pos, chain)]
    return _sign_variations(at_neg) - _sign_variations(at_pos)


# ---------------------------------------------------------------------------
# Text format: one `<exponent> <coefficient>` term per line, '#' comments
# ---------------------------------------------------------------------------


def parse_terms(text: str, signed: bool = False):
    """Parse the term-per-line format into [(exponent, sign, Coefficient)]."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected '<exponent> <coefficient>'")
        try:
            exponent = int(parts[0])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: bad exponent {parts[0]!r}") from exc
        if exponent < 0:
            raise FormatError(f"line {lineno}: negative exponent")
        sign, coeff = _parse_signed(parts[1])
        if sign < 0 and not signed:
            raise FormatError(f"line {lineno}: negative coefficient not allowed")
        out.append((exponent, sign, coeff))
    return out


def parse_polynomial(text: str) -> Polynomial:
    terms = parse_terms(text, signed=False)
    if not terms:
        return Polynomial([ZERO])
    degree = max(e for e, _, _ in terms)
    if degree > LIMITS.max_dense_degree:
        raise ResourceLimit(f"degree {degree} exceeds max_dense_degree")
    out = [ZERO] * (degree + 1)
    for e, _, c in terms:
        out[e] = out[e] + c
    return Polynomial(out)


def parse_sparse(text: str) -> SparsePoly:
    return SparsePoly((e, c) for e, _, c in parse_terms(text, signed=False))


def parse_signed_coeffs(text: str) -> list[Fraction]:
    """Parse the signed variant (Sturm input) into materialized rationals."""
    terms = parse_terms(text, signed=True)
    if not terms:
        raise ZeroPolynomial("no terms")
    out = [Fraction(0)] * (max(e for e, _, _ in terms) + 1)
    for e, sign, c in terms:
        out[e] += sign * c.as_fraction()
    return out


def format_polynomial(p: Polynomial) -> str:
    lines = [
        f"{e} {format_coefficient(c)}" for e, c in enumerate(p.coeffs) if not c.is_zero
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def format_sparse(s: SparsePoly) -> str:
    lines = [f"{e} {format_coefficient(c)}" for e, c in s.terms]
    return "\n".join(lines) + ("\n" if lines else "")
