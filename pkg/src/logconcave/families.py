"""Explicit log-concave families and their multilinear carrier.

Three constructions connected by one exact identity:

* exponential-gap families ``gen_g(n, s)``: dense polynomials of degree
  2^n - 1 whose coefficients are pure powers of two, 2^(s*i*(2^n-1-i)).
  The exponent sequence is palindromic, zero at both ends, and strictly
  concave with second difference -2s, so every interior coefficient beats
  its neighbours by a factor above 2^s;
* the strong member ``gen_f(n) = gen_g(n, n*2^(n+1))``: the margin is large
  enough that the expansion passes the degree-indexed strong log-concavity
  check while storage stays exponent-sized;
* a multilinear 0/1-coefficient carrier ``gen_h(n)`` in 5n variables whose
  monomials encode the exponents bitwise and which collapses back to
  ``gen_f(n)`` under the substitution X_k <- X^(2^k), Y_j <- 2^(2^j).

Everything here is exact integer arithmetic; no floats, no tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FatalInconsistency, ResourceLimit
from .polynomials import Coefficient, Polynomial, check_strong

# caps keep the big-int exponents desk-scale; all three are documented
# preconditions, not silent approximations
MAX_EXPONENT_FORM_N = 20
MAX_STRONG_FAMILY_N = 12
MAX_CARRIER_N = 8
MAX_IDENTITY_N = 3


def family_exponents(n: int, s: int) -> list[int]:
    """The sequence s*i*(2^n - 1 - i) for i = 0..2^n - 1."""
    if n < 1:
        raise ValueError("need n >= 1")
    if s < 1:
        raise ValueError("need s >= 1")
    if n > MAX_EXPONENT_FORM_N:
        raise ResourceLimit(f"n={n} exceeds the exponent-form cap {MAX_EXPONENT_FORM_N}")
    top = (1 << n) - 1
    return [s * i * (top - i) for i in range(top + 1)]


def check_exponents(exponents, s: int) -> bool:
    """True iff 2*e[i] > s + e[i-1] + e[i+1] at every interior index: the
    coefficients 2^e[i] are strictly log-concave with margin 2^s."""
    return all(
        2 * exponents[i] > s + exponents[i - 1] + exponents[i + 1]
        for i in range(1, len(exponents) - 1)
    )


def gen_g(n: int, s: int) -> Polynomial:
    """Dense polynomial of degree 2^n - 1 with coefficients 2^(s*i*(2^n-1-i)),
    kept in exponent form (mantissa 1, materialized never)."""
    return Polynomial([Coefficient(1, e) for e in family_exponents(n, s)])


def check_g(n: int, s: int) -> bool:
    """Exponent-arithmetic check that gen_g(n, s) beats margin 2^s at every
    interior index.  Holds for every n >= 2, s >= 1: the second difference
    of the exponent sequence is exactly -2s < -s."""
    if n < 2:
        raise ValueError("need n >= 2 so interior indices exist")
    return check_exponents(family_exponents(n, s), s)


def gen_f(n: int) -> Polynomial:
    """The strong member: gen_g at scale s = n*2^(n+1).

    Degree is 2^n - 1 and the strong log-concavity condition is re-verified
    on the constructed polynomial; a failure there can only be a defect in
    this package, hence FatalInconsistency.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n > MAX_STRONG_FAMILY_N:
        raise ResourceLimit(f"n={n} exceeds the strong-family cap {MAX_STRONG_FAMILY_N}")
    s = n << (n + 1)
    exponents = family_exponents(n, s)
    top = (1 << n) - 1
    for i, e in enumerate(exponents):
        # the same exponent spelled two ways; they must agree identically
        if e != 2 * n * (1 << n) * i * (top - i):
            raise FatalInconsistency(f"exponent spellings diverge at index {i}")
    p = Polynomial([Coefficient(1, e) for e in exponents])
    if not check_strong(p).holds:
        raise FatalInconsistency("strong condition failed on the constructed family")
    return p


@dataclass(frozen=True)
class MultilinearH:
    """Multilinear 0/1-coefficient polynomial in 5n variables.

    The variables split into position bits X_0..X_{n-1} and value bits
    Y_0..Y_{4n-1}.  A monomial is a pair of bit tuples (alpha, beta); its
    coefficient is 1 exactly when beta spells out, LSB first, the target
    value 2n*2^n*i*(2^n-1-i) of the position integer i encoded by alpha,
    and that value fits in 4n bits.  At most one beta works per alpha, so
    there are at most 2^n monomials with coefficient 1, each of total
    degree at most 5n.
    """

    n: int

    def target_value(self, i: int) -> int:
        top = (1 << self.n) - 1
        return 2 * self.n * (1 << self.n) * i * (top - i)

    def value_fits(self, i: int) -> bool:
        return self.target_value(i) < 1 << (4 * self.n)

    def coefficient(self, alpha, beta) -> int:
        alpha = tuple(alpha)
        beta = tuple(beta)
        if len(alpha) != self.n or len(beta) != 4 * self.n:
            raise ValueError("alpha needs n bits and beta needs 4n bits")
        if any(bit not in (0, 1) for bit in alpha + beta):
            raise ValueError("bits must be 0 or 1")
        i = sum(bit << k for k, bit in enumerate(alpha))
        if not self.value_fits(i):
            # genuine range guard; provably never taken (the target value is
            # at most n*2^(3n-1) < 2^(4n)), and a unit test pins that
            return 0
        return int(
            sum(bit << j for j, bit in enumerate(beta)) == self.target_value(i)
        )

    def monomials(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """All (alpha, beta) pairs with coefficient 1, ordered by i."""
        out = []
        for i in range(1 << self.n):
            if not self.value_fits(i):
                continue
            value = self.target_value(i)
            alpha = tuple((i >> k) & 1 for k in range(self.n))
            beta = tuple((value >> j) & 1 for j in range(4 * self.n))
            out.append((alpha, beta))
        return out

    def monomials_json(self) -> list[dict[str, str]]:
        """[{"alpha": bits, "beta": bits}, ...] with LSB-first bitstrings."""
        return [
            {"alpha": "".join(map(str, a)), "beta": "".join(map(str, b))}
            for a, b in self.monomials()
        ]


def gen_h(n: int) -> MultilinearH:
    if n < 1:
        raise ValueError("need n >= 1")
    if n > MAX_CARRIER_N:
        raise ResourceLimit(f"n={n} exceeds the carrier cap {MAX_CARRIER_N}")
    return MultilinearH(n)


@dataclass(frozen=True)
class IdentityVerdict:
    n: int
    coefficients: int  # how many univariate coefficients were compared
    matches: bool  # always True on return; a mismatch raises instead


def verify_substitution_identity(n: int) -> IdentityVerdict:
    """Substitute X_k <- X^(2^k), Y_j <- 2^(2^j) into the carrier and compare
    the collected univariate polynomial, with fully materialized integers,
    against gen_f(n) coefficient by coefficient.  Exact; a mismatch can only
    be a defect, hence FatalInconsistency."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n > MAX_IDENTITY_N:
        raise ResourceLimit(
            f"n={n} exceeds the identity cap {MAX_IDENTITY_N}: the substituted"
            " constants grow doubly exponentially"
        )
    collected: dict[int, int] = {}
    for alpha, beta in gen_h(n).monomials():
        exponent = sum(bit << k for k, bit in enumerate(alpha))
        value = 1
        for j, bit in enumerate(beta):
            if bit:
                value *= 2 ** (1 << j)
        collected[exponent] = collected.get(exponent, 0) + value
    reference = gen_f(n)
    if sorted(collected) != list(range(reference.degree + 1)):
        raise FatalInconsistency("substitution does not reach every exponent")
    for exponent, value in collected.items():
        if value != reference.coeffs[exponent].as_fraction():
            raise FatalInconsistency(f"coefficient mismatch at X^{exponent}")
    return IdentityVerdict(n=n, coefficients=reference.degree + 1, matches=True)
