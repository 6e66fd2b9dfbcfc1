"""Multilinear polynomials over F2 and the exact gap count delta.

A boolean polynomial is a xor of multilinear monomials. For f on n variables,

    delta(f) = #{x : f(x) = 0} - #{x : f(x) = 1} = sum_x (-1)^(f(x)),

an even integer in [-2^n, 2^n] (for n >= 1). This module holds the polynomial
type, the brute-force delta oracle, the gap algebra (negate / split on a
linear functional / disjoint sum / dummy-variable subspace embedding), and the
ANF text format.

Points of F2^n are integer bitmasks: bit i of the mask is the value of
variable i (variables are 0-indexed internally, printed 1-based as x1..xn).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParseError, PolynomialTooLargeError

DELTA_BRUTEFORCE_CUTOFF = 24

Monomial = tuple[int, ...]


def _graded_lex_key(m: Monomial) -> tuple[int, Monomial]:
    return (len(m), m)


@dataclass(frozen=True)
class BoolPoly:
    """Immutable multilinear polynomial over F2.

    monomials: frozenset of strictly increasing tuples of variable indices,
    each in range(n_vars). The empty tuple is the constant 1. The empty set is
    the zero polynomial.
    """

    n_vars: int
    monomials: frozenset[Monomial]

    def __post_init__(self):
        if self.n_vars < 0:
            raise ValueError("n_vars must be non-negative")
        for m in self.monomials:
            if list(m) != sorted(set(m)):
                raise ValueError(f"monomial {m} not strictly increasing")
            if m and (m[0] < 0 or m[-1] >= self.n_vars):
                raise ValueError(f"monomial {m} out of range for n={self.n_vars}")

    @staticmethod
    def make(n_vars: int, monomials) -> "BoolPoly":
        """Build from any iterable of index iterables, sorting each monomial."""
        return BoolPoly(n_vars, frozenset(tuple(sorted(set(m))) for m in monomials))

    @staticmethod
    def zero(n_vars: int) -> "BoolPoly":
        return BoolPoly(n_vars, frozenset())

    @staticmethod
    def one(n_vars: int) -> "BoolPoly":
        return BoolPoly(n_vars, frozenset({()}))

    def sorted_monomials(self) -> list[Monomial]:
        """Monomials in graded lexicographic order (the canonical text order)."""
        return sorted(self.monomials, key=_graded_lex_key)

    @property
    def degree(self) -> int:
        """Max monomial size; 0 for the zero polynomial (see is_zero)."""
        return max((len(m) for m in self.monomials), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    def evaluate(self, point: int) -> int:
        """Value at a point of F2^n given as an integer bitmask."""
        acc = 0
        for m in self.monomials:
            acc ^= all((point >> i) & 1 for i in m)
        return acc

    def __add__(self, other: "BoolPoly") -> "BoolPoly":
        if other.n_vars != self.n_vars:
            raise ValueError("variable counts differ")
        return BoolPoly(self.n_vars, self.monomials ^ other.monomials)

    def __str__(self) -> str:
        return format_anf(self)


@dataclass(frozen=True)
class LinearFunctional:
    """Affine-linear form mask.x + constant on F2^n with mask != 0."""

    n_vars: int
    mask: int
    constant: int = 0

    def __post_init__(self):
        if self.mask == 0:
            raise ValueError("linear functional must have a non-zero coefficient")
        if self.mask >> self.n_vars:
            raise ValueError("coefficient mask out of range")
        if self.constant not in (0, 1):
            raise ValueError("constant must be a bit")

    def evaluate(self, point: int) -> int:
        return ((self.mask & point).bit_count() + self.constant) & 1

    def pivot(self) -> int:
        """Highest-index variable with a set coefficient."""
        return self.mask.bit_length() - 1


def _xor_into(acc: set, m: Monomial) -> None:
    if m in acc:
        acc.remove(m)
    else:
        acc.add(m)


def evaluate_many(poly: BoolPoly, points: np.ndarray) -> np.ndarray:
    """Vectorized evaluate over an int64 array of point masks (values 0/1)."""
    acc = np.zeros(points.shape, dtype=np.int64)
    for m in poly.monomials:
        term = np.ones(points.shape, dtype=np.int64)
        for i in m:
            term &= (points >> i) & 1
        acc ^= term
    return acc


def delta_bruteforce(poly: BoolPoly, cutoff: int = DELTA_BRUTEFORCE_CUTOFF) -> int:
    """Exact delta by full enumeration; refuses n_vars > cutoff.

    Enumeration is chunked; the result is a plain python int and does not
    depend on the chunking (xor-counting is order-independent), so any
    parallel split over chunks would return bit-identical values.
    """
    n = poly.n_vars
    if n > cutoff:
        raise PolynomialTooLargeError(f"n={n} above brute-force cutoff {cutoff}")
    size = 1 << n
    chunk = min(size, 1 << 20)
    ones = 0
    for start in range(0, size, chunk):
        pts = np.arange(start, min(start + chunk, size), dtype=np.int64)
        ones += int(evaluate_many(poly, pts).sum())
    return size - 2 * ones


def negate(poly: BoolPoly) -> BoolPoly:
    """f + 1; flips the sign of delta."""
    return poly + BoolPoly.one(poly.n_vars)


def restrict(poly: BoolPoly, functional: LinearFunctional, value: int) -> BoolPoly:
    """Restriction of f to the affine hyperplane functional(x) = value.

    The highest-index variable with a set coefficient is eliminated by solving
    the constraint for it; remaining variables are reindexed downward. The gap
    identity is delta(f) = delta(restrict(f, l, 0)) + delta(restrict(f, l, 1)).
    """
    if functional.n_vars != poly.n_vars:
        raise ValueError("variable counts differ")
    if value not in (0, 1):
        raise ValueError("value must be a bit")
    p = functional.pivot()
    # x_p = value + constant + sum of the other set-coefficient variables
    rest = [i for i in range(poly.n_vars) if (functional.mask >> i) & 1 and i != p]
    sub_const = (value + functional.constant) & 1
    acc: set[Monomial] = set()
    for m in poly.monomials:
        if p not in m:
            _xor_into(acc, m)
            continue
        base = tuple(i for i in m if i != p)
        for r in rest:
            _xor_into(acc, tuple(sorted(set(base) | {r})))
        if sub_const:
            _xor_into(acc, base)
    # index shift below the pivot is injective on monomials, a plain map is fine
    shifted = {tuple(i if i < p else i - 1 for i in m) for m in acc}
    return BoolPoly(poly.n_vars - 1, frozenset(shifted))


def disjoint_sum(g: BoolPoly, h: BoolPoly) -> BoolPoly:
    """g(x) + h(y) on disjoint variable blocks; delta multiplies."""
    shifted = {tuple(i + g.n_vars for i in m) for m in h.monomials}
    return BoolPoly(g.n_vars + h.n_vars, g.monomials ^ frozenset(shifted))


def subspace_embed(poly: BoolPoly, constraints: list[LinearFunctional]) -> BoolPoly:
    """f(x) + sum_j v_j * l_j(x) with one fresh dummy variable per constraint.

    delta of the result equals 2^d * sum over the constrained subspace
    {x : l_j(x) = 0 for all j} of (-1)^(f(x)), d = len(constraints).
    """
    n = poly.n_vars
    acc = set(poly.monomials)
    for j, l in enumerate(constraints):
        if l.n_vars != n:
            raise ValueError("constraint variable count differs")
        v = n + j
        for i in range(n):
            if (l.mask >> i) & 1:
                _xor_into(acc, (i, v))
        if l.constant:
            _xor_into(acc, (v,))
    return BoolPoly(n + len(constraints), frozenset(acc))


def delta_on_subspace(poly: BoolPoly, constraints: list[LinearFunctional],
                      cutoff: int = DELTA_BRUTEFORCE_CUTOFF) -> int:
    """Brute-force sum of (-1)^f over {x : all constraints vanish}."""
    n = poly.n_vars
    if n > cutoff:
        raise PolynomialTooLargeError(f"n={n} above brute-force cutoff {cutoff}")
    total = 0
    for x in range(1 << n):
        if all(l.evaluate(x) == 0 for l in constraints):
            total += 1 - 2 * poly.evaluate(x)
    return total


# ---------------------------------------------------------------------------
# ANF text format: header line "nvars=<n>", then one polynomial expression,
# monomials joined by "+", variables per monomial joined by "*", e.g.
#     nvars=3
#     x1*x2*x3 + x2 + 1
# "0" is the zero polynomial. "#" starts a comment; blank lines are ignored.
# ---------------------------------------------------------------------------

def format_anf(poly: BoolPoly) -> str:
    """Canonical one-line body (no header) in graded lex order."""
    if poly.is_zero:
        return "0"
    parts = []
    for m in poly.sorted_monomials():
        parts.append("1" if not m else "*".join(f"x{i + 1}" for i in m))
    return " + ".join(parts)


def format_anf_file(poly: BoolPoly) -> str:
    return f"nvars={poly.n_vars}\n{format_anf(poly)}\n"


def _parse_var(tok: str, n: int) -> int:
    if not tok.startswith("x"):
        raise ParseError(f"bad variable token {tok!r}")
    try:
        idx = int(tok[1:])
    except ValueError as e:
        raise ParseError(f"bad variable token {tok!r}") from e
    if not 1 <= idx <= n:
        raise ParseError(f"variable {tok} out of range 1..{n}")
    return idx - 1


def parse_anf(text: str) -> BoolPoly:
    """Parse the ANF file format (header + expression)."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty polynomial text")
    head = lines[0].replace(" ", "")
    if not head.startswith("nvars="):
        raise ParseError("missing nvars= header")
    try:
        n = int(head[len("nvars="):])
    except ValueError as e:
        raise ParseError("bad nvars= header") from e
    if n < 0:
        raise ParseError("nvars must be non-negative")
    body = " ".join(lines[1:]).strip()
    if not body:
        raise ParseError("missing polynomial expression")
    acc: set[Monomial] = set()
    for term in body.split("+"):
        term = term.strip()
        if not term:
            raise ParseError("empty term in polynomial expression")
        if term == "0":
            continue
        if term == "1":
            _xor_into(acc, ())
            continue
        idxs = [_parse_var(tok.strip(), n) for tok in term.split("*")]
        if len(set(idxs)) != len(idxs):
            idxs = sorted(set(idxs))  # x*x = x
        _xor_into(acc, tuple(sorted(set(idxs))))
    return BoolPoly(n, frozenset(acc))


def random_poly(rng: np.random.Generator, n_vars: int, max_degree: int,
                n_monomials: int | None = None) -> BoolPoly:
    """Seeded random polynomial: distinct monomials of size <= max_degree."""
    if n_monomials is None:
        n_monomials = int(rng.integers(0, 2 * n_vars + 2))
    top = min(max_degree, n_vars)
    acc: set[Monomial] = set()
    for _ in range(n_monomials):
        d = int(rng.integers(0, top + 1))
        m = tuple(sorted(rng.choice(n_vars, size=d, replace=False))) if d else ()
        _xor_into(acc, m)
    return BoolPoly(n_vars, frozenset(acc))


def random_functional(rng: np.random.Generator, n_vars: int) -> LinearFunctional:
    mask = 0
    while mask == 0:
        mask = int(rng.integers(1, 1 << n_vars))
    return LinearFunctional(n_vars, mask, int(rng.integers(0, 2)))
