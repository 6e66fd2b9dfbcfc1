"""Quadratic canonical form, its gap values, and transform verification."""

import time

import numpy as np
import pytest

from deltasign.errors import CertificateError, DegreeError
from deltasign.f2poly import BoolPoly, delta_bruteforce, parse_anf, random_poly
from deltasign.quad_sign import (
    QuadCanonical,
    canonicalize_quadratic,
    delta_quadratic,
    matrices_to_poly,
    poly_to_matrices,
    substitute_affine,
    verify_transform,
)


def poly_mul(f: BoolPoly, g: BoolPoly) -> BoolPoly:
    acc = set()
    for a in f.monomials:
        for b in g.monomials:
            m = tuple(sorted(set(a) | set(b)))
            acc.symmetric_difference_update({m})
    return BoolPoly(f.n_vars, frozenset(acc))


def compose_symbolically(poly: BoolPoly, canon: QuadCanonical) -> BoolPoly:
    # substitute x_i = sum_k A[i,k] y_k + b_i by brute polynomial algebra
    n = poly.n_vars
    a = canon.transform_matrix()
    images = []
    for i in range(n):
        mons = [(int(k),) for k in np.nonzero(a[i])[0]]
        if (canon.shift >> i) & 1:
            mons.append(())
        images.append(BoolPoly.make(n, mons))
    out = BoolPoly.zero(n)
    for m in poly.monomials:
        term = BoolPoly.one(n)
        for i in m:
            term = poly_mul(term, images[i])
        out = out + term
    return out


def random_quadratic(rng, n):
    return random_poly(rng, n, 2, n_monomials=int(rng.integers(0, 3 * n + 2)))


# hand-checked gaps:
#   x1*x2: one pair, h=1, n=2 -> +2
#   x1*x2 + 1: sign flip -> -2
#   x1*x2 + x3: pair plus tail -> balanced
#   x1*x2 + x1 + x2: shifted pair, (x1+1)(x2+1)+1 -> -2
#   x1*x2 + x3*x4: two pairs, n=4, h=2 -> +4
#   x1 + x2 + x3: tail only -> 0
#   1 on n=2: -4;  0 on n=2: +4
HAND = [
    ("nvars=2\nx1*x2\n", 2),
    ("nvars=2\nx1*x2 + 1\n", -2),
    ("nvars=3\nx1*x2 + x3\n", 0),
    ("nvars=2\nx1*x2 + x1 + x2\n", -2),
    ("nvars=4\nx1*x2 + x3*x4\n", 4),
    ("nvars=3\nx1 + x2 + x3\n", 0),
    ("nvars=2\n1\n", -4),
    ("nvars=2\n0\n", 4),
]


@pytest.mark.parametrize("text,expected", HAND)
def test_hand_values(text, expected):
    poly = parse_anf(text)
    assert delta_quadratic(poly) == expected
    assert delta_bruteforce(poly) == expected


def test_degree_guard():
    with pytest.raises(DegreeError):
        delta_quadratic(parse_anf("nvars=3\nx1*x2*x3\n"))


def test_exhaustive_small():
    # every quadratic on 3 variables: 7 possible monomials
    mons = [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2)]
    for mask in range(1 << len(mons)):
        poly = BoolPoly.make(3, [m for i, m in enumerate(mons) if (mask >> i) & 1])
        canon = canonicalize_quadratic(poly)
        assert canon.delta == delta_bruteforce(poly)
        verify_transform(poly, canon)


def test_random_matches_bruteforce():
    rng = np.random.default_rng(21)
    for _ in range(300):
        n = int(rng.integers(1, 15))
        poly = random_quadratic(rng, n)
        d = delta_quadratic(poly)
        assert d == delta_bruteforce(poly)
        # gap magnitude restricted to 0 or a power of two at least 2^(n/2)
        if d != 0:
            mag = abs(d)
            assert mag & (mag - 1) == 0
            assert mag >= 1 << (n - n // 2 - (n % 2))


def test_canonical_shape():
    rng = np.random.default_rng(22)
    for _ in range(200):
        n = int(rng.integers(1, 12))
        poly = random_quadratic(rng, n)
        canon = canonicalize_quadratic(poly)
        assert 2 * canon.n_pairs + int(canon.has_tail) <= n
        cp = canon.canonical_poly()
        assert delta_bruteforce(cp) == canon.delta


def test_transform_verifies():
    rng = np.random.default_rng(23)
    for _ in range(200):
        n = int(rng.integers(1, 12))
        poly = random_quadratic(rng, n)
        verify_transform(poly, canonicalize_quadratic(poly))


def test_transform_symbolic_crosscheck():
    rng = np.random.default_rng(24)
    for _ in range(60):
        n = int(rng.integers(1, 8))
        poly = random_quadratic(rng, n)
        canon = canonicalize_quadratic(poly)
        assert compose_symbolically(poly, canon) == canon.canonical_poly()


def test_tampered_certificate_rejected():
    poly = parse_anf("nvars=3\nx1*x2 + x3\n")
    canon = canonicalize_quadratic(poly)
    bad = QuadCanonical(canon.n_vars, canon.n_pairs, canon.has_tail,
                        canon.constant ^ 1, canon.transform_cols, canon.shift)
    with pytest.raises(CertificateError):
        verify_transform(poly, bad)
    singular = QuadCanonical(canon.n_vars, canon.n_pairs, canon.has_tail,
                             canon.constant,
                             (canon.transform_cols[0],) * 3, canon.shift)
    with pytest.raises(CertificateError):
        verify_transform(poly, singular)


def test_substitute_affine_identity():
    poly = parse_anf("nvars=3\nx1*x2 + x2*x3 + x1 + 1\n")
    u, lin, c = poly_to_matrices(poly)
    eye = np.eye(3, dtype=np.uint8)
    zero = np.zeros(3, dtype=np.uint8)
    assert matrices_to_poly(*substitute_affine(u, lin, c, eye, zero)) == poly


def test_large_instance_fast():
    rng = np.random.default_rng(25)
    n = 256
    mons = []
    for _ in range(n * n // 4):
        i, j = rng.choice(n, size=2, replace=False)
        mons.append((int(min(i, j)), int(max(i, j))))
    mons += [(int(i),) for i in rng.choice(n, size=n // 2, replace=False)]
    poly = BoolPoly.make(n, mons)
    t0 = time.perf_counter()
    canon = canonicalize_quadratic(poly)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0, f"canonicalization took {elapsed:.2f}s"
    verify_transform(poly, canon)
    d = canon.delta
    assert d == 0 or abs(d) == 1 << (n - canon.n_pairs)
