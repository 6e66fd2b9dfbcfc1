"""Exact gap of degree <= 2 polynomials in polynomial time.

Any quadratic f over F2 is taken by an invertible affine change of variables
x = A y + b to the canonical shape

    y1*y2 + y3*y4 + ... + y_{2h-1}*y_{2h}  [ + y_{2h+1} ]  [ + 1 ]

with h coupled pairs, an optional single linear tail variable, and an optional
constant. The gap follows at once: 0 when the tail is present, otherwise
(-1)^c * 2^(n-h). The reduction is the alternating-form pairing argument
(couplings B = U + U^T, hyperbolic pair extraction), executed with bit-packed
rows so n in the hundreds stays well under a second.

The change of variables is returned alongside the canonical data so that the
claim f(A y + b) == canonical(y) can be re-verified independently, either by
matrix composition (substitute_affine) or by symbolic expansion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CertificateError, DegreeError
from .f2poly import BoolPoly

_ONE = np.uint64(1)


def _bit(row: np.ndarray, j: int) -> int:
    w, s = divmod(j, 64)
    return int(row[w] >> np.uint64(s)) & 1


def _toggle(row: np.ndarray, j: int) -> None:
    w, s = divmod(j, 64)
    row[w] ^= _ONE << np.uint64(s)


def _row_as_int(row: np.ndarray) -> int:
    return int.from_bytes(row.tobytes(), "little")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Reducer:
    """Mutable working state: couplings B, linear mask, constant, transform.

    Invariant kept through every elementary operation:
        original_f(A y + b) == current quadratic form in y,
    where A is stored column-wise as bigint masks (at[k] = column k).
    """

    def __init__(self, poly: BoolPoly):
        n = poly.n_vars
        self.n = n
        words = max(1, (n + 63) // 64)
        self.B = np.zeros((n, words), dtype=np.uint64)
        self.l = 0
        self.c = 0
        for m in poly.monomials:
            if len(m) == 2:
                i, j = m
                _toggle(self.B[i], j)
                _toggle(self.B[j], i)
            elif len(m) == 1:
                self.l ^= 1 << m[0]
            else:
                self.c ^= 1
        self.at = [1 << k for k in range(n)]
        self.b = 0

    def row_mask(self, i: int) -> int:
        return _row_as_int(self.B[i])

    def _col_xor(self, dst: int, src: int) -> None:
        # column dst ^= column src, vectorized over all rows
        ws, ss = divmod(src, 64)
        wd, sd = divmod(dst, 64)
        col = (self.B[:, ws] >> np.uint64(ss)) & _ONE
        self.B[:, wd] ^= col << np.uint64(sd)

    def subst(self, src: int, dst: int) -> None:
        """x_src := y_src + y_dst; every other variable is unchanged."""
        # square folding: the src-dst coupling contributes a linear dst term
        self.l ^= _bit(self.B[src], dst) << dst
        self.l ^= ((self.l >> src) & 1) << dst
        self.B[dst] ^= self.B[src]
        self._col_xor(dst, src)
        self.at[dst] ^= self.at[src]

    def flip(self, i: int) -> None:
        """x_i := y_i + 1."""
        self.c ^= (self.l >> i) & 1
        self.l ^= self.row_mask(i)
        self.b ^= self.at[i]

    def swap(self, i: int, j: int) -> None:
        if i == j:
            return
        self.B[[i, j]] = self.B[[j, i]]
        wi, si = divmod(i, 64)
        wj, sj = divmod(j, 64)
        ci = (self.B[:, wi] >> np.uint64(si)) & _ONE
        cj = (self.B[:, wj] >> np.uint64(sj)) & _ONE
        d = ci ^ cj
        self.B[:, wi] ^= d << np.uint64(si)
        self.B[:, wj] ^= d << np.uint64(sj)
        li, lj = (self.l >> i) & 1, (self.l >> j) & 1
        if li != lj:
            self.l ^= (1 << i) | (1 << j)
        self.at[i], self.at[j] = self.at[j], self.at[i]


@dataclass(frozen=True)
class QuadCanonical:
    """Canonical form of a quadratic plus the affine map that produced it.

    transform_cols[k] is the bitmask of column k of the invertible matrix A;
    shift is the bitmask of b. The certified claim is
        f(A y + b) == sum of pair products + optional tail + constant.
    Pairs occupy variable slots (0,1), (2,3), ...; the tail, if any, sits
    right after them.
    """

    n_vars: int
    n_pairs: int
    has_tail: bool
    constant: int
    transform_cols: tuple[int, ...]
    shift: int

    def canonical_poly(self) -> BoolPoly:
        mons = [(2 * p, 2 * p + 1) for p in range(self.n_pairs)]
        if self.has_tail:
            mons.append((2 * self.n_pairs,))
        if self.constant:
            mons.append(())
        return BoolPoly.make(self.n_vars, mons)

    def transform_matrix(self) -> np.ndarray:
        n = self.n_vars
        a = np.zeros((n, n), dtype=np.uint8)
        for k, col in enumerate(self.transform_cols):
            for r in _bits(col):
                a[r, k] = 1
        return a

    @property
    def delta(self) -> int:
        if self.has_tail:
            return 0
        mag = 1 << (self.n_vars - self.n_pairs)
        return -mag if self.constant else mag


def canonicalize_quadratic(poly: BoolPoly) -> QuadCanonical:
    """Reduce a degree <= 2 polynomial to canonical pair form."""
    if poly.degree > 2:
        raise DegreeError(f"degree {poly.degree} polynomial, need <= 2")
    n = poly.n_vars
    st = _Reducer(poly)

    pairs: list[tuple[int, int]] = []
    paired = [False] * n
    for i in range(n):
        if paired[i]:
            continue
        row = st.row_mask(i)
        if row == 0:
            continue
        j = (row & -row).bit_length() - 1
        # decouple every other variable from i, then from j
        for k in _bits(row & ~(1 << j)):
            st.subst(j, k)
        for k in _bits(st.row_mask(j) & ~(1 << i)):
            st.subst(i, k)
        # absorb linear terms on the pair: y_i y_j + a y_i + b y_j = shifted pair
        if (st.l >> j) & 1:
            st.flip(i)
        if (st.l >> i) & 1:
            st.flip(j)
        paired[i] = paired[j] = True
        pairs.append((i, j))

    # uncoupled variables: fold all linear occurrences onto a single tail
    free_linear = [k for k in range(n) if not paired[k] and (st.l >> k) & 1]
    tail = None
    if free_linear:
        tail = free_linear[0]
        for k in free_linear[1:]:
            st.subst(tail, k)

    # relabel so pairs sit first, tail right after
    order = [v for pair in pairs for v in pair]
    if tail is not None:
        order.append(tail)
    perm = list(range(n))
    inv = list(range(n))
    for t, v in enumerate(order):
        cv = inv[v]
        if cv != t:
            u = perm[t]
            st.swap(t, cv)
            perm[t], perm[cv] = v, u
            inv[v], inv[u] = t, cv

    return QuadCanonical(
        n_vars=n,
        n_pairs=len(pairs),
        has_tail=tail is not None,
        constant=st.c,
        transform_cols=tuple(st.at),
        shift=st.b,
    )


def delta_quadratic(poly: BoolPoly) -> int:
    """Exact gap of a degree <= 2 polynomial (polynomial time in n)."""
    return canonicalize_quadratic(poly).delta


# ---------------------------------------------------------------------------
# independent verification of the change of variables, in matrix form
# ---------------------------------------------------------------------------

def poly_to_matrices(poly: BoolPoly) -> tuple[np.ndarray, np.ndarray, int]:
    """Quadratic as (strictly upper U, linear vector, constant bit)."""
    if poly.degree > 2:
        raise DegreeError(f"degree {poly.degree} polynomial, need <= 2")
    n = poly.n_vars
    u = np.zeros((n, n), dtype=np.uint8)
    lin = np.zeros(n, dtype=np.uint8)
    c = 0
    for m in poly.monomials:
        if len(m) == 2:
            u[m[0], m[1]] ^= 1
        elif len(m) == 1:
            lin[m[0]] ^= 1
        else:
            c ^= 1
    return u, lin, c


def matrices_to_poly(u: np.ndarray, lin: np.ndarray, c: int) -> BoolPoly:
    n = len(lin)
    mons = [(int(i), int(j)) for i, j in zip(*np.nonzero(u % 2))]
    mons += [(int(i),) for i in np.nonzero(lin % 2)[0]]
    if c % 2:
        mons.append(())
    return BoolPoly.make(n, mons)


def substitute_affine(u: np.ndarray, lin: np.ndarray, c: int,
                      a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    """Matrices of f(A y + b) given matrices of f. All arithmetic mod 2.

    Diagonal entries produced by the composition are squares and fold into
    the linear part.
    """
    a64 = a.astype(np.int64)
    u64 = u.astype(np.int64)
    m = (a64.T @ u64 @ a64) % 2
    u_new = np.triu(m ^ m.T, k=1).astype(np.uint8)
    bv = b.astype(np.int64)
    sym = (u64 ^ u64.T)
    lin_new = (np.diag(m) ^ (a64.T @ ((sym @ bv) % 2)) % 2
               ^ (a64.T @ lin.astype(np.int64)) % 2) % 2
    c_new = (c + int(bv @ u64 @ bv) + int(lin.astype(np.int64) @ bv)) % 2
    return u_new, lin_new.astype(np.uint8), c_new


def _mask_to_vec(mask: int, n: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.uint8)
    for i in _bits(mask):
        v[i] = 1
    return v


def _invertible_f2(cols: tuple[int, ...]) -> bool:
    rows = list(cols)  # rank of A equals rank of A^T
    rank = 0
    for piv in range(len(rows)):
        sel = None
        for r in range(rank, len(rows)):
            if (rows[r] >> piv) & 1:
                sel = r
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        for r in range(len(rows)):
            if r != rank and (rows[r] >> piv) & 1:
                rows[r] ^= rows[rank]
        rank += 1
    return rank == len(cols)


def verify_transform(poly: BoolPoly, canon: QuadCanonical) -> None:
    """Re-check f(A y + b) == canonical(y); raise CertificateError if not."""
    if canon.n_vars != poly.n_vars:
        raise CertificateError("variable count mismatch")
    if not _invertible_f2(canon.transform_cols):
        raise CertificateError("transform matrix is singular")
    a = canon.transform_matrix()
    b = _mask_to_vec(canon.shift, canon.n_vars)
    composed = matrices_to_poly(*substitute_affine(*poly_to_matrices(poly), a, b))
    if composed != canon.canonical_poly():
        raise CertificateError("canonical form does not match the transform")
