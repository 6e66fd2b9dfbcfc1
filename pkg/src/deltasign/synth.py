"""Fixed-angle generator words approximating the polynomial phase unitary.

The generator set is {exp(i*phi*sigma(s)) : weight(s) <= 2} with the single
angle phi = atan(1/2). Words are inverse-free: every letter carries +phi.
Strategies, tried in order by synthesize_Uf:

  * empty word for the zero polynomial;
  * the commuting X-axis torus for degree <= 2 polynomials: the target is
    diagonal in the X product basis with eigenphase pi*f~(X), and each
    Fourier block X_T (|T| <= 2) is realized by repeating the letter X_T
    k times with k*phi close to the wanted angle. A constant eigenphase
    c*pi/2 (c integer) is absorbed by shifting single blocks by pi or by
    the exact identity exp(i(pi/2)(X_a + X_b - X_a X_b)) = i*I; a constant
    that is an odd multiple of pi/4 is provably not absorbable (second
    differences force all block shifts into (pi/2)Z), so the torus strategy
    refuses those targets;
  * a beam search over full-register words (small qubit counts), which is
    also the engine behind the two-qubit net of basic_approx.

All distances returned to callers are re-measured from simulated matrices,
never trusted from search bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParseError, SynthesisBudgetError
from .f2poly import BoolPoly
from .quantum import (
    DenseUnitary,
    GatePlacement,
    PauliString,
    generator_unitary,
    operator_norm_distance,
    unitary_of_gates,
)

PHI = math.atan2(1.0, 2.0)

_AXES = ("X", "Y", "Z")


@dataclass(frozen=True)
class GeneratorWord:
    """Ordered +phi letters on n qubits; letter 1 acts first on the state.

    The matrix of the word is therefore L_N ... L_2 L_1.
    """

    n_qubits: int
    letters: tuple[PauliString, ...]

    def __post_init__(self):
        for s in self.letters:
            if s.n_qubits != self.n_qubits:
                raise ValueError("letter qubit count mismatch")
            if s.weight not in (1, 2):
                raise ValueError("letters must have weight 1 or 2")

    @property
    def length(self) -> int:
        return len(self.letters)

    def to_gates(self) -> list[GatePlacement]:
        gates = []
        for s in self.letters:
            gates.append(GatePlacement(generator_unitary(s, +1), s.support(),
                                       "GEN", +1, s.axes()))
        return gates

    def matrix(self) -> np.ndarray:
        if self.n_qubits > 10:
            raise ValueError("word simulation capped at 10 qubits")
        return unitary_of_gates(self.to_gates(), self.n_qubits)

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        if other.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch")
        return GeneratorWord(self.n_qubits, self.letters + other.letters)


@dataclass(frozen=True)
class SynthesisBudget:
    """Search limits; identical budgets give identical (deterministic) words.

    beam_width bounds the population kept per depth layer of the beam search
    (the breadth-first net is pruned to the most promising candidates, ties
    broken by lexicographic word order).
    """

    per_factor_epsilon: float = 0.2
    net_depth: int = 12
    sk_levels: int = 0
    seed: int = 0
    beam_width: int = 1024

    def __post_init__(self):
        if self.per_factor_epsilon <= 0:
            raise ValueError("per_factor_epsilon must be positive")
        if self.net_depth < 1:
            raise ValueError("net_depth must be at least 1")
        if self.sk_levels < 0 or self.beam_width < 1:
            raise ValueError("bad budget field")


# ---------------------------------------------------------------------------
# letters
# ---------------------------------------------------------------------------

def letter_order(n_qubits: int) -> list[PauliString]:
    """Canonical ordering of all weight <= 2 letters on n qubits."""
    letters = []
    for q in range(1, n_qubits + 1):
        for ax in _AXES:
            letters.append(PauliString.from_axes(n_qubits, {q: ax}))
    for q1 in range(1, n_qubits + 1):
        for q2 in range(q1 + 1, n_qubits + 1):
            for ax1 in _AXES:
                for ax2 in _AXES:
                    letters.append(
                        PauliString.from_axes(n_qubits, {q1: ax1, q2: ax2}))
    return letters


def _embed(gate: DenseUnitary, targets: tuple[int, ...], n: int) -> np.ndarray:
    return unitary_of_gates([GatePlacement(gate, targets, "RAW")], n)


def _letter_matrices(letters: list[PauliString], n: int) -> np.ndarray:
    mats = [_embed(generator_unitary(s, +1), s.support(), n) for s in letters]
    return np.stack(mats)


# ---------------------------------------------------------------------------
# beam search net
# ---------------------------------------------------------------------------

def _phase_aligned_distance(w: np.ndarray, target: np.ndarray) -> float:
    """Operator-norm distance after trace-aligning the global phase.

    This upper-bounds min over phases, so certifying it certifies the min.
    """
    tr = np.trace(target.conj().T @ w)
    phase = 1.0 if abs(tr) < 1e-12 else tr.conjugate() / abs(tr)
    return operator_norm_distance(phase * w, target)


def _fingerprint(mat: np.ndarray, keep_phase: bool = False) -> bytes:
    if keep_phase:
        return np.round(mat, 5).tobytes()
    flat = mat.ravel()
    k = int(np.argmax(np.abs(flat)))
    norm = flat[k] / abs(flat[k])
    return np.round(mat / norm, 5).tobytes()


def _beam_search(target: np.ndarray, letters: list[PauliString],
                 mats: np.ndarray, depth: int, width: int,
                 epsilon: float | None = None,
                 phase_sensitive: bool = False):
    """Deterministic guided net over words.

    Candidates are ranked by trace overlap (monotone proxy for Frobenius
    distance): |tr(T^dag W)| when the global phase is free, Re tr(T^dag W)
    when it is not. Returns (best_letters, best_matrix, best_distance,
    finals) where finals holds up to `width` last-layer candidates as
    (letters_tuple, matrix), best first. The best candidate is tracked by
    the exact operator-norm distance (phase-aligned or not, to match the
    ranking); stops early once epsilon is reached.
    """
    dim = target.shape[0]
    tconj = target.conj().T

    def exact_dist(m: np.ndarray) -> float:
        if phase_sensitive:
            return operator_norm_distance(m, target)
        return _phase_aligned_distance(m, target)

    best_word: tuple[int, ...] = ()
    best_mat = np.eye(dim, dtype=complex)
    best_dist = exact_dist(best_mat)
    if epsilon is not None and best_dist <= epsilon:
        return best_word, best_mat, best_dist, [(best_word, best_mat)]

    beam_words = [()]
    beam_mats = np.eye(dim, dtype=complex)[None, :, :]
    seen = {_fingerprint(best_mat, phase_sensitive)}
    for _ in range(depth):
        cand = np.einsum("lij,bjk->blik", mats, beam_mats)
        cand = cand.reshape(-1, dim, dim)
        traces = np.einsum("ij,cji->c", tconj, cand)
        overlaps = traces.real if phase_sensitive else np.abs(traces)
        order = []
        for c in range(cand.shape[0]):
            b, l = divmod(c, mats.shape[0])
            order.append((-round(float(overlaps[c]), 9),
                          beam_words[b] + (l,), c))
        order.sort()
        new_words, new_idx = [], []
        for _, word, c in order:
            fp = _fingerprint(cand[c], phase_sensitive)
            if fp in seen:
                continue
            seen.add(fp)
            new_words.append(word)
            new_idx.append(c)
            if len(new_words) >= width:
                break
        if not new_words:
            break
        beam_words = new_words
        beam_mats = cand[new_idx]
        d0 = exact_dist(beam_mats[0])
        if d0 < best_dist:
            best_dist = d0
            best_word = beam_words[0]
            best_mat = beam_mats[0]
        if epsilon is not None and best_dist <= epsilon:
            break
    finals = list(zip(beam_words, beam_mats))
    return best_word, best_mat, best_dist, finals


def _as_word(n_qubits: int, letters: list[PauliString],
             idx: tuple[int, ...]) -> GeneratorWord:
    return GeneratorWord(n_qubits, tuple(letters[i] for i in idx))


def basic_approx(target: DenseUnitary, epsilon0: float,
                 budget: SynthesisBudget) -> GeneratorWord:
    """Net search for a two-qubit word within epsilon0 of the target,
    up to a global phase. Deterministic; ties break lexicographically.
    """
    mat = np.asarray(target.entries)
    if mat.shape != (4, 4):
        raise ValueError("basic_approx expects a 4x4 target")
    letters = letter_order(2)
    mats = _letter_matrices(letters, 2)
    word_idx, _, dist, _ = _beam_search(
        mat, letters, mats, budget.net_depth, budget.beam_width, epsilon0)
    word = _as_word(2, letters, word_idx)
    measured = _phase_aligned_distance(word.matrix(), mat)
    if measured > epsilon0:
        raise SynthesisBudgetError(
            f"net exhausted at depth {budget.net_depth}: "
            f"best {measured:.4f} > {epsilon0:.4f}",
            best_word=word, best_distance=measured)
    return word


# ---------------------------------------------------------------------------
# exact small-gate decomposition of the polynomial phase factors
# ---------------------------------------------------------------------------

def _cnot() -> DenseUnitary:
    m = np.eye(4, dtype=complex)
    m[[2, 3]] = m[[3, 2]]
    return DenseUnitary(m)


def _parity_phase_1q(theta: float, scalar: complex = 1.0) -> DenseUnitary:
    return DenseUnitary(scalar * np.diag([np.exp(1j * theta),
                                          np.exp(-1j * theta)]))


def _parity_phase_2q(theta: float) -> DenseUnitary:
    e, f = np.exp(1j * theta), np.exp(-1j * theta)
    return DenseUnitary(np.diag([e, f, f, e]))


def decompose_factor(placement: GatePlacement) -> list[GatePlacement]:
    """Exactly rewrite a polynomial-phase factor into 1- and 2-qubit gates.

    Hadamards, single-qubit phase flips, two-qubit flips, and the global -1
    pass through; 3- and 4-qubit phase flips expand by the parity identity
    prod x_j = 2^-k sum_T (-1)^|T| (-1)^(xor_T x): one parity-phase gate per
    subset T, parities of |T| > 2 wired onto one qubit with basis flips.
    """
    if placement.kind in ("H", "PHASE"):
        return [placement]
    if placement.kind != "CZ":
        raise ValueError(f"cannot decompose gate kind {placement.kind!r}")
    k = len(placement.targets)
    if k <= 2:
        return [placement]
    qs = placement.targets
    theta0 = math.pi / (1 << k)
    out: list[GatePlacement] = []
    first = True
    for mask in range(1, 1 << k):
        sub = tuple(qs[i] for i in range(k) if (mask >> i) & 1)
        theta = theta0 * (-1 if len(sub) % 2 else 1)
        scalar = np.exp(1j * theta0) if first else 1.0
        first = False
        if len(sub) == 1:
            out.append(GatePlacement(_parity_phase_1q(theta, scalar),
                                     sub, "RAW"))
        elif len(sub) == 2:
            if scalar != 1.0:
                g = DenseUnitary(scalar * _parity_phase_2q(theta).entries)
            else:
                g = _parity_phase_2q(theta)
            out.append(GatePlacement(g, sub, "RAW"))
        else:
            hub = sub[-1]
            wires = sub[:-1]
            for w in wires:
                out.append(GatePlacement(_cnot(), (w, hub), "RAW"))
            out.append(GatePlacement(_parity_phase_1q(theta, scalar),
                                     (hub,), "RAW"))
            for w in reversed(wires):
                out.append(GatePlacement(_cnot(), (w, hub), "RAW"))
    return out


# ---------------------------------------------------------------------------
# inverse-letter emulation (the final word must be inverse-free)
# ---------------------------------------------------------------------------

def emulate_inverse(s: PauliString, budget: SynthesisBudget) -> GeneratorWord:
    """+phi word approximating exp(-i*phi*sigma(s)).

    Candidates: repeated powers exp(i*phi*sigma)^k for k <= net_depth (the
    powers stay on the one-parameter circle of sigma, distance
    2|sin(((k+1)phi mod 2pi)/2)|), plus a beam-search word on the support.
    Distances here are phase-sensitive.
    """
    if s.weight not in (1, 2):
        raise ValueError("generator weight must be 1 or 2")
    support = s.support()
    n_loc = len(support)
    core = PauliString(tuple(p for p in s.pairs if p != (0, 0)))
    target = generator_unitary(core, -1).entries

    best_k, best_kdist = 1, float("inf")
    for k in range(1, budget.net_depth + 1):
        ang = math.remainder((k + 1) * PHI, 2 * math.pi)
        d = 2 * abs(math.sin(ang / 2))
        if d < best_kdist - 1e-12:
            best_k, best_kdist = k, d

    letters_loc = letter_order(n_loc)
    mats = _letter_matrices(letters_loc, n_loc)
    _, _, _, finals = _beam_search(target, letters_loc, mats,
                                   budget.net_depth, budget.beam_width)
    best_net, best_netdist = None, float("inf")
    for word_idx, m in finals[:64]:
        d = operator_norm_distance(m, target)
        if d < best_netdist - 1e-12:
            best_net, best_netdist = word_idx, d

    if best_kdist <= best_netdist:
        letters = (s,) * best_k
        dist = best_kdist
    else:
        local = _as_word(n_loc, letters_loc, best_net)
        letters = tuple(_relabel(ls, support, s.n_qubits) for ls in local.letters)
        dist = best_netdist
    word = GeneratorWord(s.n_qubits, letters)
    measured = operator_norm_distance(_word_matrix_on(word, support), target)
    if measured > budget.per_factor_epsilon:
        raise SynthesisBudgetError(
            f"inverse emulation reached {measured:.4f} > "
            f"{budget.per_factor_epsilon:.4f}",
            best_word=word, best_distance=measured)
    return word


def _relabel(s: PauliString, support: tuple[int, ...], n: int) -> PauliString:
    pairs = [(0, 0)] * n
    for local_q, pair in enumerate(s.pairs, start=1):
        if pair != (0, 0):
            pairs[support[local_q - 1] - 1] = pair
    return PauliString(tuple(pairs))


def _word_matrix_on(word: GeneratorWord, support: tuple[int, ...]) -> np.ndarray:
    """Word matrix restricted to its support qubits (identity elsewhere)."""
    n_loc = len(support)
    back = {q: i + 1 for i, q in enumerate(support)}
    letters = []
    for s in word.letters:
        placed = {back[q]: ax for q, ax in zip(s.support(), s.axes())}
        letters.append(PauliString.from_axes(n_loc, placed))
    return GeneratorWord(n_loc, tuple(letters)).matrix()


# ---------------------------------------------------------------------------
# group-commutator refinement
# ---------------------------------------------------------------------------

def _zero_diagonal_similarity(m: np.ndarray) -> np.ndarray:
    """Unitary q with q m q^dag having (numerically) zero diagonal.

    m must be skew-Hermitian and traceless. Works on the Hermitian form
    h = -i m by Jacobi-style 2x2 rotations: tracelessness guarantees two
    diagonal entries of opposite sign, and rotating their plane by t with
    tan(t) solving d t^2 + 2|b| t + a = 0 zeroes one of them.
    """
    d = m.shape[0]
    h = (-1j * m).copy()
    q = np.eye(d, dtype=complex)
    for _ in range(200):
        diag = np.real(np.diagonal(h))
        i = int(np.argmax(np.abs(diag)))
        if abs(diag[i]) < 1e-12:
            break
        opposite = np.where(np.sign(diag) == -np.sign(diag[i]))[0]
        if len(opposite) == 0:
            break
        j = int(opposite[np.argmax(np.abs(diag[opposite]))])
        a, dd, b = diag[i], diag[j], h[i, j]
        alpha = float(np.angle(b)) if abs(b) > 1e-15 else 0.0
        babs = abs(b)
        disc = math.sqrt(max(babs * babs - a * dd, 0.0))
        if abs(dd) > 1e-14:
            roots = [(-babs + disc) / dd, (-babs - disc) / dd]
            tau = min(roots, key=abs)
        elif babs > 1e-14:
            tau = -a / (2 * babs)
        else:
            break
        c = 1.0 / math.sqrt(1.0 + tau * tau)
        sn = tau * c
        g = np.eye(d, dtype=complex)
        # phase to make the coupling real, then a real rotation
        g[j, j] = np.exp(1j * alpha)
        rot = np.eye(d, dtype=complex)
        rot[i, i] = c
        rot[i, j] = sn
        rot[j, i] = -sn
        rot[j, j] = c
        step = rot @ g
        h = step @ h @ step.conj().T
        q = step @ q
    return q


def _split_commutator(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Anti-Hermitian v, w with [v, w] ~= m and balanced norms."""
    d = m.shape[0]
    q = _zero_diagonal_similarity(m)
    md = q @ m @ q.conj().T
    a = np.arange(d, 0, -1, dtype=float)
    denom = a[:, None] - a[None, :] + np.eye(d)
    b = -1j * md / denom
    np.fill_diagonal(b, 0.0)
    v = 1j * np.diag(a)
    na = float(np.linalg.norm(v, 2))
    nb = float(np.linalg.norm(b, 2)) + 1e-30
    lam = math.sqrt(nb / na)
    v, b = v * lam, b / lam
    back = q.conj().T
    return back @ v @ q, back @ b @ q


def _expm_antiherm(m: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(-1j * m)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T


def sk_refine(target: DenseUnitary, word: GeneratorWord,
              levels: int, budget: SynthesisBudget | None = None) -> GeneratorWord:
    """Group-commutator refinement levels on a 2-qubit word.

    Each level factors the residual E = target * word^dag (phase-aligned)
    as a group commutator [V, W] with ||V - I||, ||W - I|| = O(sqrt(||E-I||)),
    re-approximates V, W, and their adjoints by fresh net words, and keeps
    the longer word only when the measured phase-aligned distance strictly
    improves. Distances are phase-aligned throughout.
    """
    if budget is None:
        budget = SynthesisBudget()
    tmat = np.asarray(target.entries)
    letters = letter_order(2)
    mats = _letter_matrices(letters, 2)

    def net_best(goal: np.ndarray) -> tuple[tuple[int, ...], np.ndarray]:
        idx, m, _, _ = _beam_search(goal, letters, mats,
                                    budget.net_depth, budget.beam_width)
        return idx, m

    cur = word
    cur_mat = cur.matrix()
    cur_dist = _phase_aligned_distance(cur_mat, tmat)
    for _ in range(levels):
        tr = np.trace(cur_mat.conj().T @ tmat)
        phase = 1.0 if abs(tr) < 1e-12 else tr / abs(tr)
        resid = (tmat / phase) @ cur_mat.conj().T
        det = np.linalg.det(resid)
        resid = resid * det ** (-0.25)
        m = (resid - resid.conj().T) / 2
        m = m - (np.trace(m) / 4) * np.eye(4)
        if np.linalg.norm(m, 2) < 1e-9:
            break
        v, w = _split_commutator(m)
        vm, wm = _expm_antiherm(v), _expm_antiherm(w)
        parts = []
        ok = True
        # letters act first-to-last: the matrix product V W V^dag W^dag
        # needs W^dag's word first
        for goal in (wm.conj().T, vm.conj().T, wm, vm):
            idx, _ = net_best(goal)
            if not idx:
                ok = False
                break
            parts.append(idx)
        if not ok:
            break
        new_letters = cur.letters + tuple(
            letters[i] for idx in parts for i in idx)
        cand = GeneratorWord(2, new_letters)
        cand_mat = cand.matrix()
        cand_dist = _phase_aligned_distance(cand_mat, tmat)
        if cand_dist < cur_dist - 1e-12:
            cur, cur_mat, cur_dist = cand, cand_mat, cand_dist
        else:
            break
    return cur


# ---------------------------------------------------------------------------
# commuting-torus synthesis for degree <= 2 targets
# ---------------------------------------------------------------------------

def _x_fourier_angles(poly: BoolPoly) -> dict[tuple[int, ...], Fraction]:
    """Eigenphase pi*lambda_T of the target on X-basis characters s_T.

    The polynomial substitution x_j -> (1 - s_j)/2 expands every monomial J
    into 2^-|J| sum over T subset J of (-1)^|T| s_T.
    """
    lam: dict[tuple[int, ...], Fraction] = {}
    for mon in poly.monomials:
        base = Fraction(1, 1 << len(mon))
        for mask in range(1 << len(mon)):
            t = tuple(mon[i] for i in range(len(mon)) if (mask >> i) & 1)
            sign = -1 if len(t) % 2 else 1
            lam[t] = lam.get(t, Fraction(0)) + sign * base
    return {t: v for t, v in lam.items() if v != 0}


def best_power(angle: float, k_max: int) -> tuple[int, float]:
    """k in [0, k_max] minimizing the wrapped error k*phi - angle."""
    best_k, best_err = 0, -math.remainder(angle, 2 * math.pi)
    for k in range(1, k_max + 1):
        err = math.remainder(k * PHI - angle, 2 * math.pi)
        if abs(err) < abs(best_err) - 1e-15:
            best_k, best_err = k, err
    return best_k, best_err


def _torus_word(poly: BoolPoly, delta: float) -> GeneratorWord | None:
    """Exact-structure torus synthesis; None when structurally inapplicable.

    Applicable when deg(poly) <= 2 and the constant eigenphase is a multiple
    of pi/2 (an odd multiple of pi/4 cannot be absorbed by weight <= 2
    blocks). Needs at least 2 qubits for the half-integer absorber.
    """
    if poly.degree > 2:
        return None
    n = poly.n_vars
    lam = _x_fourier_angles(poly)
    const = lam.pop((), Fraction(0))
    res = const % 2
    angles = {t: math.pi * float(v) for t, v in lam.items()}

    def bump(t: tuple[int, ...], by: float) -> None:
        angles[t] = angles.get(t, 0.0) + by

    if res == 0:
        pass
    elif res.denominator == 1:
        bump((n - 1,), math.pi * res.numerator)
    elif res.denominator == 2:
        if n < 2:
            return None
        h = float(res) * math.pi  # odd multiple of pi/2
        a, b = n - 2, n - 1
        bump((a,), h)
        bump((b,), h)
        bump((a, b), -h)
    else:
        return None  # odd multiple of pi/4: provably not absorbable

    blocks = []
    for t in sorted(angles):
        ang = math.remainder(angles[t], 2 * math.pi)
        if abs(ang) > 1e-12:
            blocks.append((t, ang))
    if not blocks:
        return GeneratorWord(n, ())

    # distance <= 2 sin(total_err/2) <= total_err; leave a safety margin
    budget_total = 0.9 * min(delta, 1.9)
    per_block = budget_total / len(blocks)
    k_max = 64
    while True:
        picks = [(t, best_power(ang, k_max)) for t, ang in blocks]
        total_err = sum(abs(err) for _, (_, err) in picks)
        if total_err <= budget_total and all(
                abs(err) <= per_block * 1.5 for _, (_, err) in picks):
            break
        if k_max >= 20000:
            return None
        k_max *= 2

    letters = []
    for t, (k, _) in picks:
        s = PauliString.from_axes(n, {i + 1: "X" for i in t})
        letters.extend([s] * k)
    return GeneratorWord(n, tuple(letters))


# ---------------------------------------------------------------------------
# top-level synthesis
# ---------------------------------------------------------------------------

def synthesize_Uf(poly: BoolPoly, delta: float,
                  budget: SynthesisBudget) -> GeneratorWord:
    """Single inverse-free word with ||U(f) - word|| < delta, verified.

    The input must already be padded so its phase unitary has determinant 1.
    The final check simulates the word and measures the phase-sensitive
    operator-norm distance; a word is never returned on trust.
    """
    from .quantum import build_Uf_gates  # local to avoid cycle at import

    if delta <= 0:
        raise ValueError("delta must be positive")
    n = poly.n_vars
    if n > 10:
        raise ValueError("synthesis verification capped at 10 qubits")
    target = unitary_of_gates(build_Uf_gates(poly), n)

    best_word = None
    best_dist = float("inf")

    def consider(word: GeneratorWord | None):
        nonlocal best_word, best_dist
        if word is None:
            return False
        d = operator_norm_distance(word.matrix(), target)
        if d < best_dist:
            best_word, best_dist = word, d
        return d < delta

    if consider(GeneratorWord(n, ())):
        return best_word

    if consider(_torus_word(poly, delta)):
        return best_word

    # full-register beam, only worthwhile on very small registers; ranked
    # phase-sensitively since the final check here is phase-sensitive
    if n <= 3:
        letters = letter_order(n)
        mats = _letter_matrices(letters, n)
        word_idx, _, _, _ = _beam_search(target, letters, mats,
                                         budget.net_depth, budget.beam_width,
                                         epsilon=delta, phase_sensitive=True)
        if consider(_as_word(n, letters, word_idx)):
            return best_word

    raise SynthesisBudgetError(
        f"no strategy reached delta={delta:.6g} (best {best_dist:.6g})",
        best_word=best_word, best_distance=best_dist)


# ---------------------------------------------------------------------------
# word file format
# ---------------------------------------------------------------------------

def format_word(word: GeneratorWord) -> str:
    lines = [f"qubits={word.n_qubits} length={word.length} phi=atan(1/2)"]
    for j, s in enumerate(word.letters, start=1):
        spec = " ".join(f"{q}:{ax}" for q, ax in zip(s.support(), s.axes()))
        lines.append(f"{j}: {spec}")
    return "\n".join(lines) + "\n"


def parse_word(text: str) -> GeneratorWord:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty word file")
    head = lines[0].split()
    if (len(head) != 3 or not head[0].startswith("qubits=")
            or not head[1].startswith("length=") or head[2] != "phi=atan(1/2)"):
        raise ParseError("bad word header")
    try:
        n = int(head[0][len("qubits="):])
        length = int(head[1][len("length="):])
    except ValueError as e:
        raise ParseError("bad word header counts") from e
    if len(lines) - 1 != length:
        raise ParseError(f"expected {length} letters, found {len(lines) - 1}")
    letters = []
    for j, ln in enumerate(lines[1:], start=1):
        head_j, _, rest = ln.partition(":")
        if head_j.strip() != str(j):
            raise ParseError(f"letter index mismatch at line {j}")
        placed = {}
        for tok in rest.split():
            q_s, _, ax = tok.partition(":")
            try:
                q = int(q_s)
            except ValueError as e:
                raise ParseError(f"bad letter token {tok!r}") from e
            if ax not in _AXES or not 1 <= q <= n or q in placed:
                raise ParseError(f"bad letter token {tok!r}")
            placed[q] = ax
        if not 1 <= len(placed) <= 2:
            raise ParseError(f"letter {j} must touch 1 or 2 qubits")
        letters.append(PauliString.from_axes(n, placed))
    return GeneratorWord(n, tuple(letters))
