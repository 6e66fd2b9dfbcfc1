"""Straight-line {AND, XOR} circuits and the counting-gap polynomial.

A circuit is an ordered list of assignments z_k := a op b over inputs
x_1..x_{n_x}, y_1..y_{n_y}, earlier z-variables, and literal bits; its value
is the last assignment's target. For a fixed x-assignment, the number of
accepting y's is exposed as a polynomial gap: the indicator polynomial F over
fresh variables (y, z, v) has degree at most 3 and

    delta(F) = 2^(s+1) * #{y : circuit(x, y) = 1},

because summing (-1)^F over each selector v_k kills every point where the
k-th defining equation fails, and the v_0 selector keeps exactly the points
with output 1. Two circuits of equal shape combine through a fresh switch
variable w into a degree <= 4 polynomial whose gap is exactly the difference
of the two counts.

Text format:
    inputs x:<n_x> y:<n_y>
    z1 = x1 AND y1
    z2 = z1 XOR 1
    output z2
Operands are x<i>, y<i>, z<k> (earlier targets only), or literals 0/1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .f2poly import BoolPoly, Monomial

Operand = tuple[str, int]  # ("x"|"y"|"z", 1-based index) or ("const", bit)

_OPS = ("AND", "XOR")


@dataclass(frozen=True)
class Assignment:
    op: str
    a: Operand
    b: Operand

    def __post_init__(self):
        if self.op not in _OPS:
            raise ValueError(f"unknown op {self.op!r}")


@dataclass(frozen=True)
class StraightLineCircuit:
    """Immutable straight-line program; the k-th assignment targets z_k."""

    n_x: int
    n_y: int
    assignments: tuple[Assignment, ...]

    def __post_init__(self):
        if self.n_x < 0 or self.n_y < 0:
            raise ValueError("negative input count")
        if not self.assignments:
            raise ValueError("circuit needs at least one assignment")
        for k, asg in enumerate(self.assignments, start=1):
            for o in (asg.a, asg.b):
                self._check_operand(o, k)

    def _check_operand(self, o: Operand, k: int) -> None:
        kind, idx = o
        if kind == "x":
            ok = 1 <= idx <= self.n_x
        elif kind == "y":
            ok = 1 <= idx <= self.n_y
        elif kind == "z":
            ok = 1 <= idx < k
        elif kind == "const":
            ok = idx in (0, 1)
        else:
            ok = False
        if not ok:
            raise ValueError(f"operand {o} invalid in assignment {k}")

    @property
    def s(self) -> int:
        return len(self.assignments)

    def simulate(self, x_bits, y_bits) -> int:
        """Evaluate on concrete inputs; returns the output bit."""
        if len(x_bits) != self.n_x or len(y_bits) != self.n_y:
            raise ValueError("input length mismatch")
        z: list[int] = []
        for asg in self.assignments:
            a = _operand_value(asg.a, x_bits, y_bits, z)
            b = _operand_value(asg.b, x_bits, y_bits, z)
            z.append(a & b if asg.op == "AND" else a ^ b)
        return z[-1]


def _operand_value(o: Operand, x_bits, y_bits, z: list[int]) -> int:
    kind, idx = o
    if kind == "x":
        return int(x_bits[idx - 1]) & 1
    if kind == "y":
        return int(y_bits[idx - 1]) & 1
    if kind == "z":
        return z[idx - 1]
    return idx


def count_solutions(circuit: StraightLineCircuit, x_bits) -> int:
    """#{y : circuit(x, y) = 1} by exhaustive simulation (test-scale only)."""
    total = 0
    for ymask in range(1 << circuit.n_y):
        y = [(ymask >> i) & 1 for i in range(circuit.n_y)]
        total += circuit.simulate(x_bits, y)
    return total


def pad_circuit(circuit: StraightLineCircuit, target_s: int) -> StraightLineCircuit:
    """Append dummy assignments re-deriving the output until s == target_s.

    Each dummy is z_new := z_out AND z_out, so the output variable stays the
    last target and the computed value never changes.
    """
    if target_s < circuit.s:
        raise ValueError("cannot shrink a circuit")
    asgs = list(circuit.assignments)
    while len(asgs) < target_s:
        out = ("z", len(asgs))
        asgs.append(Assignment("AND", out, out))
    return StraightLineCircuit(circuit.n_x, circuit.n_y, tuple(asgs))


@dataclass(frozen=True)
class CircuitPair:
    """Two circuits on the same inputs, padded to a common size."""

    q1: StraightLineCircuit
    q2: StraightLineCircuit

    def __post_init__(self):
        if (self.q1.n_x, self.q1.n_y) != (self.q2.n_x, self.q2.n_y):
            raise ValueError("circuit input shapes differ")
        if self.q1.s != self.q2.s:
            raise ValueError("circuits not padded to equal size")

    @staticmethod
    def make(q1: StraightLineCircuit, q2: StraightLineCircuit) -> "CircuitPair":
        s = max(q1.s, q2.s)
        return CircuitPair(pad_circuit(q1, s), pad_circuit(q2, s))

    def swapped(self) -> "CircuitPair":
        return CircuitPair(self.q2, self.q1)


# ---------------------------------------------------------------------------
# polynomial construction
# ---------------------------------------------------------------------------
# variable layout for a circuit with n_y inputs and s assignments:
#   y_j  -> j-1            (j = 1..n_y)
#   z_k  -> n_y + k - 1    (k = 1..s)
#   v_k  -> n_y + s + k - 1
#   v_0  -> n_y + 2s
# the switch w of the pair combiner -> n_y + 2s + 1

def _operand_monomials(o: Operand, x_bits, n_y: int) -> frozenset[Monomial]:
    kind, idx = o
    if kind == "x":
        bit = int(x_bits[idx - 1]) & 1
        return frozenset({()}) if bit else frozenset()
    if kind == "y":
        return frozenset({(idx - 1,)})
    if kind == "z":
        return frozenset({(n_y + idx - 1,)})
    return frozenset({()}) if idx else frozenset()


def indicator_poly(circuit: StraightLineCircuit, x_bits) -> BoolPoly:
    """Degree <= 3 polynomial whose gap is 2^(s+1) times the solution count."""
    if len(x_bits) != circuit.n_x:
        raise ValueError("input length mismatch")
    n_y, s = circuit.n_y, circuit.s
    n = n_y + 2 * s + 1
    acc: set[Monomial] = set()

    def add(mon: Monomial) -> None:
        if mon in acc:
            acc.remove(mon)
        else:
            acc.add(mon)

    for k, asg in enumerate(circuit.assignments, start=1):
        v_k = n_y + s + k - 1
        # defining equation of z_k, multiplied by the selector v_k
        add(tuple(sorted((n_y + k - 1, v_k))))
        ma = _operand_monomials(asg.a, x_bits, n_y)
        mb = _operand_monomials(asg.b, x_bits, n_y)
        if asg.op == "AND":
            for p in ma:
                for q in mb:
                    add(tuple(sorted(set(p) | set(q) | {v_k})))
        else:
            for p in ma:
                add(tuple(sorted(set(p) | {v_k})))
            for q in mb:
                add(tuple(sorted(set(q) | {v_k})))
    # output selector: v_0 * (z_s + 1)
    v0 = n_y + 2 * s
    add(tuple(sorted((n_y + s - 1, v0))))
    add((v0,))
    return BoolPoly(n, frozenset(acc))


def reduce_to_deg4(pair: CircuitPair, x_bits) -> BoolPoly:
    """Combine the pair's indicators into one degree <= 4 polynomial.

    Both indicators live on the same (y, z, v) slots; with a fresh switch w,
        F = F1 + w*(F1 + F2 + 1)
    restricts to F1 at w=0 and to F2+1 at w=1, so
        delta(F) = delta(F1) - delta(F2)
    exactly, which is 2^(s+1) times the difference of solution counts.
    """
    f1 = indicator_poly(pair.q1, x_bits)
    f2 = indicator_poly(pair.q2, x_bits)
    n = f1.n_vars
    w = n
    acc = set(f1.monomials)
    bridge = f1.monomials ^ f2.monomials ^ frozenset({()})
    for m in bridge:
        acc.symmetric_difference_update({tuple(sorted(set(m) | {w}))})
    return BoolPoly(n + 1, frozenset(acc))


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def _parse_operand(tok: str, k: int) -> Operand:
    if tok in ("0", "1"):
        return ("const", int(tok))
    if len(tok) >= 2 and tok[0] in "xyz":
        try:
            return (tok[0], int(tok[1:]))
        except ValueError:
            pass
    raise ParseError(f"bad operand {tok!r} in assignment {k}")


def parse_slp(text: str) -> StraightLineCircuit:
    """Parse the straight-line program text format."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if len(lines) < 3:
        raise ParseError("circuit needs header, assignments, and output line")
    head = lines[0].split()
    if (len(head) != 3 or head[0] != "inputs"
            or not head[1].startswith("x:") or not head[2].startswith("y:")):
        raise ParseError("bad header, expected 'inputs x:<n> y:<n>'")
    try:
        n_x = int(head[1][2:])
        n_y = int(head[2][2:])
    except ValueError as e:
        raise ParseError("bad input counts in header") from e

    assignments = []
    for k, line in enumerate(lines[1:-1], start=1):
        toks = line.split()
        if len(toks) != 5 or toks[1] != "=" or toks[3] not in _OPS:
            raise ParseError(f"bad assignment line {line!r}")
        if toks[0] != f"z{k}":
            raise ParseError(f"assignment {k} must target z{k}, got {toks[0]!r}")
        a = _parse_operand(toks[2], k)
        b = _parse_operand(toks[4], k)
        assignments.append(Assignment(toks[3], a, b))

    out = lines[-1].split()
    if len(out) != 2 or out[0] != "output":
        raise ParseError("missing output line")
    if out[1] != f"z{len(assignments)}":
        raise ParseError("output must name the last assignment's target")
    try:
        return StraightLineCircuit(n_x, n_y, tuple(assignments))
    except ValueError as e:
        raise ParseError(str(e)) from e


def _format_operand(o: Operand) -> str:
    kind, idx = o
    return str(idx) if kind == "const" else f"{kind}{idx}"


def format_slp(circuit: StraightLineCircuit) -> str:
    lines = [f"inputs x:{circuit.n_x} y:{circuit.n_y}"]
    for k, asg in enumerate(circuit.assignments, start=1):
        lines.append(f"z{k} = {_format_operand(asg.a)} {asg.op} "
                     f"{_format_operand(asg.b)}")
    lines.append(f"output z{circuit.s}")
    return "\n".join(lines) + "\n"
