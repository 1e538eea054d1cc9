"""Flow and Clifford tableaus.

Both kinds hold ``2n+1`` PauliVec rows.  Row 0 is ``iI``; rows ``1..n`` are the
images of ``X_1..X_n`` and rows ``n+1..2n`` the images of ``Z_1..Z_n``.  A flow
tableau stores pullbacks ``C^dag P C``, a Clifford tableau pushforwards
``C P C^dag``.

Row indices in this module follow the stored layout, so qubit ``j`` (0-based)
owns rows ``j+1`` and ``j+1+n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .pauli import PauliVec, _parity, bits_to_str, is_proper, str_to_bits

__all__ = [
    "FLOW",
    "CLIFFORD",
    "Gate",
    "Tableau",
    "elementary",
    "push_gate",
    "gf2_inverse",
    "identity_tableau",
    "apply_gate_flow",
    "apply_gate_clifford",
    "pullback",
    "pushforward",
    "compose",
    "invert",
    "is_proper_tableau",
    "cnot_block_check",
]

FLOW = "flow"
CLIFFORD = "clifford"

_ONE_QUBIT = ("h", "s", "sdg", "x", "y", "z")

# every gate reduces to h / s / cnot
_EXPAND = {
    "sdg": ("s", "s", "s"),
    "z": ("s", "s"),
    "x": ("h", "s", "s", "h"),
    "y": ("s", "s", "h", "s", "s", "h"),
}


@dataclass(frozen=True, slots=True)
class Gate:
    name: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.name in _ONE_QUBIT:
            if len(self.qubits) != 1:
                raise ValueError(f"{self.name} takes one qubit")
        elif self.name == "cnot":
            if len(self.qubits) != 2:
                raise ValueError("cnot takes control and target")
            if self.qubits[0] == self.qubits[1]:
                raise ValueError("control equals target")
        else:
            raise ValueError(f"unknown gate {self.name!r}")
        if any(q < 0 for q in self.qubits):
            raise ValueError("negative qubit index")

    @classmethod
    def h(cls, t: int) -> Gate:
        return cls("h", (t,))

    @classmethod
    def s(cls, t: int) -> Gate:
        return cls("s", (t,))

    @classmethod
    def cnot(cls, c: int, t: int) -> Gate:
        return cls("cnot", (c, t))

    def __str__(self) -> str:
        return " ".join([self.name, *(str(q + 1) for q in self.qubits)])


def elementary(g: Gate) -> list[Gate]:
    """Decompose into h, s and cnot, in time order."""
    if g.name in _EXPAND:
        return [Gate(k, g.qubits) for k in _EXPAND[g.name]]
    return [g]


def push_gate(p: PauliVec, g: Gate) -> PauliVec:
    """``g P g^dag`` for an elementary gate."""
    n, k, x, z = p.n, p.kappa, p.xi, p.zeta
    if g.name == "cnot":
        c, t = g.qubits
        x ^= ((x >> c) & 1) << t
        z ^= ((z >> t) & 1) << c
        return PauliVec(n, k, x, z)
    (t,) = g.qubits
    xt, zt = (x >> t) & 1, (z >> t) & 1
    if g.name == "h":
        m = 1 << t
        x, z = (x & ~m) | (zt << t), (z & ~m) | (xt << t)
        return PauliVec(n, (k + 2 * (xt & zt)) & 3, x, z)
    if g.name == "s":
        return PauliVec(n, (k + xt) & 3, x, z ^ (xt << t))
    raise ValueError(f"{g.name} is not elementary")


class Tableau:
    __slots__ = ("n", "kind", "rows")

    def __init__(self, n: int, kind: str, rows: Sequence[PauliVec]) -> None:
        if kind not in (FLOW, CLIFFORD):
            raise ValueError(f"unknown kind {kind!r}")
        if len(rows) != 2 * n + 1:
            raise ValueError(f"expected {2 * n + 1} rows, got {len(rows)}")
        if any(r.n != n for r in rows):
            raise ValueError("row dimension mismatch")
        self.n = n
        self.kind = kind
        self.rows = list(rows)

    @classmethod
    def identity(cls, n: int, kind: str = FLOW) -> Tableau:
        rows = [PauliVec(n, 1, 0, 0)]
        rows += [PauliVec(n, 0, 1 << j, 0) for j in range(n)]
        rows += [PauliVec(n, 0, 0, 1 << j) for j in range(n)]
        return cls(n, kind, rows)

    def copy(self) -> Tableau:
        return Tableau(self.n, self.kind, self.rows)

    def as_kind(self, kind: str) -> Tableau:
        """Same rows under the other reading: T(C) holds exactly the rows of F(C^dag)."""
        return Tableau(self.n, kind, self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tableau):
            return NotImplemented
        return (self.n, self.kind, self.rows) == (other.n, other.kind, other.rows)

    def __repr__(self) -> str:
        body = ", ".join(str(r) for r in self.rows)
        return f"Tableau(n={self.n}, kind={self.kind}, rows=[{body}])"

    def x_row(self, j: int) -> PauliVec:
        return self.rows[1 + j]

    def z_row(self, j: int) -> PauliVec:
        return self.rows[1 + self.n + j]

    # ------------------------------------------------------------ updates

    def _check_gate(self, g: Gate) -> None:
        if any(q >= self.n for q in g.qubits):
            raise IndexError(f"{g} out of range for n={self.n}")

    def apply(self, g: Gate) -> Tableau:
        """Append ``g`` to the tracked circuit, in place."""
        self._check_gate(g)
        step = self._flow_step if self.kind == FLOW else self._clifford_step
        for e in elementary(g):
            step(e)
        return self

    def apply_all(self, gates: Iterable[Gate]) -> Tableau:
        for g in gates:
            self.apply(g)
        return self

    def _flow_step(self, g: Gate) -> None:
        r, n = self.rows, self.n
        if g.name == "cnot":
            c, t = g.qubits
            r[1 + c] = _mul(r[1 + c], r[1 + t])
            r[1 + n + t] = _mul(r[1 + n + t], r[1 + n + c])
        elif g.name == "h":
            (t,) = g.qubits
            r[1 + t], r[1 + n + t] = r[1 + n + t], r[1 + t]
        else:
            (t,) = g.qubits
            a, b = r[1 + t], r[1 + n + t]
            k = 3 + a.kappa + b.kappa + 2 * _parity(a.zeta & b.xi)
            r[1 + t] = PauliVec(n, k & 3, a.xi ^ b.xi, a.zeta ^ b.zeta)

    def _clifford_step(self, g: Gate) -> None:
        self.rows = [push_gate(p, g) for p in self.rows]

    # ------------------------------------------------------------ queries

    def apply_to(self, p: PauliVec) -> PauliVec:
        """Image of ``p`` under the tracked map, by the ordered row fold."""
        if p.n != self.n:
            raise ValueError(f"dimension mismatch: {p.n} vs {self.n}")
        n = self.n
        k, x, z = p.kappa, 0, 0
        for off, v in ((1, p.xi), (1 + n, p.zeta)):
            j = 0
            while v:
                if v & 1:
                    r = self.rows[off + j]
                    k += r.kappa + 2 * (z & r.xi).bit_count()
                    x ^= r.xi
                    z ^= r.zeta
                v >>= 1
                j += 1
        return PauliVec(n, k & 3, x, z)

    def pullback(self, p: PauliVec) -> PauliVec:
        if self.kind != FLOW:
            raise ValueError("pullback needs a flow tableau")
        return self.apply_to(p)

    def pushforward(self, p: PauliVec) -> PauliVec:
        if self.kind != CLIFFORD:
            raise ValueError("pushforward needs a Clifford tableau")
        return self.apply_to(p)

    def compose(self, inner: Tableau) -> Tableau:
        """Tableau of the circuit ``self`` run after ``inner``."""
        if (self.n, self.kind) != (inner.n, inner.kind):
            raise ValueError("kind or dimension mismatch")
        if self.kind == FLOW:
            outer_rows, base = self.rows, inner
        else:
            outer_rows, base = inner.rows, self
        rows = [outer_rows[0]] + [base.apply_to(r) for r in outer_rows[1:]]
        return Tableau(self.n, self.kind, rows)

    def phaseless(self) -> list[int]:
        """Rows 1..2n as ``2n``-bit ints, xi in the low half."""
        return [r.xi | (r.zeta << self.n) for r in self.rows[1:]]

    def invert(self) -> Tableau:
        """Tableau of the same circuit in the other direction.

        The phaseless blocks ``(A B; C D)`` become ``(D^T B^T; C^T A^T)``.  Each new
        phase is ``-<f, eps> + 2 s`` where ``s`` is the strictly upper quadratic
        form of ``zeta_a . xi_b`` over the selected old rows.
        """
        if not self.is_proper():
            raise ValueError("cannot invert an improper tableau")
        n, old = self.n, self.rows[1:]
        rows = [PauliVec(n, 1, 0, 0)]
        for i in range(2 * n):
            q, half = i % n, i // n
            # new row i reads column q of the opposite-type block, X/Z swapped
            xi = zeta = 0
            for j in range(n):
                ra, rb = old[j], old[n + j]
                if half == 0:
                    # new X_q: xi_j = D[q][j] -> zeta bit q of Z-row j; zeta_j = B[q][j]
                    xi |= ((rb.zeta >> q) & 1) << j
                    zeta |= ((ra.zeta >> q) & 1) << j
                else:
                    xi |= ((rb.xi >> q) & 1) << j
                    zeta |= ((ra.xi >> q) & 1) << j
            k = 0
            acc_zeta = 0
            s = 0
            for a in range(2 * n):
                if ((xi if a < n else zeta) >> (a % n)) & 1:
                    r = old[a]
                    s ^= _parity(acc_zeta & r.xi)
                    acc_zeta ^= r.zeta
                    k += r.kappa
            rows.append(PauliVec(n, (-k + 2 * s) & 3, xi, zeta))
        return Tableau(n, CLIFFORD if self.kind == FLOW else FLOW, rows)

    def is_proper(self) -> bool:
        n = self.n
        if self.rows[0] != PauliVec(n, 1, 0, 0):
            return False
        body = self.rows[1:]
        if not all(is_proper(r) for r in body):
            return False
        for a in range(2 * n):
            ra = body[a]
            for b in range(a + 1, 2 * n):
                rb = body[b]
                w = _parity((ra.zeta & rb.xi) ^ (ra.xi & rb.zeta))
                if w != (b == a + n):
                    return False
        return True

    def cnot_block_check(self) -> bool:
        """B = C = 0, all phases 0 and A = D^{-T}."""
        n = self.n
        xs = [self.x_row(j) for j in range(n)]
        zs = [self.z_row(j) for j in range(n)]
        if any(r.zeta or r.kappa for r in xs) or any(r.xi or r.kappa for r in zs):
            return False
        a = [r.xi for r in xs]
        d = [r.zeta for r in zs]
        d_inv = gf2_inverse(d, n)
        if d_inv is None:
            return False
        return a == _transpose(d_inv, n)

    # ------------------------------------------------------------ I/O

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind,
            "rows": [list(r.bits()) for r in self.rows],
        }

    @classmethod
    def from_dict(cls, d: dict) -> Tableau:
        n = int(d["n"])
        rows = []
        for k, x, z in d["rows"]:
            if len(x) != n or len(z) != n:
                raise ValueError("row bit string has wrong length")
            rows.append(PauliVec(n, int(k), str_to_bits(x), str_to_bits(z)))
        return cls(n, d["kind"], rows)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> Tableau:
        return cls.from_dict(json.loads(s))

    def render(self) -> str:
        n = self.n
        names = ["iI"] + [f"X{j + 1}" for j in range(n)] + [f"Z{j + 1}" for j in range(n)]
        w = max(len(s) for s in names)
        return "\n".join(
            f"{nm:<{w}}  {r.kappa}|{bits_to_str(r.xi, n)}|{bits_to_str(r.zeta, n)}"
            for nm, r in zip(names, self.rows)
        )


def _mul(a: PauliVec, b: PauliVec) -> PauliVec:
    k = a.kappa + b.kappa + 2 * _parity(a.zeta & b.xi)
    return PauliVec(a.n, k & 3, a.xi ^ b.xi, a.zeta ^ b.zeta)


def _transpose(m: list[int], n: int) -> list[int]:
    return [sum(((m[i] >> j) & 1) << i for i in range(n)) for j in range(n)]


def gf2_inverse(m: list[int], n: int) -> list[int] | None:
    """Inverse of an ``n x n`` GF(2) matrix given as row bitmasks, or None if singular."""
    work = list(m)
    inv = [1 << i for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if (work[r] >> col) & 1), None)
        if piv is None:
            return None
        work[col], work[piv] = work[piv], work[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        for r in range(n):
            if r != col and (work[r] >> col) & 1:
                work[r] ^= work[col]
                inv[r] ^= inv[col]
    return inv


# functional spellings of the methods above


def identity_tableau(n: int, kind: str = FLOW) -> Tableau:
    return Tableau.identity(n, kind)


def apply_gate_flow(tab: Tableau, g: Gate) -> Tableau:
    if tab.kind != FLOW:
        raise ValueError("expected a flow tableau")
    return tab.apply(g)


def apply_gate_clifford(tab: Tableau, g: Gate) -> Tableau:
    if tab.kind != CLIFFORD:
        raise ValueError("expected a Clifford tableau")
    return tab.apply(g)


def pullback(tab: Tableau, p: PauliVec) -> PauliVec:
    return tab.pullback(p)


def pushforward(tab: Tableau, p: PauliVec) -> PauliVec:
    return tab.pushforward(p)


def compose(outer: Tableau, inner: Tableau) -> Tableau:
    return outer.compose(inner)


def invert(tab: Tableau) -> Tableau:
    return tab.invert()


def is_proper_tableau(tab: Tableau) -> bool:
    return tab.is_proper()


def cnot_block_check(tab: Tableau) -> bool:
    return tab.cnot_block_check()
