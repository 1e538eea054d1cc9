"""Flow tableau plus the pushforward phases of the logical generators.

``push[j]`` is the phase exponent of ``C Xbar_j C^dag`` and ``push[n + j]`` that of
``C Zbar_j C^dag``.  Together with the phaseless flow bits this yields every
pushforward without inverting the tableau.
"""

from __future__ import annotations

from typing import Sequence

from .pauli import PauliVec
from .tableau import FLOW, Gate, Tableau, elementary

__all__ = [
    "CombinedTableau",
    "render_phase_token",
    "new_combined",
    "apply_gate",
    "read_pushforward_generator",
    "pushforward_general",
]

_HEADER_TOKENS = ("+", "i", "-", "i^3")


def render_phase_token(k: int) -> str:
    return _HEADER_TOKENS[k & 3]


class CombinedTableau:
    __slots__ = ("flow", "push")

    def __init__(self, flow: Tableau, push: Sequence[int]) -> None:
        if flow.kind != FLOW:
            raise ValueError("combined tableau needs a flow tableau")
        if len(push) != 2 * flow.n:
            raise ValueError(f"expected {2 * flow.n} push phases")
        self.flow = flow
        self.push = [k & 3 for k in push]

    @classmethod
    def new(cls, n: int) -> CombinedTableau:
        return cls(Tableau.identity(n, FLOW), [0] * (2 * n))

    @property
    def n(self) -> int:
        return self.flow.n

    def copy(self) -> CombinedTableau:
        return CombinedTableau(self.flow.copy(), self.push)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CombinedTableau):
            return NotImplemented
        return self.flow == other.flow and self.push == other.push

    def __repr__(self) -> str:
        return f"CombinedTableau(flow={self.flow!r}, push={self.push})"

    def apply(self, g: Gate) -> CombinedTableau:
        self.flow._check_gate(g)
        for e in elementary(g):
            self._step(e)
        return self

    def _step(self, g: Gate) -> None:
        n, rows, push = self.n, self.flow.rows, self.push
        if g.name != "cnot":
            (t,) = g.qubits
            a, b = rows[1 + t], rows[1 + n + t]
            if g.name == "h":
                zz, xx = a.zeta & b.zeta, a.xi & b.xi
                for j in range(n):
                    push[j] = (push[j] + 2 * ((zz >> j) & 1)) & 3
                    push[n + j] = (push[n + j] + 2 * ((xx >> j) & 1)) & 3
            else:
                for j in range(n):
                    push[j] = (push[j] + ((b.zeta >> j) & 1)) & 3
                    push[n + j] = (push[n + j] + ((b.xi >> j) & 1)) & 3
        self.flow._flow_step(g)

    def read_pushforward_generator(self, g: int) -> PauliVec:
        """Pushforward of generator ``g``: ``Xbar_g`` for ``g < n``, else ``Zbar_{g-n}``."""
        n = self.n
        if not 0 <= g < 2 * n:
            raise IndexError(f"generator {g} out of range")
        j = g % n
        use_zeta = g < n
        x = z = 0
        for k in range(n):
            xr, zr = self.flow.rows[1 + k], self.flow.rows[1 + n + k]
            if use_zeta:
                x |= ((zr.zeta >> j) & 1) << k
                z |= ((xr.zeta >> j) & 1) << k
            else:
                x |= ((zr.xi >> j) & 1) << k
                z |= ((xr.xi >> j) & 1) << k
        return PauliVec(n, self.push[g], x, z)

    def clifford_tableau(self) -> Tableau:
        """The Clifford tableau assembled from columns; no inversion needed."""
        rows = [PauliVec(self.n, 1, 0, 0)]
        rows += [self.read_pushforward_generator(g) for g in range(2 * self.n)]
        return Tableau(self.n, "clifford", rows)

    def pullback(self, p: PauliVec) -> PauliVec:
        return self.flow.pullback(p)

    def pushforward(self, p: PauliVec) -> PauliVec:
        if p.n != self.n:
            raise ValueError(f"dimension mismatch: {p.n} vs {self.n}")
        return self.clifford_tableau().apply_to(p)

    def header(self) -> str:
        """Clifford phase header as drawn above circuit slices.

        The left half sits above the flow columns of ``Xbar_j`` and shows the phase
        of ``C Zbar_j C^dag``; the right half shows those of ``C Xbar_j C^dag``.
        """
        n = self.n
        left = _join([render_phase_token(k) for k in self.push[n:]])
        right = _join([render_phase_token(k) for k in self.push[:n]])
        return f"({left}|{right})"

    def to_dict(self) -> dict:
        d = self.flow.to_dict()
        d["kind"] = "combined"
        d["push_phases"] = list(self.push)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> CombinedTableau:
        flow = Tableau.from_dict({**d, "kind": FLOW})
        return cls(flow, [int(k) for k in d["push_phases"]])


def _join(tokens: list[str]) -> str:
    out = ""
    for tok in tokens:
        # keep neighbouring letters apart: "i i^3" rather than "ii^3"
        if out and out[-1].isalnum() and tok[0].isalnum():
            out += " "
        out += tok
    return out


def new_combined(n: int) -> CombinedTableau:
    return CombinedTableau.new(n)


def apply_gate(ct: CombinedTableau, g: Gate) -> CombinedTableau:
    return ct.apply(g)


def read_pushforward_generator(ct: CombinedTableau, g: int) -> PauliVec:
    return ct.read_pushforward_generator(g)


def pushforward_general(ct: CombinedTableau, p: PauliVec) -> PauliVec:
    return ct.pushforward(p)
