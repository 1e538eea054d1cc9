"""Auxiliary qubits initialized in Pauli eigenstates.

An auxiliary qubit ``a`` prepared in ``|0>``/``|1>`` is stabilized by ``+-Zbar_a``,
in ``|+>``/``|->`` by ``+-Xbar_a``.  The stabilizing generator is marked trivial
(rendered with ``.``), the other one violating (``!``).  A physical Pauli is
allowed iff its pullback contains no violating index; its logical meaning is then
the pullback with the aux coordinates dropped, adjusted by ``-1`` for every
trivial index whose stabilizer carries a minus sign.

``|+i>``/``|-i>`` are handled as ``|+>``/``|->`` followed by a tracked S gate.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .combined import CombinedTableau
from .pauli import PauliVec, _parity, render_label
from .tableau import Gate

__all__ = [
    "AuxState",
    "AuxSpec",
    "AuxMark",
    "AuxMarks",
    "RotationReport",
    "init_aux",
    "prep_gates",
    "check_rotation",
    "fast_violation_check",
    "stabilizer_commutes",
    "render_report",
]


class AuxState(enum.Enum):
    ZERO = "0"
    ONE = "1"
    PLUS = "+"
    MINUS = "-"
    PLUS_I = "+i"
    MINUS_I = "-i"

    @classmethod
    def parse(cls, text: str) -> AuxState:
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"unknown aux state {text!r}") from None

    @property
    def base(self) -> AuxState:
        """The X/Z eigenstate this state reduces to."""
        return {AuxState.PLUS_I: AuxState.PLUS, AuxState.MINUS_I: AuxState.MINUS}.get(self, self)


@dataclass(frozen=True, slots=True)
class AuxSpec:
    qubit: int
    state: AuxState
    name: str = ""


@dataclass(frozen=True, slots=True)
class AuxMark:
    qubit: int
    state: AuxState  # always one of ZERO, ONE, PLUS, MINUS
    name: str = ""

    @property
    def trivial(self) -> str:
        """Which generator stabilizes the qubit: ``"Z"`` or ``"X"``."""
        return "Z" if self.state in (AuxState.ZERO, AuxState.ONE) else "X"

    @property
    def violating(self) -> str:
        return "X" if self.trivial == "Z" else "Z"

    @property
    def negative(self) -> bool:
        return self.state in (AuxState.ONE, AuxState.MINUS)

    def stabilizer(self, n: int) -> PauliVec:
        """The stabilizing logical generator with its sign, at time 0."""
        bit = 1 << self.qubit
        k = 2 if self.negative else 0
        if self.trivial == "Z":
            return PauliVec(n, k, 0, bit)
        return PauliVec(n, k, bit, 0)


@dataclass(frozen=True)
class AuxMarks:
    """All aux marks of a circuit, keyed by qubit index."""

    by_qubit: Mapping[int, AuxMark] = field(default_factory=dict)

    def __iter__(self):
        return iter(sorted(self.by_qubit.values(), key=lambda m: m.qubit))

    def __len__(self) -> int:
        return len(self.by_qubit)

    def __contains__(self, q: int) -> bool:
        return q in self.by_qubit

    def with_mark(self, m: AuxMark) -> AuxMarks:
        if m.qubit in self.by_qubit:
            raise ValueError(f"qubit {m.qubit + 1} already initialized")
        return AuxMarks({**self.by_qubit, m.qubit: m})

    def masks(self) -> tuple[int, int]:
        """Bits that must vanish in (xi, zeta) for a rotation to be allowed."""
        vx = vz = 0
        for m in self:
            if m.trivial == "Z":
                vx |= 1 << m.qubit
            else:
                vz |= 1 << m.qubit
        return vx, vz

    def label_marks(self) -> dict[tuple[str, int], str]:
        out = {}
        for m in self:
            out[(m.trivial, m.qubit)] = "."
            out[(m.violating, m.qubit)] = "!"
        return out


_PREP = {
    AuxState.ZERO: (),
    AuxState.ONE: ("h", "s", "s", "h"),
    AuxState.PLUS: ("h",),
    AuxState.MINUS: ("h", "s", "s"),
    AuxState.PLUS_I: ("h", "s"),
    AuxState.MINUS_I: ("h", "s", "s", "s"),
}


def prep_gates(state: AuxState, q: int) -> list[Gate]:
    """Gates preparing ``state`` from ``|0>`` on qubit ``q``."""
    return [Gate(name, (q,)) for name in _PREP[state]]


def init_aux(
    ct: CombinedTableau, marks: AuxMarks, spec: AuxSpec
) -> tuple[CombinedTableau, AuxMarks]:
    """Mark ``spec.qubit`` as initialized; must run before any gate touches it.

    Eigenstates of X and Z need no tracked gates, only a mark.  For ``+-i`` the S
    gate taking ``|+->`` to ``|+-i>`` is tracked.
    """
    if not 0 <= spec.qubit < ct.n:
        raise IndexError(f"aux qubit {spec.qubit} out of range")
    marks = marks.with_mark(AuxMark(spec.qubit, spec.state.base, spec.name))
    if spec.state in (AuxState.PLUS_I, AuxState.MINUS_I):
        ct.apply(Gate.s(spec.qubit))
    return ct, marks


@dataclass(frozen=True)
class RotationReport:
    raw_label: PauliVec
    allowed: bool
    logical: PauliVec | None
    violating_auxes: tuple[int, ...] = ()


def check_rotation(ct: CombinedTableau, marks: AuxMarks, p: PauliVec) -> RotationReport:
    raw = ct.pullback(p)
    bad = []
    for m in marks:
        bits = raw.xi if m.trivial == "Z" else raw.zeta
        if (bits >> m.qubit) & 1:
            bad.append(m.qubit)
    if bad:
        return RotationReport(raw, False, None, tuple(bad))
    aux_mask = 0
    k = raw.kappa
    for m in marks:
        aux_mask |= 1 << m.qubit
        bits = raw.zeta if m.trivial == "Z" else raw.xi
        if m.negative and (bits >> m.qubit) & 1:
            k += 2
    keep = [j for j in range(raw.n) if not (aux_mask >> j) & 1]
    logical = PauliVec(len(keep), k & 3, _project(raw.xi, keep), _project(raw.zeta, keep))
    return RotationReport(raw, True, logical, ())


def _project(v: int, keep: Sequence[int]) -> int:
    return sum(((v >> j) & 1) << i for i, j in enumerate(keep))


def fast_violation_check(ct: CombinedTableau, marks: AuxMarks, p: PauliVec) -> bool:
    """True iff ``p`` is allowed; XORs only the violating coordinates, no phases."""
    vx, vz = marks.masks()
    if not (vx | vz):
        return True
    n, rows = ct.n, ct.flow.rows
    acc = 0
    for off, v in ((1, p.xi), (1 + n, p.zeta)):
        j = 0
        while v:
            if v & 1:
                r = rows[off + j]
                acc ^= (r.xi & vx) | (r.zeta & vz)
            v >>= 1
            j += 1
    return acc == 0


def stabilizer_commutes(ct: CombinedTableau, stab: PauliVec, q: PauliVec) -> bool:
    """Whether time-0 ``stab`` and current-time ``q`` commute, as a bilinear sum.

    Sums the phaseless flow entries at rows picked by ``q`` and columns picked by
    ``stab`` with its X and Z halves swapped.
    """
    n = ct.n
    if stab.n != n or q.n != n:
        raise ValueError("dimension mismatch")
    rows = ct.flow.rows
    total = 0
    for off, v in ((1, q.xi), (1 + n, q.zeta)):
        for j in range(n):
            if (v >> j) & 1:
                r = rows[off + j]
                total ^= _parity((r.xi & stab.zeta) ^ (r.zeta & stab.xi))
    return total == 0


def render_report(
    r: RotationReport, names: Sequence[str], marks: AuxMarks, logical_names: Sequence[str]
) -> str:
    raw = render_label(r.raw_label, names, marks.label_marks())
    if r.allowed:
        return f"ALLOWED {raw} => {render_label(r.logical, logical_names)}"
    bad = ",".join(names[q] for q in r.violating_auxes)
    return f"VIOLATES aux={bad} {raw}"
