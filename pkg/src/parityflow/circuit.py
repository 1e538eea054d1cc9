"""Circuit text format, tracking driver and label rendering.

Grammar, one statement per line, ``#`` starts a comment::

    qubits <n>
    aux <name> <0|1|+|-|+i|-i>
    h|s|sdg|x|y|z <q>
    cnot <control> <target>
    rx|ry|rz <q> <angle>
    rot <pauli-string> <q>... <angle>
    slice

Logical qubits are numbered ``1..n``; aux qubits use their declared names and are
placed after the logical ones internally.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Sequence, Union

from .combined import CombinedTableau
from .pauli import PauliVec, multi_product, render_label
from .stabilizer import (
    AuxMarks,
    AuxSpec,
    AuxState,
    RotationReport,
    check_rotation,
    init_aux,
)
from .tableau import Gate

__all__ = [
    "CircuitError",
    "Clifford",
    "Rotation",
    "Slice",
    "Circuit",
    "Snapshot",
    "RotationEvent",
    "Timeline",
    "parse_circuit",
    "track",
    "render_labels",
]


class CircuitError(ValueError):
    def __init__(self, msg: str, line: int, col: int) -> None:
        super().__init__(f"line {line}, col {col}: {msg}")
        self.msg, self.line, self.col = msg, line, col


@dataclass(frozen=True)
class Clifford:
    gate: Gate


@dataclass(frozen=True)
class Rotation:
    axis: PauliVec
    angle: str
    text: str = ""  # source form, e.g. "rx 1" or "rot iXZ 1 2"


@dataclass(frozen=True)
class Slice:
    pass


Step = Union[Clifford, Rotation, Slice]


@dataclass
class Circuit:
    n_logical: int
    aux: list[AuxSpec] = field(default_factory=list)
    ops: list[Step] = field(default_factory=list)

    @property
    def n_total(self) -> int:
        return self.n_logical + len(self.aux)

    @property
    def names(self) -> list[str]:
        return [str(j + 1) for j in range(self.n_logical)] + [a.name for a in self.aux]

    def to_text(self) -> str:
        names = self.names
        out = [f"qubits {self.n_logical}"]
        out += [f"aux {a.name} {a.state.value}" for a in self.aux]
        for op in self.ops:
            if isinstance(op, Slice):
                out.append("slice")
            elif isinstance(op, Clifford):
                out.append(" ".join([op.gate.name, *(names[q] for q in op.gate.qubits)]))
            else:
                out.append(f"{_axis_text(op.axis, names)} {op.angle}")
        return "\n".join(out) + "\n"


_ROT1 = {"rx": "X", "ry": "Y", "rz": "Z"}
_GATES1 = ("h", "s", "sdg", "x", "y", "z")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_PAULI = re.compile(r"(\+|-|i|-i|\+i)?([IXYZ]+)$")
_PHASE = {None: 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}


def _axis_text(p: PauliVec, names: Sequence[str]) -> str:
    # shortest faithful spelling: single-qubit rotations use rx/ry/rz
    qs = [j for j in range(p.n) if ((p.xi | p.zeta) >> j) & 1]
    letters = []
    ops = []
    for j in qs:
        xb, zb = (p.xi >> j) & 1, (p.zeta >> j) & 1
        letters.append("Y" if xb and zb else ("X" if xb else "Z"))
        ops.append(PauliVec.y(p.n, j) if xb and zb else PauliVec(p.n, 0, xb << j, zb << j))
    k = (p.kappa - multi_product(ops, p.n).kappa) & 3
    if len(qs) == 1 and k == 0:
        return f"r{letters[0].lower()} {names[qs[0]]}"
    phase = ("", "i", "-", "-i")[k]
    return " ".join(["rot", phase + "".join(letters), *(names[j] for j in qs)])


def _tokens(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_circuit(text: str) -> Circuit:
    """Parse the circuit format; raises ``CircuitError`` at the first problem."""
    circ: Circuit | None = None
    aux_names: dict[str, int] = {}
    pending: list[tuple[int, list[tuple[str, int]]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        head, col = toks[0]
        head = head.lower()
        if head == "qubits":
            if circ is not None:
                raise CircuitError("qubits declared twice", lineno, col)
            if len(toks) != 2 or not toks[1][0].isdigit():
                raise CircuitError("expected 'qubits <n>'", lineno, col)
            circ = Circuit(int(toks[1][0]))
            continue
        if circ is None:
            raise CircuitError("missing 'qubits <n>' header", lineno, col)
        if head == "aux":
            if len(toks) != 3:
                raise CircuitError("expected 'aux <name> <state>'", lineno, col)
            (name, ncol), (st, scol) = toks[1], toks[2]
            if not _NAME.match(name):
                raise CircuitError(f"bad aux name {name!r}", lineno, ncol)
            if name in aux_names:
                raise CircuitError(f"duplicate aux {name!r}", lineno, ncol)
            try:
                state = AuxState.parse(st)
            except ValueError as e:
                raise CircuitError(str(e), lineno, scol) from None
            aux_names[name] = len(aux_names)
            circ.aux.append(AuxSpec(-1, state, name))
            continue
        pending.append((lineno, toks))
    if circ is None:
        raise CircuitError("missing 'qubits <n>' header", 1, 1)
    n1 = circ.n_logical
    circ.aux = [AuxSpec(n1 + i, a.state, a.name) for i, a in enumerate(circ.aux)]
    n = circ.n_total

    def qubit(tok: str, col: int, lineno: int) -> int:
        if tok.isdigit():
            q = int(tok)
            if 1 <= q <= n1:
                return q - 1
        elif tok in aux_names:
            return n1 + aux_names[tok]
        raise CircuitError(f"undeclared qubit {tok!r}", lineno, col)

    for lineno, toks in pending:
        head, col = toks[0]
        head = head.lower()
        args = toks[1:]
        if head == "slice":
            if args:
                raise CircuitError("slice takes no arguments", lineno, args[0][1])
            circ.ops.append(Slice())
        elif head in _GATES1:
            if len(args) != 1:
                raise CircuitError(f"{head} takes one qubit", lineno, col)
            circ.ops.append(Clifford(Gate(head, (qubit(*args[0], lineno),))))
        elif head == "cnot":
            if len(args) != 2:
                raise CircuitError("cnot takes control and target", lineno, col)
            c, t = qubit(*args[0], lineno), qubit(*args[1], lineno)
            if c == t:
                raise CircuitError("control equals target", lineno, args[1][1])
            circ.ops.append(Clifford(Gate.cnot(c, t)))
        elif head in _ROT1:
            if len(args) != 2:
                raise CircuitError(f"{head} takes a qubit and an angle", lineno, col)
            q = qubit(*args[0], lineno)
            axis = _single(n, _ROT1[head], q)
            circ.ops.append(Rotation(axis, args[1][0], f"{head} {args[0][0]}"))
        elif head == "rot":
            circ.ops.append(_parse_rot(args, n, qubit, lineno, col))
        else:
            raise CircuitError(f"unknown gate {head!r}", lineno, col)
    return circ


def _single(n: int, letter: str, q: int) -> PauliVec:
    return {"X": PauliVec.x, "Y": PauliVec.y, "Z": PauliVec.z}[letter](n, q)


def _parse_rot(args, n, qubit, lineno, col) -> Rotation:
    if len(args) < 3:
        raise CircuitError("expected 'rot <pauli> <q>... <angle>'", lineno, col)
    (ps, pcol), qtoks, (angle, _) = args[0], args[1:-1], args[-1]
    m = _PAULI.match(ps)
    if not m:
        raise CircuitError(f"malformed Pauli {ps!r}", lineno, pcol)
    letters = m.group(2)
    if len(letters) != len(qtoks):
        raise CircuitError(
            f"Pauli {ps!r} has {len(letters)} letters for {len(qtoks)} qubits", lineno, pcol
        )
    qs = [qubit(t, c, lineno) for t, c in qtoks]
    if len(set(qs)) != len(qs):
        raise CircuitError("repeated qubit in rot", lineno, qtoks[0][1])
    factors = [PauliVec.identity(n, _PHASE[m.group(1)])]
    factors += [_single(n, a, q) for a, q in zip(letters, qs) if a != "I"]
    axis = multi_product(factors)
    return Rotation(axis, angle, " ".join(["rot", ps, *(t for t, _ in qtoks)]))


# ---------------------------------------------------------------- tracking


@dataclass(frozen=True)
class Snapshot:
    cliffords: int  # number of Clifford ops applied so far
    state: CombinedTableau


@dataclass(frozen=True)
class RotationEvent:
    step: int  # index into Circuit.ops
    snapshot: int
    angle: str
    axis: PauliVec
    report: RotationReport


@dataclass
class Timeline:
    circuit: Circuit
    marks: AuxMarks
    snapshots: list[Snapshot]
    events: list[RotationEvent]

    @property
    def reports(self) -> list[RotationReport]:
        return [e.report for e in self.events]

    @property
    def final(self) -> CombinedTableau:
        return self.snapshots[-1].state

    def to_dict(self) -> dict:
        names = self.circuit.names
        logical = names[: self.circuit.n_logical]
        lm = self.marks.label_marks()
        return {
            "qubits": names,
            "aux": [{"name": a.name, "state": a.state.value} for a in self.circuit.aux],
            "snapshots": [
                {"cliffords": s.cliffords, "header": s.state.header(), **s.state.to_dict()}
                for s in self.snapshots
            ],
            "rotations": [
                {
                    "step": e.step,
                    "snapshot": e.snapshot,
                    "angle": e.angle,
                    "axis": render_label(e.axis, names),
                    "label": render_label(e.report.raw_label, names, lm),
                    "allowed": e.report.allowed,
                    "logical": None
                    if e.report.logical is None
                    else render_label(e.report.logical, logical),
                    "violating_aux": [names[q] for q in e.report.violating_auxes],
                }
                for e in self.events
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def track(c: Circuit) -> Timeline:
    """Walk ``c`` once, recording snapshots and a report for every rotation.

    Snapshot 0 is the state after aux initialization.  A new snapshot is taken at
    each ``slice`` or rotation that follows at least one Clifford gate, and at the
    end.
    """
    ct = CombinedTableau.new(c.n_total)
    marks = AuxMarks()
    for spec in c.aux:
        ct, marks = init_aux(ct, marks, spec)
    snaps = [Snapshot(0, ct.copy())]
    events: list[RotationEvent] = []
    count = 0

    def snap() -> None:
        if snaps[-1].cliffords != count:
            snaps.append(Snapshot(count, ct.copy()))

    for i, op in enumerate(c.ops):
        if isinstance(op, Clifford):
            ct.apply(op.gate)
            count += 1
        elif isinstance(op, Slice):
            snap()
        else:
            snap()
            rep = check_rotation(ct, marks, op.axis)
            events.append(RotationEvent(i, len(snaps) - 1, op.angle, op.axis, rep))
    snap()
    return Timeline(c, marks, snaps, events)


def render_labels(
    ct: CombinedTableau, names: Sequence[str] | None = None, marks: AuxMarks | None = None
) -> str:
    """Header line plus one line per qubit with its X- and Z-label."""
    n = ct.n
    names = list(names) if names is not None else [str(j + 1) for j in range(n)]
    lm = (marks or AuxMarks()).label_marks()
    xs = [render_label(ct.flow.x_row(j), names, lm) for j in range(n)]
    zs = [render_label(ct.flow.z_row(j), names, lm) for j in range(n)]
    wn = max((len(s) for s in names), default=0)
    wx = max((len(s) for s in xs), default=0)
    lines = [f"{'':<{wn}}  {ct.header()}"]
    for nm, x, z in zip(names, xs, zs):
        lines.append(f"{nm:<{wn}}  X: {x:<{wx}}  Z: {z}")
    return "\n".join(lines)
