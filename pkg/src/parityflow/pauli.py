"""Pauli operators in XZ standard form.

A ``PauliVec`` stores the presentation ``(kappa | xi | zeta)`` of the operator
``i**kappa * X**xi * Z**zeta`` on ``n`` qubits.  The bit vectors are packed
into Python ints; bit ``j`` belongs to qubit ``j`` (0-based).  Text formats are
1-based.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

__all__ = [
    "PauliVec",
    "XYZRep",
    "LabelError",
    "NotHermitianError",
    "star_mul",
    "star_inverse",
    "order",
    "is_proper",
    "symplectic_product",
    "multi_product",
    "to_xyz",
    "from_xyz",
    "render_label",
    "parse_label",
    "render_phase",
    "bits_to_str",
    "str_to_bits",
]


def _parity(v: int) -> int:
    return v.bit_count() & 1


@dataclass(frozen=True, slots=True)
class PauliVec:
    n: int
    kappa: int
    xi: int
    zeta: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not 0 <= self.kappa < 4:
            object.__setattr__(self, "kappa", self.kappa % 4)
        lim = 1 << self.n
        if not (0 <= self.xi < lim and 0 <= self.zeta < lim):
            raise ValueError(f"bit vectors do not fit in {self.n} qubits")

    @classmethod
    def identity(cls, n: int, kappa: int = 0) -> PauliVec:
        return cls(n, kappa, 0, 0)

    @classmethod
    def x(cls, n: int, j: int) -> PauliVec:
        _check_index(n, j)
        return cls(n, 0, 1 << j, 0)

    @classmethod
    def z(cls, n: int, j: int) -> PauliVec:
        _check_index(n, j)
        return cls(n, 0, 0, 1 << j)

    @classmethod
    def y(cls, n: int, j: int) -> PauliVec:
        _check_index(n, j)
        return cls(n, 1, 1 << j, 1 << j)

    @classmethod
    def from_bits(cls, kappa: int, xi: str, zeta: str) -> PauliVec:
        """Build from bit strings written qubit 1 first, e.g. ``(1, "011", "101")``."""
        if len(xi) != len(zeta):
            raise ValueError("xi and zeta strings differ in length")
        return cls(len(xi), kappa, str_to_bits(xi), str_to_bits(zeta))

    @property
    def is_phase(self) -> bool:
        return self.xi == 0 and self.zeta == 0

    def xi_bit(self, j: int) -> int:
        return (self.xi >> j) & 1

    def zeta_bit(self, j: int) -> int:
        return (self.zeta >> j) & 1

    def bits(self) -> tuple[int, str, str]:
        return self.kappa, bits_to_str(self.xi, self.n), bits_to_str(self.zeta, self.n)

    def __str__(self) -> str:
        k, x, z = self.bits()
        return f"({k}|{x}|{z})"


def _check_index(n: int, j: int) -> None:
    if not 0 <= j < n:
        raise IndexError(f"qubit index {j} out of range for n={n}")


def bits_to_str(v: int, n: int) -> str:
    return "".join("1" if (v >> j) & 1 else "0" for j in range(n))


def str_to_bits(s: str) -> int:
    out = 0
    for j, ch in enumerate(s):
        if ch == "1":
            out |= 1 << j
        elif ch != "0":
            raise ValueError(f"not a bit string: {s!r}")
    return out


def _same_n(a: PauliVec, b: PauliVec) -> None:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")


def star_mul(a: PauliVec, b: PauliVec) -> PauliVec:
    """Group product; the presentation of the operator product ``a * b``."""
    _same_n(a, b)
    k = a.kappa + b.kappa + 2 * _parity(a.zeta & b.xi)
    return PauliVec(a.n, k & 3, a.xi ^ b.xi, a.zeta ^ b.zeta)


def star_inverse(p: PauliVec) -> PauliVec:
    k = -p.kappa + 2 * _parity(p.zeta & p.xi)
    return PauliVec(p.n, k & 3, p.xi, p.zeta)


def order(p: PauliVec) -> int:
    if p.kappa == 0 and p.is_phase:
        return 1
    if (p.kappa + _parity(p.zeta & p.xi)) % 2 == 0:
        return 2
    return 4


def is_proper(p: PauliVec) -> bool:
    """Hermitian and not a multiple of the identity."""
    return not p.is_phase and order(p) <= 2


def symplectic_product(a: PauliVec, b: PauliVec) -> int:
    _same_n(a, b)
    return _parity((a.zeta & b.xi) ^ (a.xi & b.zeta))


def multi_product(ps: Sequence[PauliVec], n: int | None = None) -> PauliVec:
    """Ordered product ``ps[0] * ps[1] * ...``; an empty list gives the identity."""
    if not ps:
        if n is None:
            raise ValueError("empty product needs an explicit n")
        return PauliVec.identity(n)
    acc = ps[0]
    for p in ps[1:]:
        acc = star_mul(acc, p)
    return acc


class NotHermitianError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class XYZRep:
    """``(-1)**delta`` times the tensor product with X, Y or Z where (x_j, z_j) is 10, 11 or 01."""

    n: int
    x: int
    z: int
    delta: int

    def __post_init__(self) -> None:
        if self.delta not in (0, 1):
            raise ValueError("delta must be 0 or 1")
        lim = 1 << self.n
        if not (0 <= self.x < lim and 0 <= self.z < lim):
            raise ValueError(f"bit vectors do not fit in {self.n} qubits")


def from_xyz(r: XYZRep) -> PauliVec:
    return PauliVec(r.n, (2 * r.delta + (r.z & r.x).bit_count()) & 3, r.x, r.z)


def to_xyz(p: PauliVec) -> XYZRep:
    if order(p) == 4:
        raise NotHermitianError(f"{p} is not Hermitian")
    d = (p.kappa - (p.zeta & p.xi).bit_count()) & 3
    return XYZRep(p.n, p.xi, p.zeta, d >> 1)


# ---------------------------------------------------------------- labels

_PHASES = ("+", "i", "-", "-i")
_PHASE_IN = {"+": 0, "i": 1, "-": 2, "-i": 3, "i^0": 0, "i^1": 1, "i^2": 2, "i^3": 3}


class LabelError(ValueError):
    def __init__(self, msg: str, pos: int) -> None:
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def render_phase(kappa: int) -> str:
    return _PHASES[kappa & 3]


def _name(j: int, names: Sequence[str] | None) -> str:
    return names[j] if names is not None else str(j + 1)


def render_label(
    p: PauliVec,
    names: Sequence[str] | None = None,
    marks: Mapping[tuple[str, int], str] | None = None,
) -> str:
    """Render as ``PHASE [X(...)] [Z(...)]``.

    ``marks`` maps ``("X", j)`` or ``("Z", j)`` to a suffix drawn after index ``j``
    inside the respective group.
    """
    marks = marks or {}
    parts = [render_phase(p.kappa)]
    for tag, v in (("X", p.xi), ("Z", p.zeta)):
        if v:
            idx = [
                _name(j, names) + marks.get((tag, j), "")
                for j in range(p.n)
                if (v >> j) & 1
            ]
            parts.append(f"{tag}({','.join(idx)})")
    if p.is_phase:
        parts.append("I")
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<group>[XZ])\(|(?P<ident>I)\b|(?P<end>$))")


def parse_label(
    text: str, n: int | None = None, names: Sequence[str] | None = None
) -> PauliVec:
    """Inverse of ``render_label``.  Mark suffixes ``.`` and ``!`` are accepted and dropped."""
    if names is not None:
        if n is not None and n != len(names):
            raise ValueError("n disagrees with names")
        n = len(names)
        lookup = {s: j for j, s in enumerate(names)}
    else:
        lookup = None
    pos = len(text) - len(text.lstrip())
    m = re.compile(r"(i\^[0-3]|-i|[+\-i])").match(text, pos)
    if not m:
        raise LabelError("expected phase", pos)
    kappa = _PHASE_IN[m.group(1)]
    pos = m.end()
    bits = {"X": 0, "Z": 0}
    seen: list[str] = []
    saw_ident = False
    while True:
        t = _TOKEN.match(text, pos)
        if not t:
            raise LabelError("unexpected text", pos + len(text[pos:]) - len(text[pos:].lstrip()))
        if t.group("end") is not None:
            break
        if t.group("ident"):
            if seen or saw_ident:
                raise LabelError("stray I", t.start("ident"))
            saw_ident = True
            pos = t.end()
            continue
        tag = t.group("group")
        if saw_ident or tag in seen or (tag == "X" and "Z" in seen):
            raise LabelError(f"misplaced {tag} group", t.start("group"))
        seen.append(tag)
        close = text.find(")", t.end())
        if close < 0:
            raise LabelError("unclosed group", t.start("group"))
        body_start = t.end()
        for item in text[body_start:close].split(","):
            offset = body_start + len(item) - len(item.lstrip())
            tok = item.strip().rstrip(".!")
            if not tok:
                raise LabelError("empty index", offset)
            j = _resolve(tok, lookup, offset)
            if bits[tag] >> j & 1:
                raise LabelError(f"duplicate index {tok}", offset)
            bits[tag] |= 1 << j
            body_start += len(item) + 1
        pos = close + 1
    if not seen and not saw_ident:
        raise LabelError("expected I or a group", pos)
    top = max(bits["X"].bit_length(), bits["Z"].bit_length())
    if n is None:
        n = top
    elif top > n:
        raise LabelError(f"index beyond {n} qubits", 0)
    return PauliVec(n, kappa, bits["X"], bits["Z"])


def _resolve(tok: str, lookup: Mapping[str, int] | None, pos: int) -> int:
    if lookup is not None:
        if tok not in lookup:
            raise LabelError(f"unknown qubit {tok!r}", pos)
        return lookup[tok]
    if not tok.isdigit() or int(tok) < 1:
        raise LabelError(f"bad index {tok!r}", pos)
    return int(tok) - 1


def iter_bits(v: int) -> Iterable[int]:
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low
