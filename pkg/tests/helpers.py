"""Random circuits and Paulis for property tests."""

from __future__ import annotations

import random

from parityflow import Gate, PauliVec

ONE_QUBIT = ("h", "s", "sdg", "x", "y", "z")


def random_gate(rng: random.Random, n: int, names=ONE_QUBIT + ("cnot",)) -> Gate:
    name = rng.choice(names if n > 1 else [g for g in names if g != "cnot"])
    if name == "cnot":
        c, t = rng.sample(range(n), 2)
        return Gate.cnot(c, t)
    return Gate(name, (rng.randrange(n),))


def random_circuit(rng: random.Random, n: int, depth: int, names=ONE_QUBIT + ("cnot",)):
    return [random_gate(rng, n, names) for _ in range(depth)]


def random_pauli(rng: random.Random, n: int) -> PauliVec:
    return PauliVec(n, rng.randrange(4), rng.getrandbits(n) if n else 0, rng.getrandbits(n) if n else 0)


def all_paulis(n: int, phases=range(4)):
    for k in phases:
        for x in range(2**n):
            for z in range(2**n):
                yield PauliVec(n, k, x, z)
