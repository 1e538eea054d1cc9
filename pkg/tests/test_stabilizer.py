import random
from pathlib import Path

import numpy as np
import pytest

from parityflow import (
    AuxMarks,
    AuxSpec,
    AuxState,
    CombinedTableau,
    Gate,
    PauliVec,
    check_rotation,
    fast_violation_check,
    init_aux,
    parse_circuit,
    render_label,
    stabilizer_commutes,
    symplectic_product,
    track,
)
from parityflow.circuit import Clifford
from parityflow.stabilizer import prep_gates, render_report

from helpers import random_circuit, random_pauli
from oracle import AUX_STABILIZERS, AUX_VECTORS, circuit_unitary, exact_equal, kron_all, pmat

CIRCUITS = Path(__file__).resolve().parent.parent / "circuits"


def aux_setup(n_logical, state, gates=()):
    n = n_logical + 1
    ct, marks = init_aux(CombinedTableau.new(n), AuxMarks(), AuxSpec(n_logical, state, "a"))
    for g in gates:
        ct.apply(g)
    return ct, marks


def test_zero_marks_only():
    ct, marks = aux_setup(1, AuxState.ZERO)
    assert ct == CombinedTableau.new(2)
    (m,) = list(marks)
    assert (m.trivial, m.violating, m.negative) == ("Z", "X", False)


@pytest.mark.parametrize(
    "state, trivial, negative",
    [(AuxState.ONE, "Z", True), (AuxState.PLUS, "X", False), (AuxState.MINUS, "X", True),
     (AuxState.PLUS_I, "X", False), (AuxState.MINUS_I, "X", True)],
)
def test_marks_per_state(state, trivial, negative):
    _, marks = aux_setup(0, state)
    (m,) = list(marks)
    assert (m.trivial, m.negative) == (trivial, negative)


def test_reinit_rejected():
    ct, marks = aux_setup(0, AuxState.PLUS)
    with pytest.raises(ValueError):
        init_aux(ct, marks, AuxSpec(0, AuxState.ZERO, "a"))


def test_one_prep_circuit_labels():
    # tracking the preparation gates from |0> reproduces the drawn |1> labels
    ct, marks = aux_setup(0, AuxState.ZERO, prep_gates(AuxState.ONE, 0))
    lm = marks.label_marks()
    assert render_label(ct.flow.x_row(0), ["a"], lm) == "+ X(a!)"
    assert render_label(ct.flow.z_row(0), ["a"], lm) == "- Z(a.)"
    assert ct.header() == "(-|+)"


def test_plus_then_s_labels():
    ct, marks = aux_setup(0, AuxState.PLUS_I)
    lm = marks.label_marks()
    assert render_label(ct.flow.x_row(0), ["a"], lm) == "-i X(a.) Z(a!)"
    assert ct.header() == "(+|i)"
    # X and Z rotations violate, Y is the stabilizer itself
    assert not check_rotation(ct, marks, PauliVec.x(1, 0)).allowed
    assert not check_rotation(ct, marks, PauliVec.z(1, 0)).allowed
    rep = check_rotation(ct, marks, PauliVec.y(1, 0))
    assert rep.allowed and rep.raw_label == PauliVec(1, 0, 1, 0)
    assert rep.logical == PauliVec(0, 0, 0, 0)


def test_one_state_z_strips_to_minus_identity():
    ct, marks = aux_setup(1, AuxState.ONE)
    rep = check_rotation(ct, marks, PauliVec.z(2, 1))
    assert rep.raw_label == PauliVec(2, 0, 0, 0b10)
    assert rep.allowed and rep.logical == PauliVec(1, 2, 0, 0)


def aux_heisenberg():
    return track(parse_circuit((CIRCUITS / "heisenberg_aux.pf").read_text()))


def test_fig_aux_y_rotation():
    tl = aux_heisenberg()
    ev = tl.events[2]
    assert ev.report.raw_label == PauliVec.from_bits(0, "111", "110")
    assert ev.report.allowed
    assert ev.report.logical == PauliVec.from_bits(0, "11", "11")


def test_fig_aux_stabilizer_pushforward():
    tl = aux_heisenberg()
    ct = tl.snapshots[tl.events[0].snapshot].state
    stab = PauliVec.x(3, 2)
    pushed = ct.pushforward(stab)
    # X1 Z2 Y_a = i X1 X_a Z2 Z_a; the dense oracle agrees on the + sign
    assert pushed == PauliVec.from_bits(1, "101", "011")
    ops = tl.circuit.ops[: tl.events[0].step]
    gates = [op.gate for op in ops if isinstance(op, Clifford)]
    u, scale = circuit_unitary(gates, 3)
    assert exact_equal(pmat(pushed), u @ pmat(stab) @ u.conj().T / scale)
    y_a = PauliVec.y(3, 2)
    assert stabilizer_commutes(ct, stab, y_a)
    assert not stabilizer_commutes(ct, stab, PauliVec.x(3, 2))


def test_stabilizer_commutes_identity():
    ct = CombinedTableau.new(2).apply(Gate.h(0))
    assert stabilizer_commutes(ct, PauliVec.identity(2), PauliVec.x(2, 0))


@pytest.mark.parametrize("seed", range(20))
def test_triple_equivalence(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    ct = CombinedTableau.new(n)
    for g in random_circuit(rng, n, 40):
        ct.apply(g)
    for _ in range(20):
        stab, q = random_pauli(rng, n), random_pauli(rng, n)
        bil = not stabilizer_commutes(ct, stab, q)
        assert bil == bool(symplectic_product(ct.pullback(q), stab))
        assert bil == bool(symplectic_product(q, ct.pushforward(stab)))


def test_fast_check_trivial_cases():
    ct = CombinedTableau.new(2).apply(Gate.h(0))
    assert fast_violation_check(ct, AuxMarks(), PauliVec.x(2, 0))
    ct, marks = aux_setup(1, AuxState.PLUS, [Gate.cnot(1, 0)])
    assert fast_violation_check(ct, marks, PauliVec.identity(2))


def test_fast_check_agrees_with_full_check():
    rng = random.Random(7)
    states = list(AuxState)
    for _ in range(10_000 // 20):
        n1 = rng.randint(0, 3)
        n_aux = rng.randint(1, 2)
        n = n1 + n_aux
        ct, marks = CombinedTableau.new(n), AuxMarks()
        for a in range(n_aux):
            ct, marks = init_aux(ct, marks, AuxSpec(n1 + a, rng.choice(states), f"a{a}"))
        for g in random_circuit(rng, n, rng.randint(0, 15)):
            ct.apply(g)
        for _ in range(20):
            p = random_pauli(rng, n)
            assert fast_violation_check(ct, marks, p) == check_rotation(ct, marks, p).allowed


def test_render_report_forms():
    ct, marks = aux_setup(1, AuxState.ZERO, [Gate.cnot(0, 1)])
    names = ["1", "a"]
    ok = check_rotation(ct, marks, PauliVec.z(2, 1))
    assert render_report(ok, names, marks, names[:1]) == "ALLOWED + Z(1,a.) => + Z(1)"
    bad = check_rotation(ct, marks, PauliVec.x(2, 1))
    assert render_report(bad, names, marks, names[:1]) == "VIOLATES aux=a + X(a!)"


# ---------------------------------------------------------------- dense oracle


def strip_oracle_case(rng, state: AuxState, depth: int = 20, paulis: int = 30):
    """Check every rotation on a random 2+1 circuit against dense matrices.

    Returns the number of allowed and disallowed Paulis seen.
    """
    n = 3
    ct, marks = aux_setup(2, state)
    gates = random_circuit(rng, n, rng.randint(0, depth))
    for g in gates:
        ct.apply(g)
    # physical start: |psi> (x) |state>; the library's own S for +-i is not in `gates`
    u, scale = circuit_unitary(gates, n)
    v = AUX_VECTORS[state.value]
    embed = np.kron(np.eye(4), v.reshape(2, 1))  # 8 x 4 isometry, unnormalized
    stab = u @ kron_all([np.eye(2), np.eye(2), AUX_STABILIZERS[state.value]]) @ u.conj().T / scale
    seen = [0, 0]
    for _ in range(paulis):
        p = random_pauli(rng, n)
        if p.kappa % 2 != (p.xi & p.zeta).bit_count() % 2:
            p = PauliVec(n, p.kappa + 1, p.xi, p.zeta)  # make it Hermitian
        rep = check_rotation(ct, marks, p)
        conj = u.conj().T @ pmat(p) @ u / scale
        if rep.allowed:
            logical = np.kron(pmat(rep.logical), v.reshape(2, 1))
            assert exact_equal(conj @ embed, logical), (state, p, rep)
            # half-angle rotation, up to the common 1/sqrt(2)
            rot = np.eye(8) + 1j * conj
            assert exact_equal(rot @ embed, np.kron(np.eye(4) + 1j * pmat(rep.logical), v.reshape(2, 1)))
            seen[0] += 1
        else:
            pm = pmat(p)
            assert exact_equal(pm @ stab, -stab @ pm), (state, p, rep)
            seen[1] += 1
    return seen


@pytest.mark.parametrize("state", list(AuxState))
def test_strip_soundness_small(state):
    rng = random.Random(hash(state.value) % 1000)
    totals = [0, 0]
    for _ in range(15):
        a, b = strip_oracle_case(rng, state)
        totals[0] += a
        totals[1] += b
    assert totals[0] and totals[1]
