"""Quantum-mechanical reference for 1, 2 and 3 spin-1/2 particles.

State vectors with explicit projective collapse; dimensions never exceed 8,
so dense complex matrices are exact enough for every comparison made here.
Spin observables carry eigenvalues +-1 (outcome labels; no hbar/2 anywhere)
and only probabilities and expectation values are ever exposed.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

Vec3 = tuple[float, float, float]

STATE_TOL = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def spin_op(n: Sequence[float]) -> np.ndarray:
    """n . sigma for a unit direction n: Hermitian, traceless, squares to 1."""
    x, y, z = (float(c) for c in n)
    norm = math.sqrt(x * x + y * y + z * z)
    if abs(norm - 1.0) > STATE_TOL:
        raise ValueError(f"direction {n!r} is not unit length (norm {norm!r})")
    return x * PAULI_X + y * PAULI_Y + z * PAULI_Z


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the left factor as the slower index."""
    out = np.kron(a, b)
    if out.ndim == 2 and out.shape[0] * out.shape[1] > 64:
        raise ValueError("tensor product exceeds 3 spin-1/2 particles")
    if out.ndim == 1 and out.shape[0] > 8:
        raise ValueError("tensor product exceeds 3 spin-1/2 particles")
    return out


def ket_z(sign: int) -> np.ndarray:
    """z-basis eigenstate with eigenvalue `sign` in {+1, -1}."""
    if sign == 1:
        return np.array([1, 0], dtype=complex)
    if sign == -1:
        return np.array([0, 1], dtype=complex)
    raise ValueError("sign must be +1 or -1")


def singlet_state() -> np.ndarray:
    """(|+-> - |-+>)/sqrt(2): perfect anticorrelation in every direction."""
    state = (tensor(ket_z(1), ket_z(-1)) - tensor(ket_z(-1), ket_z(1))) / math.sqrt(2.0)
    return state


def product_state(pattern: Sequence[int]) -> np.ndarray:
    """z-basis product state for a +-1 pattern of 2 or 3 particles."""
    if len(pattern) not in (2, 3):
        raise ValueError("pattern must list 2 or 3 particles")
    state = ket_z(pattern[0])
    for sign in pattern[1:]:
        state = tensor(state, ket_z(sign))
    return state


def expectation(op: np.ndarray, state: np.ndarray) -> float:
    value = np.vdot(state, op @ state)
    if abs(value.imag) > 1e-10:
        raise ValueError(f"expectation of a non-Hermitian operator: {value!r}")
    return float(value.real)


def singlet_correlation(a: Sequence[float], b: Sequence[float]) -> float:
    """<psi_s| (a.sigma) x (b.sigma) |psi_s>; analytically -a.b."""
    return expectation(tensor(spin_op(a), spin_op(b)), singlet_state())


def sequential_probabilities(state: np.ndarray,
                             directions: Sequence[Sequence[float]],
                             outcomes: Sequence[int]) -> float:
    """Probability of a +-1 outcome sequence under projective measurements
    with collapse after each step, for a single spin-1/2 state."""
    psi = np.asarray(state, dtype=complex)
    if psi.shape != (2,):
        raise ValueError("sequential probabilities take a single-particle state")
    if len(directions) != len(outcomes) or not directions:
        raise ValueError("directions and outcomes must be equal-length, nonempty")
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > STATE_TOL:
        raise ValueError(f"state norm {norm!r} is not 1")
    for n, outcome in zip(directions, outcomes):
        if outcome not in (1, -1):
            raise ValueError("outcomes must be +1 or -1")
        projector = (IDENTITY_2 + outcome * spin_op(n)) / 2.0
        psi = projector @ psi
    return float(np.vdot(psi, psi).real)


def product_state_correlation(pattern: Sequence[int],
                              pair: tuple[int, int],
                              direction: Sequence[float]) -> float:
    """Expectation of (n.sigma)x(n.sigma) on the chosen pair of a z-basis
    product state, identity on any remaining particle."""
    count = len(pattern)
    if count not in (2, 3):
        raise ValueError("pattern must list 2 or 3 particles")
    i, j = pair
    if i == j or not (0 <= i < count and 0 <= j < count):
        raise ValueError(f"pair {pair!r} must be two distinct particle indexes")
    op = None
    for idx in range(count):
        factor = spin_op(direction) if idx in (i, j) else IDENTITY_2
        op = factor if op is None else tensor(op, factor)
    return expectation(op, product_state(pattern))


def chsh_value(a: Sequence[float], a2: Sequence[float],
               b: Sequence[float], b2: Sequence[float]) -> float:
    """|E(a,b) - E(a,b2)| + |E(a2,b) + E(a2,b2)| on the singlet state."""
    e = singlet_correlation
    return abs(e(a, b) - e(a, b2)) + abs(e(a2, b) + e(a2, b2))
