"""Seeded random generators for states, devices and whole strategies."""

from __future__ import annotations

import numpy as np

from .linalg import (
    ID2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    BinaryPovm,
    QubitState,
    bloch_compose,
    matrix_sqrt_psd,
)
from .scenario import BinaryInstrument, PreparationEnsemble, Strategy


def random_unit_vector(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_bloch_in_ball(rng: np.random.Generator) -> np.ndarray:
    return random_unit_vector(rng) * rng.uniform() ** (1.0 / 3.0)


def random_su2(rng: np.random.Generator) -> np.ndarray:
    """Haar-random SU(2) element via a uniform quaternion."""
    q = rng.normal(size=4)
    w, x, y, z = q / np.linalg.norm(q)
    return w * ID2 - 1j * (x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)


def random_state(rng: np.random.Generator) -> QubitState:
    n = random_bloch_in_ball(rng)
    return QubitState(bloch_compose(0.5, 0.5 * n), n)


def random_povm(rng: np.random.Generator, allow_offset: bool = True) -> BinaryPovm:
    """Random two-effect measurement; offsets stay inside the positivity cone."""
    eta = rng.uniform()
    c0 = rng.uniform(-1.0, 1.0) * (1.0 - eta) if allow_offset else 0.0
    return BinaryPovm.from_observable(c0, eta * random_unit_vector(rng))


def random_instrument(rng: np.random.Generator, luders: bool = False) -> BinaryInstrument:
    povm = random_povm(rng)
    if luders:
        return BinaryInstrument.luders(povm)
    unitaries = (random_su2(rng), random_su2(rng))
    kraus = tuple(
        (u @ matrix_sqrt_psd(e),) for u, e in zip(unitaries, povm.effects)
    )
    return BinaryInstrument(kraus, povm, ((unitaries[0],), (unitaries[1],)))


def random_preparations(rng: np.random.Generator) -> PreparationEnsemble:
    return PreparationEnsemble(tuple(random_state(rng) for _ in range(4)))


def random_strategy(rng: np.random.Generator, luders: bool = False) -> Strategy:
    """Random valid strategy with generic instruments and measurements."""
    return Strategy(
        random_preparations(rng),
        (random_instrument(rng, luders), random_instrument(rng, luders)),
        (random_povm(rng), random_povm(rng)),
    )
