"""Numerical side of the trade-off curve: best responses, boundary tracing,
see-saw search, exhaustive classical enumeration, and inequality samplers.

The reduced three-angle parameterization covers two antipodal pure
preparation pairs at relative angle ``theta`` with zero-offset unsharp
instruments along the pair axes; the final measurement is always handled
exactly through the largest-eigenvector best response.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .analytics import W_AB_MAX, boundary_wac
from .errors import (
    ConvergenceFailure,
    DomainError,
    InequalityViolation,
    InvalidPovm,
)
from .linalg import (
    BinaryPovm,
    bloch_compose,
    bloch_decompose,
    matrix_sqrt_psd,
    max_eigenpair,
    projective_povm,
    state_from_bloch,
    validate_povm,
)
from .sampling import random_unit_vector
from .scenario import (
    BinaryInstrument,
    PreparationEnsemble,
    Strategy,
    WitnessPair,
    difference_vectors,
    witness_ab,
    witness_ac,
    witness_pair,
)
from .strategies import (
    enumerate_classical_strategies,
    square_preparations,
    unsharp_axis_povm,
    witness_pair_classical,
)

X_AXIS = np.array([1.0, 0.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])
HALF_PI = 0.5 * np.pi


@dataclass(frozen=True)
class OptimizerConfig:
    grid_resolution: int = 512
    refinement_iterations: int = 40
    seesaw_restarts: int = 32
    convergence_epsilon: float = 1e-8
    rng_seed: int = 20250809

    def __post_init__(self):
        if min(self.grid_resolution, self.refinement_iterations, self.seesaw_restarts) < 1:
            raise DomainError("grid, refinement and restart counts must be positive")
        if not 0.0 < self.convergence_epsilon < 1e-3:
            raise DomainError("convergence_epsilon must lie in (0, 1e-3)")


@dataclass(frozen=True)
class ReducedParameters:
    """Angles of the reduced boundary problem.

    ``theta`` is the angle between the two antipodal preparation pairs;
    ``cos(phi0)`` and ``cos(phi1)`` are the instrument sharpnesses along
    the two pair axes.
    """

    theta: float
    phi0: float
    phi1: float

    def __post_init__(self):
        for name, v in (("theta", self.theta), ("phi0", self.phi0), ("phi1", self.phi1)):
            if not -1e-12 <= v <= HALF_PI + 1e-12:
                raise DomainError(f"{name} = {v!r} outside [0, pi/2]")


def reduced_objective(r: ReducedParameters) -> float:
    """Best-response Alice-Charlie witness of the reduced strategy family.

    ``1/2 + (cos(t/2) + sin(t/2) + cos(t/2) sin(phi1) + sin(t/2) sin(phi0)) / 8``.
    """
    c, s = np.cos(0.5 * r.theta), np.sin(0.5 * r.theta)
    return float(0.5 + (c + s + c * np.sin(r.phi1) + s * np.sin(r.phi0)) / 8.0)


def reduced_constraint(r: ReducedParameters) -> float:
    """Alice-Bob witness of the reduced strategy family.

    ``(4 + 2 cos(t/2) cos(phi0) + 2 sin(t/2) cos(phi1)) / 8``; the factor 2
    carries the full length of the signed Bloch sums for pure antipodal
    pairs.
    """
    c, s = np.cos(0.5 * r.theta), np.sin(0.5 * r.theta)
    return float((4.0 + 2.0 * c * np.cos(r.phi0) + 2.0 * s * np.cos(r.phi1)) / 8.0)


def strategy_from_reduced(
    r: ReducedParameters,
    measurements: tuple[BinaryPovm, BinaryPovm] | None = None,
) -> Strategy:
    """Explicit strategy realizing the reduced parameters.

    The preparation pairs sit in the xz-plane symmetric about the x axis,
    so their signed Bloch sums point along x and z; the instruments are
    minimally disturbing along those axes.  Default measurements are the
    sharp x and z readouts (the best response on this family).
    """
    c, s = np.cos(0.5 * r.theta), np.sin(0.5 * r.theta)
    u = np.array([c, 0.0, s])
    w = np.array([c, 0.0, -s])
    states = tuple(state_from_bloch(n) for n in (u, w, -w, -u))
    instruments = (
        BinaryInstrument.luders(unsharp_axis_povm(X_AXIS, float(np.cos(r.phi0)))),
        BinaryInstrument.luders(unsharp_axis_povm(Z_AXIS, float(np.cos(r.phi1)))),
    )
    if measurements is None:
        measurements = (projective_povm(X_AXIS), projective_povm(Z_AXIS))
    return Strategy(PreparationEnsemble(states), instruments, measurements)


def charlie_best_response(
    preparations: PreparationEnsemble,
    instruments: tuple[BinaryInstrument, BinaryInstrument],
) -> tuple[tuple[BinaryPovm, BinaryPovm], float]:
    """Optimal final measurements given the rest of the strategy.

    For each of Charlie's inputs the optimal effect projects onto the
    largest eigenvector of ``sum_{y,b} K (gamma_z) K^dag`` where
    ``gamma_z = sum_x (-1)^{x_z} rho_x``; no other POVM scores higher.
    Returns the two rank-one projective measurements and the witness they
    achieve.  Ties (zero operator) resolve to the computational-basis
    readout.
    """
    m0, m1 = difference_vectors(preparations)
    povms = []
    value = 0.5
    for m in (m0, m1):
        gamma = bloch_compose(0.0, 0.5 * m)
        total = instruments[0].apply_channel(gamma)
        total += instruments[1].apply_channel(gamma)
        total = 0.5 * (total + total.conj().T)
        lam, vec = max_eigenpair(total, tol=np.inf)
        proj = np.outer(vec, vec.conj())
        proj = 0.5 * (proj + proj.conj().T)
        c0, cvec = bloch_decompose(2.0 * proj - np.eye(2))
        povms.append(BinaryPovm((proj, np.eye(2, dtype=complex) - proj), c0, cvec))
        value += lam / 16.0
    return (povms[0], povms[1]), float(value)


def solve_reduced_phi0(alpha: float, theta: float, phi1: float, slack: float = 1e-9):
    """Eliminate ``phi0`` from the witness constraint at level ``alpha``.

    Returns the angle whose cosine solves
    ``reduced_constraint = alpha`` exactly, or None when the requirement
    leaves [0, 1] by more than ``slack``.
    """
    c, s = np.cos(0.5 * theta), np.sin(0.5 * theta)
    required = (8.0 * alpha - 4.0 - 2.0 * s * np.cos(phi1)) / (2.0 * c)
    if required < -slack or required > 1.0 + slack:
        return None
    return float(np.arccos(np.clip(required, 0.0, 1.0)))


def _constrained_objective(alpha: float, theta: float, phi1: float) -> tuple[float, float | None]:
    """Boundary objective with ``phi0`` eliminated; equals the fixed-Charlie
    witness at unit overlaps (ideal final measurements)."""
    phi0 = solve_reduced_phi0(alpha, theta, phi1)
    if phi0 is None:
        return -1.0, None
    c, s = np.cos(0.5 * theta), np.sin(0.5 * theta)
    obj = 0.5 + (c + s + c * np.sin(phi1) + s * np.sin(phi0)) / 8.0
    return float(obj), phi0


def _grid_argmax(alpha: float, resolution: int) -> tuple[float, float, float]:
    thetas = np.linspace(0.0, HALF_PI, resolution)
    phis = np.linspace(0.0, HALF_PI, resolution)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    c, s = np.cos(0.5 * tt), np.sin(0.5 * tt)
    required = (8.0 * alpha - 4.0 - 2.0 * s * np.cos(pp)) / (2.0 * c)
    feasible = (required >= -1e-9) & (required <= 1.0 + 1e-9)
    clipped = np.clip(required, 0.0, 1.0)
    obj = 0.5 + (c + s + c * np.sin(pp) + s * np.sqrt(1.0 - clipped**2)) / 8.0
    obj = np.where(feasible, obj, -np.inf)
    flat = int(np.argmax(obj))
    i, j = np.unravel_index(flat, obj.shape)
    return float(obj[i, j]), float(tt[i, j]), float(pp[i, j])


def _coordinate_refine(
    alpha: float, theta: float, phi1: float, value: float, iterations: int
) -> tuple[float, float, float]:
    # Unit Charlie overlaps turn the fixed-measurement scan into the
    # boundary objective itself.
    for _ in range(iterations):
        before = value
        theta, _ = _scan_coordinate(alpha, theta, phi1, 1.0, 1.0, coord=0, resolution=1025)
        phi1, value = _scan_coordinate(alpha, theta, phi1, 1.0, 1.0, coord=1, resolution=1025)
        if value <= before + 1e-15:
            break
    return value, theta, phi1


class BoundaryPoint(NamedTuple):
    alpha: float
    wac: float
    params: ReducedParameters


def trace_boundary(
    alphas: Sequence[float], cfg: OptimizerConfig | None = None
) -> list[BoundaryPoint]:
    """Numerically maximize the reduced objective at each witness level.

    Grid search over ``(theta, phi1)`` with ``phi0`` eliminated exactly,
    followed by bounded coordinate descent.  Raises
    :class:`ConvergenceFailure` when the numerical maximum strays more
    than 1e-6 from the closed-form boundary; the closed form is never
    substituted for the search result.
    """
    cfg = cfg or OptimizerConfig()
    out = []
    for alpha in alphas:
        if alpha < 0.5 - 1e-12 or alpha > W_AB_MAX + 1e-12:
            raise DomainError(f"alpha = {alpha!r} outside [1/2, (2+sqrt(2))/4]")
        alpha = min(max(alpha, 0.5), W_AB_MAX)
        value, theta, phi1 = _grid_argmax(alpha, cfg.grid_resolution)
        if not np.isfinite(value):
            raise ConvergenceFailure(f"no feasible grid point at alpha = {alpha!r}")
        value, theta, phi1 = _coordinate_refine(
            alpha, theta, phi1, value, cfg.refinement_iterations
        )
        obj, phi0 = _constrained_objective(alpha, theta, phi1)
        if phi0 is None or abs(obj - boundary_wac(alpha)) > 1e-6:
            raise ConvergenceFailure(
                f"refinement stalled at alpha = {alpha!r}: reached {obj!r}"
            )
        out.append(BoundaryPoint(alpha, obj, ReducedParameters(theta, phi0, phi1)))
    return out


@dataclass
class SeesawRun:
    """Per-restart trace: witness before and after each best-response step."""

    charlie_steps: list[tuple[float, float]] = field(default_factory=list)
    final_wac: float = -np.inf


@dataclass
class SeesawResult:
    strategy: Strategy
    pair: WitnessPair
    runs: list[SeesawRun]


def _fixed_charlie_value(
    alpha: float, theta: float, phi1: float, q0: float, q1: float
) -> tuple[float, float | None]:
    """Witness against a fixed final measurement, ``phi0`` eliminated.

    ``q0``/``q1`` are the x and z components of Charlie's two observable
    Bloch vectors; the signed preparation sums stay on those axes for the
    whole reduced family.
    """
    phi0 = solve_reduced_phi0(alpha, theta, phi1)
    if phi0 is None:
        return -1.0, None
    c, s = np.cos(0.5 * theta), np.sin(0.5 * theta)
    value = 0.5 + (2.0 * c * (1.0 + np.sin(phi1)) * q0 + 2.0 * s * (1.0 + np.sin(phi0)) * q1) / 16.0
    return float(value), phi0


def _scan_coordinate(
    alpha: float, theta: float, phi1: float, q0: float, q1: float,
    coord: int, resolution: int = 513,
) -> tuple[float, float]:
    """Best value of one angle with the other held fixed.

    The feasible region can be a narrow window inside [0, pi/2], so a
    dense feasibility-aware scan picks the basin and a bounded search
    polishes inside the bracketing cells.
    """
    xs = np.linspace(0.0, HALF_PI, resolution)
    th = xs if coord == 0 else theta
    p1 = phi1 if coord == 0 else xs
    c, s = np.cos(0.5 * th), np.sin(0.5 * th)
    required = (8.0 * alpha - 4.0 - 2.0 * s * np.cos(p1)) / (2.0 * c)
    feasible = (required >= -1e-9) & (required <= 1.0 + 1e-9)
    sin_phi0 = np.sqrt(1.0 - np.clip(required, 0.0, 1.0) ** 2)
    values = 0.5 + (
        2.0 * c * (1.0 + np.sin(p1)) * q0 + 2.0 * s * (1.0 + sin_phi0) * q1
    ) / 16.0
    values = np.where(feasible, values, -np.inf)
    i = int(np.argmax(values))
    here = float(_fixed_charlie_value(alpha, theta, phi1, q0, q1)[0])
    if not np.isfinite(values[i]):
        return (theta if coord == 0 else phi1), here
    best_x, best_v = float(xs[i]), float(values[i])

    def negated(t):
        th_, p1_ = (t, phi1) if coord == 0 else (theta, t)
        return -_fixed_charlie_value(alpha, th_, p1_, q0, q1)[0]

    res = minimize_scalar(
        negated,
        bounds=(float(xs[max(0, i - 1)]), float(xs[min(resolution - 1, i + 1)])),
        method="bounded",
        options={"xatol": 1e-14},
    )
    if -float(res.fun) > best_v:
        best_x, best_v = float(res.x), -float(res.fun)
    if best_v > here:
        return best_x, best_v
    return (theta if coord == 0 else phi1), here


def _seesaw_reduced_run(
    alpha: float,
    cfg: OptimizerConfig,
    theta: float,
    phi1: float,
    charlie: tuple[BinaryPovm, BinaryPovm],
    run: SeesawRun,
) -> tuple[float, ReducedParameters, tuple[BinaryPovm, BinaryPovm]]:
    value = -np.inf
    for _ in range(200):
        q0 = float(charlie[0].cvec[0])
        q1 = float(charlie[1].cvec[2])

        for _ in range(cfg.refinement_iterations):
            here = _fixed_charlie_value(alpha, theta, phi1, q0, q1)[0]
            theta, _ = _scan_coordinate(alpha, theta, phi1, q0, q1, coord=0)
            phi1, moved_v = _scan_coordinate(alpha, theta, phi1, q0, q1, coord=1)
            if moved_v <= here + 1e-15:
                break

        before, phi0 = _fixed_charlie_value(alpha, theta, phi1, q0, q1)
        params = ReducedParameters(theta, phi0, phi1)
        partial = strategy_from_reduced(params, charlie)
        charlie, after = charlie_best_response(partial.preparations, partial.instruments)
        run.charlie_steps.append((before, after))
        if after - value < cfg.convergence_epsilon:
            value = after
            break
        value = after
    run.final_wac = value
    return value, params, charlie


def _random_feasible_start(alpha: float, rng: np.random.Generator):
    for _ in range(256):
        theta = rng.uniform(0.0, HALF_PI)
        phi1 = rng.uniform(0.0, HALF_PI)
        if solve_reduced_phi0(alpha, theta, phi1) is not None:
            return theta, phi1
    return None


def _random_projective_pair(rng: np.random.Generator) -> tuple[BinaryPovm, BinaryPovm]:
    return (
        projective_povm(random_unit_vector(rng)),
        projective_povm(random_unit_vector(rng)),
    )


def seesaw(
    alpha: float,
    cfg: OptimizerConfig | None = None,
    generic: bool = False,
) -> SeesawResult:
    """Alternating maximization of the Alice-Charlie witness at fixed ``alpha``.

    Each round alternates a parameter update (preparations and instruments,
    with the witness constraint eliminated exactly) against an exact
    eigenvector best response for the final measurement, so the witness
    never decreases across best-response steps.  Restart 0 is seeded from
    a coarse grid, the rest from the seeded generator; the best restart
    wins, ties broken by lower restart index.

    ``generic=True`` drops the antipodal/zero-offset reduction and runs a
    repair-based stochastic ascent over raw strategies instead (used to
    falsify the reduction, not to certify the curve).
    """
    cfg = cfg or OptimizerConfig()
    if alpha < 0.5 - 1e-12 or alpha > W_AB_MAX + 1e-12:
        raise DomainError(f"alpha = {alpha!r} outside [1/2, (2+sqrt(2))/4]")
    alpha = min(max(alpha, 0.5), W_AB_MAX)
    if generic:
        return _seesaw_generic(alpha, cfg)

    _, grid_theta, grid_phi1 = _grid_argmax(alpha, 64)
    runs: list[SeesawRun] = []
    best = None
    for restart in range(cfg.seesaw_restarts):
        rng = np.random.default_rng([cfg.rng_seed, restart])
        if restart == 0:
            start = (grid_theta, grid_phi1)
            charlie = (projective_povm(X_AXIS), projective_povm(Z_AXIS))
        else:
            start = _random_feasible_start(alpha, rng)
            charlie = _random_projective_pair(rng)
            if start is None:
                start = (grid_theta, grid_phi1)
        run = SeesawRun()
        value, params, charlie = _seesaw_reduced_run(
            alpha, cfg, start[0], start[1], charlie, run
        )
        runs.append(run)
        if best is None or value > best[0]:
            best = (value, params, charlie)
    if best is None or not np.isfinite(best[0]):
        raise ConvergenceFailure(f"all restarts failed at alpha = {alpha!r}")
    strategy = strategy_from_reduced(best[1], best[2])
    return SeesawResult(strategy, witness_pair(strategy), runs)


def _generic_start(alpha: float, rng: np.random.Generator) -> Strategy:
    """Feasible unreduced starting point: a randomly rotated strategy that
    already meets the witness constraint, with random final measurements."""
    from .sampling import random_su2
    from .scenario import conjugate_strategy
    from .strategies import canonical_strategy

    eta = np.sqrt(2.0) * (2.0 * alpha - 1.0)
    seeded = conjugate_strategy(canonical_strategy(float(eta)), random_su2(rng))
    return Strategy(
        seeded.preparations,
        seeded.instruments,
        _random_projective_pair(rng),
    )


def _seesaw_generic(alpha: float, cfg: OptimizerConfig) -> SeesawResult:
    runs: list[SeesawRun] = []
    best = None
    for restart in range(cfg.seesaw_restarts):
        rng = np.random.default_rng([cfg.rng_seed, 7919, restart])
        state = _generic_start(alpha, rng)
        # Alternate gentle and aggressive diversification so some restarts
        # probe the optimum's neighborhood and others roam the full space.
        diversify = 0.05 if restart % 2 == 0 else 0.3
        for _ in range(16):
            candidate = _repair_witness_level(
                _perturb_strategy(state, rng, diversify), alpha
            )
            if candidate is not None:
                state = candidate
        run = SeesawRun()
        value = -np.inf
        for step in range(240):
            povms, _ = charlie_best_response(state.preparations, state.instruments)
            before = witness_ac(state)
            state = Strategy(state.preparations, state.instruments, povms)
            after = witness_ac(state)
            run.charlie_steps.append((before, after))
            if after <= value + cfg.convergence_epsilon and step > 20:
                value = max(value, after)
                break
            value = max(value, after)
            scale = 0.5 * (0.97**step)
            proposal = _perturb_strategy(state, rng, scale)
            repaired = _repair_witness_level(proposal, alpha)
            if repaired is not None and witness_ac(repaired) > after:
                state = repaired
        run.final_wac = value
        runs.append(run)
        if best is None or value > best[0]:
            best = (value, state)
    if best is None:
        raise ConvergenceFailure(f"generic see-saw found no feasible point at {alpha!r}")
    return SeesawResult(best[1], witness_pair(best[1]), runs)


def _perturb_strategy(s: Strategy, rng: np.random.Generator, scale: float) -> Strategy:
    """Jitter one randomly chosen component of a strategy."""
    which = rng.integers(0, 3)
    preparations, instruments = s.preparations, s.instruments
    if which == 0:
        idx = int(rng.integers(0, 4))
        states = list(preparations.states)
        n = states[idx].bloch + scale * rng.normal(size=3)
        norm = np.linalg.norm(n)
        if norm > 1.0:
            n = n / norm
        states[idx] = state_from_bloch(n)
        preparations = PreparationEnsemble(tuple(states))
    elif which == 1:
        idx = int(rng.integers(0, 2))
        insts = list(instruments)
        povm = insts[idx].povm
        cvec = povm.cvec + scale * rng.normal(size=3)
        norm = np.linalg.norm(cvec)
        if norm > 1.0:
            cvec = cvec / norm
        c0 = float(np.clip(povm.c0 + 0.2 * scale * rng.normal(), -1.0, 1.0))
        c0 = float(np.clip(c0, -(1.0 - np.linalg.norm(cvec)), 1.0 - np.linalg.norm(cvec)))
        noisy = BinaryPovm.from_observable(c0, cvec)
        kraus = tuple(
            (u[0] @ matrix_sqrt_psd(e),)
            for u, e in zip(insts[idx].unitaries, noisy.effects)
        )
        insts[idx] = BinaryInstrument(kraus, noisy, insts[idx].unitaries)
        instruments = tuple(insts)
    else:
        from .linalg import SIGMA_X, SIGMA_Y, SIGMA_Z

        y = int(rng.integers(0, 2))
        b = int(rng.integers(0, 2))
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        angle = scale * rng.normal()
        twist = np.cos(0.5 * angle) * np.eye(2, dtype=complex) - 1j * np.sin(
            0.5 * angle
        ) * (axis[0] * SIGMA_X + axis[1] * SIGMA_Y + axis[2] * SIGMA_Z)
        insts = list(instruments)
        unitaries = [list(branch) for branch in insts[y].unitaries]
        unitaries[b][0] = twist @ unitaries[b][0]
        kraus = tuple(
            (us[0] @ matrix_sqrt_psd(e),)
            for us, e in zip(unitaries, insts[y].povm.effects)
        )
        insts[y] = BinaryInstrument(
            kraus, insts[y].povm, tuple(tuple(us) for us in unitaries)
        )
        instruments = tuple(insts)
    return Strategy(preparations, instruments, s.measurements)


def _repair_witness_level(s: Strategy, alpha: float) -> Strategy | None:
    """Rescale both instrument sharpnesses so the first witness equals alpha."""
    m0, m1 = difference_vectors(s.preparations)
    overlap = float(
        np.dot(s.instruments[0].povm.cvec, m0) + np.dot(s.instruments[1].povm.cvec, m1)
    )
    if abs(overlap) < 1e-9:
        return None
    t = 16.0 * (alpha - 0.5) / overlap
    instruments = []
    for inst in s.instruments:
        cvec = t * inst.povm.cvec
        norm = float(np.linalg.norm(cvec))
        if norm > 1.0 or abs(inst.povm.c0) > 1.0 - norm:
            return None
        povm = BinaryPovm.from_observable(inst.povm.c0, cvec)
        kraus = tuple(
            (u[0] @ matrix_sqrt_psd(e),)
            for u, e in zip(inst.unitaries, povm.effects)
        )
        instruments.append(BinaryInstrument(kraus, povm, inst.unitaries))
    repaired = Strategy(s.preparations, tuple(instruments), s.measurements)
    if abs(witness_ab(repaired) - alpha) > 1e-9:
        return None
    return repaired


class ClassicalBruteforce(NamedTuple):
    max_w_ab: float
    max_w_ac: float
    extremes: tuple[WitnessPair, ...]


def classical_bruteforce() -> ClassicalBruteforce:
    """Enumerate all 65536 deterministic classical strategies exactly.

    Success counts are integers, so the maxima and the convex-hull
    extreme points of the attainable witness set are exact.
    """
    ab_hits = np.zeros((16, 16), dtype=np.int64)
    ac_hits = np.zeros((16, 16, 16), dtype=np.int64)
    for e in range(16):
        enc = [(e >> (2 * x0 + x1)) & 1 for x0, x1 in itertools.product((0, 1), repeat=2)]
        for b in range(16):
            hits = 0
            for i, (x0, x1) in enumerate(itertools.product((0, 1), repeat=2)):
                m = enc[i]
                for y, bit in ((0, x0), (1, x1)):
                    if ((b >> (2 * m + y)) & 1) == bit:
                        hits += 1
            ab_hits[e, b] = hits
        for r in range(16):
            for c in range(16):
                hits = 0
                for i, (x0, x1) in enumerate(itertools.product((0, 1), repeat=2)):
                    m = enc[i]
                    for y in (0, 1):
                        relayed = (r >> (2 * m + y)) & 1
                        for z, bit in ((0, x0), (1, x1)):
                            if ((c >> (2 * relayed + z)) & 1) == bit:
                                hits += 1
                ac_hits[e, r, c] = hits

    best_ab = 0
    best_ac = 0
    points = set()
    for e, b, r, c in itertools.product(range(16), repeat=4):
        a_hits = int(ab_hits[e, b])
        c_hits = int(ac_hits[e, r, c])
        best_ab = max(best_ab, a_hits)
        best_ac = max(best_ac, c_hits)
        points.add((2 * a_hits, c_hits))  # common denominator 16

    hull = _integer_hull(sorted(points))
    extremes = tuple(WitnessPair(p / 16.0, q / 16.0) for p, q in hull)
    return ClassicalBruteforce(best_ab / 8.0, best_ac / 16.0, extremes)


def _integer_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Convex hull (monotone chain) of integer points, counterclockwise."""
    if len(points) <= 2:
        return points

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in points:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(points):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class BoundSample(NamedTuple):
    lhs: float
    rhs: float
    equality: bool


def sandwich_eigenvalue_sum_bound(povm, direction, tol: float = 1e-9) -> BoundSample:
    """Check ``sum_b lambda_max[sqrt(M_b) (a.sigma) sqrt(M_b)] <= |a|``.

    Equality holds exactly when the direction is (anti)parallel to the
    measurement's Bloch axis, or the axis vanishes.  Raises
    :class:`InequalityViolation` if the bound fails beyond ``tol``.
    """
    if not isinstance(povm, BinaryPovm):
        try:
            povm = validate_povm(povm[0], povm[1])
        except Exception as exc:
            raise InvalidPovm(str(exc)) from exc
    a = np.asarray(direction, dtype=float)
    if a.shape != (3,) or not np.all(np.isfinite(a)):
        raise DomainError(f"direction must be a finite 3-vector, got {direction!r}")
    rhs = float(np.linalg.norm(a))
    if rhs == 0.0:
        return BoundSample(0.0, 0.0, True)
    op = bloch_compose(0.0, a)
    lhs = 0.0
    for effect in povm.effects:
        root = matrix_sqrt_psd(effect, tol=np.inf)
        lhs += max_eigenpair(root @ op @ root, tol=np.inf).value
    if lhs > rhs + tol:
        raise InequalityViolation(
            f"eigenvalue sum {lhs!r} exceeds |a| = {rhs!r}"
        )
    sharp = povm.sharpness
    if sharp <= tol:
        aligned = True
    else:
        aligned = abs(abs(float(np.dot(povm.cvec, a))) / (sharp * rhs) - 1.0) <= tol
    return BoundSample(float(lhs), rhs, aligned)


def trig_inequality_value(theta: float, phi0: float, phi1: float) -> float:
    """Evaluate ``cos(t)(cos^2 p0 - cos^2 p1) + sin(t) cos(p0 - p1)``.

    The expression is at most 1 on ``t in [0, pi]``,
    ``p0, p1 in [0, pi/2]``; exceeding 1 beyond 1e-12 raises
    :class:`InequalityViolation`.
    """
    if not -1e-12 <= theta <= np.pi + 1e-12:
        raise DomainError(f"theta = {theta!r} outside [0, pi]")
    for name, p in (("phi0", phi0), ("phi1", phi1)):
        if not -1e-12 <= p <= HALF_PI + 1e-12:
            raise DomainError(f"{name} = {p!r} outside [0, pi/2]")
    value = float(
        np.cos(theta) * (np.cos(phi0) ** 2 - np.cos(phi1) ** 2)
        + np.sin(theta) * np.cos(phi0 - phi1)
    )
    if value > 1.0 + 1e-12:
        raise InequalityViolation(f"trigonometric bound exceeded: {value!r}")
    return value


def trig_grid_max(resolution: int) -> float:
    """Maximum of the trigonometric bound expression on a full-domain grid."""
    theta = np.linspace(0.0, np.pi, resolution)[:, None, None]
    phi0 = np.linspace(0.0, HALF_PI, resolution)[None, :, None]
    phi1 = np.linspace(0.0, HALF_PI, resolution)[None, None, :]
    values = np.cos(theta) * (np.cos(phi0) ** 2 - np.cos(phi1) ** 2) + np.sin(
        theta
    ) * np.cos(phi0 - phi1)
    return float(values.max())


def inequality_report(samples: int, grid: int, seed: int) -> dict:
    """Run the three sampling suites; raises on any violation.

    Returns the maximal residuals: eigenvalue-sum bound margin over random
    measurement/direction draws, the trig-expression grid maximum, and the
    worst disagreement between the closed-form sandwich eigenvalue and a
    direct eigensolve.
    """
    from .sampling import random_povm

    rng = np.random.default_rng([seed, 11])
    bound_margin = -np.inf
    for _ in range(samples):
        povm = random_povm(rng)
        a = rng.normal(size=3) * rng.uniform(0.0, 2.0)
        sample = sandwich_eigenvalue_sum_bound(povm, a)
        bound_margin = max(bound_margin, sample.lhs - sample.rhs)

    trig_max = trig_grid_max(grid)
    if trig_max > 1.0 + 1e-12:
        raise InequalityViolation(f"trig grid maximum {trig_max!r} exceeds 1")

    rng = np.random.default_rng([seed, 13])
    eigen_residual = 0.0
    for _ in range(samples):
        povm = random_povm(rng, allow_offset=False)
        direction = random_unit_vector(rng)
        op = bloch_compose(0.0, direction)
        for b in (0, 1):
            root = matrix_sqrt_psd(povm.effects[b], tol=np.inf)
            direct = max_eigenpair(root @ op @ root, tol=np.inf).value
            closed = sandwich_eigenvalue_closed_form(povm, direction, b)
            eigen_residual = max(eigen_residual, abs(direct - closed))
    if eigen_residual > 1e-10:
        raise InequalityViolation(
            f"closed-form eigenvalue residual {eigen_residual!r} exceeds 1e-10"
        )

    return {
        "bound_margin_max": float(bound_margin),
        "trig_max": trig_max,
        "eigen_residual_max": float(eigen_residual),
    }


def sandwich_eigenvalue_closed_form(povm: BinaryPovm, direction, outcome: int) -> float:
    """Closed-form ``lambda_max[sqrt(M_b) (a.sigma) sqrt(M_b)]``.

    With sharpness ``eta``, offset ``c0`` and ``cos(beta)`` the unit-vector
    overlap with the measurement axis:

    ``|a|/2 * ((-1)^b eta cos(beta)
               + sqrt((1 + (-1)^b c0)^2 - eta^2 (1 - cos(beta)^2)))``

    The odd first term cancels in the sum over outcomes, leaving the
    square-root sum used by the trade-off bound.
    """
    a = np.asarray(direction, dtype=float)
    norm = float(np.linalg.norm(a))
    if norm == 0.0:
        return 0.0
    sign = -1.0 if outcome else 1.0
    eta = povm.sharpness
    cos_beta = float(np.dot(povm.cvec, a)) / (eta * norm) if eta > 1e-15 else 0.0
    cos_beta = float(np.clip(cos_beta, -1.0, 1.0))
    radicand = max((1.0 + sign * povm.c0) ** 2 - eta * eta * (1.0 - cos_beta**2), 0.0)
    return 0.5 * norm * (sign * eta * cos_beta + float(np.sqrt(radicand)))
