"""Ontological-model layer: finite ontic spaces, epistemic distributions,
overlap, preparation-independent joints, response functions, and the
feasibility question.

The model under test assigns each preparation a distribution mu over a finite
set of physical states lambda.  Two preparations are "mere information" about
the same underlying reality when their distributions overlap; they describe a
physical property when their supports are disjoint.  Independent devices give
independent physical states, so a pair of preparations induces the product
joint mu_a(l1) * mu_b(l2).  A measurement is modelled by a response function
xi(k | l1, l2): the outcome statistics conditioned on the physical pair that
actually reaches the detector.

Whether such a model can reproduce given quantum statistics is a linear
feasibility question in the response-function entries: nonnegativity,
pointwise normalization, and one linear equality per (preparation, outcome).
:func:`feasibility` decides it with an LP solve and returns a re-checked
witness or names a violated constraint; :func:`pbr_contradiction` is the
independent analytic shortcut for the four-preparation scenario with a
zero-outcome pairing that covers every outcome.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .errors import DomainError, PbrCheckError, SpaceError
from .quantum import EPS_PROB, EPS_ZERO

#: Tolerance on the LP equality constraints (witness re-check and elastic solve).
EPS_LP = 1e-7

#: HiGHS is asked for residuals well below EPS_PROB so returned witnesses
#: satisfy the ResponseFunction row-sum invariant.
_LP_OPTIONS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}

#: Fixed Monte Carlo block size; block index, not worker count, determines
#: every draw (see :func:`monte_carlo`).
_MC_BLOCK = 1 << 15


@dataclass(frozen=True)
class OnticSpace:
    """A finite set of physical states, with ordered labels."""

    size: int
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise DomainError(f"ontic space size must be a positive integer, got {self.size!r}")
        labels = tuple(self.labels) or tuple(f"lam{i}" for i in range(self.size))
        if len(labels) != self.size:
            raise DomainError(f"{len(labels)} labels for {self.size} states")
        object.__setattr__(self, "labels", labels)


def _require_same_space(a: "EpistemicDistribution", b: "EpistemicDistribution") -> OnticSpace:
    if a.space != b.space:
        raise SpaceError(f"distributions live on different ontic spaces: {a.space} vs {b.space}")
    return a.space


@dataclass(frozen=True)
class EpistemicDistribution:
    """Probability mass over an ontic space, as induced by a preparation."""

    space: OnticSpace
    mass: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.mass, dtype=np.float64)
        if m.shape != (self.space.size,):
            raise SpaceError(f"mass shape {m.shape} does not match space size {self.space.size}")
        if not np.all(np.isfinite(m)):
            raise DomainError("mass entries must be finite")
        if np.any(m < -EPS_ZERO):
            raise DomainError(f"mass entries must be nonnegative, got min {m.min()!r}")
        m = np.maximum(m, 0.0)
        if abs(m.sum() - 1.0) > EPS_PROB:
            raise DomainError(f"mass must sum to 1 within {EPS_PROB}, got {m.sum()!r}")
        m.setflags(write=False)
        object.__setattr__(self, "mass", m)

    def support(self, eps: float = EPS_ZERO) -> np.ndarray:
        """Indices with mass strictly above ``eps`` (float dust excluded)."""
        return np.flatnonzero(self.mass > eps)


def point_mass(space: OnticSpace, index: int) -> EpistemicDistribution:
    """All mass on a single ontic state."""
    if not 0 <= index < space.size:
        raise DomainError(f"index {index} outside ontic space of size {space.size}")
    m = np.zeros(space.size)
    m[index] = 1.0
    return EpistemicDistribution(space, m)


def uniform(space: OnticSpace, indices=None) -> EpistemicDistribution:
    """Uniform mass over ``indices`` (default: the whole space)."""
    idx = np.arange(space.size) if indices is None else np.asarray(list(indices), dtype=int)
    if idx.size == 0:
        raise DomainError("cannot spread mass over an empty index set")
    m = np.zeros(space.size)
    m[idx] = 1.0 / idx.size
    return EpistemicDistribution(space, m)


def mixture(mu_a: EpistemicDistribution, mu_b: EpistemicDistribution, weight: float = 0.5) -> EpistemicDistribution:
    """Convex mixture ``weight * mu_a + (1 - weight) * mu_b``."""
    space = _require_same_space(mu_a, mu_b)
    if not 0.0 <= weight <= 1.0:
        raise DomainError(f"mixture weight must lie in [0, 1], got {weight!r}")
    return EpistemicDistribution(space, weight * mu_a.mass + (1.0 - weight) * mu_b.mass)


@dataclass(frozen=True)
class OverlapReport:
    """Strict-support overlap region and its total-variation mass."""

    overlap_states: tuple[int, ...]
    q: float


def overlap(mu0: EpistemicDistribution, mu1: EpistemicDistribution) -> OverlapReport:
    """Overlap region Delta = {l : mu0(l) > eps and mu1(l) > eps} and q = sum_Delta min.

    q is restricted to Delta so mass dust below ``EPS_ZERO`` can neither
    enlarge the region nor contribute overlap; q > 0 iff Delta is nonempty.
    """
    _require_same_space(mu0, mu1)
    both = (mu0.mass > EPS_ZERO) & (mu1.mass > EPS_ZERO)
    delta = np.flatnonzero(both)
    q = float(np.minimum(mu0.mass, mu1.mass)[both].sum())
    return OverlapReport(tuple(int(i) for i in delta), q)


def joint(mu_a: EpistemicDistribution, mu_b: EpistemicDistribution) -> np.ndarray:
    """Preparation-independent joint over ordered pairs: mass[l1, l2] = mu_a(l1) * mu_b(l2)."""
    _require_same_space(mu_a, mu_b)
    return np.outer(mu_a.mass, mu_b.mass)


def pbr_contradiction(
    mu0: EpistemicDistribution,
    mu1: EpistemicDistribution,
    zero_pairing,
    outcome_count: int = 4,
) -> bool:
    """Analytic verdict: does overlap force the model into a contradiction?

    Every pair (l1, l2) in Delta x Delta lies in the support of all four
    product joints, so each (preparation, outcome) zero constraint in
    ``zero_pairing`` forces that outcome's response to vanish there.  When the
    pairing covers every outcome index, the response rows on Delta x Delta
    cannot sum to 1, which is the contradiction.  Returns True iff q > 0 and
    the pairing covers all ``outcome_count`` outcomes.
    """
    report = overlap(mu0, mu1)
    if report.q <= 0.0:
        return False
    killed = {int(k) for _, k in zero_pairing}
    return killed >= set(range(outcome_count))


@dataclass(frozen=True)
class ResponseFunction:
    """Outcome distribution of the detector conditioned on the physical pair.

    ``table[l1, l2, k]`` is the probability of outcome ``k`` when the devices
    emitted ontic states ``l1`` and ``l2``; each pair's row sums to 1.
    """

    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        t = np.array(self.table, dtype=np.float64)
        if t.ndim != 3 or t.shape[0] != t.shape[1] or t.shape[2] < 1:
            raise DomainError(f"response table must have shape (n, n, outcomes), got {t.shape}")
        if not np.all(np.isfinite(t)):
            raise DomainError("response entries must be finite")
        if np.any(t < -EPS_PROB):
            raise DomainError(f"response entries must be nonnegative, got min {t.min()!r}")
        t = np.maximum(t, 0.0)
        sums = t.sum(axis=2)
        if np.any(np.abs(sums - 1.0) > EPS_PROB):
            raise DomainError("every (l1, l2) outcome row must sum to 1")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    @property
    def outcome_count(self) -> int:
        return self.table.shape[2]

    def outcome_probabilities(self, l1: int, l2: int) -> np.ndarray:
        return np.array(self.table[l1, l2])


def constant_response(size: int, probs) -> ResponseFunction:
    """Response that ignores the physical pair and always answers with ``probs``."""
    p = np.asarray(probs, dtype=np.float64)
    return ResponseFunction(np.broadcast_to(p, (size, size, p.size)).copy())


def state_assignment_response(assignment, outcome_rows) -> ResponseFunction:
    """Response of a detector that reads off which quantum state each lambda encodes.

    ``assignment[l]`` is the per-device state index carried by ontic state
    ``l`` (the psi-ontic picture, where lambda is a state label), and
    ``outcome_rows`` has one outcome distribution per ordered state pair,
    row-major: pair (s1, s2) at index ``s1 * S + s2``.
    """
    assign = np.asarray(list(assignment), dtype=int)
    rows = np.asarray(outcome_rows, dtype=np.float64)
    if rows.ndim != 2:
        raise DomainError(f"outcome_rows must be 2-D, got shape {rows.shape}")
    n_states = int(round(np.sqrt(rows.shape[0])))
    if n_states * n_states != rows.shape[0]:
        raise DomainError(f"outcome_rows needs one row per ordered state pair, got {rows.shape[0]}")
    if np.any(assign < 0) or np.any(assign >= n_states):
        raise DomainError(f"assignment values must index {n_states} states")
    n = assign.size
    table = rows[assign[:, None] * n_states + assign[None, :]]
    return ResponseFunction(table.reshape(n, n, rows.shape[1]))


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Outcome of the linear feasibility question, with evidence either way."""

    feasible: bool
    witness: ResponseFunction | None = None
    violated_constraint: str | None = None
    max_residual: float | None = None

    @property
    def status(self) -> str:
        return "feasible" if self.feasible else "infeasible"


def _validate_instance(preparations, targets):
    preps = [np.asarray(j, dtype=np.float64) for j in preparations]
    targs = [np.asarray(t, dtype=np.float64) for t in targets]
    if not preps or len(preps) != len(targs):
        raise SpaceError(f"{len(preps)} preparations for {len(targs)} target rows")
    n = preps[0].shape[0] if preps[0].ndim == 2 else -1
    for j in preps:
        if j.ndim != 2 or j.shape != (n, n):
            raise SpaceError(f"joint distributions must all be ({n}, {n}), got {j.shape}")
        if np.any(j < -EPS_ZERO) or abs(j.sum() - 1.0) > EPS_PROB:
            raise DomainError("each joint must be a probability distribution over pairs")
    k = targs[0].size
    for t in targs:
        if t.ndim != 1 or t.size != k:
            raise SpaceError("target rows must all have the same outcome count")
        if np.any(t < -EPS_PROB) or abs(t.sum() - 1.0) > EPS_PROB:
            raise DomainError("each target row must be a probability distribution")
    return preps, targs, n, k


def _assemble_equalities(preps, targs, n, k):
    """Equality system A x = b over x[outcome, l1, l2] >= 0, with row labels."""
    n_vars = k * n * n
    rows, rhs, labels = [], [], []
    # pointwise normalization: sum_k x[k, i, j] = 1
    for i in range(n):
        for j in range(n):
            row = np.zeros(n_vars)
            for out in range(k):
                row[out * n * n + i * n + j] = 1.0
            rows.append(row)
            rhs.append(1.0)
            labels.append(f"normalization of the response at pair (lam{i}, lam{j})")
    # statistics: sum_pairs joint_p * x[k, ., .] = target_p[k]
    for p, (jp, tp) in enumerate(zip(preps, targs)):
        flat = jp.ravel()
        for out in range(k):
            row = np.zeros(n_vars)
            row[out * n * n : (out + 1) * n * n] = flat
            rows.append(row)
            rhs.append(float(tp[out]))
            labels.append(
                f"preparation {p}: outcome {out + 1} probability must equal {tp[out]:.12g}"
            )
    return np.array(rows), np.array(rhs), labels


def check_witness(preparations, targets, response: ResponseFunction) -> float:
    """Max absolute residual of all equality constraints under ``response``."""
    preps, targs, n, k = _validate_instance(preparations, targets)
    if response.size != n or response.outcome_count != k:
        raise SpaceError("response shape does not match the instance")
    worst = float(np.max(np.abs(response.table.sum(axis=2) - 1.0)))
    for jp, tp in zip(preps, targs):
        predicted = np.einsum("ij,ijk->k", jp, response.table)
        worst = max(worst, float(np.max(np.abs(predicted - tp))))
    return worst


def _describe_violation(a_eq, b_eq, labels) -> str:
    """Elastic (phase-1 style) solve: minimal total violation and the worst row."""
    m, n_vars = a_eq.shape
    cost = np.concatenate([np.zeros(n_vars), np.ones(2 * m)])
    a_elastic = np.hstack([a_eq, np.eye(m), -np.eye(m)])
    bounds = [(0.0, 1.0)] * n_vars + [(0.0, None)] * (2 * m)
    res = linprog(cost, A_eq=a_elastic, b_eq=b_eq, bounds=bounds, method="highs", options=_LP_OPTIONS)
    if res.status != 0:
        return "equality constraints admit no nonnegative response function"
    slack_pos = res.x[n_vars : n_vars + m]
    slack_neg = res.x[n_vars + m :]
    residual = slack_pos - slack_neg
    worst = int(np.argmax(np.abs(residual)))
    return (
        f"cannot satisfy: {labels[worst]} (off by {abs(residual[worst]):.3e}; "
        f"minimal total violation {res.fun:.3e})"
    )


def feasibility(preparations, targets, eps: float = EPS_LP) -> FeasibilityVerdict:
    """Decide whether any response function reproduces the target statistics.

    Looks for ``xi(k | l1, l2) >= 0`` with pointwise sum 1 such that, for every
    preparation ``p`` and outcome ``k``,
    ``sum_pairs joint_p(l1, l2) * xi(k | l1, l2) = target_p(k)`` within ``eps``.
    Feasible verdicts carry a witness that has been re-substituted into every
    constraint; infeasible verdicts name a constraint that cannot be met.
    """
    preps, targs, n, k = _validate_instance(preparations, targets)
    a_eq, b_eq, labels = _assemble_equalities(preps, targs, n, k)
    res = linprog(np.zeros(a_eq.shape[1]), A_eq=a_eq, b_eq=b_eq, bounds=(0.0, 1.0), method="highs", options=_LP_OPTIONS)
    if res.status == 0:
        table = np.moveaxis(res.x.reshape(k, n, n), 0, 2)
        witness = ResponseFunction(table)
        residual = check_witness(preps, targs, witness)
        if residual > eps:
            raise PbrCheckError(f"solver returned an invalid witness (residual {residual:.3e})")
        return FeasibilityVerdict(True, witness=witness, max_residual=residual)
    if res.status == 2:
        return FeasibilityVerdict(False, violated_constraint=_describe_violation(a_eq, b_eq, labels))
    raise PbrCheckError(f"LP solver failed: {res.message}")


def _block_seed(root: np.random.SeedSequence, block: int) -> np.random.SeedSequence:
    """Sub-seed of a fixed sample block; depends only on (root, block index)."""
    return np.random.SeedSequence(entropy=root.entropy, spawn_key=tuple(root.spawn_key) + (block,))


def _block_counts(mass1, mass2, table, block: int, n_samples: int, root) -> np.ndarray:
    """Outcome counts of one sample block, drawn from its own three sub-streams."""
    dev1, dev2, detector = (np.random.default_rng(s) for s in _block_seed(root, block).spawn(3))
    l1 = dev1.choice(mass1.size, size=n_samples, p=mass1)
    l2 = dev2.choice(mass2.size, size=n_samples, p=mass2)
    cumulative = np.cumsum(table[l1, l2, :], axis=1)
    u = detector.random(n_samples)
    outcomes = np.minimum((cumulative < u[:, None]).sum(axis=1), table.shape[2] - 1)
    return np.bincount(outcomes, minlength=table.shape[2])


def monte_carlo(
    mu_device1: EpistemicDistribution,
    mu_device2: EpistemicDistribution,
    response: ResponseFunction,
    samples: int,
    seed,
) -> np.ndarray:
    """Empirical outcome frequencies of the sampled model.

    Draws ``l1 ~ mu_device1`` and ``l2 ~ mu_device2`` independently, then an
    outcome from ``response``.  Sampling is reproducible and splittable:
    samples are grouped into fixed-size blocks, block ``c`` derives its
    SeedSequence child via ``spawn_key + (c,)`` and splits it into three
    sub-streams (device 1, device 2, detector).  Draws depend only on the seed
    and the block index, so distributing blocks over any number of workers and
    summing counts reproduces the single-threaded result exactly.

    ``seed`` may be an int or a ``numpy.random.SeedSequence``.
    """
    space = _require_same_space(mu_device1, mu_device2)
    if response.size != space.size:
        raise SpaceError(f"response over {response.size} states, space has {space.size}")
    if not isinstance(samples, int) or samples < 1:
        raise DomainError(f"samples must be a positive integer, got {samples!r}")
    root = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    counts = np.zeros(response.outcome_count, dtype=np.int64)
    for block in range(0, (samples + _MC_BLOCK - 1) // _MC_BLOCK):
        block_samples = min(_MC_BLOCK, samples - block * _MC_BLOCK)
        counts += _block_counts(mu_device1.mass, mu_device2.mass, response.table, block, block_samples, root)
    return counts / samples


def overlap_pair(space: OnticSpace, q: float) -> tuple[EpistemicDistribution, EpistemicDistribution]:
    """Deterministic distribution pair with total-variation overlap exactly ``q``.

    Construction: ``mu0 = (1-q) point(first) + q uniform(middle)`` and
    ``mu1 = (1-q) point(last) + q uniform(middle)``, where the middle block is
    the index range 1..size-2.  Needs size >= 3 when q > 0 and size >= 2 when
    q = 0.
    """
    if not (isinstance(q, (int, float)) and np.isfinite(q) and 0.0 <= q <= 1.0):
        raise DomainError(f"overlap q must lie in [0, 1], got {q!r}")
    q = float(q)
    n = space.size
    if q == 0.0:
        if n < 2:
            raise DomainError("q = 0 needs at least 2 ontic states for disjoint point masses")
        return point_mass(space, 0), point_mass(space, n - 1)
    if n < 3:
        raise DomainError("q > 0 needs at least 3 ontic states (endpoints plus a middle block)")
    middle = np.arange(1, n - 1)
    m0 = np.zeros(n)
    m1 = np.zeros(n)
    m0[0] = 1.0 - q
    m1[n - 1] = 1.0 - q
    m0[middle] += q / middle.size
    m1[middle] += q / middle.size
    return EpistemicDistribution(space, m0), EpistemicDistribution(space, m1)
