"""States, bases and probability tables for the two-device preparation scenarios.

Two independent devices each emit ``|0>`` or ``|+>``.  When the emitted state
is announced (the distinguishable setup of the PBR argument) the pair arrives
as one of four product states, and the entangled four-outcome measurement
built here assigns each product state one outcome it can never produce.  When
the devices recombine both paths without announcing (a Mach-Zehnder style
preparation) each emits ``normalize(|0> + |+>)`` instead, and every outcome
becomes possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .quantum import (
    EPS_PROB,
    MeasurementBasis,
    born_distribution,
    inner,
    normalize,
    tensor,
)

_SQRT2 = math.sqrt(2.0)

_KETS = {
    "0": np.array([1.0, 0.0], dtype=np.complex128),
    "1": np.array([0.0, 1.0], dtype=np.complex128),
    "+": np.array([1.0, 1.0], dtype=np.complex128) / _SQRT2,
    "-": np.array([1.0, -1.0], dtype=np.complex128) / _SQRT2,
}

KET_LABELS = ("0", "1", "+", "-")

#: The four product preparations, in the fixed row order used everywhere.
PREPARATIONS = ("00", "0+", "+0", "++")

#: Outcome column labels of the entangled measurement.
XI_LABELS = ("xi1", "xi2", "xi3", "xi4")

#: (preparation row, outcome column) pairs that carry structural zeros:
#: |00> never yields xi1, |0+> never xi2, |+0> never xi3, |++> never xi4.
ZERO_PAIRING = ((0, 0), (1, 1), (2, 2), (3, 3))


def ket(label: str) -> np.ndarray:
    """Single-qubit ket for one of the labels ``"0" "1" "+" "-"``.

    Sign convention: ``|+> = (|0> + |1>)/sqrt(2)``, ``|-> = (|0> - |1>)/sqrt(2)``.
    """
    try:
        return _KETS[label].copy()
    except KeyError:
        raise DomainError(f"unknown ket label {label!r}; expected one of {KET_LABELS}") from None


def product_preparation(label: str) -> np.ndarray:
    """Two-device product state for a label like ``"0+"`` (device 1 then device 2)."""
    if len(label) != 2 or any(ch not in ("0", "+") for ch in label):
        raise DomainError(f"preparation label must be two characters from '0'/'+', got {label!r}")
    return tensor(ket(label[0]), ket(label[1]))


def xi_basis() -> MeasurementBasis:
    """The four-outcome entangled measurement basis.

    xi1 = (|01> + |10>)/sqrt(2)
    xi2 = (|0-> + |1+>)/sqrt(2)
    xi3 = (|+1> + |-0>)/sqrt(2)
    xi4 = (|+-> + |-+>)/sqrt(2)
    """
    xi1 = (tensor(ket("0"), ket("1")) + tensor(ket("1"), ket("0"))) / _SQRT2
    xi2 = (tensor(ket("0"), ket("-")) + tensor(ket("1"), ket("+"))) / _SQRT2
    xi3 = (tensor(ket("+"), ket("1")) + tensor(ket("-"), ket("0"))) / _SQRT2
    xi4 = (tensor(ket("+"), ket("-")) + tensor(ket("-"), ket("+"))) / _SQRT2
    return MeasurementBasis(np.array([xi1, xi2, xi3, xi4]))


@dataclass(frozen=True)
class ProbabilityTable:
    """Preparation-vs-outcome probability matrix with zero flags.

    Probabilities are stored unclipped; entries at or below ``zero_threshold``
    are flagged and rendered as exact zeros by the display layers.  Every row
    must sum to 1 within ``EPS_PROB`` regardless of the display threshold.
    """

    row_labels: tuple[str, ...]
    column_labels: tuple[str, ...]
    probabilities: np.ndarray
    zero_threshold: float = EPS_PROB
    title: str = ""

    def __post_init__(self):
        probs = np.array(self.probabilities, dtype=np.float64)
        rows, cols = tuple(self.row_labels), tuple(self.column_labels)
        if probs.ndim != 2 or probs.shape != (len(rows), len(cols)):
            raise DomainError(
                f"probability matrix shape {probs.shape} does not match "
                f"{len(rows)} row / {len(cols)} column labels"
            )
        if not np.all(np.isfinite(probs)):
            raise DomainError("probabilities must be finite")
        if np.any(probs < -EPS_PROB) or np.any(probs > 1.0 + EPS_PROB):
            raise DomainError("probabilities must lie in [0, 1]")
        if not (math.isfinite(self.zero_threshold) and self.zero_threshold > 0.0):
            raise DomainError(f"zero_threshold must be positive, got {self.zero_threshold!r}")
        sums = probs.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > EPS_PROB):
            raise DomainError(f"every row must sum to 1 within {EPS_PROB}, got {sums}")
        probs.setflags(write=False)
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "column_labels", cols)

    @property
    def zero_flags(self) -> np.ndarray:
        """Boolean matrix marking entries at or below the display threshold."""
        return self.probabilities <= self.zero_threshold

    @property
    def compatible(self) -> bool:
        """True iff no entry is flagged zero (every outcome reachable from every row)."""
        return not bool(self.zero_flags.any())

    def row_sums(self) -> np.ndarray:
        return self.probabilities.sum(axis=1)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "row_labels": list(self.row_labels),
            "column_labels": list(self.column_labels),
            "probabilities": self.probabilities.tolist(),
            "zero_threshold": float(self.zero_threshold),
            "zero_flags": self.zero_flags.tolist(),
            "row_sums": self.row_sums().tolist(),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ProbabilityTable":
        """Rebuild a table from :meth:`to_dict` output, revalidating invariants.

        The redundant ``zero_flags``/``row_sums`` entries must match what the
        rebuilt table computes, so a corrupted document fails loudly.
        """
        table = cls(
            row_labels=tuple(payload["row_labels"]),
            column_labels=tuple(payload["column_labels"]),
            probabilities=np.array(payload["probabilities"], dtype=np.float64),
            zero_threshold=float(payload["zero_threshold"]),
            title=str(payload.get("title", "")),
        )
        if payload["zero_flags"] != table.zero_flags.tolist():
            raise DomainError("serialized zero_flags do not match the probabilities")
        if not np.allclose(payload["row_sums"], table.row_sums(), rtol=0.0, atol=0.0):
            raise DomainError("serialized row_sums do not match the probabilities")
        return table


def table_for_states(
    states,
    row_labels,
    basis: MeasurementBasis | None = None,
    column_labels=None,
    zero_threshold: float = EPS_PROB,
    title: str = "",
) -> ProbabilityTable:
    """Born table of the given states against a basis (defaults to the xi basis)."""
    if basis is None:
        basis = xi_basis()
        column_labels = XI_LABELS if column_labels is None else column_labels
    if column_labels is None:
        column_labels = tuple(f"o{k + 1}" for k in range(basis.dim))
    rows = np.array([born_distribution(s, basis) for s in states])
    return ProbabilityTable(tuple(row_labels), tuple(column_labels), rows, zero_threshold, title)


def zero_outcome_table(zero_threshold: float = EPS_PROB) -> ProbabilityTable:
    """4x4 Born table of the product preparations against the xi basis.

    Its zero flags are expected to form exactly the pattern in
    :data:`ZERO_PAIRING` (the diagonal).
    """
    states = [product_preparation(p) for p in PREPARATIONS]
    labels = tuple(f"|{p}>" for p in PREPARATIONS)
    return table_for_states(states, labels, zero_threshold=zero_threshold, title="product preparations vs xi basis")


def pbr_target_rows() -> np.ndarray:
    """The four Born rows of :func:`zero_outcome_table`, as a (4, 4) float array."""
    return np.array(zero_outcome_table().probabilities)


@dataclass(frozen=True)
class ThetaPair:
    """The symmetric pair cos(t/2)|0> +/- sin(t/2)|1> used to tune overlap."""

    theta: float
    psi0: np.ndarray = field(repr=False)
    psi1: np.ndarray = field(repr=False)

    @property
    def overlap(self) -> float:
        """<psi0|psi1>, real for this family and equal to cos(theta)."""
        return inner(self.psi0, self.psi1).real


def theta_pair(theta: float) -> ThetaPair:
    """Construct the pair for ``0 < theta < pi`` (both states unit-norm)."""
    theta = float(theta)
    if not (math.isfinite(theta) and 0.0 < theta < math.pi):
        raise DomainError(f"theta must lie strictly between 0 and pi, got {theta!r}")
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    psi0 = np.array([c, s], dtype=np.complex128)
    psi1 = np.array([c, -s], dtype=np.complex128)
    return ThetaPair(theta, psi0, psi1)


def theta_table(
    pair: ThetaPair,
    basis: MeasurementBasis | None = None,
    zero_threshold: float = EPS_PROB,
) -> ProbabilityTable:
    """Born table of the four ordered products psi_i (x) psi_j.

    No zero pattern is asserted here; which measurement suits a general pair
    is the caller's choice, and the xi basis is only the default.
    """
    states, labels = [], []
    for i, a in ((0, pair.psi0), (1, pair.psi1)):
        for j, b in ((0, pair.psi0), (1, pair.psi1)):
            states.append(tensor(a, b))
            labels.append(f"psi{i}*psi{j}")
    title = f"theta-pair products vs measurement basis (theta={pair.theta:.12g})"
    return table_for_states(states, labels, basis=basis, zero_threshold=zero_threshold, title=title)


def mz_preparation_state() -> np.ndarray:
    """Output ket of one recombining (which-way-free) device: normalize(|0> + |+>).

    Equals cos(pi/8)|0> + sin(pi/8)|1>, the Bloch bisector of |0> and |+>.
    """
    return normalize(ket("0") + ket("+"))


def mz_normalization_sq() -> float:
    """Squared normalization constant of |0> + |+>, i.e. 1/<u|u> for u = |0> + |+>."""
    u = ket("0") + ket("+")
    return 1.0 / float(np.vdot(u, u).real)


def mz_joint_state() -> np.ndarray:
    """Joint state of two independent which-way-free devices, psi (x) psi."""
    psi = mz_preparation_state()
    return tensor(psi, psi)


def compatibility_report(
    state,
    basis: MeasurementBasis | None = None,
    label: str = "Psi",
    zero_threshold: float = EPS_PROB,
) -> ProbabilityTable:
    """Single-row Born table for ``state``; ``.compatible`` is the verdict.

    A state is compatible with the measurement when no outcome is flagged
    zero, i.e. it may produce every outcome.
    """
    return table_for_states(
        [state], (label,), basis=basis, zero_threshold=zero_threshold, title=f"{label} vs measurement basis"
    )
