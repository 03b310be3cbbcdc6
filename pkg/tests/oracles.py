"""Independent brute-force oracles used to freeze expected values.

Everything here is deliberately written with explicit Python loops and
elementary arithmetic, so it shares no code path with the library's
vectorized implementations.
"""

import math

import numpy as np

SQRT2 = math.sqrt(2.0)

# The four entangled outcome kets, expanded by hand from their definitions
# in the computational basis |00>, |01>, |10>, |11>.
XI_VECTORS = (
    (0.0, 1.0 / SQRT2, 1.0 / SQRT2, 0.0),          # (|01> + |10>)/sqrt(2)
    (0.5, -0.5, 0.5, 0.5),                         # (|0-> + |1+>)/sqrt(2)
    (0.5, 0.5, -0.5, 0.5),                         # (|+1> + |-0>)/sqrt(2)
    (1.0 / SQRT2, 0.0, 0.0, -1.0 / SQRT2),         # (|+-> + |-+>)/sqrt(2)
)

# Born rows of the four product preparations |00>, |0+>, |+0>, |++> against
# the xi outcomes, derived by hand (each nonzero amplitude is +-1/2 or
# 1/sqrt(2) up to products of 1/sqrt(2) factors).
PRODUCT_BORN_ROWS = (
    (0.0, 0.25, 0.25, 0.5),
    (0.25, 0.0, 0.5, 0.25),
    (0.25, 0.5, 0.0, 0.25),
    (0.5, 0.25, 0.25, 0.0),
)

# Squared normalization constant of |0> + |+>: 1/(2 + sqrt(2)) = sqrt(2)/(2 sqrt(2) + 2).
MZ_NORMALIZATION_SQ = SQRT2 / (2.0 * SQRT2 + 2.0)


def born_probability(outcome, state) -> float:
    """|<outcome|state>|^2 by explicit accumulation."""
    amplitude = 0j
    for o, s in zip(outcome, state):
        amplitude += complex(o).conjugate() * complex(s)
    return abs(amplitude) ** 2


def born_row(state, outcomes) -> list:
    return [born_probability(o, state) for o in outcomes]


def tensor_by_hand(a, b) -> list:
    out = []
    for x in a:
        for y in b:
            out.append(complex(x) * complex(y))
    return out


def min_overlap(mass0, mass1, eps=1e-12):
    """(overlap indices, q) by scalar comparison, mirroring the definition only."""
    indices, q = [], 0.0
    for i, (a, b) in enumerate(zip(mass0, mass1)):
        if a > eps and b > eps:
            indices.append(i)
            q += min(a, b)
    return indices, q


def random_state(rng, dim) -> np.ndarray:
    """Random unit-norm complex vector."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_orthonormal_basis(rng, dim) -> np.ndarray:
    """Rows of a Haar-ish random unitary (QR of a random complex matrix)."""
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, _ = np.linalg.qr(m)
    return q


def random_mass_pair(rng, size, disjoint):
    """Random distribution pair over ``size`` states, disjoint supports on request.

    Overlapping pairs are conditioned on a total-variation overlap of at
    least 1e-3 so the feasibility margin stays structural rather than
    numerical dust.
    """
    while True:
        if disjoint:
            split = int(rng.integers(1, size))
            m0, m1 = np.zeros(size), np.zeros(size)
            m0[:split] = rng.dirichlet(np.ones(split))
            m1[split:] = rng.dirichlet(np.ones(size - split))
        else:
            m0 = rng.dirichlet(np.ones(size))
            m1 = rng.dirichlet(np.ones(size))
        _, q = min_overlap(m0, m1)
        if disjoint or q >= 1e-3:
            return m0, m1
