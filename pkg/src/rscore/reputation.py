"""Reputation propagation between programs and venues.

Programs and venues form a bipartite chain: a program distributes its
reputation over the venues it publishes in (publication-share rows ``beta``),
and a venue distributes its reputation over the programs that fill it
(publication-share columns ``alpha``). The two-block chain is periodic, so it
is never solved directly; only the program-to-program aggregation
``beta @ alpha`` is, via Grassmann-Taksar-Heyman state reduction. Venue
reputations follow by one more transition step.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .counts import CountsTable, VenueMode
from .errors import ModelError, ReducibleChainError

logger = logging.getLogger(__name__)

# Build-time stochasticity assertions on the raw matrices.
ROW_SUM_TOL = 1e-12
# Aggregated rows and the stationary fixed point.
AGGREGATE_TOL = 1e-10
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class TransitionStructure:
    """The two transition blocks plus the index orderings they use.

    ``alpha[j, w]`` is program ``w``'s share of venue ``j``'s papers;
    ``beta[w, j]`` is venue ``j``'s share of program ``w``'s papers. Rows of
    ``beta`` sum to one, and so do columns of ``alpha`` (renormalized in
    distinct-paper mode, see :func:`build_transitions`).
    """

    alpha: np.ndarray
    beta: np.ndarray
    program_index: tuple[str, ...]
    venue_index: tuple[str, ...]


@dataclass(frozen=True)
class ReputationModel:
    """A solved reputation model, immutable and safe for concurrent reads."""

    structure: TransitionStructure
    p_prime: np.ndarray
    gamma: np.ndarray
    nu: np.ndarray

    @property
    def digest(self) -> str:
        """Deterministic fingerprint of the model inputs and solution."""
        hasher = hashlib.sha256()
        hasher.update("\x1f".join(self.structure.program_index).encode())
        hasher.update(b"\x1e")
        hasher.update("\x1f".join(self.structure.venue_index).encode())
        hasher.update(b"\x1e")
        for array in (self.structure.alpha, self.structure.beta, self.gamma, self.nu):
            hasher.update(np.ascontiguousarray(array, dtype=np.float64).tobytes())
        return hasher.hexdigest()[:16]


def build_transitions(counts: CountsTable) -> TransitionStructure:
    """Build the alpha and beta blocks from a counts table.

    Every reference program must have at least one paper in the venue set,
    otherwise its outgoing row would be undefined. In distinct-paper mode the
    per-venue totals undercount shared papers, so alpha columns are
    renormalized to keep the chain stochastic; a notice is logged because
    this renormalization is what makes both counting modes solvable.
    """
    programs = counts.reference_programs
    venues = counts.venue_index
    t, v = len(programs), len(venues)
    if t == 0:
        raise ModelError("no reference programs")

    for program in programs:
        if counts.program_total(program) == 0:
            raise ModelError(
                f"reference program {program!r} has no publications in the "
                f"venue set; its transition row is undefined"
            )

    alpha = np.zeros((v, t))
    beta = np.zeros((t, v))
    for w, program in enumerate(programs):
        total = counts.program_total(program)
        for j, venue in enumerate(venues):
            count = counts.program_venue(program, venue)
            beta[w, j] = float(count / total)
            alpha[j, w] = float(count / counts.venue_total(venue))

    if counts.venue_mode is VenueMode.DISTINCT_PAPER:
        # alpha is venue-by-program; each venue must redistribute fully.
        alpha = alpha / alpha.sum(axis=1, keepdims=True)
        logger.info(
            "distinct-paper mode: renormalized %d venue distributions to keep "
            "the chain stochastic",
            v,
        )

    row_sums = beta.sum(axis=1)
    if np.max(np.abs(row_sums - 1.0)) > ROW_SUM_TOL:
        raise ModelError("program transition rows do not sum to 1")
    venue_sums = alpha.sum(axis=1)
    if np.max(np.abs(venue_sums - 1.0)) > ROW_SUM_TOL:
        raise ModelError("venue transition rows do not sum to 1")

    return TransitionStructure(
        alpha=alpha, beta=beta, program_index=tuple(programs), venue_index=tuple(venues)
    )


def aggregate(structure: TransitionStructure) -> np.ndarray:
    """Collapse the bipartite chain to its program-to-program matrix."""
    p_prime = structure.beta @ structure.alpha
    row_sums = p_prime.sum(axis=1)
    if np.max(np.abs(row_sums - 1.0)) > AGGREGATE_TOL:
        raise ModelError("aggregated matrix is not row-stochastic")
    return p_prime


def stationary_gth(p: np.ndarray) -> np.ndarray:
    """Stationary distribution of an irreducible row-stochastic matrix.

    Uses Grassmann-Taksar-Heyman state reduction: states are eliminated one
    by one, with each pivot taken as the sum of the remaining off-diagonal
    row entries, so the elimination never subtracts like-signed quantities
    and needs no pivoting to stay stable. Reducible inputs are rejected with
    the list of strongly connected components rather than silently patched.
    """
    a = np.array(p, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ModelError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        raise ModelError("empty transition matrix")
    if np.any(a < 0) or np.max(np.abs(a.sum(axis=1) - 1.0)) > 1e-8:
        raise ModelError("matrix is not row-stochastic")

    n_components, labels = connected_components(
        csr_matrix(a > 0), directed=True, connection="strong"
    )
    if n_components > 1:
        components = [
            np.flatnonzero(labels == label).tolist() for label in range(n_components)
        ]
        raise ReducibleChainError(components)

    for k in range(n - 1):
        pivot = a[k, k + 1 :].sum()
        if pivot <= 0.0:
            # unreachable after the irreducibility check; kept as a guard
            raise ModelError(f"zero pivot while eliminating state {k}")
        a[k + 1 :, k] /= pivot
        a[k + 1 :, k + 1 :] += np.outer(a[k + 1 :, k], a[k, k + 1 :])

    x = np.zeros(n)
    x[n - 1] = 1.0
    for k in range(n - 2, -1, -1):
        x[k] = x[k + 1 :] @ a[k + 1 :, k]
    return x / x.sum()


def venue_reputation(structure: TransitionStructure, gamma: np.ndarray) -> np.ndarray:
    """One transition step from program reputations to venue reputations,
    scaled so the top venue is exactly 1."""
    nu = np.asarray(gamma, dtype=np.float64) @ structure.beta
    top = nu.max()
    if top <= 0.0:
        raise ModelError("venue reputations are all zero")
    return nu / top


def build_reputation_model(counts: CountsTable) -> ReputationModel:
    """Build, solve, and verify the full reputation model for a counts table."""
    structure = build_transitions(counts)
    p_prime = aggregate(structure)
    gamma = stationary_gth(p_prime)
    residual = np.max(np.abs(gamma @ p_prime - gamma))
    if residual > RESIDUAL_TOL:
        raise ModelError(f"stationary solve residual {residual:.3e} exceeds tolerance")
    nu = venue_reputation(structure, gamma)
    return ReputationModel(structure=structure, p_prime=p_prime, gamma=gamma, nu=nu)
