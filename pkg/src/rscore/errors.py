"""Exception hierarchy shared across the package.

Every error raised for bad input data or an unsolvable model derives from
:class:`RScoreError`, so callers (notably the CLI) can map the whole family
to a single "data error" exit path.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence


class RScoreError(Exception):
    """Base class for all data and model errors raised by this package."""


class CorpusError(RScoreError):
    """Invalid or internally inconsistent corpus input."""


class EmptyVenueSetError(CorpusError):
    """No reference-program faculty published anything in the corpus."""


class CountsError(RScoreError):
    """A count was requested for an unknown program, faculty member, or venue."""


class ModelError(RScoreError):
    """Reputation model construction or solving failed."""


class ReducibleChainError(ModelError):
    """The transition matrix is not irreducible, so no unique stationary
    distribution exists."""

    def __init__(self, components: Iterable[Sequence[int]]):
        self.components: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(i) for i in comp) for comp in components
        )
        listing = "; ".join(
            "{" + ", ".join(str(i) for i in comp) + "}" for comp in self.components
        )
        super().__init__(
            f"transition matrix is reducible; {len(self.components)} strongly "
            f"connected components: {listing}"
        )


class ScoringError(RScoreError):
    """Invalid scoring request."""


class AnalysisError(RScoreError):
    """Invalid rank-correlation or stability-sweep request."""


class DegenerateRankingError(AnalysisError):
    """A rank vector has zero variance, so its correlation is undefined."""
