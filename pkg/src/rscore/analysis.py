"""Rank correlation and reference-set stability analysis.

The stability sweep re-runs the whole pipeline with growing prefixes of the
reference set and measures how much the candidate ranking moves, using
Spearman's rank correlation between consecutive prefix sizes and between the
smallest and largest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from collections.abc import Mapping, Sequence

from .corpus import Corpus
from .counts import VenueMode, build_counts
from .errors import AnalysisError, DegenerateRankingError, RScoreError
from .reputation import build_reputation_model
from .scoring import ScoreReport, score_programs

Ranking = Sequence[str] | Sequence[tuple[str, float]]


def _rank_map(ranking: Ranking) -> dict[str, float]:
    """Rank positions keyed by id; score-annotated entries get average ranks.

    A plain id sequence is already a strict ranking, so positions are the
    ranks. With (id, score) pairs, entries are ranked by descending score and
    equal scores share the average of their positions.
    """
    if len(ranking) == 0:
        return {}
    if isinstance(ranking[0], str):
        ids = list(ranking)
        if any(not isinstance(entry, str) for entry in ids):
            raise AnalysisError("mixed ranking entries")
        if len(set(ids)) != len(ids):
            raise AnalysisError("ranking contains duplicate ids")
        return {pid: float(position) for position, pid in enumerate(ids, start=1)}

    pairs = [(str(pid), float(score)) for pid, score in ranking]
    if len({pid for pid, _ in pairs}) != len(pairs):
        raise AnalysisError("ranking contains duplicate ids")
    pairs.sort(key=lambda item: (-item[1], item[0]))
    ranks: dict[str, float] = {}
    start = 0
    while start < len(pairs):
        stop = start
        while stop < len(pairs) and pairs[stop][1] == pairs[start][1]:
            stop += 1
        average = (start + 1 + stop) / 2.0
        for index in range(start, stop):
            ranks[pairs[index][0]] = average
        start = stop
    return ranks


def spearman(rank_a: Ranking, rank_b: Ranking) -> float:
    """Spearman's rank correlation between two rankings of the same set.

    Accepts either plain orderings of ids or (id, score) pairs; with pairs,
    tied scores receive average ranks. Computed as the Pearson correlation of
    the two rank vectors, which reduces to 1 - 6*sum(d^2)/(n(n^2-1)) when
    tie-free.
    """
    ranks_a = _rank_map(rank_a)
    ranks_b = _rank_map(rank_b)
    if set(ranks_a) != set(ranks_b):
        raise AnalysisError("rankings do not cover the same program set")
    n = len(ranks_a)
    if n < 2:
        raise AnalysisError(f"need at least 2 ranked programs, got {n}")

    ids = sorted(ranks_a)
    a = [ranks_a[pid] for pid in ids]
    b = [ranks_b[pid] for pid in ids]
    mean_a = sum(a) / n
    mean_b = sum(b) / n
    covariance = sum((x - mean_a) * (y - mean_b) for x, y in zip(a, b))
    variance = math.sqrt(
        sum((x - mean_a) ** 2 for x in a) * sum((y - mean_b) ** 2 for y in b)
    )
    if variance == 0.0:
        raise DegenerateRankingError("a rank vector has zero variance")
    return max(-1.0, min(1.0, covariance / variance))


@dataclass(frozen=True)
class StabilityReport:
    """Rankings and their pairwise correlations across nested prefix sizes."""

    sizes: tuple[int, ...]
    adjacent: tuple[tuple[int, int, float], ...]
    first_vs_last: tuple[int, int, float]
    rankings: Mapping[int, tuple[str, ...]]


def stability_sweep(
    corpus: Corpus, k: int, venue_mode: VenueMode = VenueMode.PER_PROGRAM
) -> StabilityReport:
    """Score the candidates against every reference-set prefix of size 1..k.

    Each prefix rebuilds the venue set, counts, and reputation model from
    scratch. Any failure is reported with the offending prefix size.
    """
    if k < 1:
        raise AnalysisError(f"k must be >= 1, got {k}")
    available = len(corpus.reference_programs)
    if available < k:
        raise AnalysisError(f"need {k} reference programs, found {available}")
    candidates = [r.program_id for r in corpus.candidate_programs]
    if not candidates:
        raise AnalysisError("no candidate programs to rank")

    scored: dict[int, list[tuple[str, float]]] = {}
    rankings: dict[int, tuple[str, ...]] = {}
    for size in range(1, k + 1):
        prefix = replace(
            corpus, reference_programs=corpus.reference_programs[:size]
        )
        try:
            counts = build_counts(prefix, venue_mode)
            model = build_reputation_model(counts)
            report = score_programs(model, counts, candidates)
        except RScoreError as exc:
            raise AnalysisError(f"reference-set size {size}: {exc}") from exc
        scored[size] = [(row.program_id, row.raw_score) for row in report.rows]
        rankings[size] = tuple(row.program_id for row in report.rows)

    def correlate(i: int, j: int) -> float:
        try:
            return spearman(scored[i], scored[j])
        except DegenerateRankingError as exc:
            raise AnalysisError(
                f"comparison of sizes {i} and {j}: {exc}"
            ) from exc

    adjacent = tuple(
        (size, size + 1, correlate(size, size + 1)) for size in range(1, k)
    )
    # A self-comparison is 1 by definition; do not route it through the
    # correlation, which would reject an all-tied ranking instead.
    first_vs_last = (1, k, 1.0 if k == 1 else correlate(1, k))
    return StabilityReport(
        sizes=tuple(range(1, k + 1)),
        adjacent=adjacent,
        first_vs_last=first_vs_last,
        rankings=rankings,
    )


@dataclass(frozen=True)
class ComparisonRow:
    program_id: str
    r_score: float
    grade: float


@dataclass(frozen=True)
class ComparisonReport:
    """Score-ordered rows with external grades, plus their rank correlation.

    ``rho`` is None when the correlation is undefined (for example when all
    external grades are equal); ``degenerate`` marks that case.
    """

    rows: tuple[ComparisonRow, ...]
    rho: float | None
    degenerate: bool


def compare_rankings(
    report: ScoreReport, external: Sequence[tuple[str, float]]
) -> ComparisonReport:
    """Pair a score report with an externally graded ranking.

    Only programs present on both sides are compared. Higher grades rank
    better, mirroring the score direction; equal grades are tie-grouped with
    average ranks.
    """
    grades = {}
    for pid, grade in external:
        if pid in grades:
            raise AnalysisError(f"duplicate program id {pid!r} in external grades")
        grades[pid] = float(grade)

    common = [row for row in report.rows if row.program_id in grades]
    if not common:
        raise AnalysisError("no overlap between scored programs and external grades")

    rows = tuple(
        ComparisonRow(
            program_id=row.program_id,
            r_score=row.r_score,
            grade=grades[row.program_id],
        )
        for row in common
    )
    rho: float | None
    if len(common) < 2:
        # a single shared program cannot be correlated
        rho, degenerate = None, True
    else:
        scored_pairs = [(row.program_id, row.raw_score) for row in common]
        grade_pairs = [(row.program_id, grades[row.program_id]) for row in common]
        try:
            rho, degenerate = spearman(scored_pairs, grade_pairs), False
        except DegenerateRankingError:
            rho, degenerate = None, True
    return ComparisonReport(rows=rows, rho=rho, degenerate=degenerate)
