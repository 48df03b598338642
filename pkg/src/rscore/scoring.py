"""Scoring and ranking of programs against a solved reputation model.

A program's raw score is its venue-weighted publication total: the dot
product of the venue reputation vector with the program's per-venue counts.
Normalizing by the best raw score in the scored set gives the final score
in [0, 1]; dividing by roster size first gives the per-faculty variant.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .counts import CountsTable
from .errors import ScoringError
from .reputation import ReputationModel


@dataclass(frozen=True)
class ScoreRow:
    program_id: str
    faculty_count: int
    raw_score: float
    r_score: float
    r_score_per_faculty: float
    rank_total: int
    rank_per_faculty: int


@dataclass(frozen=True)
class ScoreReport:
    """Scored programs, ordered by descending score (ties lexicographic).

    ``zero_scores`` flags the degenerate case where every program scored
    zero; all normalized scores are then zero instead of dividing by zero.
    """

    rows: tuple[ScoreRow, ...]
    model_digest: str
    zero_scores: bool = False


def raw_score(model: ReputationModel, counts: CountsTable, program_id: str) -> float:
    """Venue-reputation-weighted publication total for one program.

    Venues outside the reference venue set contribute nothing, because the
    counts table only covers that set.
    """
    venues = model.structure.venue_index
    nu = model.nu
    total = 0.0
    for j, venue in enumerate(venues):
        count = counts.program_venue(program_id, venue)
        if count:
            total += float(nu[j]) * float(count)
    return total


def _competition_ranks(values: list[float]) -> list[int]:
    # 1-based; ties share the smaller rank and the next rank skips.
    return [1 + sum(1 for other in values if other > value) for value in values]


def score_programs(
    model: ReputationModel, counts: CountsTable, program_ids: list[str]
) -> ScoreReport:
    """Score and rank the given programs against the model.

    Normalization maxima are taken over exactly the programs passed in, so
    reference programs only influence the scale when explicitly included.
    """
    if not program_ids:
        raise ScoringError("no programs to score")
    if len(set(program_ids)) != len(program_ids):
        raise ScoringError("duplicate program id in scoring request")

    raws = {pid: raw_score(model, counts, pid) for pid in program_ids}
    sizes = {pid: counts.roster_sizes[pid] for pid in program_ids}
    per_faculty = {pid: raws[pid] / sizes[pid] for pid in program_ids}

    max_raw = max(raws.values())
    max_pf = max(per_faculty.values())
    zero_scores = max_raw == 0.0

    ordered = sorted(program_ids, key=lambda pid: (-raws[pid], pid))
    rank_total = dict(zip(ordered, _competition_ranks([raws[p] for p in ordered])))
    rank_pf = dict(zip(ordered, _competition_ranks([per_faculty[p] for p in ordered])))

    rows = tuple(
        ScoreRow(
            program_id=pid,
            faculty_count=sizes[pid],
            raw_score=raws[pid],
            r_score=0.0 if zero_scores else raws[pid] / max_raw,
            r_score_per_faculty=0.0 if zero_scores else per_faculty[pid] / max_pf,
            rank_total=rank_total[pid],
            rank_per_faculty=rank_pf[pid],
        )
        for pid in ordered
    )
    return ScoreReport(rows=rows, model_digest=model.digest, zero_scores=zero_scores)


def per_faculty_view(report: ScoreReport) -> ScoreReport:
    """Recompute the per-faculty normalization and ranks from the raw scores.

    Total-score fields and row order are left untouched, so the result pairs
    directly with the input row for row.
    """
    per_faculty = [row.raw_score / row.faculty_count for row in report.rows]
    max_pf = max(per_faculty)
    ranks = _competition_ranks(per_faculty)
    rows = tuple(
        replace(
            row,
            r_score_per_faculty=0.0 if max_pf == 0.0 else value / max_pf,
            rank_per_faculty=rank,
        )
        for row, value, rank in zip(report.rows, per_faculty, ranks)
    )
    return ScoreReport(
        rows=rows, model_digest=report.model_digest, zero_scores=report.zero_scores
    )
