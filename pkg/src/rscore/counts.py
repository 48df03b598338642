"""Publication counting with same-program co-author weighting.

A paper with ``a`` authors from one program's roster counts ``1/a`` toward
each of those authors, so per-program per-venue totals are whole numbers of
distinct papers. Co-authors from outside the roster never dilute the weight.
All counts are exact rationals; floating point enters only when transition
matrices are built.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from collections.abc import Mapping

from .corpus import AuthorId, Corpus, VenueId, reference_venue_set
from .errors import CountsError


class VenueMode(str, Enum):
    """How per-venue totals treat papers shared by several reference programs.

    PER_PROGRAM (the default) counts a shared paper once per contributing
    program; DISTINCT_PAPER counts it once overall.
    """

    PER_PROGRAM = "per-program"
    DISTINCT_PAPER = "distinct-paper"


_ZERO = Fraction(0)


@dataclass(frozen=True)
class CountsTable:
    """All publication counts for one corpus, fully materialized.

    Zero-valued program/venue combinations are implied rather than stored;
    the accessors return an exact zero for them.
    """

    venue_index: tuple[VenueId, ...]
    reference_programs: tuple[str, ...]
    candidate_programs: tuple[str, ...]
    roster_sizes: Mapping[str, int]
    per_faculty_venue: Mapping[tuple[str, AuthorId, VenueId], Fraction]
    per_program_venue: Mapping[tuple[str, VenueId], Fraction]
    per_venue: Mapping[VenueId, Fraction]
    per_program: Mapping[str, Fraction]
    venue_mode: VenueMode = VenueMode.PER_PROGRAM

    def _check_program(self, program_id: str) -> None:
        if program_id not in self.roster_sizes:
            raise CountsError(f"unknown program id {program_id!r}")

    def _check_venue(self, venue: VenueId) -> None:
        if venue not in self.per_venue:
            raise CountsError(f"venue {venue!r} is not in the reference venue set")

    def faculty_venue(self, program_id: str, faculty: AuthorId, venue: VenueId) -> Fraction:
        """Co-author-weighted paper count for one faculty member in one venue."""
        self._check_program(program_id)
        self._check_venue(venue)
        return self.per_faculty_venue.get((program_id, faculty, venue), _ZERO)

    def program_venue(self, program_id: str, venue: VenueId) -> Fraction:
        """Distinct papers by the program's roster in one venue."""
        self._check_program(program_id)
        self._check_venue(venue)
        return self.per_program_venue.get((program_id, venue), _ZERO)

    def venue_total(self, venue: VenueId) -> Fraction:
        """Total papers in one venue, per the table's counting mode."""
        self._check_venue(venue)
        return self.per_venue[venue]

    def program_total(self, program_id: str) -> Fraction:
        """Total papers by one program across the reference venue set."""
        self._check_program(program_id)
        return self.per_program[program_id]


def weighted_faculty_count(
    corpus: Corpus, program_id: str, faculty: AuthorId, venue: VenueId
) -> Fraction:
    """Sum of 1/a over the member's papers in ``venue``, where ``a`` is the
    number of co-authors on the paper that belong to the same roster."""
    roster = corpus.roster(program_id)
    if faculty not in roster.faculty:
        raise CountsError(
            f"faculty member {faculty!r} is not in the roster of {program_id!r}"
        )
    _require_reference_venue(corpus, venue)
    total = _ZERO
    for pub in corpus.publications:
        if pub.venue != venue or faculty not in pub.authors:
            continue
        same_program = sum(1 for author in pub.authors if author in roster.faculty)
        total += Fraction(1, same_program)
    return total


def program_venue_count(corpus: Corpus, program_id: str, venue: VenueId) -> Fraction:
    """Summed weighted counts over the roster; equals the number of distinct
    papers in ``venue`` with at least one roster author."""
    roster = corpus.roster(program_id)
    _require_reference_venue(corpus, venue)
    total = _ZERO
    for pub in corpus.publications:
        if pub.venue != venue:
            continue
        # The roster members' 1/a shares of one paper always sum to 1.
        if not roster.faculty.isdisjoint(pub.authors):
            total += 1
    return total


def _require_reference_venue(corpus: Corpus, venue: VenueId) -> None:
    if venue not in reference_venue_set(corpus):
        raise CountsError(f"venue {venue!r} is not in the reference venue set")


def build_counts(
    corpus: Corpus, venue_mode: VenueMode = VenueMode.PER_PROGRAM
) -> CountsTable:
    """Compute every count for the corpus in a single pass.

    Per-venue totals cover reference programs only; per-program totals sum
    over the reference venue set, so candidate papers in other venues
    contribute nothing anywhere.
    """
    venue_index = tuple(reference_venue_set(corpus))
    venue_set = frozenset(venue_index)
    rosters = corpus.programs
    reference_ids = tuple(r.program_id for r in corpus.reference_programs)
    candidate_ids = tuple(r.program_id for r in corpus.candidate_programs)

    per_faculty: dict[tuple[str, AuthorId, VenueId], Fraction] = {}
    per_program_venue: dict[tuple[str, VenueId], Fraction] = {}
    distinct_by_venue: dict[VenueId, int] = {venue: 0 for venue in venue_index}
    reference_members: set[str] = set()
    for roster in corpus.reference_programs:
        reference_members |= roster.faculty

    for pub in corpus.publications:
        if pub.venue not in venue_set:
            continue
        author_set = frozenset(pub.authors)
        for roster in rosters:
            members = author_set & roster.faculty
            if not members:
                continue
            share = Fraction(1, len(members))
            for member in members:
                key = (roster.program_id, member, pub.venue)
                per_faculty[key] = per_faculty.get(key, _ZERO) + share
            venue_key = (roster.program_id, pub.venue)
            per_program_venue[venue_key] = per_program_venue.get(venue_key, _ZERO) + 1
        if not author_set.isdisjoint(reference_members):
            distinct_by_venue[pub.venue] += 1

    per_program: dict[str, Fraction] = {}
    for roster in rosters:
        per_program[roster.program_id] = sum(
            (
                per_program_venue.get((roster.program_id, venue), _ZERO)
                for venue in venue_index
            ),
            start=_ZERO,
        )

    per_venue: dict[VenueId, Fraction] = {}
    for venue in venue_index:
        if venue_mode is VenueMode.PER_PROGRAM:
            per_venue[venue] = sum(
                (
                    per_program_venue.get((program, venue), _ZERO)
                    for program in reference_ids
                ),
                start=_ZERO,
            )
        else:
            per_venue[venue] = Fraction(distinct_by_venue[venue])

    return CountsTable(
        venue_index=venue_index,
        reference_programs=reference_ids,
        candidate_programs=candidate_ids,
        roster_sizes={r.program_id: len(r.faculty) for r in rosters},
        per_faculty_venue=per_faculty,
        per_program_venue=per_program_venue,
        per_venue=per_venue,
        per_program=per_program,
        venue_mode=venue_mode,
    )
