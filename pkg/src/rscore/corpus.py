"""Domain model and input parsing for publication corpora.

A corpus bundles publication records with program rosters (reference and
candidate) and optionally restricts records to a closed year window. All
values are immutable after construction and safe to share between threads.

Identifiers are opaque strings compared by exact equality. Resolving author
names to stable identifiers and merging renamed venues is the data
preparer's job, not this module's.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum

from .errors import CorpusError, EmptyVenueSetError

logger = logging.getLogger(__name__)

AuthorId = str
VenueId = str

_PUBLICATION_KEYS = frozenset({"id", "venue", "year", "authors"})
_ROSTER_REQUIRED_KEYS = frozenset({"id", "role", "faculty"})
_ROSTER_ALLOWED_KEYS = _ROSTER_REQUIRED_KEYS | {"rank_hint"}


class Role(str, Enum):
    REFERENCE = "reference"
    CANDIDATE = "candidate"


@dataclass(frozen=True)
class PublicationRecord:
    """One paper: where it appeared, when, and who wrote it."""

    id: str
    venue: VenueId
    year: int
    authors: tuple[AuthorId, ...]


@dataclass(frozen=True)
class ProgramRoster:
    """A program and the set of faculty whose publications count for it."""

    program_id: str
    role: Role
    faculty: frozenset[AuthorId]


@dataclass(frozen=True)
class Corpus:
    """Validated, immutable bundle of publications and program rosters.

    ``reference_programs`` is ordered: its order is the priority used when
    stability sweeps take reference-set prefixes.
    """

    publications: tuple[PublicationRecord, ...]
    reference_programs: tuple[ProgramRoster, ...]
    candidate_programs: tuple[ProgramRoster, ...]
    year_window: tuple[int, int] | None = None
    dropped_outside_window: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        _check_structure(self)

    @property
    def programs(self) -> tuple[ProgramRoster, ...]:
        return self.reference_programs + self.candidate_programs

    def roster(self, program_id: str) -> ProgramRoster:
        for roster in self.programs:
            if roster.program_id == program_id:
                return roster
        raise CorpusError(f"unknown program id {program_id!r}")


def _check_structure(corpus: Corpus) -> None:
    """Enforce the structural invariants that hold for every corpus."""
    seen_programs: set[str] = set()
    author_home: dict[str, str] = {}
    for roster in corpus.programs:
        if not roster.program_id:
            raise CorpusError("empty program id")
        if roster.program_id in seen_programs:
            raise CorpusError(f"duplicate program id {roster.program_id!r}")
        seen_programs.add(roster.program_id)
        if not roster.faculty:
            raise CorpusError(f"empty roster for program {roster.program_id!r}")
        for author in roster.faculty:
            if author in author_home:
                raise CorpusError(
                    f"faculty member {author!r} appears in both "
                    f"{author_home[author]!r} and {roster.program_id!r}"
                )
            author_home[author] = roster.program_id

    reference_ids = {r.program_id for r in corpus.reference_programs}
    candidate_ids = {r.program_id for r in corpus.candidate_programs}
    overlap = reference_ids & candidate_ids
    if overlap:
        raise CorpusError(f"roster overlap: {sorted(overlap)}")

    seen_pubs: set[str] = set()
    for pub in corpus.publications:
        if not pub.id:
            raise CorpusError("publication with empty id")
        if pub.id in seen_pubs:
            raise CorpusError(f"duplicate publication id {pub.id!r}")
        seen_pubs.add(pub.id)
        if not pub.authors:
            raise CorpusError(f"empty author list in record {pub.id!r}")
        if len(set(pub.authors)) != len(pub.authors):
            raise CorpusError(f"duplicate author within record {pub.id!r}")
        if corpus.year_window is not None:
            lo, hi = corpus.year_window
            if not lo <= pub.year <= hi:
                raise CorpusError(
                    f"record {pub.id!r} year {pub.year} outside window [{lo}, {hi}]"
                )


def reference_venue_set(corpus: Corpus) -> list[VenueId]:
    """Venues with at least one publication by reference-program faculty.

    Returns the venue ids in lexicographic order; this ordering fixes matrix
    indices everywhere downstream. Raises :class:`EmptyVenueSetError` when no
    reference faculty member published anything, which makes the corpus
    unusable for reputation propagation.
    """
    members: set[str] = set()
    for roster in corpus.reference_programs:
        members |= roster.faculty
    venues = {
        pub.venue for pub in corpus.publications if not members.isdisjoint(pub.authors)
    }
    if not venues:
        raise EmptyVenueSetError(
            "no publication by reference-program faculty; the venue set is empty"
        )
    return sorted(venues)


def parse_corpus(
    publications: str,
    rosters: str,
    year_window: tuple[int, int] | None = None,
) -> Corpus:
    """Parse and validate the two input documents into a :class:`Corpus`.

    ``publications`` is line-oriented: one JSON object per line with exactly
    the keys ``id``, ``venue``, ``year``, ``authors``. ``rosters`` is a single
    JSON document with a ``programs`` array. Records outside ``year_window``
    (inclusive on both ends) are dropped and counted, with a logged warning.

    Raises :class:`CorpusError` on any malformed or inconsistent input; line
    numbers are included for per-record problems.
    """
    if year_window is not None:
        lo, hi = year_window
        if lo > hi:
            raise CorpusError(f"empty year window [{lo}, {hi}]")

    records = _parse_publications(publications)
    reference, candidates = _parse_rosters(rosters)

    kept: list[PublicationRecord] = []
    dropped = 0
    if year_window is None:
        kept = records
    else:
        lo, hi = year_window
        for record in records:
            if lo <= record.year <= hi:
                kept.append(record)
            else:
                dropped += 1
        if dropped:
            logger.warning(
                "dropped %d publication record(s) outside year window [%d, %d]",
                dropped,
                lo,
                hi,
            )

    corpus = Corpus(
        publications=tuple(kept),
        reference_programs=tuple(reference),
        candidate_programs=tuple(candidates),
        year_window=year_window,
        dropped_outside_window=dropped,
    )
    reference_venue_set(corpus)  # reject corpora with an empty venue set
    return corpus


def _clean_id(value: object, what: str, where: str) -> str:
    if not isinstance(value, str):
        raise CorpusError(f"{where}: {what} must be a string, got {value!r}")
    cleaned = value.strip()
    if not cleaned:
        raise CorpusError(f"{where}: empty {what}")
    return cleaned


def _parse_publications(text: str) -> list[PublicationRecord]:
    records: list[PublicationRecord] = []
    seen: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        where = f"publications line {lineno}"
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"{where}: malformed record: {exc.msg}") from exc
        if not isinstance(raw, dict):
            raise CorpusError(f"{where}: expected an object, got {type(raw).__name__}")
        unknown = set(raw) - _PUBLICATION_KEYS
        if unknown:
            raise CorpusError(f"{where}: unknown keys {sorted(unknown)}")
        missing = _PUBLICATION_KEYS - set(raw)
        if missing:
            raise CorpusError(f"{where}: missing keys {sorted(missing)}")

        pub_id = _clean_id(raw["id"], "publication id", where)
        if pub_id in seen:
            raise CorpusError(f"{where}: duplicate publication id {pub_id!r}")
        seen.add(pub_id)
        venue = _clean_id(raw["venue"], "venue id", where)
        year = raw["year"]
        if isinstance(year, bool) or not isinstance(year, int):
            raise CorpusError(f"{where}: year must be an integer, got {year!r}")
        raw_authors = raw["authors"]
        if not isinstance(raw_authors, list):
            raise CorpusError(f"{where}: authors must be an array")
        if not raw_authors:
            raise CorpusError(f"empty author list in record {pub_id!r} ({where})")
        authors = tuple(_clean_id(a, "author id", where) for a in raw_authors)
        if len(set(authors)) != len(authors):
            raise CorpusError(f"duplicate author within record {pub_id!r} ({where})")
        records.append(
            PublicationRecord(id=pub_id, venue=venue, year=year, authors=authors)
        )
    return records


def _parse_rosters(text: str) -> tuple[list[ProgramRoster], list[ProgramRoster]]:
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"rosters document: malformed JSON: {exc.msg}") from exc
    if not isinstance(document, dict) or set(document) != {"programs"}:
        raise CorpusError("rosters document must be an object with a 'programs' array")
    entries = document["programs"]
    if not isinstance(entries, list):
        raise CorpusError("rosters 'programs' must be an array")

    # (rank_hint, file position) orders the reference programs; unhinted ones
    # follow all hinted ones in file order.
    hinted: list[tuple[int, int, ProgramRoster]] = []
    unhinted: list[tuple[int, ProgramRoster]] = []
    candidates: list[ProgramRoster] = []
    for position, entry in enumerate(entries):
        where = f"rosters program #{position + 1}"
        if not isinstance(entry, dict):
            raise CorpusError(f"{where}: expected an object")
        unknown = set(entry) - _ROSTER_ALLOWED_KEYS
        if unknown:
            raise CorpusError(f"{where}: unknown keys {sorted(unknown)}")
        missing = _ROSTER_REQUIRED_KEYS - set(entry)
        if missing:
            raise CorpusError(f"{where}: missing keys {sorted(missing)}")

        program_id = _clean_id(entry["id"], "program id", where)
        role_raw = entry["role"]
        if role_raw not in (Role.REFERENCE.value, Role.CANDIDATE.value):
            raise CorpusError(
                f"{where}: role must be 'reference' or 'candidate', got {role_raw!r}"
            )
        role = Role(role_raw)

        raw_faculty = entry["faculty"]
        if not isinstance(raw_faculty, list):
            raise CorpusError(f"{where}: faculty must be an array")
        if not raw_faculty:
            raise CorpusError(f"empty roster for program {program_id!r} ({where})")
        faculty = [_clean_id(a, "author id", where) for a in raw_faculty]
        if len(set(faculty)) != len(faculty):
            raise CorpusError(f"{where}: duplicate faculty member in {program_id!r}")

        rank_hint = entry.get("rank_hint")
        if rank_hint is not None:
            if isinstance(rank_hint, bool) or not isinstance(rank_hint, int):
                raise CorpusError(f"{where}: rank_hint must be an integer")
            if rank_hint < 1:
                raise CorpusError(f"{where}: rank_hint must be >= 1, got {rank_hint}")

        roster = ProgramRoster(
            program_id=program_id, role=role, faculty=frozenset(faculty)
        )
        if role is Role.CANDIDATE:
            candidates.append(roster)
        elif rank_hint is not None:
            hinted.append((rank_hint, position, roster))
        else:
            unhinted.append((position, roster))

    hinted.sort(key=lambda item: (item[0], item[1]))
    reference = [roster for _, _, roster in hinted]
    reference.extend(roster for _, roster in unhinted)
    return reference, candidates


def serialize_publications(corpus: Corpus) -> str:
    """Render the publication records back to the line-oriented input form."""
    lines = []
    for pub in corpus.publications:
        lines.append(
            json.dumps(
                {
                    "id": pub.id,
                    "venue": pub.venue,
                    "year": pub.year,
                    "authors": list(pub.authors),
                },
                ensure_ascii=False,
            )
        )
    return "\n".join(lines) + "\n"


def serialize_rosters(corpus: Corpus) -> str:
    """Render the rosters back to the document input form.

    Reference programs get explicit rank hints so that the priority order
    survives a round trip regardless of how it was originally expressed.
    """
    programs = []
    for hint, roster in enumerate(corpus.reference_programs, start=1):
        programs.append(
            {
                "id": roster.program_id,
                "role": roster.role.value,
                "rank_hint": hint,
                "faculty": sorted(roster.faculty),
            }
        )
    for roster in corpus.candidate_programs:
        programs.append(
            {
                "id": roster.program_id,
                "role": roster.role.value,
                "faculty": sorted(roster.faculty),
            }
        )
    return json.dumps({"programs": programs}, indent=2, ensure_ascii=False) + "\n"
