"""Corpus builders, random generators, and independent oracles.

The oracles deliberately recompute everything with naive loops and without
reusing any production code path, so a bug in the package cannot hide in
its own verification.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from rscore import Corpus, ProgramRoster, PublicationRecord, Role


def make_corpus(pubs, refs, cands=(), window=None) -> Corpus:
    """Build a corpus from plain tuples.

    ``pubs``: (id, venue, year, [authors]); ``refs``/``cands``: (program_id,
    [faculty]) with reference order meaning priority order.
    """
    return Corpus(
        publications=tuple(
            PublicationRecord(id=p, venue=v, year=y, authors=tuple(a))
            for p, v, y, a in pubs
        ),
        reference_programs=tuple(
            ProgramRoster(pid, Role.REFERENCE, frozenset(fac)) for pid, fac in refs
        ),
        candidate_programs=tuple(
            ProgramRoster(pid, Role.CANDIDATE, frozenset(fac)) for pid, fac in cands
        ),
        year_window=window,
    )


def random_corpus(
    rng: np.random.Generator,
    n_ref: int = 4,
    n_cand: int = 3,
    n_venues: int = 8,
    n_papers: int = 120,
    externals: int = 4,
    hub: bool = False,
) -> Corpus:
    """Random but always-usable corpus.

    Papers mix authors across rosters and include non-roster co-authors.
    Every reference program gets at least one solo paper so its transition
    row is defined; with ``hub`` every reference program also publishes in
    venue ``v00``, which makes every prefix model irreducible.
    """
    venues = [f"v{i:02d}" for i in range(n_venues)]
    refs = [
        (f"ref{i:02d}", [f"ref{i:02d}.m{j}" for j in range(int(rng.integers(2, 5)))])
        for i in range(n_ref)
    ]
    cands = [
        (f"cand{i:02d}", [f"cand{i:02d}.m{j}" for j in range(int(rng.integers(1, 4)))])
        for i in range(n_cand)
    ]
    people = [m for _, fac in refs + cands for m in fac]
    people += [f"ext.m{j}" for j in range(externals)]

    pubs = []
    serial = 0

    def add(venue, authors, year=2010):
        nonlocal serial
        pubs.append((f"p{serial:04d}", venue, year, list(authors)))
        serial += 1

    for _ in range(n_papers):
        count = int(rng.integers(1, 4))
        authors = list(rng.choice(people, size=count, replace=False))
        add(venues[int(rng.integers(0, n_venues))], authors, int(rng.integers(2005, 2012)))
    for _, faculty in refs:
        add(venues[int(rng.integers(0, n_venues))], [faculty[0]])
        if hub:
            add(venues[0], [faculty[0]])
    return make_corpus(pubs, refs, cands)


def oracle_counts(corpus: Corpus, distinct: bool = False):
    """Brute-force recount of every table, one nested loop per definition."""
    ref_members = set()
    for roster in corpus.reference_programs:
        ref_members |= roster.faculty
    venue_set = sorted(
        {
            pub.venue
            for pub in corpus.publications
            if any(author in ref_members for author in pub.authors)
        }
    )

    per_faculty: dict[tuple[str, str, str], Fraction] = {}
    rosters = list(corpus.reference_programs) + list(corpus.candidate_programs)
    for roster in rosters:
        for member in sorted(roster.faculty):
            for pub in corpus.publications:
                if pub.venue not in venue_set:
                    continue
                if member not in pub.authors:
                    continue
                same = len([a for a in pub.authors if a in roster.faculty])
                key = (roster.program_id, member, pub.venue)
                per_faculty[key] = per_faculty.get(key, Fraction(0)) + Fraction(1, same)

    per_program_venue: dict[tuple[str, str], Fraction] = {}
    for (program, member, venue), weight in per_faculty.items():
        key = (program, venue)
        per_program_venue[key] = per_program_venue.get(key, Fraction(0)) + weight

    per_program = {
        roster.program_id: sum(
            (per_program_venue.get((roster.program_id, v), Fraction(0)) for v in venue_set),
            start=Fraction(0),
        )
        for roster in rosters
    }

    per_venue = {}
    for venue in venue_set:
        if distinct:
            per_venue[venue] = Fraction(
                len(
                    [
                        pub.id
                        for pub in corpus.publications
                        if pub.venue == venue
                        and any(a in ref_members for a in pub.authors)
                    ]
                )
            )
        else:
            per_venue[venue] = sum(
                (
                    per_program_venue.get((roster.program_id, venue), Fraction(0))
                    for roster in corpus.reference_programs
                ),
                start=Fraction(0),
            )

    return venue_set, per_faculty, per_program_venue, per_venue, per_program


def power_iteration(p: np.ndarray, tol: float = 1e-14, max_iter: int = 500_000):
    """Stationary distribution by repeated multiplication."""
    n = p.shape[0]
    x = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        nxt = x @ p
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - x)) < tol:
            return nxt
        x = nxt
    raise AssertionError("power iteration did not converge")


def naive_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0], b.shape[1]))
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = 0.0
            for k in range(a.shape[1]):
                acc += a[i, k] * b[k, j]
            out[i, j] = acc
    return out


def random_stochastic(rng: np.random.Generator, n: int) -> np.ndarray:
    """Strictly positive row-stochastic matrix (hence irreducible, aperiodic)."""
    m = rng.uniform(0.05, 1.0, size=(n, n))
    return m / m.sum(axis=1, keepdims=True)
