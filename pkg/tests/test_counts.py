from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from rscore import (
    Corpus,
    CountsError,
    VenueMode,
    build_counts,
    program_venue_count,
    weighted_faculty_count,
)

from helpers import make_corpus, oracle_counts, random_corpus


def test_walkthrough_faculty_weights(walkthrough_corpus):
    # three papers in 'alpha', the last shared with one same-program co-author
    assert weighted_faculty_count(
        walkthrough_corpus, "north", "n.adams", "alpha"
    ) == Fraction(5, 2)
    assert weighted_faculty_count(
        walkthrough_corpus, "north", "n.clark", "beta"
    ) == Fraction(3, 2)
    assert weighted_faculty_count(
        walkthrough_corpus, "north", "n.adams", "beta"
    ) == Fraction(0)


def test_walkthrough_program_venue_counts(walkthrough_corpus):
    assert program_venue_count(walkthrough_corpus, "north", "alpha") == 3
    assert program_venue_count(walkthrough_corpus, "north", "beta") == 2
    assert program_venue_count(walkthrough_corpus, "south", "beta") == 4
    assert program_venue_count(walkthrough_corpus, "south", "gamma") == 2
    # programs never publishing in a venue count zero there
    assert program_venue_count(walkthrough_corpus, "west", "alpha") == 0


def test_program_without_reference_venue_papers_totals_zero():
    corpus = make_corpus(
        pubs=[("p1", "v1", 2010, ["a1"]), ("p2", "v9", 2010, ["c1"])],
        refs=[("r1", ["a1"])],
        cands=[("cand", ["c1"])],
    )
    counts = build_counts(corpus)
    assert counts.program_total("cand") == 0
    assert counts.program_total("r1") == 1


def test_walkthrough_venue_totals_per_program_mode(walkthrough_counts):
    totals = [walkthrough_counts.venue_total(v) for v in ("alpha", "beta", "gamma")]
    assert totals == [5, 6, 3]


def test_walkthrough_venue_totals_distinct_mode(walkthrough_corpus):
    counts = build_counts(walkthrough_corpus, VenueMode.DISTINCT_PAPER)
    # the two cross-program papers in 'beta' each count once
    totals = [counts.venue_total(v) for v in ("alpha", "beta", "gamma")]
    assert totals == [5, 4, 3]


def test_walkthrough_program_totals(walkthrough_counts):
    assert walkthrough_counts.program_total("north") == 6
    assert walkthrough_counts.program_total("south") == 8


def test_single_paper_corpus_all_counts_one():
    corpus = make_corpus(pubs=[("p1", "v1", 2010, ["a1"])], refs=[("r1", ["a1"])])
    counts = build_counts(corpus)
    assert counts.faculty_venue("r1", "a1", "v1") == 1
    assert counts.program_venue("r1", "v1") == 1
    assert counts.venue_total("v1") == 1
    assert counts.program_total("r1") == 1


def test_single_reference_paper_venue_total_one_in_both_modes():
    corpus = make_corpus(pubs=[("p1", "v1", 2010, ["a1"])], refs=[("r1", ["a1"])])
    for mode in VenueMode:
        assert build_counts(corpus, mode).venue_total("v1") == 1


def test_external_coauthors_do_not_dilute():
    corpus = make_corpus(
        pubs=[("p1", "v1", 2010, ["a1", "ext.x", "ext.y"])], refs=[("r1", ["a1"])]
    )
    assert weighted_faculty_count(corpus, "r1", "a1", "v1") == 1


def test_program_total_is_sum_over_venues(walkthrough_counts):
    for program in ("north", "south", "east", "west"):
        summed = sum(
            walkthrough_counts.program_venue(program, venue)
            for venue in walkthrough_counts.venue_index
        )
        assert summed == walkthrough_counts.program_total(program)


def test_lookup_errors(walkthrough_corpus, walkthrough_counts):
    with pytest.raises(CountsError, match="not in the roster"):
        weighted_faculty_count(walkthrough_corpus, "north", "s.diaz", "alpha")
    with pytest.raises(CountsError, match="not in the reference venue set"):
        weighted_faculty_count(walkthrough_corpus, "north", "n.adams", "nowhere")
    with pytest.raises(CountsError, match="unknown program"):
        walkthrough_counts.program_total("nowhere")
    with pytest.raises(CountsError, match="not in the reference venue set"):
        walkthrough_counts.venue_total("nowhere")


def test_program_venue_counts_are_integers_despite_fractional_shares():
    for seed in range(5):
        corpus = random_corpus(np.random.default_rng(seed), n_papers=60)
        counts = build_counts(corpus)
        for program in counts.reference_programs + counts.candidate_programs:
            for venue in counts.venue_index:
                value = counts.program_venue(program, venue)
                assert value.denominator == 1


def test_per_program_mode_dominates_distinct_mode():
    for seed in range(5):
        corpus = random_corpus(np.random.default_rng(100 + seed), n_papers=80)
        per_program = build_counts(corpus, VenueMode.PER_PROGRAM)
        distinct = build_counts(corpus, VenueMode.DISTINCT_PAPER)
        ref_rosters = {
            r.program_id: r.faculty for r in corpus.reference_programs
        }
        for venue in per_program.venue_index:
            a = per_program.venue_total(venue)
            b = distinct.venue_total(venue)
            assert a >= b
            shared = any(
                sum(
                    1
                    for fac in ref_rosters.values()
                    if not fac.isdisjoint(pub.authors)
                )
                > 1
                for pub in corpus.publications
                if pub.venue == venue
            )
            assert (a == b) == (not shared)


def test_counts_invariant_under_author_order():
    base = [
        ("p1", "v1", 2010, ["a1", "a2", "b1"]),
        ("p2", "v1", 2010, ["b1", "a1"]),
        ("p3", "v2", 2010, ["a2", "a1"]),
    ]
    flipped = [(p, v, y, list(reversed(a))) for p, v, y, a in base]
    refs = [("r1", ["a1", "a2"]), ("r2", ["b1"])]
    counts_a = build_counts(make_corpus(base, refs))
    counts_b = build_counts(make_corpus(flipped, refs))
    assert counts_a.per_faculty_venue == counts_b.per_faculty_venue
    assert counts_a.per_program_venue == counts_b.per_program_venue
    assert counts_a.per_venue == counts_b.per_venue


def test_removing_a_publication_subtracts_its_contribution():
    rng = np.random.default_rng(42)
    corpus = random_corpus(rng, n_papers=50)
    counts = build_counts(corpus)
    # drop one paper that actually counts somewhere
    target = next(
        pub
        for pub in corpus.publications
        if pub.venue in counts.venue_index
        and any(
            not roster.faculty.isdisjoint(pub.authors)
            for roster in corpus.reference_programs
        )
    )
    remaining = tuple(p for p in corpus.publications if p.id != target.id)
    smaller = Corpus(
        publications=remaining,
        reference_programs=corpus.reference_programs,
        candidate_programs=corpus.candidate_programs,
    )
    smaller_counts = build_counts(smaller)
    for roster in corpus.programs:
        members = {a for a in target.authors if a in roster.faculty}
        expected_delta = Fraction(1) if members else Fraction(0)
        before = counts.program_venue(roster.program_id, target.venue)
        after = (
            smaller_counts.program_venue(roster.program_id, target.venue)
            if target.venue in smaller_counts.venue_index
            else Fraction(0)
        )
        assert before - after == expected_delta
        share = Fraction(1, len(members)) if members else None
        for member in members:
            prev = counts.faculty_venue(roster.program_id, member, target.venue)
            now = (
                smaller_counts.faculty_venue(roster.program_id, member, target.venue)
                if target.venue in smaller_counts.venue_index
                else Fraction(0)
            )
            assert prev - now == share


def test_build_counts_matches_bruteforce_oracle():
    for seed in range(8):
        corpus = random_corpus(np.random.default_rng(1000 + seed), n_papers=90)
        for mode in VenueMode:
            counts = build_counts(corpus, mode)
            venue_set, per_faculty, per_program_venue, per_venue, per_program = (
                oracle_counts(corpus, distinct=mode is VenueMode.DISTINCT_PAPER)
            )
            assert list(counts.venue_index) == venue_set
            assert dict(counts.per_faculty_venue) == per_faculty
            assert dict(counts.per_program_venue) == per_program_venue
            assert dict(counts.per_venue) == per_venue
            assert dict(counts.per_program) == per_program


def test_per_program_venue_equals_sum_of_faculty_weights(walkthrough_counts):
    for (program, venue), total in walkthrough_counts.per_program_venue.items():
        summed = sum(
            weight
            for (p, _, v), weight in walkthrough_counts.per_faculty_venue.items()
            if p == program and v == venue
        )
        assert summed == total
