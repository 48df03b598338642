from __future__ import annotations

from pathlib import Path

import pytest

from rscore import build_counts, build_reputation_model, parse_corpus

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures" / "walkthrough"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def walkthrough_corpus():
    return parse_corpus(
        (FIXTURES / "publications.jsonl").read_text(encoding="utf-8"),
        (FIXTURES / "rosters.json").read_text(encoding="utf-8"),
    )


@pytest.fixture(scope="session")
def walkthrough_counts(walkthrough_corpus):
    return build_counts(walkthrough_corpus)


@pytest.fixture(scope="session")
def walkthrough_model(walkthrough_counts):
    return build_reputation_model(walkthrough_counts)
