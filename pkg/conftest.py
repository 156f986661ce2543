"""Fixture condivise della suite di test."""

import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Aggiungi src al path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from moments.algebra import WeightVector  # noqa: E402

collect_ignore = ["examples", "venv"]

TEST_WEIGHTS = ["1/2,1/2", "2/3,1/3", "1/2,1/3,1/6", "1/3,1/3,1/3"]


@pytest.fixture(params=TEST_WEIGHTS)
def weights(request) -> WeightVector:
    """I quattro vettori di pesi di riferimento."""
    return WeightVector.parse(request.param)


@pytest.fixture
def half() -> WeightVector:
    return WeightVector((Fraction(1, 2), Fraction(1, 2)))


@pytest.fixture
def three() -> WeightVector:
    return WeightVector.parse("1/2,1/3,1/6")
