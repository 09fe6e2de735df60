import pytest

from xaibench.models import make_builtin_lexicon, tokenize


@pytest.fixture
def lexicon():
    """Default builtin model: great=+2, terrible=-2, intercept 0."""
    return make_builtin_lexicon()


@pytest.fixture
def great_movie(lexicon):
    return tokenize(lexicon, ["great movie"])[0]
