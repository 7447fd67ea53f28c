import pytest

from symnet.corpus import Token
from symnet.wan import WordNetwork


def make_tokens(lemmas, sentences=None):
    """Token list with surface == lemma, for network construction tests."""
    if sentences is None:
        sentences = [0] * len(lemmas)
    return [
        Token(surface=l, lemma=l, sentence_index=s, position=i)
        for i, (l, s) in enumerate(zip(lemmas, sentences))
    ]


@pytest.fixture
def path5() -> WordNetwork:
    """v1 - v2 - v3 - v4 - v5."""
    return WordNetwork.from_pairs([("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5")])


@pytest.fixture
def triangle() -> WordNetwork:
    return WordNetwork.from_pairs([("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def fork() -> WordNetwork:
    """c - a, c - b, a - x, a - y, b - z."""
    return WordNetwork.from_pairs(
        [("c", "a"), ("c", "b"), ("a", "x"), ("a", "y"), ("b", "z")]
    )


@pytest.fixture
def merged_fork() -> WordNetwork:
    """z - a, z - b, a - b, a - x, a - y, b - y: level 1 of z merges."""
    return WordNetwork.from_pairs(
        [("z", "a"), ("z", "b"), ("a", "b"), ("a", "x"), ("a", "y"), ("b", "y")]
    )
