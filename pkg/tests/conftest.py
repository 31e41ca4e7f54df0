import pytest

from braidlex import automaton as am


@pytest.fixture(scope="session")
def build_cached():
    """Session-wide automaton cache; building n=9 once is enough."""
    cache: dict[int, am.Automaton] = {}

    def get(n: int) -> am.Automaton:
        if n not in cache:
            cache[n] = am.build(n)
        return cache[n]

    return get
