import pytest

from latnash.games import RandomGameSpec, random_supermodular_game

# Acceptance corpus: seeds 0..199, 2-4 players, chains of length 2-4,
# mixed product/sublattice feasibility (the generator defaults).
CORPUS_SPEC = RandomGameSpec()
CORPUS_SEEDS = range(200)


@pytest.fixture(scope="session")
def corpus():
    return [random_supermodular_game(CORPUS_SPEC, seed) for seed in CORPUS_SEEDS]


@pytest.fixture(scope="session")
def small_corpus(corpus):
    """First 40 corpus games, for the heavier per-game property checks."""
    return corpus[:40]
