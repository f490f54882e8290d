import pytest

from contextuality import scenario


@pytest.fixture
def cycle3():
    return scenario.cyclic_scenario(3)


@pytest.fixture
def cycle4():
    return scenario.cyclic_scenario(4)


@pytest.fixture
def pr_box(cycle4):
    """Maximally contextual no-signalling rank-4 model."""
    return scenario.model_from_rows(
        cycle4,
        [
            [0.5, 0.0, 0.0, 0.5],
            [0.5, 0.0, 0.0, 0.5],
            [0.5, 0.0, 0.0, 0.5],
            [0.0, 0.5, 0.5, 0.0],
        ],
    )


@pytest.fixture
def pr_prism(cycle3):
    """The rank-3 analogue: two correlated contexts, one anti-correlated."""
    return scenario.model_from_rows(
        cycle3,
        [
            [0.5, 0.0, 0.0, 0.5],
            [0.5, 0.0, 0.0, 0.5],
            [0.0, 0.5, 0.5, 0.0],
        ],
    )


@pytest.fixture
def bell_table(cycle4):
    """The standard two-party binary table violating the classical bound by 1/2."""
    return scenario.model_from_rows(
        cycle4,
        [
            [1 / 2, 0, 0, 1 / 2],
            [3 / 8, 1 / 8, 1 / 8, 3 / 8],
            [3 / 8, 1 / 8, 1 / 8, 3 / 8],
            [1 / 8, 3 / 8, 3 / 8, 1 / 8],
        ],
    )


@pytest.fixture
def deterministic3(cycle3):
    """All mass on the all-zero joint outcome in every context."""
    return scenario.model_from_rows(cycle3, [[1.0, 0.0, 0.0, 0.0]] * 3)
