import hypothesis
import pytest

from knapqaoa import KnapsackInstance

hypothesis.settings.register_profile("suite", deadline=None, max_examples=60, derandomize=True)
hypothesis.settings.load_profile("suite")


@pytest.fixture
def i1() -> KnapsackInstance:
    """Three-item instance small enough to check every quantity by hand."""
    return KnapsackInstance((4, 2, 1), (3, 2, 1), 3, name="i1")
