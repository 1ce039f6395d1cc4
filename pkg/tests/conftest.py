import pytest

from genplot.pipeline import GenConfig, run_generation
from genplot.vocab import load_vocabulary


@pytest.fixture(scope="session")
def vocab():
    return load_vocabulary()


@pytest.fixture(scope="session")
def small_corpus(tmp_path_factory):
    """A 60-chart corpus shared by read-only tests."""
    out = tmp_path_factory.mktemp("corpus")
    summary = run_generation(GenConfig(root_seed=7, total=60, output_dir=out))
    assert not summary.failures
    return out
