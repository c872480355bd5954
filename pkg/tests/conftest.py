import random
import time

import pytest

from transcene import Generator, GeneratorConfig, PlaneConfig


@pytest.fixture(scope="session")
def event_10k():
    """One 10k-sample event split shared by balance and acceptance tests.

    Returns (samples, generation_seconds).
    """
    cfg = GeneratorConfig(seed=7, split_sizes=(("main", 10000),))
    t0 = time.perf_counter()
    samples = Generator(cfg).generate_splits()["main"]
    elapsed = time.perf_counter() - t0
    return samples, elapsed


@pytest.fixture(scope="session")
def small_event():
    cfg = GeneratorConfig(seed=11, split_sizes=(("main", 200),))
    return Generator(cfg).generate_splits()["main"]


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def plane():
    return PlaneConfig()
