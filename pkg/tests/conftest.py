import numpy as np
import pytest

import lielearn as ll

TOY_T_MAX = np.pi / 30
TOY_SEED = 42
TOY_COUNT = 1000


@pytest.fixture(scope="session")
def toy_dataset():
    """The reference rotation dataset: 1000 unit-circle pairs, t in (0, pi/30]."""
    return ll.generate_pairs(ll.so2_generator(), TOY_COUNT, 0.0, TOY_T_MAX, seed=TOY_SEED)


@pytest.fixture(scope="session")
def trained_toy(toy_dataset):
    """Default-config training run on the toy dataset (shared across tests)."""
    return ll.train(toy_dataset, ll.TrainConfig())


def tangent_pairs(a_true, count=64, t=0.01, start=0.0):
    """Pairs lying exactly on the tangent lines: y = x + t * a_true x.

    Deterministic unit-circle sources; zero-risk data for the generator
    family proportional to a_true.
    """
    th = start + 2 * np.pi * np.arange(count) / count
    xs = np.stack([np.cos(th), np.sin(th)], axis=1)
    ys = xs + t * (xs @ np.asarray(a_true, dtype=float).T)
    return ll.Dataset(x=xs, y=ys)
