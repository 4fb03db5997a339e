import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from packcover import samples
from packcover.torus import Arrangement, Lattice


@pytest.fixture
def square():
    return samples.unit_square()


@pytest.fixture
def tri():
    return samples.triangle()


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def square_arrangement(side, points=((0, 0),)):
    return Arrangement(samples.unit_square(), samples.square_lattice(Fraction(side)),
                       [tuple(Fraction(c) for c in p) for p in points])
