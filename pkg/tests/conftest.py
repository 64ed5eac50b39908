import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mixdiv import make_generator, make_space, validate_density


@pytest.fixture
def two_atom():
    """The worked two-atom fixture: mu=(1,1), two probability pairs."""
    space = make_space([1.0, 1.0])
    return {
        "space": space,
        "p1": validate_density(space, [0.5, 0.5], require_prob=True),
        "q1": validate_density(space, [0.25, 0.75], require_prob=True),
        "p2": validate_density(space, [0.8, 0.2], require_prob=True),
        "q2": validate_density(space, [0.5, 0.5], require_prob=True),
    }


def catalog_generators():
    """A spread of catalog generators covering every shape regime."""
    gens = [
        make_generator("total_variation"),
        make_generator("kl_positive_part"),
        make_generator("linear", a=2.0, b=1.0),
        make_generator("linear", a=1.0, b=0.0),
        make_generator("linear", a=0.0, b=1.0),
    ]
    for alpha in (-1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 2.0, 3.0):
        gens.append(make_generator("power", alpha=alpha))
    return gens
