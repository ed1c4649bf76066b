from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "exact",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("exact")


# shared concrete fixtures, all verified exactly in the tests that use them

# nested pair: big triangle around the origin, small asymmetric triangle inside
NESTED_SIX = [(10, -10), (-10, -10), (F(1, 3), 10), (2, -3), (-1, -2), (F(1, 7), 1)]

# rational perturbation of the regular hexagon, general position with origin
HEXAGON = [
    (1, 0),
    (F(1, 2), F(7, 8)),
    (-F(1, 2), F(8, 9)),
    (-1, F(1, 17)),
    (-F(5, 9), -F(9, 10)),
    (F(5, 8), -F(8, 9)),
]

# three triangles sharing the origin: outer/inner nested, a thin sliver
# crossing both candidates for exactly one fixing step
NINE_ONE_FIX = [
    (100, -90),
    (-95, -100),
    (F(7, 2), 105),
    (2, -3),
    (-1, -2),
    (F(1, 7), 1),
    (200, 3),
    (-199, -1),
    (F(1, 5), -F(1, 11)),
]

# three concentric triangles around the origin: all three pairs start nested,
# and the loop needs three fixes under either measure
NINE_TRIPLE_NESTED = [
    (100, -90),
    (-95, -100),
    (F(7, 2), 105),
    (20, -17),
    (-19, -21),
    (F(3, 4), 23),
    (2, -3),
    (-1, -2),
    (F(1, 7), 1),
]


@pytest.fixture
def origin2():
    return (F(0), F(0))
