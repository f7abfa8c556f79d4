import pytest

from drkernel import busemann, cli, make_algebra

FAMILIES = [(1, 1), (1, 2), (2, 1), (3, 1), (7, 1)]

_CACHE = {}


def get_algebra(m, mult):
    key = (m, mult)
    if key not in _CACHE:
        _CACHE[key] = make_algebra(m, mult)
    return _CACHE[key]


@pytest.fixture(params=FAMILIES, ids=lambda p: f"m{p[0]}x{p[1]}")
def any_algebra(request):
    return get_algebra(*request.param)


@pytest.fixture
def heis():
    return get_algebra(1, 1)


@pytest.fixture
def quat():
    return get_algebra(3, 1)


def sample_general_pair(alg, rng, scale=2.0, a_range=(0.2, 5.0)):
    """Random (x, theta) that classifies as the general case."""
    for _ in range(100):
        x = cli.sample_group_point(alg, rng, scale, a_range)
        theta = cli.sample_boundary_point(alg, rng, scale)
        if busemann.classify_case(alg, x, theta) == "general":
            return x, theta
    raise RuntimeError("could not sample a general-case pair")
