from functools import lru_cache

import pytest

from wedgedeg.catalog import parse_group_spec
from wedgedeg.wedge import exterior_square, tensor_square


@lru_cache(maxsize=None)
def group(spec):
    return parse_group_spec(spec)


@lru_cache(maxsize=None)
def ext(spec):
    return exterior_square(group(spec))


@lru_cache(maxsize=None)
def ten(spec):
    return tensor_square(group(spec))


SMALL = ["Z1", "Z2", "Z3", "Z4", "Z6", "Z2xZ2", "Z3xZ3", "D6", "D8", "D10", "D12", "Q8", "Q12",
         "A4", "Z2xZ2xZ2"]


@pytest.fixture(params=SMALL)
def small_spec(request):
    return request.param
