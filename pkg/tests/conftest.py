import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tensoraxiom.exact import GF, QQ, LinearMap, VectorSpace

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIELDS = [QQ, GF(7)]


def scalars(field):
    if field is QQ:
        return st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
    return st.integers(0, field.p - 1).map(field)


fields = st.sampled_from(FIELDS)


@st.composite
def vectors(draw, space):
    return space.vector(tuple(draw(scalars(space.field)) for _ in range(space.dim)))


@st.composite
def maps(draw, X, V):
    f = X.field
    return LinearMap(X, V, tuple(tuple(draw(scalars(f)) for _ in range(X.dim))
                                 for _ in range(V.dim)))


@st.composite
def spaces(draw, field=None, max_dim=4, min_dim=1):
    f = field or draw(fields)
    return VectorSpace(f, draw(st.integers(min_dim, max_dim)))


@pytest.fixture(params=FIELDS, ids=lambda f: f.name)
def field(request):
    return request.param
