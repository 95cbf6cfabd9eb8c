from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from rklat import generate as gen
from rklat.falgebra import AtomSpace, FElem

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=16)
nonneg_rationals = st.fractions(min_value=0, max_value=4, max_denominator=16)


@st.composite
def felems(draw, n=None, values=rationals):
    n = n if n is not None else draw(st.integers(1, 4))
    return FElem(AtomSpace(n), tuple(draw(st.lists(values, min_size=n, max_size=n))))


@st.composite
def felem_pairs(draw, k=2, values=rationals):
    n = draw(st.integers(1, 4))
    return tuple(draw(felems(n, values)) for _ in range(k))


@st.composite
def seeds(draw):
    return draw(st.integers(0, 2**32 - 1))


def instance_from_seed(seed, max_atoms=3, max_x=3, max_y=3, kinds=gen.TRANSFORM_KINDS):
    """Random module pair and generator for a hypothesis-chosen seed."""
    rng = gen.trial_rng(seed, 0, salt=999)
    n, m, k = gen.dims(rng, max_atoms, max_x, max_y)
    A = AtomSpace(n)
    return rng, gen.module_space(rng, A, m, kinds=kinds), gen.module_space(rng, A, k, kinds=kinds)


@pytest.fixture
def q():
    return Fraction
