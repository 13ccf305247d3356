import pytest
from hypothesis import strategies as st

from tanerve.ainfty import standard_simplex_dg
from tanerve.fixtures import homotopy_simplex, m3_category, nonassociative_algebra
from tanerve.necklace import Necklace

beads = st.lists(st.integers(min_value=1, max_value=3), min_size=0, max_size=3)
necklaces = beads.map(Necklace.from_beads)


@pytest.fixture(scope="session")
def a2():
    return standard_simplex_dg(2)


@pytest.fixture(scope="session")
def h3():
    return homotopy_simplex(3)


@pytest.fixture(scope="session")
def m3():
    return m3_category()


@pytest.fixture(scope="session")
def nonassoc():
    return nonassociative_algebra()
