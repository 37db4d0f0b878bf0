import pytest
from hypothesis import strategies as st

from arbora import catalog
from arbora.trees import build_tree


@pytest.fixture
def tripod_neg():
    return catalog.tripod_neg()


@pytest.fixture
def tripod_pos():
    return catalog.tripod_pos()


@pytest.fixture
def p3mix():
    return catalog.p3mix()


@pytest.fixture
def path4_neg():
    return catalog.path4_neg()


@pytest.fixture
def htree_eq():
    return catalog.htree_eq()


@pytest.fixture
def htree_diff():
    return catalog.htree_diff()


@pytest.fixture
def spider7():
    return catalog.spider7()


@st.composite
def signed_trees(draw, min_nu=1, max_nu=6):
    """Random signed trees by random attachment, ids 1..n."""
    n = draw(st.integers(min_value=min_nu, max_value=max_nu))
    edges = []
    for i in range(2, n + 1):
        parent = draw(st.integers(min_value=1, max_value=i - 1))
        edges.append((parent, i))
    signs = [draw(st.sampled_from("-+")) for _ in range(n)]
    return build_tree([(i + 1, signs[i]) for i in range(n)], edges)
