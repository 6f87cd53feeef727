from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tnet import Hypergraph, SpanningCycle, TSubsetFamily
from tnet.errors import ParseError
from tnet.formats import dumps_hg, dumps_net, dumps_pts, loads_hg, loads_net, loads_pts
from tnet.geometry import PointSet

hypergraphs = st.integers(min_value=0, max_value=12).flatmap(
    lambda n: st.lists(st.integers(min_value=0, max_value=(1 << n) - 1), max_size=15).map(
        lambda es: Hypergraph(n, tuple(es))))


@given(hypergraphs)
def test_hg_round_trip(H):
    text = dumps_hg(H)
    again, cycle = loads_hg(text)
    assert again == H and cycle is None
    assert dumps_hg(again) == text


def test_hg_with_cycle_and_comments():
    H = Hypergraph(4, (3, 12))
    cyc = SpanningCycle.from_order(H, (0, 2, 1, 3))
    H2, order = loads_hg("# header\n" + dumps_hg(H, cyc) + "  # trailing\n")
    assert H2 == H and order == (0, 2, 1, 3)


@pytest.mark.parametrize("text", [
    "", "e 0 1\n", "n 3\ne 1 0\n", "n 3\ne 0 3\n", "n x\n", "n 3\nq 1\n",
    "n 3\ncycle 0 1\n", "n 3\ne 0 0\n", "n 2\nn 2\n", "n -1\n",
])
def test_hg_malformed(text):
    with pytest.raises(ParseError):
        loads_hg(text)


coords = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@given(st.lists(st.tuples(coords, coords), unique=True, max_size=12))
def test_pts_round_trip(points):
    pts = PointSet(tuple(points))
    again = loads_pts(dumps_pts(pts))
    assert again == pts


@pytest.mark.parametrize("text", ["p 1\n", "q 1 2\n", "p 1 x\n", "p 1/0 2\n", "p 0 0\np 0 0\n"])
def test_pts_malformed(text):
    with pytest.raises(ParseError):
        loads_pts(text)


@given(st.integers(min_value=1, max_value=3), st.lists(st.integers(min_value=0, max_value=9),
                                                       min_size=3, max_size=3, unique=True),
       st.fractions(min_value=Fraction(1, 100), max_value=1))
def test_net_round_trip(t, verts, eps):
    mask = sum(1 << v for v in verts[:t])
    fam = TSubsetFamily(t, (mask,))
    again, eps2 = loads_net(dumps_net(fam, eps), 10)
    assert again == fam and eps2 == eps


@pytest.mark.parametrize("text", [
    "s 0 1\n", "t 2 eps\n", "t 2 eps 1/2\ns 0\n", "t 2 eps 1/2\nx 0 1\n",
    "t 0 eps 1/2\n", "t 2 eps 1/2\ns 1 0\n", "t 2 eps 1/2\ns 0 99\n",
])
def test_net_malformed(text):
    with pytest.raises(ParseError):
        loads_net(text, 10)
