import pytest

from pfrees.covergraph import (
    LabeledGraph,
    build_G,
    check_cover_census,
    cover_census,
    cover_ideal,
    is_unmixed,
    minimal_vertex_covers,
    networkx_minimal_covers,
)
from pfrees.error_handler import ParseError, SearchSpaceExceededError, ValidationError
from pfrees.groebner import ideal_equal
from pfrees.pfideal import tridiagonal_ideal


def test_build_G_five():
    G = build_G(5)
    assert G.edges == [((1, 2), (2, 3)), ((1, 2), (4, 5)), ((3, 4), (4, 5))]
    assert G.side((1, 2)) == "left" and G.side((4, 5)) == "right"


def test_covers_of_five():
    covers = minimal_vertex_covers(build_G(5))
    assert set(covers) == {((1, 2), (3, 4)), ((1, 2), (4, 5)), ((2, 3), (4, 5))}
    assert is_unmixed(covers)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_covers_agree_with_networkx_and_closed_form(n):
    G = build_G(n)
    covers = minimal_vertex_covers(G)
    assert covers == networkx_minimal_covers(G)
    r = (n - 1) // 2
    assert cover_census(covers) == {r: r + 1}
    assert check_cover_census(n)


def test_cover_ideal_is_the_tridiagonal_ideal():
    assert ideal_equal(cover_ideal(build_G(7)), tridiagonal_ideal(7).ideal())


def test_mixed_graph():
    G = LabeledGraph.from_text("(1 2) -- (2 3)\n(1 2) -- (4 5)\n(1 2) -- (6 7)\n")
    covers = minimal_vertex_covers(G)
    assert covers == [((1, 2),), ((2, 3), (4, 5), (6, 7))]
    assert not is_unmixed(covers)


def test_text_and_json_round_trip():
    G = build_G(7)
    assert LabeledGraph.from_text(G.to_text()).edges == G.edges
    assert LabeledGraph.from_json(G.to_json()).edges == G.edges


def test_bad_graphs():
    with pytest.raises(ValidationError):
        LabeledGraph.from_text("(1 2) -- (3 4)")
    with pytest.raises(ParseError):
        LabeledGraph.from_text("(1 2) - (2 3)")
    with pytest.raises(ValidationError):
        build_G(4)


def test_cover_enumeration_limit():
    with pytest.raises(SearchSpaceExceededError):
        minimal_vertex_covers(build_G(27))
