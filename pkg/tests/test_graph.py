import json

import numpy as np
import pytest
from conftest import matrices
from hypothesis import given

from bimatch.constructions import gen_C, gen_F, gen_Hp, gen_J, gen_sharp1
from bimatch.graph import (
    Bigraph,
    add_universal_vertices,
    build,
    from_json,
    from_text,
    induced_subgraph,
    neighborhood,
    params,
    parse_graph,
    to_json,
    to_text,
    underlying_simple,
)


def test_build_accumulates_parallel_triples():
    assert build(2, 2, [(0, 0, 3), (0, 1, 1), (1, 0, 3), (1, 1, 1)]).tolist() == [[3, 1], [3, 1]]
    assert build(1, 1, [(0, 0, 1)]).tolist() == [[1]]
    assert build(2, 2, [(0, 0, 1), (0, 0, 2)]).mult[0, 0] == 3


@pytest.mark.parametrize(
    "args, exc",
    [
        ((2, 2, [(2, 0, 1)]), IndexError),
        ((2, 2, [(0, -1, 1)]), IndexError),
        ((2, 2, [(0, 0, 0)]), ValueError),
        ((0, 2, []), ValueError),
    ],
)
def test_build_rejects_bad_input(args, exc):
    with pytest.raises(exc):
        build(*args)


def test_bigraph_is_read_only_and_validated():
    G = Bigraph([[1, 2]])
    with pytest.raises(ValueError):
        G.mult[0, 0] = 5
    with pytest.raises(ValueError):
        Bigraph([[1, -1]])
    with pytest.raises(ValueError):
        Bigraph([1, 2])


def test_neighborhood():
    G = gen_sharp1(3, 5, 4)[0]
    assert neighborhood(G, {0}) == {0, 1, 2, 3}
    assert neighborhood(G, set()) == set()
    assert neighborhood(gen_Hp(4, 4)[0], {0}) == {0}


def test_params():
    p = params(gen_F(4)[0])
    assert (p.n, p.ny, p.t, p.m, p.b, p.k, p.r, p.deltaY) == (2, 2, 0, 8, 4, 4, 2, 2)
    p = params(gen_C(4, 1, 0)[0])
    assert (p.n, p.ny, p.t, p.m, p.b) == (4, 5, 1, 10, 0)
    p = params(Bigraph([[1]]))
    assert (p.n, p.ny, p.t, p.m, p.b, p.k, p.r) == (1, 1, 0, 1, -1, 1, 1)


def test_add_universal_vertices():
    assert add_universal_vertices(Bigraph([[1]]), 1).tolist() == [[1, 1]]
    G = Bigraph([[1, 0], [2, 1]])
    assert add_universal_vertices(G, 0) == G
    assert add_universal_vertices(Bigraph([[1], [1]]), 1).tolist() == [[1, 1], [1, 1]]


def test_induced_subgraph():
    J = gen_J(4, 4)[0]
    sub, S, T = induced_subgraph(J, [0, 1], [0, 1])
    assert sub == gen_F(4)[0]
    assert induced_subgraph(J, range(4), range(4))[0] == J
    block, _, _ = induced_subgraph(gen_sharp1(3, 5, 4)[0], [0, 1], [0, 1, 2, 3])
    assert block.tolist() == [[2, 1, 1, 1], [2, 1, 1, 1]]
    with pytest.raises(ValueError):
        induced_subgraph(J, [], [0])


def test_underlying_simple():
    assert underlying_simple(gen_F(4)[0]).tolist() == [[1, 1], [1, 1]]
    simple = Bigraph([[1, 0], [1, 1]])
    assert underlying_simple(simple) == simple


def test_json_is_stable_and_sorted():
    text = to_json(gen_F(4)[0])
    assert text == to_json(gen_F(4)[0])
    assert list(json.loads(text)) == ["edges", "nx", "ny"]


def test_parse_graph_formats():
    G = gen_C(3, 1, 1)[0]
    assert parse_graph(to_json(G)) == G
    assert parse_graph(to_text(G)) == G
    assert parse_graph(json.dumps({"graph": json.loads(to_json(G))})) == G
    assert parse_graph("# comment\n2 2\n0 0 1\n1 1 2\n").tolist() == [[1, 0], [0, 2]]
    with pytest.raises(ValueError):
        from_text("2 x\n")
    with pytest.raises(ValueError):
        from_json('{"nx": 2}')


@given(matrices(max_mult=4))
def test_serialization_roundtrip(a):
    G = Bigraph(a)
    assert from_json(to_json(G)) == G
    assert from_text(to_text(G)) == G
    assert hash(G) == hash(Bigraph(a.copy()))


@given(matrices())
def test_transpose_and_degrees(a):
    G = Bigraph(a)
    assert np.array_equal(G.transpose().mult, a.T)
    assert G.m == sum(G.degree_x()) == sum(G.degree_y())
    assert sum(mu for _, _, mu in G.edges()) == G.m
