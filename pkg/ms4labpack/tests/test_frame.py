# MS4LAB - Finite MS4 Frame and Algebra Workbench
# SPDX-License-Identifier: GPL-3.0-or-later
# SPDX-FileCopyrightText: 2026 ms4lab developers

import pickle

import networkx as nx

import numpy as np

import pytest

from ms4labpack.constructions import (
    chain_frame,
    disjoint_union,
    grid_frame,
    layered_grid_frame,
    product_frame,
    random_frame,
    s4_order,
)
from ms4labpack.dot import r_digraph
from ms4labpack.errors import (
    CommutationFails,
    ConsistencyError,
    EmptyFrame,
    FrameError,
    NotEquivalence,
    NotQuasiOrder,
)
from ms4labpack.frame import (
    MS4Frame,
    SIKind,
    classify_si,
    depth,
    e_clusters,
    e_saturated,
    eq_relation,
    er_relation,
    flat,
    is_p_morphism,
    layers,
    lowest,
    members,
    passive_points,
    point_depth,
    popcount,
    q_clusters,
    q_depth,
    q_relation,
    q_roots,
    qmax,
    quotient_frame,
    r_clusters,
    re_relation,
    restrict,
    s_relation,
    strict_chain,
    validate,
    validate_s52,
    worldset,
)


def arrow_frame():
    """Worlds a=0 and b=1, a R b, E total."""
    return validate([[1, 1], [0, 1]], [[1, 1], [1, 1]])


def test_worldsets():
    assert worldset([0, 2, 3]) == 0b1101
    assert members(0b1101) == [0, 2, 3]
    assert popcount(0b1101) == 3
    assert lowest(0b1100) == 2
    assert members(0) == []


@pytest.mark.parametrize(('R', 'E'), [
    ([[1]], [[1]]),
    ([[1, 1], [0, 1]], [[1, 1], [1, 1]]),
    ([[1, 0], [0, 1]], [[1, 1], [1, 1]]),
])
def test_validate_accepts(R, E):
    f = validate(R, E)
    assert f.n == len(R)
    assert f.labels == tuple(str(x) for x in range(f.n))


def test_not_reflexive():
    with pytest.raises(NotQuasiOrder) as excinfo:
        validate([[0]], [[1]])
    assert excinfo.value.witness == (0,)


def test_not_transitive():
    with pytest.raises(NotQuasiOrder) as excinfo:
        validate([[1, 1, 0], [0, 1, 1], [0, 0, 1]], np.eye(3))
    assert excinfo.value.witness == (0, 1, 2)


def test_close_r():
    f = validate([[1, 1, 0], [0, 1, 1], [0, 0, 1]], np.eye(3), close_R=True)
    assert f.R[0, 2]


def test_not_equivalence():
    with pytest.raises(NotEquivalence) as excinfo:
        validate(np.eye(2), [[1, 1], [0, 1]])
    assert excinfo.value.relation == 'E'
    assert excinfo.value.witness == (0, 1)


def test_close_e():
    f = validate(np.eye(3), [[1, 1, 0], [0, 1, 1], [0, 0, 1]], close_E=True)
    assert f.E.all()


def test_commutation_fails():
    R = np.eye(3, dtype=bool)
    R[1, 2] = True
    E = np.eye(3, dtype=bool)
    E[0, 1] = E[1, 0] = True
    with pytest.raises(CommutationFails) as excinfo:
        validate(R, E)
    assert (excinfo.value.x, excinfo.value.y, excinfo.value.y2) == (0, 1, 2)


def test_bad_shapes():
    with pytest.raises(EmptyFrame):
        validate([], [])
    with pytest.raises(FrameError):
        validate([[1, 0]], [[1]])
    with pytest.raises(FrameError):
        validate(np.eye(2), np.eye(3))
    with pytest.raises(FrameError):
        validate(np.eye(2), np.eye(2), labels=['a'])


def test_s52_validation():
    s52 = validate_s52(np.eye(2), np.ones((2, 2)))
    assert s52.e2_classes() == [0b11]
    with pytest.raises(NotEquivalence):
        validate_s52([[1, 1], [0, 1]], np.eye(2))


def test_frames_are_values():
    f = random_frame(4, 0.4, seed=3)
    g = pickle.loads(pickle.dumps(f))
    assert g == f
    assert hash(g) == hash(f)
    assert g.r_rows == f.r_rows
    assert f != chain_frame(4)


def test_operators():
    f = chain_frame(2)
    assert members(f.dia(0b01)) == [0, 1]
    assert members(f.dia(0b10)) == [1]
    assert members(f.box(0b01)) == [0]
    assert f.ex(0b01) == 0b01
    g = arrow_frame()
    assert g.ex(0b01) == 0b11
    assert g.bdia(0b01) == 0b11


@pytest.mark.parametrize('f', [
    random_frame(5, 0.3, seed=1),
    grid_frame(2, 3)[1],
    grid_frame(3, 6)[1],
], ids=['random', 'table', 'bitloop'])
def test_batch_operators(f):
    rng = np.random.default_rng(0)
    sets = rng.integers(0, f.full + 1, size=64, dtype=np.uint64)
    dia = f.dia_batch(sets)
    ex = f.ex_batch(sets)
    for ws, d, e in zip(sets, dia, ex):
        assert int(d) == f.dia(int(ws))
        assert int(e) == f.ex(int(ws))


def test_derived_relations_arrow():
    f = arrow_frame()
    assert q_relation(f).all()
    assert eq_relation(f).all()
    assert np.array_equal(er_relation(f), np.eye(2, dtype=bool))
    assert s_relation(f).all()


def test_derived_relations_chain():
    f = chain_frame(3)
    assert np.array_equal(q_relation(f), f.R)
    assert np.array_equal(s_relation(f), f.R)
    assert np.array_equal(er_relation(f), np.eye(3, dtype=bool))


def test_grid_q_total():
    f = grid_frame(2, 2)[1]
    assert q_relation(f).all()
    assert np.array_equal(re_relation(f), q_relation(f))


def test_q_is_r_then_e():
    f = random_frame(5, 0.3, seed=11)
    q = q_relation(f)
    for x in range(f.n):
        for y in range(f.n):
            assert q[x, y] == any(f.R[x, z] and f.E[z, y] for z in range(f.n))


def test_clusters():
    f = grid_frame(2, 2)[1]
    assert e_clusters(f) == [0b0101, 0b1010]
    assert r_clusters(f) == [0b0011, 0b1100]
    assert q_clusters(f) == [0b1111]


def test_qmax():
    f = chain_frame(3)
    assert qmax(f, f.full) == 0b001
    assert qmax(f, 0) == 0
    assert qmax(arrow_frame(), 0b11) == 0b10


def test_layers():
    f = chain_frame(4)
    decomposition = layers(f)
    assert decomposition.layers == (0b0001, 0b0010, 0b0100, 0b1000)
    assert decomposition.residue == 0
    assert depth(f) == 4
    assert point_depth(f, 2) == 3
    assert strict_chain(f, 3) == [3, 2, 1, 0]

    g = arrow_frame()
    assert layers(g).layers == (0b10, 0b01)

    cluster = validate(np.ones((3, 3)), np.eye(3))
    assert depth(cluster) == 1


def test_quotient():
    f = arrow_frame()
    g, class_of = quotient_frame(f)
    assert g.n == 1
    assert class_of == (0, 0)
    assert depth(f) == 2
    assert q_depth(f) == 1

    grid = grid_frame(2, 2)[1]
    g, class_of = quotient_frame(grid)
    assert g.n == 2
    assert g.R.all()
    assert q_depth(grid) == 1

    chain = chain_frame(3)
    g, class_of = quotient_frame(chain)
    assert np.array_equal(g.R, chain.R)
    assert class_of == (0, 1, 2)


@pytest.mark.parametrize('seed', range(10))
def test_quotient_is_p_morphism(seed):
    f = random_frame(2 + seed % 4, 0.35, seed=seed)
    g, class_of = quotient_frame(f)
    assert is_p_morphism(f, g, class_of)


def test_p_morphism():
    f = chain_frame(2)
    assert not is_p_morphism(f, chain_frame(1), (0,))
    assert not is_p_morphism(f, chain_frame(2), (1, 0))
    assert is_p_morphism(f, chain_frame(2), (0, 1))
    assert is_p_morphism(product_frame(chain_frame(2), 2), chain_frame(2), (0, 0, 1, 1))


def test_restrict():
    chain = chain_frame(3)
    r = restrict(chain, layers(chain).layers[0])
    assert r.as_frame() == validate([[1]], [[1]])
    assert r.report['ms4']

    r = restrict(arrow_frame(), 0b01)
    assert r.worlds == (0,)
    assert r.as_frame().n == 1

    r = restrict(grid_frame(2, 2)[1], 0b1111)
    assert r.report['s5_squared']
    assert r.report['R_equivalence']


def test_roots():
    chain = chain_frame(3)
    assert q_roots(chain) == 0b100
    assert classify_si(chain) is SIKind.SI

    grid = grid_frame(3, 3)[1]
    assert q_roots(grid) == grid.full
    assert classify_si(grid) is SIKind.SIMPLE

    union = disjoint_union([chain_frame(1), chain_frame(1)])
    assert q_roots(union) == 0
    assert classify_si(union) is SIKind.NOT_SI


def test_subset_predicates():
    f = arrow_frame()
    assert not flat(f, 0b11)
    assert flat(f, 0b01)
    assert e_saturated(f, 0b11)
    assert not e_saturated(f, 0b01)

    chain = chain_frame(3)
    assert passive_points(chain, 0b011) == 0b011
    assert passive_points(chain, 0b101) == 0b001


def test_layered_grid():
    f = layered_grid_frame(1, 2, 2)
    assert f.n == 6
    assert depth(f) == 2
    assert classify_si(f) is SIKind.SIMPLE


def test_s4_order():
    f = s4_order([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert f.R[0, 2]
    assert np.array_equal(f.E, np.eye(3, dtype=bool))


def test_q_relation_guard():
    # not a frame: E;R is not contained in R;E
    R = np.eye(3, dtype=bool)
    R[1, 2] = True
    E = np.eye(3, dtype=bool)
    E[0, 1] = E[1, 0] = True
    with pytest.raises(ConsistencyError):
        q_relation(MS4Frame(R, E))


@pytest.mark.parametrize('seed', range(12))
def test_depth_against_condensation(seed):
    f = random_frame(2 + seed % 4, 0.25, seed=seed)
    condensed = nx.condensation(r_digraph(f))
    assert depth(f) == nx.dag_longest_path_length(condensed) + 1
