import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coreblocks.core_combinatorics import (
    ContractError,
    Multicharge,
    is_core,
    multipartitions,
    parse_multipartition,
    remove_rim_hook,
    residue_content,
    rim_hooks,
)
from coreblocks.closed_formulas import block_labels, weight2_blocks
from coreblocks.block_geometry import (
    BlockMatrix,
    ClassOverflow,
    PrecOrder,
    bead_swaps,
    block_class,
    canonical_tree_rep,
    delta_matrix,
    enumerate_tree_class,
    from_core_parameters,
    in_same_block,
    is_decomposable,
    is_tree,
    matrix,
    matrix_weight,
    pair_weight,
    parse_matrix,
    strip_constant_columns,
    to_core_parameters,
    tree_classify,
    weight,
    weight_graph,
)

ABACUS_LAM = parse_multipartition("4,2,2,2,1,1,1,1|7,5,4,2,2,2|3,1,1,1")
ABACUS_MC = Multicharge((4, 1, 0), 5)
ABACUS_B = (1, 0, 3, 2, 2)
ABACUS_M = matrix([[0, 1, 0, 0, 0], [1, 0, 0, 1, 1], [1, 1, 0, 0, 0]], 5)
SEC3 = parse_multipartition("-|2,1|1,1,1")
MC012 = Multicharge((0, 1, 2), 4)


def random_matrix(rng, r, e):
    while True:
        bits = [[rng.randint(0, 1) for _ in range(e)] for _ in range(r)]
        m = BlockMatrix(tuple(map(tuple, bits)), e)
        if m.is_reduced():
            return m


# --------------------------------------------------------- core parameters

def test_abacus_example_roundtrip():
    base, m = to_core_parameters(ABACUS_LAM, ABACUS_MC)
    assert base == ABACUS_B
    assert PrecOrder.from_base(base).pi == (1, 0, 3, 4, 2)
    assert m == ABACUS_M
    assert from_core_parameters(ABACUS_B, ABACUS_M) == (ABACUS_MC, ABACUS_LAM)


def test_empty_multipartition():
    base, m = to_core_parameters(((), (), ()), MC012)
    assert min(base) == 0
    assert from_core_parameters(base, m) == (MC012, ((), (), ()))
    zero = matrix([[0] * 4] * 3, 4)
    assert from_core_parameters((0, 0, 0, 0), zero)[1] == ((), (), ())


def test_non_core_input():
    assert to_core_parameters(((3,),), Multicharge((0,), 3)) is None


@given(st.integers(0, 10_000), st.integers(2, 4), st.integers(2, 6))
def test_roundtrip_random_matrices(seed, r, e):
    rng = random.Random(seed)
    m = random_matrix(rng, r, e)
    base = tuple(rng.randint(0, 3) for _ in range(e))
    base = tuple(b - min(base) for b in base)
    mc, lam = from_core_parameters(base, m)
    assert all(is_core(c, e) for c in lam)
    b2, m2 = to_core_parameters(lam, mc)
    assert from_core_parameters(b2, m2) == (mc, lam)


def test_parse_matrix():
    assert parse_matrix("01000;10011;11000", 5) == ABACUS_M
    assert parse_matrix("0 1 0 0 0 / 1,0,0,1,1 / 11000", 5) == ABACUS_M


# ----------------------------------------------------------------- weights

def test_weight_examples():
    assert weight(((), (), ()), MC012) == 0
    assert weight(SEC3, MC012) == 2
    assert weight(ABACUS_LAM, ABACUS_MC) == 2


def test_sec3_pair_weights_form_a_path():
    a = MC012.charges
    pw = {(s, t): pair_weight(SEC3[s], a[s], SEC3[t], a[t], 4) for s, t in itertools.combinations(range(3), 2)}
    assert sorted(pw.values()) == [0, 1, 1]
    assert pair_weight((2, 1), 1, (2, 1), 1, 4) == 0


@given(st.integers(0, 10_000))
def test_rim_hook_drops_weight_by_r(seed):
    rng = random.Random(seed)
    r, e = rng.randint(1, 3), rng.randint(2, 4)
    mc = Multicharge(tuple(rng.randrange(e) for _ in range(r)), e)
    lam = rng.choice(multipartitions(rng.randint(e, 8), r))
    w = weight(lam, mc)
    assert w >= 0
    for s, comp in enumerate(lam):
        for hook in rim_hooks(comp, e):
            mu = lam[:s] + (remove_rim_hook(comp, hook.cells),) + lam[s + 1:]
            assert weight(mu, mc) == w - r


def test_in_same_block_on_sec3_table():
    rows = ["-|2,1|1^3", "1|2|1^3", "1|2,1|1^2", "1|2^2|1", "2|2,1|1", "3|-|1^3", "3|1^2|1", "3|2,1|-"]
    mps = [parse_multipartition(t) for t in rows]
    assert all(in_same_block(a, b, MC012) for a, b in itertools.combinations(mps, 2))


# ------------------------------------------------------------- bead swaps

def test_nested_rows_have_no_swaps():
    m = matrix([[1, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]], 4)
    assert bead_swaps(m) == [] and block_class(m) == [m]


@pytest.mark.parametrize("e", [3, 4, 5])
def test_weight2_class_sizes(e):
    for u, Y, Z in weight2_blocks(e, 2):
        labs = block_labels(u, Y, Z, e)
        members = block_class(labs[0].matrix())
        assert len(members) == (len(Y) + 1) * (len(Z) + 1) - 1
        assert set(members) == {lab.matrix() for lab in labs}


def test_block_class_matches_residue_filter():
    for u, Y, Z in weight2_blocks(4, 1):
        m0 = block_labels(u, Y, Z, 4)[0].matrix()
        base = (0,) * 4
        mc, lam0 = from_core_parameters(base, m0)
        n = sum(map(sum, lam0))
        content = residue_content(lam0, mc)
        by_class = {from_core_parameters(base, m)[1] for m in block_class(m0)}
        by_content = {mu for mu in multipartitions(n, 3)
                      if all(is_core(c, 4) for c in mu) and residue_content(mu, mc) == content}
        assert by_class == by_content


def test_bead_swaps_stay_in_block():
    rng = random.Random(3)
    for _ in range(40):
        m = random_matrix(rng, 3, 5)
        mc, lam = from_core_parameters((0,) * 5, m)
        for other in bead_swaps(m):
            assert in_same_block(lam, from_core_parameters((0,) * 5, other)[1], mc)


def test_class_overflow():
    m = matrix([[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1], [1, 0, 1, 0, 1, 0]], 6)
    with pytest.raises(ClassOverflow):
        block_class(m, limit=3)


# ----------------------------------------------------------- weight graphs

def test_weight_graph_examples():
    g = weight_graph(ABACUS_M)
    assert [(a, b, w) for a, b, w in g.edges] == [(0, 1, 1), (1, 2, 1)]
    zero = matrix([[1, 1, 0], [1, 0, 0], [0, 0, 0]], 3)
    assert not weight_graph(zero).edges
    assert is_decomposable(zero) is not None
    assert is_decomposable(ABACUS_M) is None


def test_weight_graph_shape_constant_on_classes():
    # the edges may move between members; edge count, connectivity and tree-ness do not
    moved = False
    for u, Y, Z in weight2_blocks(5, 2):
        members = block_class(block_labels(u, Y, Z, 5)[0].matrix())
        graphs = {tuple(weight_graph(m).edges) for m in members}
        moved |= len(graphs) > 1
        for edges in graphs:
            assert len(edges) == 2 and all(w == 1 for _, _, w in edges)
        assert all(is_tree(m) and is_decomposable(m) is None for m in members)
    assert moved


def test_matrix_weight_agrees_with_weight():
    rng = random.Random(5)
    for _ in range(60):
        m = random_matrix(rng, rng.randint(2, 4), rng.randint(2, 6))
        base = tuple(rng.randint(0, 2) for _ in range(m.e))
        base = tuple(b - min(base) for b in base)
        mc, lam = from_core_parameters(base, m)
        assert matrix_weight(m) == weight(lam, mc)


# --------------------------------------------------------------------- trees

def test_tree_classification_examples():
    tc = tree_classify(ABACUS_M)
    assert tc is not None and is_tree(ABACUS_M)
    assert canonical_tree_rep(tc.Y, tc.pi, 5) in block_class(ABACUS_M)
    cycle = matrix([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [1, 0, 0, 1]], 4)
    assert not is_tree(cycle) and tree_classify(cycle) is None


def test_r4_gamma_chain_shape():
    Y = ((), (0, 1), (2, 3), (4,), ())
    m = delta_matrix(Y, (1, 2, 3), (1, 2, 3, 4), (2, 1, 1), None, 5)
    tc = tree_classify(m)
    assert tc is not None and tc.i == (1, 2, 3) and tc.j == (1, 2, 3, 4) and tc.w == (2, 1, 1)


def test_enumerate_tree_class_equals_bfs():
    for r in (2, 3, 4):
        e = r + 2
        for assign in itertools.product(range(r), repeat=e):
            Y = [[] for _ in range(r + 1)]
            for c, s in enumerate(assign):
                Y[s].append(c)
            if not Y[1] or not Y[r - 1] or any(len(Y[s]) > 2 for s in range(1, r)):
                continue
            pi = tuple(range(r))
            assert set(enumerate_tree_class(Y, pi, e)) == set(block_class(canonical_tree_rep(Y, pi, e)))


def test_two_component_classes_are_single_edges():
    with pytest.raises(ContractError):
        enumerate_tree_class(((), (), (0,)), (0, 1), 2)
    for Y in [((), (0, 1), ()), ((2,), (0, 1), ()), ((), (0, 1, 2), ())]:
        e = sum(map(len, Y))
        members = enumerate_tree_class(Y, (0, 1), e)
        assert len(members) == len(Y[1])
        assert all(weight_graph(m).edges == ((0, 1, 1),) for m in members)


def test_bad_Y_rejected():
    with pytest.raises(ContractError):
        canonical_tree_rep(((0,), (), (1,), ()), (0, 1, 2), 2)


def test_strip_constant_columns():
    m, keep = strip_constant_columns(ABACUS_M)
    assert keep == (0, 1, 3, 4) and m.width == 4
    zero = matrix([[0, 0], [0, 0]], 2)
    assert strip_constant_columns(zero)[1] == ()
