import pytest

from coreblocks.block_geometry import block_class, from_core_parameters, matrix, to_core_parameters
from coreblocks.closed_formulas import (
    BETA,
    GAMMA,
    R4_KINDS,
    block_labels,
    classify_multipartition,
    classify_r4,
    classify_weight2,
    column_r4_labels,
    column_r4_matrix,
    column_weight2,
    column_weight2_labels,
    column_weight2_matrix,
    d_via_mt2,
    hook_relation,
    hook_relation_diagram,
    kleshchev_r4,
    kleshchev_weight2,
    load_r4_tables,
    r4_dispatch,
    r4_family,
    r4_shapes,
    weight2_blocks,
)
from coreblocks.core_combinatorics import ContractError, Multicharge, parse_multipartition
from coreblocks.fock_engine import compute_column_matrix, matrix_is_kleshchev
from coreblocks.laurent import ONE, ZERO, LaurentPoly

P = parse_multipartition
MC012 = Multicharge((0, 1, 2), 4)
SEC3 = P("-|2,1|1^3")


# ----------------------------------------------------------- classification

def test_classify_sec3_block():
    lab = classify_multipartition(SEC3, MC012)
    assert (lab.u, lab.kind, lab.l, lab.Y, lab.Z) == (1, BETA, 1, (1, 3), (0, 2))
    assert lab.name() == "beta^1_1"
    assert lab.multipartition() == SEC3


def test_low_weights_are_not_classified():
    assert classify_multipartition(((), (), ()), MC012) is None
    assert classify_multipartition(P("1|-|-"), MC012) is None
    assert classify_weight2(matrix([[1, 0], [0, 1]], 2)) is None


def test_labels_roundtrip_through_matrices():
    for e in (3, 4, 5):
        for u, Y, Z in weight2_blocks(e, 2):
            for lab in block_labels(u, Y, Z, e):
                back = classify_weight2(lab.matrix())
                assert back.matrix() == lab.matrix()
                # a one-column Y or Z is shared by two cases; otherwise the label is unique
                if len(Y) > 1 and len(Z) > 1:
                    assert back == lab


def test_block_census():
    blocks = list(weight2_blocks(4))
    # ordered pairs of disjoint nonempty subsets of a 4-set, six cases each
    assert len(blocks) == 6 * (3 ** 4 - 2 * 2 ** 4 + 1)


@pytest.mark.parametrize("e", [3, 4, 5])
def test_kleshchev_count(e):
    for u, Y, Z in weight2_blocks(e, 2):
        labs = block_labels(u, Y, Z, e)
        assert sum(map(kleshchev_weight2, labs)) == len(Y) * len(Z)


def test_kleshchev_agrees_with_search():
    for u, Y, Z in weight2_blocks(4, 1):
        for lab in block_labels(u, Y, Z, 4):
            assert kleshchev_weight2(lab) == matrix_is_kleshchev(lab.matrix())


def test_sibling_range_check():
    lab = classify_multipartition(SEC3, MC012)
    with pytest.raises(ContractError):
        lab.sibling(GAMMA, 4, 1)


# ------------------------------------------------------------------ columns

def test_sec3_formula_column():
    lab = classify_multipartition(SEC3, MC012)
    col = {k.name(): c for k, c in column_weight2_labels(lab).items()}
    assert col == {"beta^1_1": ONE, "gamma^1_11": LaurentPoly.monomial(1), "alpha^1_1": LaurentPoly.monomial(2)}
    dc = column_weight2(lab, to_core_parameters(SEC3, MC012)[0])
    assert dc.as_dict()[P("1|2,1|1^2")] == LaurentPoly.monomial(2)


def test_non_kleshchev_column_rejected():
    lab = classify_multipartition(P("1|2^2|1"), MC012)
    assert not kleshchev_weight2(lab)
    with pytest.raises(ContractError):
        column_weight2_labels(lab)


@pytest.mark.parametrize("e", [3, 4])
def test_formula_matches_induction(e):
    for u, Y, Z in weight2_blocks(e, 1):
        for lab in block_labels(u, Y, Z, e):
            if kleshchev_weight2(lab):
                m = lab.matrix()
                assert column_weight2_matrix(m) == compute_column_matrix(m)


def test_columns_are_class_members():
    for u, Y, Z in weight2_blocks(5, 2):
        labs = block_labels(u, Y, Z, 5)
        members = set(block_class(labs[0].matrix()))
        for lab in labs:
            if kleshchev_weight2(lab):
                col = column_weight2_labels(lab)
                assert {s.matrix() for s in col} <= members
                assert col[lab] == ONE
                assert max(c.max_degree() for c in col.values()) == 2


# -------------------------------------------------------------- hook relation

def test_hook_relation_examples():
    assert hook_relation(P("1|2,1|1^2"), P("1|2|1^3"), MC012) == (True, True)
    assert hook_relation(SEC3, SEC3, MC012) == (False, False)
    assert hook_relation_diagram(((2,), ()), ((), (1, 1))) == (True, False)
    assert hook_relation_diagram(((2,), ()), ((), (2,))) == (True, True)


def test_hook_relation_criteria_agree():
    for u, Y, Z in weight2_blocks(4, 2):
        mps = [lab.multipartition() for lab in block_labels(u, Y, Z, 4)]
        mc = from_core_parameters((0,) * 4, block_labels(u, Y, Z, 4)[0].matrix())[0]
        for a in mps:
            for b in mps:
                assert hook_relation(a, b, mc) == hook_relation_diagram(a, b)


def test_hook_relation_rejects_other_blocks():
    with pytest.raises(ContractError):
        hook_relation(SEC3, P("1|2|1^2"), MC012)


def test_mt2_reproduces_sec3_block():
    base, _ = to_core_parameters(SEC3, MC012)
    labs = block_labels(1, (1, 3), (0, 2), 4)
    for lab in labs:
        if not kleshchev_weight2(lab):
            continue
        col = column_weight2(lab, base).as_dict()
        lam = lab.multipartition()
        partner = max(col, key=lambda mu: (col[mu].max_degree(), mu))
        for other in labs:
            mu = other.multipartition()
            assert d_via_mt2(mu, lam, partner, MC012) == col.get(mu, ZERO)


# ----------------------------------------------------------- four components

def test_r4_tables_cover_every_kind():
    tables = load_r4_tables()
    assert set(tables) == set(R4_KINDS)
    assert all(t["rows"] for ts in tables.values() for t in ts)


def test_r4_family_roundtrip():
    Y = ((), (0,), (1, 2), (3,), ())
    fam = r4_family(Y, 4)
    assert len(set(fam)) == len(fam)
    for lab in fam:
        assert classify_r4(lab.matrix()) == lab


def test_r4_kleshchev_and_columns_small():
    for e in (4, 5):
        for Y in r4_shapes(e, 1 if e == 5 else 2):
            for lab in r4_family(Y, e):
                m = lab.matrix()
                assert kleshchev_r4(lab) == matrix_is_kleshchev(m)
                if kleshchev_r4(lab):
                    assert column_r4_matrix(m) == compute_column_matrix(m)


def test_r4_dispatch_rejects_non_kleshchev():
    Y = ((), (0,), (1,), (2,), ())
    bad = [lab for lab in r4_family(Y, 3) if not kleshchev_r4(lab)]
    assert bad
    with pytest.raises(ContractError):
        r4_dispatch(bad[0])


def test_r4_column_leading_term():
    Y = ((4,), (0, 3), (1,), (2,), ())
    for lab in r4_family(Y, 5):
        if kleshchev_r4(lab):
            col = column_r4_labels(lab)
            assert col[lab] == ONE
            assert all(c.min_degree() >= 1 for s, c in col.items() if s != lab)


def test_outside_r4_family():
    assert classify_r4(matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)) is None
    with pytest.raises(ContractError):
        column_r4_matrix(matrix([[1, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]], 4))
