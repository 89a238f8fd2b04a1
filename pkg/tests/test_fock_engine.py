import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from coreblocks.core_combinatorics import Multicharge, dominance_ge, is_kleshchev, parse_multipartition
from coreblocks.fock_engine import (
    MATRIX_BASIS,
    DecompMatrix,
    FockVector,
    SearchBudgetExhausted,
    apply_f_sequence,
    block_decomposition_matrix,
    canonical_column,
    check_column_invariants,
    compute_column,
    compute_column_matrix,
    expand_g_to_f_sequence,
    f_divided,
    g_divided,
    matrix_is_kleshchev,
    weight0_candidates,
)
from coreblocks.closed_formulas import block_labels, weight2_blocks
from coreblocks.block_geometry import (
    PrecOrder,
    from_core_parameters,
    matrix,
    matrix_weight,
    strip_constant_columns,
    to_core_parameters,
)
from coreblocks.laurent import ONE, V, LaurentPoly, quantum_factorial

P = parse_multipartition
MC012 = Multicharge((0, 1, 2), 4)
ABACUS_B = (1, 0, 3, 2, 2)
ABACUS_M = matrix([[0, 1, 0, 0, 0], [1, 0, 0, 1, 1], [1, 1, 0, 0, 0]], 5)


def v(n):
    return LaurentPoly.monomial(n)


# ------------------------------------------------------------ F on partitions

def test_f_on_empty():
    mc = Multicharge((2,), 3)
    empty = FockVector.basis(((),), mc=mc)
    assert dict(f_divided(empty, 2, 1).items()) == {((1,),): ONE}
    assert f_divided(empty, 0, 1).is_zero()


def _pt_from_counts(counts):
    """Multipartition from bead counts per runner on each abacus (common floor)."""
    pi = PrecOrder.from_base(ABACUS_B).pi
    bits = [[c[pi[p]] - ABACUS_B[pi[p]] for p in range(5)] for c in counts]
    return from_core_parameters(ABACUS_B, matrix(bits, 5))


def test_induction_example_on_multipartitions():
    mc, sigma = _pt_from_counts([[2, 0, 3, 2, 2], [1, 1, 4, 2, 3], [2, 1, 3, 2, 2]])
    assert mc == Multicharge((4, 1, 0), 5)
    seq = expand_g_to_f_sequence(ABACUS_B, 2, 1)
    assert seq == [(0, 1), (4, 1), (3, 2), (1, 2), (2, 2)]
    got = dict(apply_f_sequence(FockVector.basis(sigma, mc=mc), seq).items())
    lead = _pt_from_counts([[2, 0, 3, 2, 2], [1, 1, 4, 2, 3], [1, 1, 3, 3, 2]])[1]
    other = _pt_from_counts([[1, 0, 3, 3, 2], [1, 1, 4, 2, 3], [2, 1, 3, 2, 2]])[1]
    assert got == {lead: ONE, other: V}


def test_induction_example_on_matrices():
    got = dict(g_divided(FockVector.basis(ABACUS_M, MATRIX_BASIS), 2, 1).items())
    assert got == {
        matrix([[0, 1, 0, 0, 0], [1, 0, 0, 1, 1], [1, 0, 1, 0, 0]], 5): ONE,
        matrix([[0, 0, 1, 0, 0], [1, 0, 0, 1, 1], [1, 1, 0, 0, 0]], 5): V,
    }


def test_g_without_pattern_is_zero():
    m = matrix([[0, 1, 0], [0, 1, 1]], 3)
    assert g_divided(FockVector.basis(m, MATRIX_BASIS), 1, 1).is_zero()


def test_g_on_zero_base_is_one_step():
    assert expand_g_to_f_sequence((0, 0, 0, 0), 2, 1) == [(2, 1)]
    assert expand_g_to_f_sequence((0, 0, 0, 0), 3, 2) == [(3, 2)]


@given(st.integers(0, 10_000))
def test_g_preserves_row_sums(seed):
    rng = random.Random(seed)
    e = rng.randint(3, 6)
    bits = tuple(tuple(rng.randint(0, 1) for _ in range(e)) for _ in range(3))
    m = matrix(bits, e)
    i = rng.randint(1, e - 1)
    for out, _ in g_divided(FockVector.basis(m, MATRIX_BASIS), i, rng.randint(1, 2)).items():
        assert out.row_sums() == m.row_sums()


@given(st.integers(0, 10_000))
def test_g_equals_expanded_f_sequence(seed):
    rng = random.Random(seed)
    e = rng.randint(2, 5)
    r = rng.randint(1, 3)
    base = tuple(rng.randint(0, 3) for _ in range(e))
    base = tuple(b - min(base) for b in base)
    bits = tuple(tuple(rng.randint(0, 1) for _ in range(e)) for _ in range(r))
    m = matrix(bits, e)
    i = rng.randint(1, e - 1)
    k = rng.randint(1, r)
    mc, sigma = from_core_parameters(base, m)
    lhs = apply_f_sequence(FockVector.basis(sigma, mc=mc), expand_g_to_f_sequence(base, i, k))
    rhs = {from_core_parameters(base, mm)[1]: c for mm, c in g_divided(FockVector.basis(m, MATRIX_BASIS), i, k).items()}
    assert dict(lhs.items()) == rhs


@given(st.integers(0, 10_000))
def test_divided_powers(seed):
    rng = random.Random(seed)
    e = rng.randint(2, 4)
    mc = Multicharge(tuple(rng.randrange(e) for _ in range(2)), e)
    sigma = (tuple(sorted((rng.randint(1, 3) for _ in range(rng.randint(0, 2))), reverse=True)), ())
    i, k = rng.randrange(e), rng.randint(1, 3)
    vec = FockVector.basis(sigma, mc=mc)
    step = vec
    for _ in range(k):
        step = f_divided(step, i, 1)
    div = f_divided(vec, i, k)
    assert dict(step.items()) == {lam: c * quantum_factorial(k) for lam, c in div.items()}
    assert all(c.is_monomial() for _, c in div.items())


# --------------------------------------------------------------- columns

def _sec3_matrix(text):
    return to_core_parameters(P(text), MC012)


def test_weight0_column_is_trivial():
    base, m = _sec3_matrix("-|-|-")
    col = compute_column(base, m)
    assert col.as_dict() == {((), (), ()): ONE}
    assert weight0_candidates(m)[0] == m


def test_weight0_candidates_are_nested():
    _, m = _sec3_matrix("1|2,1|1^2")
    cands = weight0_candidates(m, cap=500)
    assert cands and all(matrix_weight(c) == 0 for c in cands)


def test_sec3_first_two_columns():
    base, m = _sec3_matrix("-|2,1|1^3")
    col = compute_column(base, m).as_dict()
    assert col == {P("-|2,1|1^3"): ONE, P("1|2|1^3"): V, P("1|2,1|1^2"): v(2)}
    base, m = _sec3_matrix("1|2|1^3")
    col = compute_column(base, m).as_dict()
    assert col == {P("1|2|1^3"): ONE, P("1|2,1|1^2"): V, P("2|2,1|1"): V,
                   P("3|-|1^3"): V, P("3|1^2|1"): v(2)}


def test_non_kleshchev_has_no_column():
    base, m = _sec3_matrix("1|2^2|1")
    assert not matrix_is_kleshchev(m)
    assert compute_column(base, m) is None


def test_budget_exhaustion():
    base, m = _sec3_matrix("1|2|1^3")
    with pytest.raises(SearchBudgetExhausted):
        compute_column_matrix(m, budget=1)


def test_engine_matches_canonical_basis_oracle():
    for e in (3, 4):
        for u, Y, Z in weight2_blocks(e, 1):
            for lab in block_labels(u, Y, Z, e):
                m = lab.matrix()
                mc, lam = from_core_parameters((0,) * e, m)
                got = compute_column((0,) * e, m)
                ref = canonical_column(lam, mc)
                assert (got is None) == (ref is None) == (not is_kleshchev(lam, mc))
                if got is not None:
                    assert got.as_dict() == ref


def test_constant_columns_do_not_matter():
    _, m = _sec3_matrix("1|2|1^3")
    wide = matrix([row[:2] + (0,) + row[2:] for row in m.bits], 5)
    stripped, keep = strip_constant_columns(wide)
    a = compute_column_matrix(wide)
    b = compute_column_matrix(stripped)
    assert len(a) == len(b)
    assert {strip_constant_columns(k)[0]: c for k, c in a.items()} == b


# -------------------------------------------------------------- matrices

def test_block_matrix_unitriangular():
    base, m = _sec3_matrix("-|2,1|1^3")
    d = block_decomposition_matrix(base, m)
    assert len(d.rows) == 8 and len(d.cols) == 4
    for (i, j), c in d.entries.items():
        mu, lam = d.rows[i], d.cols[j]
        assert dominance_ge(mu, lam)
        assert (c == ONE) == (mu == lam)
    for lam in d.cols:
        assert check_column_invariants(d.column(lam), lam, 2) == []


def test_weight0_block_is_identity():
    base, m = _sec3_matrix("-|-|-")
    d = block_decomposition_matrix(base, m)
    assert d.rows == d.cols == [((), (), ())] and d.entries == {(0, 0): ONE}


def test_decomp_json_roundtrip():
    base, m = _sec3_matrix("1|2|1^3")
    d = block_decomposition_matrix(base, m)
    d2 = DecompMatrix.from_json(d.to_json())
    assert d2.render() == d.render()
    assert d2.entries == d.entries


def test_invariant_checker_flags_problems():
    lam, mu = P("-|2,1|1^3"), P("1|2|1^3")
    assert check_column_invariants({lam: ONE, mu: V}, lam, 1) == []
    assert check_column_invariants({lam: ONE, mu: ONE}, lam, 1)
    assert check_column_invariants({lam: V}, lam, 0)
    assert check_column_invariants({lam: ONE, mu: V}, lam, 2)
