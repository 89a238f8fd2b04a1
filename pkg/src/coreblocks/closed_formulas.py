"""Closed-form decomposition data for indecomposable weight-2 core blocks with
three components, the hook relation, and the tabulated four-component family.

All conditions are evaluated after normalising to B = 0, where the column
order of a matrix is the plain order of its indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .core_combinatorics import ContractError, Multicharge, Multipartition, dominance_gt, residue_content
from .block_geometry import BlockMatrix, from_core_parameters, matrix, matrix_weight, to_core_parameters
from .laurent import ONE, ZERO, LaurentPoly

# Column vectors (top row first) attached to each role, per case u.
# y, z, 1_y, 1_z come from the gamma layout; "a" and "b" are the marked
# columns of the alpha and beta layouts.
_ROLES: dict[int, dict[str, tuple[int, int, int]]] = {
    1: {"y": (0, 1, 1), "z": (0, 0, 1), "1y": (1, 0, 1), "1z": (0, 1, 0), "a": (1, 1, 0), "b": (1, 0, 0)},
    2: {"y": (1, 0, 0), "z": (1, 0, 1), "1y": (0, 0, 1), "1z": (1, 1, 0), "a": (0, 1, 0), "b": (0, 1, 1)},
    3: {"y": (1, 1, 0), "z": (0, 1, 0), "1y": (0, 1, 1), "1z": (1, 0, 0), "a": (1, 0, 1), "b": (0, 0, 1)},
    4: {"y": (0, 0, 1), "z": (1, 0, 1), "1y": (1, 0, 0), "1z": (0, 1, 1), "a": (0, 1, 0), "b": (1, 1, 0)},
    5: {"y": (0, 1, 1), "z": (0, 1, 0), "1y": (1, 1, 0), "1z": (0, 0, 1), "a": (1, 0, 1), "b": (1, 0, 0)},
    6: {"y": (1, 0, 0), "z": (1, 1, 0), "1y": (0, 1, 0), "1z": (1, 0, 1), "a": (0, 0, 1), "b": (0, 1, 1)},
}

ALPHA, BETA, GAMMA = "alpha", "beta", "gamma"


@dataclass(frozen=True, order=True)
class Weight2Label:
    """A Specht label of a weight-2 block: alpha_k, beta_l or gamma_kl of case u.

    Y and Z are the sorted column sets; every other column is zero."""

    u: int
    kind: str
    k: int | None
    l: int | None
    Y: tuple[int, ...]
    Z: tuple[int, ...]
    e: int

    @property
    def y(self) -> int:
        return len(self.Y) - 1

    @property
    def z(self) -> int:
        return len(self.Z) - 1

    def i(self, t: int) -> int:
        """i_t with sentinels i_0 = -1 and i_{y+2} = e."""
        if t <= 0:
            return -1
        if t > len(self.Y):
            return self.e
        return self.Y[t - 1]

    def j(self, t: int) -> int:
        if t <= 0:
            return -1
        if t > len(self.Z):
            return self.e
        return self.Z[t - 1]

    def is_valid(self) -> bool:
        if self.kind == ALPHA:
            return self.l is None and self.k is not None and 1 <= self.k <= self.y + 1
        if self.kind == BETA:
            return self.k is None and self.l is not None and 1 <= self.l <= self.z + 1
        return (self.kind == GAMMA and self.k is not None and self.l is not None
                and 1 <= self.k <= self.y + 1 and 1 <= self.l <= self.z + 1)

    def sibling(self, kind: str, k: int | None = None, l: int | None = None) -> "Weight2Label":
        lab = Weight2Label(self.u, kind, k, l, self.Y, self.Z, self.e)
        if not lab.is_valid():
            raise ContractError(f"index out of range: {lab.name()}")
        return lab

    def name(self) -> str:
        sym = {ALPHA: "alpha", BETA: "beta", GAMMA: "gamma"}[self.kind]
        if self.kind == ALPHA:
            return f"{sym}^{self.u}_{self.k}"
        if self.kind == BETA:
            return f"{sym}^{self.u}_{self.l}"
        return f"{sym}^{self.u}_{self.k}{self.l}"

    def matrix(self) -> BlockMatrix:
        roles = _ROLES[self.u]
        cols = [(0, 0, 0)] * self.e
        for t, c in enumerate(self.Y, start=1):
            marked = (self.kind == ALPHA and t == self.k) or (self.kind == GAMMA and t == self.k)
            cols[c] = roles["a" if self.kind == ALPHA else "1y"] if marked else roles["y"]
        for t, c in enumerate(self.Z, start=1):
            marked = (self.kind == BETA and t == self.l) or (self.kind == GAMMA and t == self.l)
            cols[c] = roles["b" if self.kind == BETA else "1z"] if marked else roles["z"]
        return matrix([[cols[c][s] for c in range(self.e)] for s in range(3)], self.e)

    def multipartition(self) -> Multipartition:
        return from_core_parameters((0,) * self.e, self.matrix())[1]


def block_labels(u: int, Y: Sequence[int], Z: Sequence[int], e: int) -> list[Weight2Label]:
    """All (y+2)(z+2)-1 labels of the block fixed by (u, Y, Z)."""
    Y, Z = tuple(sorted(Y)), tuple(sorted(Z))
    out = [Weight2Label(u, ALPHA, k, None, Y, Z, e) for k in range(1, len(Y) + 1)]
    out += [Weight2Label(u, BETA, None, l, Y, Z, e) for l in range(1, len(Z) + 1)]
    out += [Weight2Label(u, GAMMA, k, l, Y, Z, e)
            for k in range(1, len(Y) + 1) for l in range(1, len(Z) + 1)]
    return out


def weight2_blocks(e: int, yz_max: int | None = None) -> Iterable[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """Every (u, Y, Z) with disjoint nonempty Y, Z in range(e) and |Y|, |Z| <= yz_max + 1."""
    cap = e if yz_max is None else yz_max + 1
    cols = range(e)
    for ny in range(1, min(cap, e - 1) + 1):
        for Y in combinations(cols, ny):
            rest = [c for c in cols if c not in Y]
            for nz in range(1, min(cap, len(rest)) + 1):
                for Z in combinations(rest, nz):
                    for u in range(1, 7):
                        yield u, Y, Z


# ------------------------------------------------------------ classification

def _classify_case(cols: list[tuple[int, ...]], u: int, e: int) -> Weight2Label | None:
    roles = _ROLES[u]
    lookup = {vec: name for name, vec in roles.items()}
    found: dict[str, list[int]] = {name: [] for name in roles}
    for c, vec in enumerate(cols):
        if vec == (0, 0, 0):
            continue
        name = lookup.get(vec)
        if name is None:
            return None
        found[name].append(c)
    n_a, n_b, n_1y, n_1z = (len(found[x]) for x in ("a", "b", "1y", "1z"))
    if (n_a, n_b, n_1y, n_1z) == (1, 0, 0, 0):
        Y = tuple(sorted(found["y"] + found["a"]))
        Z = tuple(found["z"])
        kind, k, l = ALPHA, Y.index(found["a"][0]) + 1, None
    elif (n_a, n_b, n_1y, n_1z) == (0, 1, 0, 0):
        Y = tuple(found["y"])
        Z = tuple(sorted(found["z"] + found["b"]))
        kind, k, l = BETA, None, Z.index(found["b"][0]) + 1
    elif (n_a, n_b, n_1y, n_1z) == (0, 0, 1, 1):
        Y = tuple(sorted(found["y"] + found["1y"]))
        Z = tuple(sorted(found["z"] + found["1z"]))
        kind, k, l = GAMMA, Y.index(found["1y"][0]) + 1, Z.index(found["1z"][0]) + 1
    else:
        return None
    if not Y or not Z:
        return None
    return Weight2Label(u, kind, k, l, Y, Z, e)


def classify_weight2(m: BlockMatrix) -> Weight2Label | None:
    """Label of a reduced 3-row matrix in an indecomposable weight-2 block.

    Only the e >= 2 setting is covered; anything else gives None."""
    if m.e < 2 or m.rows != 3 or not m.is_reduced() or matrix_weight(m) != 2:
        return None
    cols = m.columns()
    for u in range(1, 7):
        lab = _classify_case(cols, u, m.e)
        if lab is not None and lab.matrix() == m:
            return lab
    return None


def classify_multipartition(lam: Multipartition, mc: Multicharge) -> Weight2Label | None:
    got = to_core_parameters(lam, mc)
    if got is None:
        return None
    return classify_weight2(got[1])


# ------------------------------------------------------------------ Kleshchev

def kleshchev_weight2(lab: Weight2Label) -> bool:
    i, j, k, l, y, z, u = lab.i, lab.j, lab.k, lab.l, lab.y, lab.z, lab.u
    if u == 1:
        if lab.kind == GAMMA:
            return (i(k) < j(l) and l != z + 1) or (j(l) < i(k) and k != y + 1)
        if lab.kind == ALPHA:
            return i(k) < j(z + 1)
        return j(l) < i(y + 1)
    if u in (2, 3):
        if lab.kind == GAMMA:
            return j(l) < i(k) or (k != 1 and l != z + 1)
        if lab.kind == ALPHA:
            return k != 1 and i(k) < j(z + 1)
        return i(1) < j(l)
    if u in (4, 5):
        if lab.kind == GAMMA:
            return i(k) < j(l) or (l != 1 and k != y + 1)
        if lab.kind == ALPHA:
            return k != y + 1 and j(1) < i(k)
        return j(l) < i(y + 1)
    if lab.kind == GAMMA:
        return (i(k) < j(l) and k != 1) or (j(l) < i(k) and l != 1)
    if lab.kind == ALPHA:
        return j(1) < i(k)
    return i(1) < j(l)


# --------------------------------------------------------------- the columns

def _chain(*xs: int) -> bool:
    return all(a < b for a, b in zip(xs, xs[1:]))


def _min_t(pred, hi: int) -> int:
    for t in range(1, hi + 1):
        if pred(t):
            return t
    raise ContractError("no index satisfies the minimality condition")


def _max_t(pred, hi: int) -> int:
    for t in range(hi, 0, -1):
        if pred(t):
            return t
    raise ContractError("no index satisfies the maximality condition")


def _terms(lab: Weight2Label) -> list[tuple[tuple, int]]:
    """Formal column as ((kind, k, l), power) pairs."""
    i, j, k, l, y, z, u = lab.i, lab.j, lab.k, lab.l, lab.y, lab.z, lab.u
    A = lambda a: (ALPHA, a, None)  # noqa: E731
    B = lambda b: (BETA, None, b)  # noqa: E731
    G = lambda a, b: (GAMMA, a, b)  # noqa: E731

    if u == 1:
        if lab.kind == ALPHA:
            kt = _min_t(lambda t: i(k) < j(t), z + 2)
            if j(kt) < i(k + 1):
                return [(A(k), 0), (G(k, kt), 1), (B(kt), 2)]
            return [(A(k), 0), (A(k + 1), 1), (G(k, kt), 1), (G(k + 1, kt), 2)]
        if lab.kind == BETA:
            lt = _min_t(lambda t: j(l) < i(t), y + 2)
            if i(lt) < j(l + 1):
                return [(B(l), 0), (G(lt, l), 1), (A(lt), 2)]
            return [(B(l), 0), (B(l + 1), 1), (G(lt, l), 1), (G(lt, l + 1), 2)]
        if i(k + 1) < j(l) or j(l + 1) < i(k):
            return [(G(k, l), 0), (G(k, l + 1), 1), (G(k + 1, l), 1), (G(k + 1, l + 1), 2)]
        if _chain(i(k), j(l), i(k + 1), j(l + 1)):
            return [(G(k, l), 0), (G(k, l + 1), 1), (A(k + 1), 1), (B(l), 1), (G(k + 1, l + 1), 2)]
        if _chain(i(k), j(l), j(l + 1), i(k + 1)):
            return [(G(k, l), 0), (G(k, l + 1), 1), (B(l), 1), (B(l + 1), 2)]
        if _chain(j(l), i(k), i(k + 1), j(l + 1)):
            return [(G(k, l), 0), (G(k + 1, l), 1), (A(k), 1), (A(k + 1), 2)]
        if _chain(j(l), i(k), j(l + 1), i(k + 1)):
            return [(G(k, l), 0), (G(k + 1, l), 1), (A(k), 1), (B(l + 1), 1), (G(k + 1, l + 1), 2)]

    elif u in (2, 3):
        if lab.kind == ALPHA:
            kt = _min_t(lambda t: i(k) < j(t), z + 2)
            if i(k - 1) < j(kt - 1):
                return [(A(k), 0), (B(kt - 1), 1), (G(k, kt), 1), (G(k - 1, kt - 1), 1), (G(k - 1, kt), 2)]
            return [(A(k), 0), (A(k - 1), 1), (G(k, kt), 1), (G(k - 1, kt), 2)]
        if lab.kind == BETA:
            lt = _max_t(lambda t: i(t) < j(l), y + 1)
            if j(l - 1) < i(lt):
                return [(B(l), 0), (A(lt), 1), (G(lt, l), 2)]
            return [(B(l), 0), (B(l - 1), 1), (G(lt, l - 1), 1), (G(lt, l), 2)]
        if i(k) < j(l) or j(l + 1) < i(k - 1):
            return [(G(k, l), 0), (G(k - 1, l), 1), (G(k, l + 1), 1), (G(k - 1, l + 1), 2)]
        if _chain(j(l), i(k - 1), j(l + 1), i(k)):
            return [(G(k, l), 0), (G(k, l + 1), 1), (G(k - 1, l), 1), (B(l + 1), 1), (A(k - 1), 2)]
        if _chain(j(l), i(k - 1), i(k), j(l + 1)):
            return [(G(k, l), 0), (G(k - 1, l), 1), (A(k), 1), (A(k - 1), 2)]
        if _chain(i(k - 1), j(l), j(l + 1), i(k)):
            return [(G(k, l), 0), (G(k, l + 1), 1), (B(l + 1), 1), (B(l), 2)]
        if _chain(i(k - 1), j(l), i(k), j(l + 1)):
            return [(G(k, l), 0), (A(k), 1), (B(l), 2)]

    elif u in (4, 5):
        if lab.kind == ALPHA:
            kt = _max_t(lambda t: j(t) < i(k), z + 1)
            if j(kt + 1) < i(k + 1):
                return [(A(k), 0), (B(kt + 1), 1), (G(k, kt), 1), (G(k + 1, kt + 1), 1), (G(k + 1, kt), 2)]
            return [(A(k), 0), (A(k + 1), 1), (G(k, kt), 1), (G(k + 1, kt), 2)]
        if lab.kind == BETA:
            lt = _min_t(lambda t: j(l) < i(t), y + 2)
            if i(lt) < j(l + 1):
                return [(B(l), 0), (A(lt), 1), (G(lt, l), 2)]
            return [(B(l), 0), (B(l + 1), 1), (G(lt, l + 1), 1), (G(lt, l), 2)]
        if i(k + 1) < j(l - 1) or j(l) < i(k):
            return [(G(k, l), 0), (G(k + 1, l), 1), (G(k, l - 1), 1), (G(k + 1, l - 1), 2)]
        if _chain(i(k), j(l - 1), i(k + 1), j(l)):
            return [(G(k, l), 0), (G(k, l - 1), 1), (G(k + 1, l), 1), (B(l - 1), 1), (A(k + 1), 2)]
        if _chain(i(k), j(l - 1), j(l), i(k + 1)):
            return [(G(k, l), 0), (G(k, l - 1), 1), (B(l - 1), 1), (B(l), 2)]
        if _chain(j(l - 1), i(k), i(k + 1), j(l)):
            return [(G(k, l), 0), (G(k + 1, l), 1), (A(k), 1), (A(k + 1), 2)]
        if _chain(j(l - 1), i(k), j(l), i(k + 1)):
            return [(G(k, l), 0), (A(k), 1), (B(l), 2)]

    else:
        if lab.kind == ALPHA:
            kt = _max_t(lambda t: j(t) < i(k), z + 1)
            if i(k - 1) < j(kt):
                return [(A(k), 0), (G(k, kt), 1), (B(kt), 2)]
            return [(A(k), 0), (A(k - 1), 1), (G(k, kt), 1), (G(k - 1, kt), 2)]
        if lab.kind == BETA:
            lt = _max_t(lambda t: i(t) < j(l), y + 1)
            if j(l - 1) < i(lt):
                return [(B(l), 0), (G(lt, l), 1), (A(lt), 2)]
            return [(B(l), 0), (B(l - 1), 1), (G(lt, l), 1), (G(lt, l - 1), 2)]
        if i(k) < j(l - 1) or j(l) < i(k - 1):
            return [(G(k, l), 0), (G(k, l - 1), 1), (G(k - 1, l), 1), (G(k - 1, l - 1), 2)]
        if _chain(i(k - 1), j(l - 1), i(k), j(l)):
            return [(G(k, l), 0), (G(k - 1, l), 1), (A(k), 1), (B(l - 1), 1), (G(k - 1, l - 1), 2)]
        if _chain(i(k - 1), j(l - 1), j(l), i(k)):
            return [(G(k, l), 0), (G(k, l - 1), 1), (B(l), 1), (B(l - 1), 2)]
        if _chain(j(l - 1), i(k - 1), i(k), j(l)):
            return [(G(k, l), 0), (G(k - 1, l), 1), (A(k), 1), (A(k - 1), 2)]
        if _chain(j(l - 1), i(k - 1), j(l), i(k)):
            return [(G(k, l), 0), (G(k, l - 1), 1), (A(k - 1), 1), (B(l), 1), (G(k - 1, l - 1), 2)]
    raise ContractError(f"no case applies to {lab.name()}")


def column_weight2_labels(lab: Weight2Label) -> dict[Weight2Label, LaurentPoly]:
    """The column of lab as a map from sibling labels to polynomials."""
    if not lab.is_valid() or not kleshchev_weight2(lab):
        raise ContractError(f"{lab.name()} is not Kleshchev")
    out: dict[Weight2Label, LaurentPoly] = {}
    for (kind, k, l), p in _terms(lab):
        sib = lab.sibling(kind, k, l)
        out[sib] = out.get(sib, ZERO) + LaurentPoly.monomial(p)
    return out


def column_weight2(lab: Weight2Label, base: Sequence[int] | None = None):
    """The column as a DecompColumn over multipartitions Pt(base, M)."""
    from .fock_engine import DecompColumn

    if base is None:
        base = (0,) * lab.e
    col = column_weight2_labels(lab)
    entries = []
    mats = []
    for sib, c in col.items():
        m = sib.matrix()
        mu = from_core_parameters(base, m)[1]
        entries.append((mu, c))
        mats.append((mu, m))
    entries.sort(key=lambda t: t[0])
    mats.sort(key=lambda t: t[0])
    target = from_core_parameters(base, lab.matrix())[1]
    return DecompColumn(target, lab.matrix(), tuple(entries), tuple(mats))


def column_weight2_matrix(m: BlockMatrix) -> dict[BlockMatrix, LaurentPoly]:
    lab = classify_weight2(m)
    if lab is None:
        raise ContractError("matrix is not in a weight-2 three-row block")
    return {sib.matrix(): c for sib, c in column_weight2_labels(lab).items()}


# ---------------------------------------------------------- hook relation

def _matrix_pair(mu: Multipartition, lam: Multipartition, mc: Multicharge):
    a = to_core_parameters(mu, mc)
    b = to_core_parameters(lam, mc)
    if a is None or b is None:
        raise ContractError("both multipartitions must lie in a core block")
    if a[0] != b[0] or residue_content(mu, mc) != residue_content(lam, mc):
        raise ContractError("multipartitions lie in different blocks")
    return a[1], b[1]


def hook_relation_matrix(L: BlockMatrix, M: BlockMatrix) -> tuple[bool, bool]:
    """(moves, equal_legs) for the matrices of mu (L) and lam (M).

    Moves holds when M is L with a one in row k moved from column j to an
    earlier column i, and a one in row k+1 moved from i to j."""
    if L.bits == M.bits or L.rows != M.rows or L.width != M.width:
        return False, False
    diff = [(s, c) for s in range(L.rows) for c in range(L.width) if L.bits[s][c] != M.bits[s][c]]
    if len(diff) != 4:
        return False, False
    rows = sorted({s for s, _ in diff})
    cols = sorted({c for _, c in diff})
    if len(rows) != 2 or len(cols) != 2 or rows[1] != rows[0] + 1:
        return False, False
    k, i, j = rows[0], cols[0], cols[1]
    pattern = (L.bits[k][i], L.bits[k + 1][j], M.bits[k][j], M.bits[k + 1][i],
               L.bits[k][j], L.bits[k + 1][i], M.bits[k][i], M.bits[k + 1][j])
    if pattern != (0, 0, 0, 0, 1, 1, 1, 1):
        return False, False
    between = lambda s: sum(L.bits[s][i + 1:j])  # noqa: E731
    return True, between(k) == between(k + 1)


def hook_relation(mu: Multipartition, lam: Multipartition, mc: Multicharge) -> tuple[bool, bool]:
    """Whether lam arises from mu by moving one rim hook from a component to the
    next, and whether the two hooks have equal leg lengths (matrix criterion)."""
    if mu == lam:
        return False, False
    L, M = _matrix_pair(mu, lam, mc)
    return hook_relation_matrix(L, M)


def hook_relation_diagram(mu: Multipartition, lam: Multipartition) -> tuple[bool, bool]:
    """The same relation read directly from Young diagrams."""
    from .core_combinatorics import _cells, _is_rim_hook, leg_length

    if mu == lam or len(mu) != len(lam):
        return False, False
    differ = [s for s in range(len(mu)) if mu[s] != lam[s]]
    if len(differ) != 2 or differ[1] != differ[0] + 1:
        return False, False
    k = differ[0]
    a_mu, a_lam = _cells(mu[k]), _cells(lam[k])
    b_mu, b_lam = _cells(mu[k + 1]), _cells(lam[k + 1])
    if not (a_lam < a_mu and b_mu < b_lam):
        return False, False
    gone, added = a_mu - a_lam, b_lam - b_mu
    if len(gone) != len(added):
        return False, False
    if not (_is_rim_hook(mu[k], gone) and _is_rim_hook(lam[k + 1], added)):
        return False, False
    return True, leg_length(gone) == leg_length(added)


def d_via_mt2(mu: Multipartition, lam: Multipartition, partner: Multipartition,
              mc: Multicharge) -> LaurentPoly:
    """Entry d_{mu lam} predicted from the hook relation; partner is the label
    carrying v^2 in the column of lam."""
    if mu == lam:
        return ONE
    if mu == partner:
        return LaurentPoly.monomial(2)
    if dominance_gt(partner, mu) and dominance_gt(mu, lam):
        if hook_relation(mu, lam, mc)[1] or hook_relation(partner, mu, mc)[1]:
            return LaurentPoly.monomial(1)
    return ZERO


# ====================================================== four components

R4_KINDS: dict[str, tuple[tuple[int, ...], tuple[int, ...], str]] = {
    # kind: (i, j, which of f/g/h index the chain columns)
    "alpha1": ((1,), (1, 4), "f"),
    "alpha2": ((2,), (1, 4), "g"),
    "alpha3": ((3,), (1, 4), "h"),
    "beta12": ((1, 2), (1, 2, 4), "fg"),
    "beta13": ((1, 3), (1, 3, 4), "fh"),
    "betabar13": ((1, 3), (1, 2, 4), "fh"),
    "beta23": ((2, 3), (1, 3, 4), "gh"),
    "gamma123": ((1, 2, 3), (1, 2, 3, 4), "fgh"),
}
_CHAIN_TO_KIND = {(i, j): kind for kind, (i, j, _) in R4_KINDS.items()}
_LETTER_SET = {"i": 1, "j": 2, "k": 3}
_INDEX_SET = {"f": 1, "g": 2, "h": 3}


@dataclass(frozen=True, order=True)
class R4Label:
    """A member of the four-component tree family, with its ambient Y_0..Y_4."""

    kind: str
    idx: tuple[int, ...]  # f, g, h as used by the kind, in that order
    Y: tuple[tuple[int, ...], ...]
    e: int

    @property
    def y(self) -> tuple[int, int, int]:
        return len(self.Y[1]), len(self.Y[2]), len(self.Y[3])

    def index(self, letter: str) -> int | None:
        used = R4_KINDS[self.kind][2]
        return self.idx[used.index(letter)] if letter in used else None

    def at(self, s: int, t: int) -> int:
        """Position of the t-th column of Y_s; -1 below the range, e above."""
        if t <= 0:
            return -1
        if t > len(self.Y[s]):
            return self.e
        return self.Y[s][t - 1]

    def is_valid(self) -> bool:
        if self.kind not in R4_KINDS:
            return False
        used = R4_KINDS[self.kind][2]
        return len(self.idx) == len(used) and all(
            1 <= n <= len(self.Y[_INDEX_SET[c]]) for c, n in zip(used, self.idx))

    def name(self) -> str:
        return f"{self.kind}_{','.join(map(str, self.idx))}"

    def matrix(self) -> BlockMatrix:
        from .block_geometry import delta_matrix

        i, j, _ = R4_KINDS[self.kind]
        return delta_matrix(self.Y, i, j, self.idx, None, self.e)

    def multipartition(self) -> Multipartition:
        return from_core_parameters((0,) * self.e, self.matrix())[1]


def r4_family(Y: Sequence[Sequence[int]], e: int) -> list[R4Label]:
    """Every label of the family with ambient Y (identity row order)."""
    Y = tuple(tuple(sorted(s)) for s in Y)
    out = []
    for kind, (_, _, used) in R4_KINDS.items():
        ranges = [range(1, len(Y[_INDEX_SET[c]]) + 1) for c in used]
        for idx in _grid(ranges):
            out.append(R4Label(kind, idx, Y, e))
    return out


def _grid(ranges):
    if not ranges:
        yield ()
        return
    for x in ranges[0]:
        for rest in _grid(ranges[1:]):
            yield (x,) + rest


def r4_shapes(e: int, y_max: int = 2) -> Iterable[tuple[tuple[int, ...], ...]]:
    """All Y = (Y_0, .., Y_4) on range(e) with 1 <= |Y_s| <= y_max for s = 1, 2, 3 and Y_4 empty."""
    cols = tuple(range(e))
    for n1 in range(1, y_max + 1):
        for n2 in range(1, y_max + 1):
            for n3 in range(1, y_max + 1):
                if n1 + n2 + n3 > e:
                    continue
                for Y1 in combinations(cols, n1):
                    r1 = [c for c in cols if c not in Y1]
                    for Y2 in combinations(r1, n2):
                        r2 = [c for c in r1 if c not in Y2]
                        for Y3 in combinations(r2, n3):
                            Y0 = tuple(c for c in r2 if c not in Y3)
                            yield (Y0, Y1, Y2, Y3, ())


def classify_r4(m: BlockMatrix) -> R4Label | None:
    """Label of m in the four-component family, or None outside it."""
    from .block_geometry import _try_parse

    if m.e < 2 or m.rows != 4 or not m.is_reduced():
        return None
    got = _try_parse(m.bits, m.e, False)
    if got is None:
        return None
    Y, iis, js, ws = got
    kind = _CHAIN_TO_KIND.get((iis, js))
    if kind is None or not all(Y[s] for s in (1, 2, 3)) or Y[4]:
        return None
    return R4Label(kind, tuple(ws), Y, m.e)


def kleshchev_r4(lab: R4Label) -> bool:
    f, g, h = lab.index("f"), lab.index("g"), lab.index("h")
    i = lambda t: lab.at(1, t)  # noqa: E731
    j = lambda t: lab.at(2, t)  # noqa: E731
    k = lambda t: lab.at(3, t)  # noqa: E731
    kind = lab.kind
    if kind == "alpha1":
        return k(1) < i(f)
    if kind == "alpha2":
        return i(1) < j(g) and k(1) < j(g)
    if kind == "alpha3":
        return i(1) < k(h)
    if kind == "beta12":
        return _chain(k(1), j(g), i(f)) or (k(1) < j(g) and i(f) < j(g) and f != 1)
    if kind == "beta13":
        return _chain(j(1), i(f), k(h)) or (k(h) < i(f) and h != 1)
    if kind == "betabar13":
        return _chain(j(1), k(h), i(f)) or (i(f) < k(h) and f != 1)
    if kind == "beta23":
        return _chain(i(1), j(g), k(h)) or (i(1) < j(g) and k(h) < j(g) and h != 1)
    return ((j(g) < i(f) and j(g) < k(h) and g != 1)
            or (_chain(i(f), j(g), k(h)) and f != 1)
            or (_chain(k(h), j(g), i(f)) and h != 1)
            or (i(f) < j(g) and k(h) < j(g) and f != 1 and h != 1))


class TableDataError(RuntimeError):
    """No row of the tabulated data applies; signals an encoding problem."""


_R4_FILES = ("alphas", "betas", "beta13", "beta13bar", "gammas_a", "gammas_b", "gammas_c", "gammas_d")


def load_r4_tables() -> dict[str, list[dict]]:
    """Tables grouped by target kind, rows in their listed order."""
    import json
    from importlib.resources import files

    out: dict[str, list[dict]] = {}
    pkg = files("coreblocks") / "data"
    for name in _R4_FILES:
        doc = json.loads((pkg / f"r4_{name}.json").read_text())
        for table in doc["tables"]:
            out.setdefault(table["target"]["kind"], []).append(table)
    return out


_TABLES: dict[str, list[dict]] | None = None


def _tables() -> dict[str, list[dict]]:
    global _TABLES
    if _TABLES is None:
        _TABLES = load_r4_tables()
    return _TABLES


def _resolve(expr: str, base: dict[str, int]) -> int:
    if expr.endswith("-1"):
        return base[expr[:-2]] - 1
    return base[expr]


def _tilde_values(lab: R4Label, tilde: dict) -> dict[str, int]:
    base = {c: lab.index(c) for c in "fgh" if lab.index(c) is not None}
    out = dict(base)
    for name, (letter, ref_letter, ref_idx) in tilde.items():
        s = _LETTER_SET[letter]
        bound = lab.at(_LETTER_SET[ref_letter], base[ref_idx])
        best = 0
        for t in range(1, len(lab.Y[s]) + 1):
            if lab.at(s, t) < bound:
                best = t
        out[name] = best
    return out


def _atom(lab: R4Label, atom: str, vals: dict[str, int]) -> int:
    letter, expr = atom.split(":")
    return lab.at(_LETTER_SET[letter], _resolve(expr, vals))


def _row_holds(lab: R4Label, row: dict, vals: dict[str, int]) -> bool:
    return any(all(_atom(lab, a, vals) < _atom(lab, b, vals) for a, b in alt)
               for alt in row["condition"])


def r4_dispatch(lab: R4Label) -> tuple[int, int, dict]:
    """(table number, row number, values of f, g, h and the tilde indices)."""
    if not lab.is_valid() or not kleshchev_r4(lab):
        raise ContractError(f"{lab.name()} is not Kleshchev")
    for t, table in enumerate(_tables()[lab.kind]):
        vals = _tilde_values(lab, table["tilde"])
        for n, row in enumerate(table["rows"]):
            if _row_holds(lab, row, vals):
                return t, n, vals
    raise TableDataError(f"no tabulated case applies to {lab.name()} with Y={lab.Y}")


def column_r4_labels(lab: R4Label) -> dict[R4Label, LaurentPoly]:
    t, n, vals = r4_dispatch(lab)
    row = _tables()[lab.kind][t]["rows"][n]
    out: dict[R4Label, LaurentPoly] = {}
    for ent in row["entries"]:
        kind = ent["label"]["kind"]
        idx = tuple(_resolve(x, vals) for x in ent["label"]["indices"])
        sib = R4Label(kind, idx, lab.Y, lab.e)
        if not sib.is_valid():
            raise TableDataError(f"row {n} of the {lab.kind} data names {sib.name()}, which does not exist")
        out[sib] = out.get(sib, ZERO) + LaurentPoly.monomial(ent["power"])
    return out


def column_r4(lab: R4Label, base: Sequence[int] | None = None):
    from .fock_engine import DecompColumn

    if base is None:
        base = (0,) * lab.e
    entries, mats = [], []
    for sib, c in column_r4_labels(lab).items():
        m = sib.matrix()
        mu = from_core_parameters(base, m)[1]
        entries.append((mu, c))
        mats.append((mu, m))
    entries.sort(key=lambda x: x[0])
    mats.sort(key=lambda x: x[0])
    target = from_core_parameters(base, lab.matrix())[1]
    return DecompColumn(target, lab.matrix(), tuple(entries), tuple(mats))


def column_r4_matrix(m: BlockMatrix) -> dict[BlockMatrix, LaurentPoly]:
    lab = classify_r4(m)
    if lab is None:
        raise ContractError("matrix is not in the four-component family")
    return {sib.matrix(): c for sib, c in column_r4_labels(lab).items()}
