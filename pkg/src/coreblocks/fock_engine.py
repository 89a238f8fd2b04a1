"""Fock-space induction: divided powers on multipartitions and on block matrices,
and the search for induction sequences that produce decomposition columns."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .core_combinatorics import (
    ContractError,
    Multicharge,
    Multipartition,
    addable_nodes,
    add_node,
    dominance_ge,
    format_multipartition,
    is_kleshchev,
    normal_nodes,
    removable_nodes,
    remove_node,
)
from .block_geometry import (
    BlockMatrix,
    Bits,
    PrecOrder,
    block_class,
    check_base,
    from_core_parameters,
    matrix_weight,
    strip_constant_columns,
)
from .laurent import ONE, ZERO, LaurentPoly

PARTITION_BASIS = "multipartition"
MATRIX_BASIS = "matrix"


class SearchBudgetExhausted(RuntimeError):
    """The induction search gave up; says nothing about Kleshchevness."""


class FockVector:
    """Finitely supported map from basis labels to Laurent polynomials."""

    __slots__ = ("_terms", "kind", "mc")

    def __init__(self, terms: Mapping | Iterable = (), kind: str = PARTITION_BASIS,
                 mc: Multicharge | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        store: dict = {}
        for label, coeff in items:
            coeff = LaurentPoly.coerce(coeff)
            if label in store:
                coeff = store[label] + coeff
            if coeff:
                store[label] = coeff
            else:
                store.pop(label, None)
        self._terms = store
        self.kind = kind
        self.mc = mc

    @classmethod
    def basis(cls, label, kind: str = PARTITION_BASIS, mc: Multicharge | None = None) -> "FockVector":
        return cls({label: ONE}, kind, mc)

    def items(self):
        return self._terms.items()

    def labels(self):
        return self._terms.keys()

    def __getitem__(self, label) -> LaurentPoly:
        return self._terms.get(label, ZERO)

    def __contains__(self, label) -> bool:
        return label in self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "FockVector") -> "FockVector":
        merged = dict(self._terms)
        for label, c in other.items():
            merged[label] = merged.get(label, ZERO) + c
        return FockVector(merged, self.kind, self.mc or other.mc)

    def scale(self, c) -> "FockVector":
        c = LaurentPoly.coerce(c)
        return FockVector({k: v * c for k, v in self._terms.items()}, self.kind, self.mc)

    def map_labels(self, fn: Callable, kind: str | None = None, mc: Multicharge | None = None) -> "FockVector":
        out: dict = {}
        for label, c in self._terms.items():
            new = fn(label)
            out[new] = out.get(new, ZERO) + c
        return FockVector(out, kind or self.kind, mc or self.mc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.kind == other.kind and self._terms == other._terms

    def __repr__(self) -> str:
        return f"FockVector({self.kind}, {len(self)} terms)"

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for label in sorted(self._terms):
            c = self._terms[label]
            name = format_multipartition(label) if self.kind == PARTITION_BASIS else str(label)
            parts.append(f"({c.render()})*[{name}]")
        return " + ".join(parts)


# ------------------------------------------------------------ F on partitions

def _f_single(sigma: Multipartition, mc: Multicharge, i: int, k: int) -> list[tuple[Multipartition, int]]:
    add = addable_nodes(sigma, mc, i)
    if len(add) < k:
        return []
    rem = removable_nodes(sigma, mc, i)
    out = []
    for chosen in combinations(range(len(add)), k):
        chosen_set = set(chosen)
        lam = sigma
        n = 0
        for idx in chosen:
            g = add[idx]
            lam = add_node(lam, g)
            n += sum(1 for j, b in enumerate(add) if j not in chosen_set and g.above(b))
            n -= sum(1 for b in rem if g.above(b))
        out.append((lam, n))
    return out


def f_divided(vec: FockVector, i: int, k: int) -> FockVector:
    """F_i^(k) on a multipartition-basis vector."""
    if k < 1:
        raise ContractError("divided powers need k >= 1")
    if vec.mc is None:
        raise ContractError("multipartition vectors need a multicharge")
    mc = vec.mc
    if mc.e:
        i %= mc.e
    out: dict = {}
    for sigma, c in vec.items():
        for lam, n in _f_single(sigma, mc, i, k):
            out[lam] = out.get(lam, ZERO) + c.shift(n)
    return FockVector(out, PARTITION_BASIS, mc)


def apply_f_sequence(vec: FockVector, seq: Sequence[tuple[int, int]]) -> FockVector:
    """Apply (residue, power) steps left to right (the first step acts first)."""
    for i, k in seq:
        vec = f_divided(vec, i, k)
    return vec


_IN_PROGRESS: dict = {}


def _bar_part(a: LaurentPoly) -> LaurentPoly:
    """The bar-invariant alpha with a - alpha in vZ[v]."""
    out = ZERO
    for d, c in a.terms().items():
        if d == 0:
            out = out + c
        elif d < 0:
            out = out + LaurentPoly.monomial(d, c) + LaurentPoly.monomial(-d, c)
    return out


def _dominance_key(lam: Multipartition) -> int:
    """Sum of all running totals; strictly increases under strict dominance."""
    total = run = 0
    width = max((len(c) for c in lam), default=0)
    for comp in lam:
        for x in range(width):
            run += comp[x] if x < len(comp) else 0
            total += run
    return total


def _ladder(lam: Multipartition, mc: Multicharge) -> list[tuple[int, int]] | None:
    """Residue steps that build lam from the empty multipartition, each step
    adding all its normal nodes at once; None if lam is not Kleshchev."""
    steps: list[tuple[int, int]] = []
    cur = lam
    while any(cur):
        for i in sorted({mc.reduce(mc.charges[n.s - 1] - n.x + n.y) for n in removable_nodes(cur, mc)}):
            normal = normal_nodes(cur, mc, i)
            if normal:
                for node in sorted(normal, key=lambda n: (-n.s, -n.x)):
                    cur = remove_node(cur, node)
                steps.append((i, len(normal)))
                break
        else:
            return None
    return list(reversed(steps))


def canonical_column(lam: Multipartition, mc: Multicharge,
                     _cache: dict | None = None) -> dict[Multipartition, LaurentPoly] | None:
    """Canonical-basis column G(lam) computed directly on multipartitions.

    Independent of the matrix machinery: a ladder vector is corrected by
    bar-invariant multiples of lower columns until all off-target coefficients
    lie in vZ[v]. Returns None when lam is not Kleshchev."""
    lam = tuple(tuple(c) for c in lam)
    cache = {} if _cache is None else _cache
    if lam in cache:
        return cache[lam]
    seq = _ladder(lam, mc)
    if seq is None:
        cache[lam] = None
        return None
    empty = tuple(() for _ in lam)
    vec = dict(apply_f_sequence(FockVector.basis(empty, mc=mc), seq).items())
    # The ladder vector is G(lam) plus bar-invariant multiples of other G(mu),
    # some of which may feed the lam coefficient; it is checked at the end.
    cache[lam] = _IN_PROGRESS
    done: set = set()
    while True:
        todo = [m for m, c in vec.items()
                if m != lam and m not in done and c and c.offset < 1]
        if not todo:
            break
        mu = min(todo, key=lambda m: (_dominance_key(m), m))
        done.add(mu)
        alpha = _bar_part(vec[mu])
        col = canonical_column(mu, mc, cache)
        if col is _IN_PROGRESS:
            raise ContractError(f"cyclic correction between {lam} and {mu}")
        if col is None:
            raise ContractError(f"non-Kleshchev label {mu} needs correcting")
        for m, c in col.items():
            nxt = vec.get(m, ZERO) - alpha * c
            if nxt:
                vec[m] = nxt
            else:
                vec.pop(m, None)
    if vec.get(lam) != ONE:
        del cache[lam]
        raise ContractError(f"ladder vector of {lam} misses its leading term")
    cache[lam] = vec
    return vec


# ------------------------------------------------------------- G on matrices

def _g_bits(bits: Bits, c: int, k: int) -> list[tuple[Bits, int]]:
    """Moves of k ones from column c-1 to column c; returns (result, N)."""
    r = len(bits)
    ten = [s for s in range(r) if bits[s][c - 1] == 1 and bits[s][c] == 0]
    if len(ten) < k:
        return []
    one = [s for s in range(r) if bits[s][c - 1] == 0 and bits[s][c] == 1]
    out = []
    for chosen in combinations(ten, k):
        cs = set(chosen)
        n = 0
        for ra in chosen:
            n += sum(1 for s in ten if s > ra and s not in cs)
            n -= sum(1 for s in one if s > ra)
        new = list(bits)
        for s in chosen:
            row = list(new[s])
            row[c - 1], row[c] = 0, 1
            new[s] = tuple(row)
        out.append((tuple(new), n))
    return out


def _g_dict(vec: dict, c: int, k: int) -> dict:
    out: dict = {}
    for bits, coeff in vec.items():
        for new, n in _g_bits(bits, c, k):
            val = out.get(new, ZERO) + coeff.shift(n)
            if val:
                out[new] = val
            else:
                out.pop(new, None)
    return out


def g_divided(vec: FockVector, i: int, k: int) -> FockVector:
    """G_i^(k): move k ones from column i-1 to column i (columns in stored order)."""
    if k < 1:
        raise ContractError("divided powers need k >= 1")
    out: dict = {}
    for m, coeff in vec.items():
        if m.e == 0:
            lo = min(m.lo, i - 1)
            hi = max(m.lo + m.width, i + 1)
            m = m.widen(lo, hi)
            c = i - m.lo
        else:
            if not 1 <= i < m.width:
                raise ContractError(f"G index {i} outside 1..{m.width - 1}")
            c = i
        for new, n in _g_bits(m.bits, c, k):
            label = m.with_bits(new)
            if m.e == 0:
                label = label.trimmed()
            out[label] = out.get(label, ZERO) + coeff.shift(n)
    return FockVector(out, MATRIX_BASIS)


# ----------------------------------------------- G-step as an F-sequence

def expand_g_to_f_sequence(base: Sequence[int] | None, i: int, k: int) -> list[tuple[int, int]]:
    """Residue/power steps (first step first) realising G_i^(k) on Pt(B, .)."""
    if k < 1:
        raise ContractError("divided powers need k >= 1")
    if base is None or len(base) == 1:
        return [(i, k)]
    b = check_base(base)
    e = len(b)
    if not 1 <= i <= e - 1:
        raise ContractError(f"G index {i} outside 1..{e - 1}")
    pi = PrecOrder.from_base(b).pi
    j0, j1 = pi[i - 1], pi[i]
    # relabel residues so that j0 becomes 0; the order on runners is unchanged
    rot = [b[(x + j0) % e] - (1 if x + j0 >= e else 0) for x in range(e)]
    t = (j1 - j0) % e
    delta = rot[t] - rot[0]
    ls = sorted({l for l in range(e) if (l < t and rot[l] > rot[t]) or (l >= t and rot[l] >= rot[t])} | {0})
    y = ls.index(t)
    m = len(ls) - 1
    steps: list[tuple[int, int]] = []
    for res in list(range(ls[m] + 1, e)) + [0]:
        steps.append((res, k * delta))
    for p in range(m, y, -1):
        for res in range(ls[p - 1] + 1, ls[p] + 1):
            steps.append((res, k * delta))
    for p in range(y, 0, -1):
        for res in range(ls[p - 1] + 1, ls[p] + 1):
            steps.append((res, k * (delta + 1)))
    return [((res + j0) % e, power) for res, power in steps if power > 0]


# ------------------------------------------------------------- columns

@dataclass(frozen=True)
class DecompColumn:
    target: Multipartition
    target_matrix: BlockMatrix | None
    entries: tuple[tuple[Multipartition, LaurentPoly], ...]
    matrices: tuple[tuple[Multipartition, BlockMatrix], ...] = ()
    sequence: tuple[tuple[int, int], ...] = ()
    start: BlockMatrix | None = None

    def as_dict(self) -> dict[Multipartition, LaurentPoly]:
        return dict(self.entries)

    def __getitem__(self, mu: Multipartition) -> LaurentPoly:
        return self.as_dict().get(mu, ZERO)

    def partner(self) -> Multipartition:
        """The label carrying the highest v-power (the v^w entry)."""
        return max(self.entries, key=lambda t: (t[1].max_degree(), t[0]))[0]

    def to_json(self) -> dict:
        return {"target": [list(p) for p in self.target],
                "entries": [{"label": [list(p) for p in mu], "poly": c.to_json()}
                            for mu, c in self.entries]}


def nested_rows(bits: Bits) -> bool:
    """True when the row supports form a chain under inclusion (weight zero)."""
    rows = sorted(bits, key=sum)
    for a, b in zip(rows, rows[1:]):
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def weight0_candidates(k: BlockMatrix, cap: int = 200) -> list[BlockMatrix]:
    """Weight-zero matrices with k's row sums and width, in lexicographic order.

    A nested family is fixed by a chain of supports; we enumerate chains
    ordered by row size and assign rows accordingly."""
    sums = k.row_sums()
    width = k.width
    order = sorted(range(k.rows), key=lambda s: (sums[s], s))
    found: set = set()

    def grow(idx: int, prev: frozenset, assigned: dict):
        if len(found) >= cap * 4:
            return
        if idx == len(order):
            bits = tuple(tuple(1 if c in assigned[s] else 0 for c in range(width)) for s in range(k.rows))
            found.add(bits)
            return
        s = order[idx]
        need = sums[s] - len(prev)
        free = [c for c in range(width) if c not in prev]
        for extra in combinations(free, need):
            sup = prev | frozenset(extra)
            assigned[s] = sup
            grow(idx + 1, sup, assigned)
        assigned.pop(s, None)

    grow(0, frozenset(), {})
    out = sorted(found)
    if k.bits in found:
        out.remove(k.bits)
        out.insert(0, k.bits)
    return [k.with_bits(b) for b in out[:cap]]


def _removable_signature(bits: Bits, c: int) -> list[int]:
    """Rows holding a normal '01' at columns (c-1, c), top to bottom."""
    r = len(bits)
    marks = []
    for s in range(r):
        a, b = bits[s][c - 1], bits[s][c]
        if a == 0 and b == 1:
            marks.append((s, -1))
        elif a == 1 and b == 0:
            marks.append((s, +1))
    normal = []
    for p, (s, kind) in enumerate(marks):
        if kind != -1:
            continue
        rem = add = 0
        ok = True
        for _, k2 in marks[p + 1:]:
            if k2 == +1:
                if rem <= add:
                    ok = False
                    break
                add += 1
            else:
                rem += 1
        if ok:
            normal.append(s)
    return normal


def _unmove(bits: Bits, c: int, rows: Iterable[int]) -> Bits:
    new = list(bits)
    for s in rows:
        row = list(new[s])
        row[c - 1], row[c] = 1, 0
        new[s] = tuple(row)
    return tuple(new)


def _accept(vec: dict, target: Bits) -> bool:
    if vec.get(target) != ONE:
        return False
    return all(c.in_v_nat_v() for m, c in vec.items() if m != target)


def _forward(start: Bits, seq: Sequence[tuple[int, int]]) -> dict:
    vec = {start: ONE}
    for c, k in seq:
        vec = _g_dict(vec, c, k)
        if not vec:
            break
    return vec


@dataclass
class _Budget:
    nodes: int

    def spend(self) -> None:
        self.nodes -= 1
        if self.nodes < 0:
            raise SearchBudgetExhausted("induction search budget exhausted")


def _crystal_search(target: Bits, budget: _Budget):
    """Walk back from target by stripping all normal '01's at one column at a
    time until the rows are nested, then test the forward expansion."""
    width = len(target[0])
    path: list[tuple[int, int]] = []
    seen_fail: set = set()

    def dfs(cur: Bits):
        budget.spend()
        if nested_rows(cur):
            seq = list(reversed(path))
            vec = _forward(cur, seq)
            if _accept(vec, target):
                return cur, seq, vec
            return None
        key = (cur, tuple(path))
        for c in range(1, width):
            normal = _removable_signature(cur, c)
            if not normal:
                continue
            nxt = _unmove(cur, c, normal)
            path.append((c, len(normal)))
            got = dfs(nxt)
            path.pop()
            if got is not None:
                return got
        return None

    return dfs(target)


def _flow_search(target: Bits, budget: _Budget, cap: int):
    """Forward search from each weight-zero start, bounded by the number of
    unit moves that separate the start from the target."""
    r = len(target)
    width = len(target[0])
    tk = BlockMatrix(target, width)
    goal_prefix = [[sum(row[:c]) for c in range(width + 1)] for row in target]
    for start_m in weight0_candidates(tk, cap):
        start = start_m.bits
        moves = sum(
            sum(sum(row[:c]) for c in range(width + 1)) for row in start
        ) - sum(sum(p) for p in goal_prefix)
        if moves < 0:
            continue
        path: list[tuple[int, int]] = []

        def dfs(vec: dict, left: int):
            budget.spend()
            if left == 0:
                return path[:] if _accept(vec, target) else None
            for c in range(1, width):
                for k in range(min(left, r), 0, -1):
                    nxt = _g_dict(vec, c, k)
                    if target not in _reachable_filter(nxt, target):
                        continue
                    path.append((c, k))
                    got = dfs(nxt, left - k)
                    path.pop()
                    if got is not None:
                        return got
            return None

        seq = dfs({start: ONE}, moves)
        if seq is not None:
            return start, seq, _forward(start, seq)
    return None


def _reachable_filter(vec: dict, target: Bits) -> set:
    """Labels from which target can still be reached by moving ones rightwards."""
    if not vec:
        return set()
    ok = set()
    for m in vec:
        if all(_prefix_dominates(a, b) for a, b in zip(m, target)):
            ok.add(target)
            break
    return ok


def _prefix_dominates(row: tuple, goal: tuple) -> bool:
    acc_a = acc_b = 0
    for x, y in zip(row, goal):
        acc_a += x
        acc_b += y
        if acc_a < acc_b:
            return False
    return acc_a == acc_b


DEFAULT_BUDGET = 200_000


@lru_cache(maxsize=50_000)
def column_for_bits(target: Bits, budget: int = DEFAULT_BUDGET) -> tuple | None:
    """Column data for a stripped matrix: (start, sequence, ((bits, poly), ...)).

    Returns None when the search cannot find a suitable sequence."""
    b = _Budget(budget)
    if nested_rows(target):
        return target, (), ((target, ONE),)
    got = _crystal_search(target, b)
    if got is None:
        got = _flow_search(target, b, 20_000)
    if got is None:
        return None
    start, seq, vec = got
    return start, tuple(seq), tuple(sorted(vec.items()))


def _lift(bits: Bits, full: BlockMatrix, keep: tuple[int, ...]) -> BlockMatrix:
    """Reinsert the constant columns of full around stripped bits."""
    rows = []
    for s in range(full.rows):
        row = list(full.bits[s])
        for idx, c in enumerate(keep):
            row[c] = bits[s][idx]
        rows.append(tuple(row))
    return full.with_bits(tuple(rows))


def matrix_is_kleshchev(m: BlockMatrix) -> bool:
    """Kleshchev test for Pt(0, m); by the reduction result this is B-independent."""
    if m.e == 0:
        mc, lam = from_core_parameters(None, m)
    else:
        mc, lam = from_core_parameters((0,) * m.width, m)
    return is_kleshchev(lam, mc)


def compute_column_matrix(k: BlockMatrix, budget: int = DEFAULT_BUDGET) -> dict[BlockMatrix, LaurentPoly] | None:
    """Matrix-level column for k: None if k is not Kleshchev.

    Raises SearchBudgetExhausted when the search fails for a Kleshchev k."""
    if not matrix_is_kleshchev(k):
        return None
    stripped, keep = strip_constant_columns(k)
    if stripped.width == 0:
        return {k: ONE}
    got = column_for_bits(stripped.bits, budget)
    if got is None:
        raise SearchBudgetExhausted(f"no induction sequence found for {k}")
    _, _, entries = got
    return {_lift(bits, k, keep): c for bits, c in entries}


def compute_column(base: Sequence[int] | None, k: BlockMatrix, budget: int = DEFAULT_BUDGET) -> DecompColumn | None:
    """P(Pt(B, k)) via induction; None when Pt(B, k) is not Kleshchev."""
    col = compute_column_matrix(k, budget)
    if col is None:
        return None
    stripped, keep = strip_constant_columns(k)
    seq: tuple = ()
    start = k
    if stripped.width:
        got = column_for_bits(stripped.bits, budget)
        start = _lift(got[0], k, keep)
        seq = tuple((keep[c - 1] + 1, kk) for c, kk in got[1])
    _, target = from_core_parameters(base, k)
    entries = []
    mats = []
    for m, c in col.items():
        _, mu = from_core_parameters(base, m)
        entries.append((mu, c))
        mats.append((mu, m))
    entries.sort(key=lambda t: t[0])
    mats.sort(key=lambda t: t[0])
    return DecompColumn(target, k, tuple(entries), tuple(mats), seq, start)


# ----------------------------------------------------------- block matrices

@dataclass
class DecompMatrix:
    rows: list[Multipartition]
    cols: list[Multipartition]
    entries: dict[tuple[int, int], LaurentPoly]
    row_matrices: list[BlockMatrix] = field(default_factory=list)
    base: tuple[int, ...] | None = None
    mc: Multicharge | None = None
    failed: list[Multipartition] = field(default_factory=list)
    row_names: list[str] | None = None

    def entry(self, mu: Multipartition, lam: Multipartition) -> LaurentPoly:
        return self.entries.get((self.rows.index(mu), self.cols.index(lam)), ZERO)

    def column(self, lam: Multipartition) -> dict[Multipartition, LaurentPoly]:
        j = self.cols.index(lam)
        return {self.rows[i]: c for (i, jj), c in self.entries.items() if jj == j}

    def to_json(self) -> dict:
        block = None
        if self.row_matrices:
            block = self.row_matrices[0].to_json(self.base)
        return {
            "block": block,
            "multicharge": list(self.mc.charges) if self.mc else None,
            "e": self.mc.e if self.mc else None,
            "rows": [[list(p) for p in mu] for mu in self.rows],
            "cols": [[list(p) for p in lam] for lam in self.cols],
            "row_names": self.row_names,
            "entries": [[self.entries.get((i, j), ZERO).to_json() for j in range(len(self.cols))]
                        for i in range(len(self.rows))],
            "failed": [[list(p) for p in lam] for lam in self.failed],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DecompMatrix":
        rows = [tuple(tuple(p) for p in mu) for mu in data["rows"]]
        cols = [tuple(tuple(p) for p in lam) for lam in data["cols"]]
        entries = {}
        for i, line in enumerate(data["entries"]):
            for j, cell in enumerate(line):
                poly = LaurentPoly.from_json(cell)
                if poly:
                    entries[(i, j)] = poly
        mc = Multicharge(tuple(data["multicharge"]), data["e"]) if data.get("multicharge") is not None else None
        failed = [tuple(tuple(p) for p in lam) for lam in data.get("failed", [])]
        return cls(rows, cols, entries, [], None, mc, failed, data.get("row_names"))

    def render(self) -> str:
        names = self.row_names or [""] * len(self.rows)
        labels = [format_multipartition(mu, exponents=True) for mu in self.rows]
        cells = [[self.entries.get((i, j), ZERO) for j in range(len(self.cols))] for i in range(len(self.rows))]
        text = [["" if not c else c.render() for c in line] for line in cells]
        head = []
        if self.mc is not None:
            head.append(f"mc=({','.join(map(str, self.mc.charges))}) e={self.mc.e}")
        w_name = max([len(n) for n in names] + [0])
        w_label = max([len(s) for s in labels] + [1])
        w_cell = max([len(s) for line in text for s in line] + [2])
        lines = list(head)
        for i in range(len(self.rows)):
            parts = []
            if w_name:
                parts.append(names[i].ljust(w_name))
            parts.append(labels[i].ljust(w_label))
            parts.append(" ".join(s.rjust(w_cell) for s in text[i]))
            lines.append("  ".join(parts).rstrip())
        if self.failed:
            lines.append("failed columns: " + ", ".join(format_multipartition(f) for f in self.failed))
        return "\n".join(lines)


def sort_labels(labels: Iterable[Multipartition]) -> list[Multipartition]:
    """Ascending lexicographic order, a linear extension of dominance with the
    least dominant label first."""
    return sorted(labels)


def block_decomposition_matrix(base: Sequence[int] | None, m0: BlockMatrix,
                               budget: int = DEFAULT_BUDGET,
                               column_fn: Callable | None = None) -> DecompMatrix:
    """Decomposition matrix of the block containing Pt(B, m0)."""
    members = block_class(m0)
    labelled = []
    mc = None
    for m in members:
        mc, mu = from_core_parameters(base, m)
        labelled.append((mu, m))
    labelled.sort(key=lambda t: t[0])
    rows = [mu for mu, _ in labelled]
    row_mats = [m for _, m in labelled]
    index = {mu: i for i, mu in enumerate(rows)}
    cols, entries, failed = [], {}, []
    for mu, m in labelled:
        if not matrix_is_kleshchev(m):
            continue
        j = len(cols)
        cols.append(mu)
        try:
            if column_fn is not None:
                col = column_fn(m)
            else:
                mcol = compute_column_matrix(m, budget)
                col = {from_core_parameters(base, mm)[1]: c for mm, c in mcol.items()}
        except SearchBudgetExhausted:
            failed.append(mu)
            continue
        for nu, c in col.items():
            if nu not in index:
                raise ContractError(f"column entry {nu} lies outside the block")
            entries[(index[nu], j)] = c
    return DecompMatrix(rows, cols, entries, row_mats,
                        tuple(base) if base is not None else None, mc, failed)


def check_column_invariants(col: Mapping[Multipartition, LaurentPoly], target: Multipartition,
                            w: int) -> list[str]:
    """Problems with leading term, positivity, dominance and the v^w entry."""
    problems = []
    if col.get(target) != ONE:
        problems.append("diagonal entry is not 1")
    for mu, c in col.items():
        if mu != target and not c.in_v_nat_v():
            problems.append(f"entry at {format_multipartition(mu)} not in vN[v]")
        if not dominance_ge(mu, target):
            problems.append(f"{format_multipartition(mu)} does not dominate the target")
    if w > 0:
        tops = [mu for mu, c in col.items() if c == LaurentPoly.monomial(w)]
        if len(tops) != 1:
            problems.append(f"expected exactly one v^{w} entry, found {len(tops)}")
        elif not all(dominance_ge(tops[0], mu) for mu in col):
            problems.append("the v^w entry does not dominate the whole column")
    return problems
