"""Core blocks in matrix coordinates.

A multipartition in a core block is described by a base tuple B and a 0/1
matrix M with one row per component.  Columns are listed in the order
induced by B (runner i comes before runner j when b_i < b_j, ties broken by
the index).  For e = 0 the matrix is a finite window of columns starting at
``lo``; everything left of the window is 1 and everything right of it is 0.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .core_combinatorics import (
    ContractError,
    Multicharge,
    Multipartition,
    Partition,
    beta_set,
    make_partition,
    is_core,
    partition_from_betas,
    residue_content,
)

Bits = tuple[tuple[int, ...], ...]


class ClassOverflow(RuntimeError):
    def __init__(self, limit: int, partial: frozenset):
        self.limit = limit
        self.partial = partial
        super().__init__(f"block class exceeds {limit} members")


# ---------------------------------------------------------------- base tuples

def check_base(base: Sequence[int]) -> tuple[int, ...]:
    b = tuple(int(x) for x in base)
    if not b:
        raise ContractError("empty base tuple")
    if len(b) == 1:
        raise ContractError("base tuples need e >= 2 entries")
    if any(x < 0 for x in b) or 0 not in b:
        raise ContractError(f"base tuple needs naturals with some zero entry: {b}")
    return b


@dataclass(frozen=True)
class PrecOrder:
    """pi[p] is the runner in position p; pos[i] is the position of runner i."""

    pi: tuple[int, ...]

    @classmethod
    def from_base(cls, base: Sequence[int]) -> "PrecOrder":
        return cls(tuple(sorted(range(len(base)), key=lambda i: (base[i], i))))

    @property
    def pos(self) -> tuple[int, ...]:
        out = [0] * len(self.pi)
        for p, i in enumerate(self.pi):
            out[i] = p
        return tuple(out)

    def precedes(self, i: int, j: int) -> bool:
        pos = self.pos
        return pos[i] < pos[j]

    def __str__(self) -> str:
        return " < ".join(str(i) for i in self.pi)


# -------------------------------------------------------------- block matrix

@dataclass(frozen=True, order=True)
class BlockMatrix:
    bits: Bits
    e: int = 0
    lo: int = 0

    def __post_init__(self):
        bits = tuple(tuple(int(x) for x in row) for row in self.bits)
        if not bits:
            raise ContractError("a block matrix needs at least one row")
        width = len(bits[0])
        if any(len(row) != width for row in bits):
            raise ContractError("ragged matrix")
        if any(x not in (0, 1) for row in bits for x in row):
            raise ContractError("entries must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @property
    def rows(self) -> int:
        return len(self.bits)

    @property
    def width(self) -> int:
        return len(self.bits[0])

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(row[c] for row in self.bits)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(c) for c in range(self.width)]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.bits)

    def is_reduced(self) -> bool:
        if self.e == 0:
            return True
        return all(0 in col for col in self.columns())

    def with_bits(self, bits: Bits) -> "BlockMatrix":
        return BlockMatrix(bits, self.e, self.lo)

    def widen(self, lo: int, hi: int) -> "BlockMatrix":
        """Window [lo, hi) covering the current one (e = 0 convention)."""
        if lo > self.lo or hi < self.lo + self.width:
            raise ContractError("widen must not shrink the window")
        left = self.lo - lo
        right = hi - self.lo - self.width
        bits = tuple((1,) * left + row + (0,) * right for row in self.bits)
        return BlockMatrix(bits, self.e, lo)

    def trimmed(self) -> "BlockMatrix":
        """For e = 0: drop all-one columns on the left and all-zero columns on the right."""
        if self.e != 0:
            return self
        cols = self.columns()
        a, b = 0, len(cols)
        while a < b and all(cols[a]):
            a += 1
        while b > a and not any(cols[b - 1]):
            b -= 1
        if a == b:
            return BlockMatrix(tuple((0,) for _ in self.bits), 0, self.lo + a)
        return BlockMatrix(tuple(row[a:b] for row in self.bits), 0, self.lo + a)

    def permute_rows(self, perm: Sequence[int]) -> "BlockMatrix":
        """Row s of the result is row perm[s] of self (0-based)."""
        return self.with_bits(tuple(self.bits[p] for p in perm))

    def to_json(self, base: Sequence[int] | None = None) -> dict:
        if self.e >= 2 and base is not None:
            cols = list(PrecOrder.from_base(base).pi)
        else:
            cols = list(range(self.lo, self.lo + self.width))
        out = {"e": self.e, "rows": self.rows, "columns": cols,
               "bits": [list(r) for r in self.bits]}
        if base is not None:
            out["base"] = list(base)
        if self.e == 0:
            out["lo"] = self.lo
        return out

    @classmethod
    def from_json(cls, data: dict) -> "BlockMatrix":
        return cls(tuple(tuple(r) for r in data["bits"]), int(data["e"]), int(data.get("lo", 0)))

    def render(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.bits)

    def __str__(self) -> str:
        return "[" + "; ".join("".join(str(x) for x in row) for row in self.bits) + "]"


def matrix(rows: Iterable[Iterable[int]], e: int | None = None, lo: int = 0) -> BlockMatrix:
    bits = tuple(tuple(r) for r in rows)
    return BlockMatrix(bits, len(bits[0]) if e is None else e, lo)


def parse_matrix(text: str, e: int | None = None) -> BlockMatrix:
    """Rows separated by ';' or '/', entries by commas, spaces or nothing."""
    rows = []
    for chunk in text.replace("/", ";").split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "," in chunk or " " in chunk:
            vals = [int(x) for x in chunk.replace(",", " ").split()]
        else:
            vals = [int(ch) for ch in chunk]
        rows.append(tuple(vals))
    if not rows:
        raise ContractError("empty matrix")
    return matrix(rows, e)


# ------------------------------------------------------ multipartitions <-> (B, M)

def from_core_parameters(base: Sequence[int] | None, m: BlockMatrix) -> tuple[Multicharge, Multipartition]:
    """Pt(B, M) together with its multicharge."""
    if m.e == 0:
        comps, charges = [], []
        for row in m.bits:
            a = m.lo + sum(row)
            betas = sorted((m.lo + c for c, x in enumerate(row) if x), reverse=True)
            comps.append(make_partition(betas[j] - a + j + 1 for j in range(len(betas))))
            charges.append(a)
        return Multicharge(tuple(charges), 0), tuple(comps)
    b = check_base(base)
    e = len(b)
    if m.width != e:
        raise ContractError("matrix width must equal e")
    pos = PrecOrder.from_base(b).pos
    comps, charges = [], []
    for row in m.bits:
        betas = []
        for i in range(e):
            count = b[i] + row[pos[i]]
            betas.extend(i + e * h for h in range(count))
        total = len(betas)
        comps.append(partition_from_betas(betas, total))
        charges.append(total % e)
    return Multicharge(tuple(charges), e), tuple(comps)


def to_core_parameters(lam: Multipartition, mc: Multicharge) -> tuple[tuple[int, ...], BlockMatrix] | None:
    """(B, M) with M reduced and lam = Pt(B, M), or None outside core blocks."""
    if len(lam) != mc.r:
        raise ContractError("multipartition and multicharge disagree on r")
    e = mc.e
    sets = [beta_set(comp, a, e) for comp, a in zip(lam, mc.charges)]
    floor = min(s.floor for s in sets)
    if e == 0:
        hi = max([max(s.betas, default=s.floor) for s in sets] + [floor]) + 1
        bits = []
        for s in sets:
            beads = set(s.betas) | set(range(floor, s.floor))
            bits.append(tuple(1 if x in beads else 0 for x in range(floor, hi)))
        return (0,), BlockMatrix(tuple(bits), 0, floor).trimmed()
    if any(not is_core(comp, e) for comp in lam):
        return None
    counts = []
    for st in sets:
        beads = set(st.betas) | set(range(floor, st.floor))
        row = [sum(1 for x in beads if (x - floor) % e == i) for i in range(e)]
        low = min(row)
        counts.append([x - low for x in row])
    # each abacus may be shifted by whole levels; look for shifts that keep
    # every runner within one bead across components
    r = len(counts)
    best = None
    for shifts in _level_shifts(counts):
        rows = [[x + k for x in c] for c, k in zip(counts, shifts)]
        base = [min(row[i] for row in rows) for i in range(e)]
        low = min(base)
        base = tuple(x - low for x in base)
        pos = PrecOrder.from_base(base).pos
        bits = []
        for row in rows:
            out = [0] * e
            for i in range(e):
                out[pos[i]] = row[i] - low - base[i]
            bits.append(tuple(out))
        key = (sum(map(sum, bits)), tuple(bits))
        if best is None or key < best[0]:
            best = (key, base, BlockMatrix(tuple(bits), e))
    if best is None:
        return None
    return best[1], best[2]


def _level_shifts(counts: list[list[int]]):
    """Shift vectors (k_0 = 0) with |c_s,i + k_s - c_t,i - k_t| <= 1 throughout."""
    r = len(counts)

    def window(s, t):
        # allowed values of k_s - k_t
        diffs = [a - b for a, b in zip(counts[s], counts[t])]
        return -1 - min(diffs), 1 - max(diffs)

    def grow(ks):
        s = len(ks)
        if s == r:
            yield tuple(ks)
            return
        lo, hi = window(s, 0)
        for k in range(lo, hi + 1):
            if all(window(s, t)[0] <= k - ks[t] <= window(s, t)[1] for t in range(1, s)):
                yield from grow(ks + [k])

    yield from grow([0])


# ------------------------------------------------------------------- weights

def weight(lam: Multipartition, mc: Multicharge) -> int:
    c = residue_content(lam, mc)
    first = sum(c.get(a, 0) for a in mc.charges)
    if mc.e:
        idx = range(mc.e)
        diff = sum((c.get(i, 0) - c.get((i + 1) % mc.e, 0)) ** 2 for i in idx)
    else:
        if not c:
            return 0
        idx = range(min(c) - 1, max(c) + 1)
        diff = sum((c.get(i, 0) - c.get(i + 1, 0)) ** 2 for i in idx)
    if diff % 2:
        raise AssertionError("odd square sum in weight formula")
    return first - diff // 2


def matrix_pair_weight(m: BlockMatrix, t: int, s: int) -> int:
    plus = minus = 0
    for a, b in zip(m.bits[t], m.bits[s]):
        if a and not b:
            plus += 1
        elif b and not a:
            minus += 1
    return min(plus, minus)


def matrix_weight(m: BlockMatrix) -> int:
    r = m.rows
    return sum(matrix_pair_weight(m, t, s) for s in range(r) for t in range(s + 1, r))


def pair_weight(lam_s: Partition, a_s: int, lam_t: Partition, a_t: int, e: int) -> int:
    """Weight of the two-component multipartition (lam_s, lam_t) for core components."""
    if e and (not is_core(lam_s, e) or not is_core(lam_t, e)):
        raise ContractError("pair_weight needs e-cores")
    mc = Multicharge((a_s, a_t), e)
    got = to_core_parameters((lam_s, lam_t), mc)
    if got is None:
        # the pair is still a multicore; fall back to the defining formula
        return weight((lam_s, lam_t), mc)
    return matrix_pair_weight(got[1], 1, 0)


def in_same_block(lam: Multipartition, mu: Multipartition, mc: Multicharge) -> bool:
    if sum(map(sum, lam)) != sum(map(sum, mu)):
        raise ContractError("in_same_block needs equal sizes")
    return residue_content(lam, mc) == residue_content(mu, mc)


# ------------------------------------------------------------------ bead swaps

def bead_swaps(m: BlockMatrix) -> list[BlockMatrix]:
    bits = m.bits
    r, w = m.rows, m.width
    out = set()
    for s in range(r):
        for t in range(s + 1, r):
            rs, rt = bits[s], bits[t]
            only_s = [c for c in range(w) if rs[c] and not rt[c]]
            only_t = [c for c in range(w) if rt[c] and not rs[c]]
            for i in only_s:
                for j in only_t:
                    ns = list(rs)
                    nt = list(rt)
                    ns[i], ns[j] = 0, 1
                    nt[i], nt[j] = 1, 0
                    new = list(bits)
                    new[s], new[t] = tuple(ns), tuple(nt)
                    out.add(tuple(new))
    return [m.with_bits(b) for b in sorted(out)]


DEFAULT_CLASS_LIMIT = 100_000


def block_class(m: BlockMatrix, limit: int = DEFAULT_CLASS_LIMIT) -> list[BlockMatrix]:
    """The bead-swap equivalence class of m, sorted; raises ClassOverflow past limit."""
    seen = {m}
    queue = deque([m])
    while queue:
        cur = queue.popleft()
        for nxt in bead_swaps(cur):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise ClassOverflow(limit, frozenset(seen))
                queue.append(nxt)
    return sorted(seen)


# ---------------------------------------------------------------- weight graph

@dataclass(frozen=True)
class WeightGraph:
    vertices: int
    edges: tuple[tuple[int, int, int], ...]  # (s, t, multiplicity), s < t, 0-based

    def multiplicity(self, s: int, t: int) -> int:
        s, t = min(s, t), max(s, t)
        for a, b, w in self.edges:
            if (a, b) == (s, t):
                return w
        return 0

    def edge_count(self) -> int:
        return sum(w for _, _, w in self.edges)

    def components(self) -> list[list[int]]:
        parent = list(range(self.vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b, _ in self.edges:
            parent[find(a)] = find(b)
        groups: dict[int, list[int]] = {}
        for v in range(self.vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.is_connected() and self.edge_count() == self.vertices - 1

    def degree(self, v: int) -> int:
        return sum(w for a, b, w in self.edges if v in (a, b))

    def to_json(self) -> dict:
        return {"vertices": self.vertices,
                "edges": [{"s": a + 1, "t": b + 1, "multiplicity": w} for a, b, w in self.edges]}


def weight_graph(m: BlockMatrix) -> WeightGraph:
    edges = []
    for s in range(m.rows):
        for t in range(s + 1, m.rows):
            w = matrix_pair_weight(m, t, s)
            if w:
                edges.append((s, t, w))
    return WeightGraph(m.rows, tuple(edges))


def is_decomposable(m: BlockMatrix) -> tuple[frozenset, frozenset] | None:
    """A vertex split (S, T) with no edges across, S holding vertex 0; else None."""
    comps = weight_graph(m).components()
    if len(comps) == 1:
        return None
    first = frozenset(comps[0])
    return first, frozenset(range(m.rows)) - first


def is_tree(m: BlockMatrix) -> bool:
    return weight_graph(m).is_tree()


def strip_constant_columns(m: BlockMatrix) -> tuple[BlockMatrix, tuple[int, ...]]:
    """Drop all-0 and all-1 columns; the map lists the kept original columns."""
    keep = tuple(c for c, col in enumerate(m.columns()) if 0 < sum(col) < m.rows)
    bits = tuple(tuple(row[c] for c in keep) for row in m.bits)
    return BlockMatrix(bits, m.e, m.lo), keep


# ----------------------------------------------------------- tree classification

def indicator(a: int, r: int) -> tuple[int, ...]:
    """The column with ones in its top a rows."""
    return tuple(1 if s < a else 0 for s in range(r))


def chain_column(i: int, j: int, j_next: int, r: int) -> tuple[int, ...]:
    """indicator(i) with rows j and j_next exchanged; 1-based arguments."""
    col = list(indicator(i, r))
    col[j - 1], col[j_next - 1] = col[j_next - 1], col[j - 1]
    return tuple(col)


@dataclass(frozen=True)
class TreeClassification:
    Y: tuple[tuple[int, ...], ...]  # Y_0 .. Y_r as sorted column lists
    pi: tuple[int, ...]  # 0-based: row pi[s] of the matrix is row s of the unpermuted form
    i: tuple[int, ...] = ()
    j: tuple[int, ...] = ()
    w: tuple[int, ...] = ()

    @property
    def r(self) -> int:
        return len(self.Y) - 1

    @property
    def y(self) -> tuple[int, ...]:
        return tuple(len(self.Y[s]) for s in range(1, self.r))

    def to_json(self) -> dict:
        return {"Y": [list(s) for s in self.Y], "pi": [p + 1 for p in self.pi],
                "i": list(self.i), "j": list(self.j), "w": list(self.w)}


def _parse_chain_column(col: tuple[int, ...]) -> tuple[int, int, int] | None:
    r = len(col)
    ones = [s + 1 for s in range(r) if col[s]]
    zeros = [s + 1 for s in range(r) if not col[s]]
    if not ones or not zeros:
        return None
    j = zeros[0]
    j_next = ones[-1]
    if j_next <= j:
        return None
    below = [s for s in ones if j < s < j_next]
    i = below[-1] if below else j
    if chain_column(i, j, j_next, r) != col:
        return None
    return i, j, j_next


def _try_parse(bits: Bits, e: int, allow_full: bool) -> tuple | None:
    r = len(bits)
    width = len(bits[0])
    cols = [tuple(row[c] for row in bits) for c in range(width)]
    Y: list[list[int]] = [[] for _ in range(r + 1)]
    chains = []
    for c, col in enumerate(cols):
        ones = sum(col)
        if col == indicator(ones, r):
            Y[ones].append(c)
            continue
        parsed = _parse_chain_column(col)
        if parsed is None:
            return None
        chains.append((parsed, c))
    if not chains:
        return None
    chains.sort(key=lambda t: t[0][1])
    js = [chains[0][0][1]]
    iis = []
    for (i, j, j_next), c in chains:
        if j != js[-1]:
            return None
        iis.append(i)
        js.append(j_next)
        Y[i].append(c)
    if js[0] != 1 or js[-1] != r:
        return None
    if len(set(iis)) != len(iis):
        return None
    Y = [sorted(s) for s in Y]
    if not Y[1] or not Y[r - 1]:
        return None
    if e >= 2 and Y[r] and not allow_full:
        return None
    ws = tuple(Y[i].index(c) + 1 for (i, _, _), c in chains)
    return tuple(tuple(s) for s in Y), tuple(iis), tuple(js), ws


def _leaf_peel_order(m: BlockMatrix) -> tuple[int, ...] | None:
    """Vertices listed so that each is a leaf of the tree left after removing later ones;
    the largest available leaf is peeled first."""
    g = weight_graph(m)
    alive = set(range(m.rows))
    order = []
    adj = {v: {u for a, b, _ in g.edges for u in (a, b) if v in (a, b) and u != v} for v in alive}
    while len(alive) > 1:
        leaves = [v for v in alive if len(adj[v] & alive) == 1]
        if not leaves:
            return None
        v = max(leaves)
        order.append(v)
        alive.discard(v)
    order.extend(alive)
    return tuple(reversed(order))


def tree_classify(m: BlockMatrix, allow_full_columns: bool = True) -> TreeClassification | None:
    """Locate m as a row permutation of a chain matrix, or None if G(m) is not a tree.

    Row permutations are searched starting from the leaf-peeling order and then
    in lexicographic order; the first permutation that parses wins.
    """
    if not is_tree(m):
        return None
    r = m.rows
    first = _leaf_peel_order(m)
    candidates = [first] if first is not None else []
    candidates += [p for p in permutations(range(r)) if p != first]
    for perm in candidates:
        bits = tuple(m.bits[p] for p in perm)
        got = _try_parse(bits, m.e, allow_full_columns)
        if got is not None:
            Y, iis, js, ws = got
            return TreeClassification(Y, tuple(perm), iis, js, ws)
    return None


def _check_Y(Y: Sequence[Sequence[int]], e: int | None) -> tuple[int, int]:
    r = len(Y) - 1
    if r < 2:
        raise ContractError("Y needs r >= 2")
    cols = [c for s in Y for c in s]
    width = len(cols)
    if sorted(cols) != list(range(width)):
        raise ContractError("Y must partition the column indices 0..width-1")
    if not Y[1] or not Y[r - 1]:
        raise ContractError("Y_1 and Y_{r-1} must be nonempty")
    if e is not None and e >= 2 and Y[r]:
        raise ContractError("Y_r must be empty when e >= 2")
    return r, width


def delta_matrix(Y: Sequence[Sequence[int]], i: Sequence[int], j: Sequence[int],
                 w: Sequence[int], pi: Sequence[int] | None = None, e: int | None = None) -> BlockMatrix:
    """The chain matrix for (Y, (i, j), w) with rows placed by pi (row pi[s] holds row s)."""
    r, width = _check_Y(Y, e)
    t = len(i)
    if len(j) != t + 1 or len(w) != t or j[0] != 1 or j[-1] != r:
        raise ContractError("bad chain data")
    ys = [sorted(s) for s in Y]
    cols: list[tuple[int, ...] | None] = [None] * width
    for a in range(r + 1):
        for c in ys[a]:
            cols[c] = indicator(a, r)
    for u in range(t):
        if not (j[u] <= i[u] < j[u + 1]):
            raise ContractError("chain data out of order")
        if not 1 <= w[u] <= len(ys[i[u]]):
            raise ContractError("w out of range")
        c = ys[i[u]][w[u] - 1]
        cols[c] = chain_column(i[u], j[u], j[u + 1], r)
    rows = [tuple(cols[c][s] for c in range(width)) for s in range(r)]
    if pi is None:
        pi = tuple(range(r))
    placed: list = [None] * r
    for s in range(r):
        placed[pi[s]] = rows[s]
    return BlockMatrix(tuple(placed), width if e is None else e)


def chain_data(y: Sequence[int]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (i, j) pairs for the composition y = (y_1..y_{r-1}), over every t."""
    r = len(y) + 1
    out = []

    def grow(js, iis):
        last = js[-1]
        # choose i >= last with y_i >= 1, then either close at r or pick a next j
        for i in range(last, r):
            if y[i - 1] < 1:
                continue
            out.append((tuple(iis + [i]), tuple(js + [r])))
            for nxt in range(i + 1, r):
                grow(js + [nxt], iis + [i])

    grow([1], [])
    return sorted(out, key=lambda t: (len(t[0]), t))


def canonical_tree_rep(Y: Sequence[Sequence[int]], pi: Sequence[int], e: int | None = None) -> BlockMatrix:
    r = len(Y) - 1
    return delta_matrix(Y, (1,), (1, r), (1,), pi, e)


def enumerate_tree_class(Y: Sequence[Sequence[int]], pi: Sequence[int], e: int | None = None) -> list[BlockMatrix]:
    r, _ = _check_Y(Y, e)
    y = [len(Y[s]) for s in range(1, r)]
    out = set()
    for iis, js in chain_data(y):
        ranges = [range(1, y[a - 1] + 1) for a in iis]
        for w in _product(ranges):
            out.add(delta_matrix(Y, iis, js, w, pi, e))
    return sorted(out)


def _product(ranges):
    if not ranges:
        yield ()
        return
    for x in ranges[0]:
        for rest in _product(ranges[1:]):
            yield (x,) + rest
