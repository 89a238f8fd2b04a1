"""Partitions, multipartitions, nodes, residues, beta-numbers and Kleshchev tests.

Partitions are plain tuples of positive integers and multipartitions are
tuples of partitions. Nodes are 1-based triples (component, row, column).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

Partition = tuple[int, ...]
Multipartition = tuple[Partition, ...]


class ContractError(ValueError):
    """An operation was called outside its documented precondition."""


class MalformedBeta(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", column: int | None = None):
        self.text = text
        self.column = column
        where = f" (column {column + 1})" if column is not None else ""
        super().__init__(message + where)


def make_partition(parts: Iterable[int]) -> Partition:
    ps = tuple(int(p) for p in parts)
    while ps and ps[-1] == 0:
        ps = ps[:-1]
    if any(p <= 0 for p in ps):
        raise ContractError(f"parts must be positive: {ps}")
    if any(ps[x] < ps[x + 1] for x in range(len(ps) - 1)):
        raise ContractError(f"parts must be weakly decreasing: {ps}")
    return ps


def make_multipartition(comps: Iterable[Iterable[int]]) -> Multipartition:
    return tuple(make_partition(c) for c in comps)


def size(lam) -> int:
    if lam and isinstance(lam[0], tuple):
        return sum(sum(c) for c in lam)
    return sum(lam)


def mp_size(lam: Multipartition) -> int:
    return sum(sum(c) for c in lam)


@dataclass(frozen=True)
class Multicharge:
    """Charges (a_1..a_r) together with the quantum characteristic e."""

    charges: tuple[int, ...]
    e: int

    def __post_init__(self):
        if self.e == 1 or self.e < 0:
            raise ContractError("e must be 0 or at least 2")
        object.__setattr__(self, "charges", tuple(int(a) for a in self.charges))
        if self.e >= 2 and any(not 0 <= a < self.e for a in self.charges):
            object.__setattr__(self, "charges", tuple(a % self.e for a in self.charges))

    @property
    def r(self) -> int:
        return len(self.charges)

    def reduce(self, x: int) -> int:
        return x % self.e if self.e else x

    def residues(self) -> Sequence[int]:
        return range(self.e) if self.e else ()


class Node(NamedTuple):
    s: int
    x: int
    y: int

    def above(self, other: "Node") -> bool:
        return self.s < other.s or (self.s == other.s and self.x < other.x)


def _order_key(node: Node) -> tuple[int, int]:
    return (node.s, node.x)


# ---------------------------------------------------------------- text forms

_PART_RE = re.compile(r"\s*(\d+)(?:\^(\d+))?\s*$")


def parse_partition(text: str, offset: int = 0, full: str | None = None) -> Partition:
    full = text if full is None else full
    t = text.strip()
    if t in ("-", "", "0", "∅"):
        return ()
    parts: list[int] = []
    pos = 0
    for chunk in text.split(","):
        m = _PART_RE.match(chunk)
        if not m:
            raise ParseError(f"bad part {chunk.strip()!r}", full, offset + pos)
        parts.extend([int(m.group(1))] * int(m.group(2) or 1))
        pos += len(chunk) + 1
    try:
        return make_partition(parts)
    except ContractError as exc:
        raise ParseError(str(exc), full, offset) from None


def parse_multipartition(text: str) -> Multipartition:
    """Parse the shell form, e.g. ``-|2,1|1,1,1`` or ``-|2,1|1^3``."""
    comps = []
    offset = 0
    for chunk in text.split("|"):
        comps.append(parse_partition(chunk, offset, text))
        offset += len(chunk) + 1
    return tuple(comps)


def format_partition(lam: Partition, exponents: bool = False) -> str:
    if not lam:
        return "-"
    if not exponents:
        return ",".join(str(p) for p in lam)
    out = []
    x = 0
    while x < len(lam):
        y = x
        while y < len(lam) and lam[y] == lam[x]:
            y += 1
        out.append(str(lam[x]) if y - x == 1 else f"{lam[x]}^{y - x}")
        x = y
    return ",".join(out)


def format_multipartition(lam: Multipartition, exponents: bool = False) -> str:
    return "|".join(format_partition(c, exponents) for c in lam)


# ------------------------------------------------------------------ dominance

def dominance_ge(mu: Multipartition, lam: Multipartition) -> bool:
    """True when mu dominates lam."""
    if len(mu) != len(lam) or mp_size(mu) != mp_size(lam):
        raise ContractError("dominance needs equal r and equal size")
    acc_mu = acc_lam = 0
    for a, b in zip(mu, lam):
        for z in range(max(len(a), len(b))):
            acc_mu += a[z] if z < len(a) else 0
            acc_lam += b[z] if z < len(b) else 0
            if acc_mu < acc_lam:
                return False
        # the "z = 0" prefix of the next component is covered by the totals
    return True


def dominance_gt(mu: Multipartition, lam: Multipartition) -> bool:
    return mu != lam and dominance_ge(mu, lam)


# ------------------------------------------------------------------- residues

def residue(node: Node, mc: Multicharge) -> int:
    s, x, y = node
    return mc.reduce(mc.charges[s - 1] - x + y)


def nodes_of(lam: Multipartition) -> list[Node]:
    return [Node(s + 1, x + 1, y + 1)
            for s, comp in enumerate(lam)
            for x, row in enumerate(comp)
            for y in range(row)]


def residue_content(lam: Multipartition, mc: Multicharge) -> dict[int, int]:
    out: dict[int, int] = {}
    for s, comp in enumerate(lam):
        a = mc.charges[s]
        for x, row in enumerate(comp, start=1):
            for y in range(1, row + 1):
                i = mc.reduce(a - x + y)
                out[i] = out.get(i, 0) + 1
    return out


# ------------------------------------------------------------------ beta sets

@dataclass(frozen=True)
class BetaSet:
    """Bead positions at or above ``floor``; every position below is full."""

    charge: int
    betas: tuple[int, ...]
    floor: int
    e: int = 0


def beta_set(lam: Partition, a: int, e: int = 0) -> BetaSet:
    """Canonical truncation: the floor is Ne with N maximal such that every
    position below Ne is a bead (for e = 0 the floor is the first gap)."""
    n = len(lam)
    present = {lam[j] - (j + 1) + a for j in range(n)}
    m = a - n
    for x in range(a - n, a + 1):
        if x not in present:
            m = x
            break
    floor = (m // e) * e if e else m
    betas = sorted((b for b in present if b >= floor), reverse=True)
    betas += [x for x in range(a - n - 1, floor - 1, -1)]
    return BetaSet(a, tuple(sorted(betas, reverse=True)), floor, e)


def partition_from_beta(b: BetaSet) -> Partition:
    betas = tuple(b.betas)
    if len(set(betas)) != len(betas):
        raise MalformedBeta("beta numbers must be distinct")
    if any(x < b.floor for x in betas):
        raise MalformedBeta("beta number below the floor")
    ordered = sorted(betas, reverse=True)
    count = len(ordered)
    if count != b.charge - b.floor:
        raise MalformedBeta("bead count does not match the charge")
    parts = [ordered[j] - b.charge + j + 1 for j in range(count)]
    return make_partition(parts)


def beta_numbers(lam: Partition, a: int, length: int) -> list[int]:
    """The first ``length`` beta-numbers (descending), padding with empty rows."""
    return [(lam[j] if j < len(lam) else 0) - (j + 1) + a for j in range(length)]


def partition_from_betas(betas: Iterable[int], a: int) -> Partition:
    ordered = sorted(betas, reverse=True)
    if len(set(ordered)) != len(ordered):
        raise MalformedBeta("beta numbers must be distinct")
    return make_partition(ordered[j] - a + j + 1 for j in range(len(ordered)))


# ---------------------------------------------------------- addable/removable

def addable_nodes(lam: Multipartition, mc: Multicharge, i: int | None = None) -> list[Node]:
    out = []
    for s, comp in enumerate(lam):
        a = mc.charges[s]
        for x in range(len(comp) + 1):
            row = comp[x] if x < len(comp) else 0
            if x == 0 or comp[x - 1] > row:
                node = Node(s + 1, x + 1, row + 1)
                if i is None or mc.reduce(a - node.x + node.y) == i:
                    out.append(node)
    return out


def removable_nodes(lam: Multipartition, mc: Multicharge, i: int | None = None) -> list[Node]:
    out = []
    for s, comp in enumerate(lam):
        a = mc.charges[s]
        for x in range(len(comp)):
            if x == len(comp) - 1 or comp[x + 1] < comp[x]:
                node = Node(s + 1, x + 1, comp[x])
                if i is None or mc.reduce(a - node.x + node.y) == i:
                    out.append(node)
    return out


def add_node(lam: Multipartition, node: Node) -> Multipartition:
    s, x, y = node
    comp = list(lam[s - 1])
    if x == len(comp) + 1 and y == 1:
        comp.append(1)
    elif x <= len(comp) and comp[x - 1] == y - 1 and (x == 1 or comp[x - 2] >= y):
        comp[x - 1] = y
    else:
        raise ContractError(f"{node} is not addable")
    return lam[: s - 1] + (tuple(comp),) + lam[s:]


def remove_node(lam: Multipartition, node: Node) -> Multipartition:
    s, x, y = node
    comp = list(lam[s - 1])
    if not (x <= len(comp) and comp[x - 1] == y and (x == len(comp) or comp[x] < y)):
        raise ContractError(f"{node} is not removable")
    comp[x - 1] -= 1
    return lam[: s - 1] + (make_partition(comp),) + lam[s:]


def normal_nodes(lam: Multipartition, mc: Multicharge, i: int) -> list[Node]:
    """Removable i-nodes A such that every addable i-node B below A is
    preceded (strictly between A and B) by more removable than addable i-nodes."""
    rem = removable_nodes(lam, mc, i)
    add = addable_nodes(lam, mc, i)
    seq = sorted([(n, -1) for n in rem] + [(n, +1) for n in add],
                 key=lambda t: _order_key(t[0]))
    out = []
    for pos, (node, kind) in enumerate(seq):
        if kind != -1:
            continue
        ok = True
        n_rem = n_add = 0
        for other, k2 in seq[pos + 1:]:
            if k2 == +1:
                if not n_rem > n_add:
                    ok = False
                    break
                n_add += 1
            else:
                n_rem += 1
        if ok:
            out.append(node)
    return out


def good_node(lam: Multipartition, mc: Multicharge, i: int) -> Node | None:
    normal = normal_nodes(lam, mc, i)
    return normal[0] if normal else None


def _present_residues(lam: Multipartition, mc: Multicharge) -> list[int]:
    return sorted({residue(n, mc) for n in removable_nodes(lam, mc)})


@lru_cache(maxsize=200_000)
def _kleshchev(lam: Multipartition, charges: tuple[int, ...], e: int) -> bool:
    if all(not c for c in lam):
        return True
    mc = Multicharge(charges, e)
    for i in _present_residues(lam, mc):
        g = good_node(lam, mc, i)
        if g is not None and _kleshchev(remove_node(lam, g), charges, e):
            return True
    return False


def is_kleshchev(lam: Multipartition, mc: Multicharge) -> bool:
    if len(lam) != mc.r:
        raise ContractError("multipartition and multicharge disagree on r")
    return _kleshchev(tuple(tuple(c) for c in lam), mc.charges, mc.e)


def is_kleshchev_greedy(lam: Multipartition, mc: Multicharge) -> bool:
    """Single good-node path, no backtracking.

    Good-node removal is a crystal operator and crystal components are closed
    under it, so any path decides the question; is_kleshchev stays the
    exhaustive reference."""
    if len(lam) != mc.r:
        raise ContractError("multipartition and multicharge disagree on r")
    lam = tuple(tuple(c) for c in lam)
    while any(lam):
        for i in _present_residues(lam, mc):
            g = good_node(lam, mc, i)
            if g is not None:
                lam = remove_node(lam, g)
                break
        else:
            return False
    return True


def is_e_restricted(lam: Partition, e: int) -> bool:
    parts = list(lam) + [0]
    return all(parts[x] - parts[x + 1] < e for x in range(len(parts) - 1))


# ---------------------------------------------------------------- N statistic

def n_statistic(sigma: Multipartition, lam: Multipartition, mc: Multicharge, i: int) -> int:
    """N_i(sigma, lam) for lam obtained from sigma by adding nodes of residue i."""
    sig_nodes = set(nodes_of(sigma))
    lam_nodes = set(nodes_of(lam))
    if not sig_nodes <= lam_nodes:
        raise ContractError("sigma is not contained in lam")
    added = lam_nodes - sig_nodes
    if not added or any(residue(n, mc) != i for n in added):
        raise ContractError("lam is not sigma plus nodes of residue i")
    add_l = addable_nodes(lam, mc, i)
    rem_s = removable_nodes(sigma, mc, i)
    total = 0
    for g in added:
        total += sum(1 for b in add_l if g.above(b))
        total -= sum(1 for b in rem_s if g.above(b))
    return total


# ------------------------------------------------------------------ rim hooks

class RimHook(NamedTuple):
    cells: frozenset  # of (row, column), 1-based
    leg: int


def _hook_from_beads(lam: Partition, bead: int, length: int, betas: list[int]) -> RimHook:
    new = sorted([b for b in betas if b != bead] + [bead - length], reverse=True)
    mu = partition_from_betas(new, 0)
    cells = _cells(lam) - _cells(mu)
    leg = sum(1 for b in betas if bead - length < b < bead)
    return RimHook(frozenset(cells), leg)


def _cells(lam: Partition) -> set[tuple[int, int]]:
    return {(x + 1, y + 1) for x, row in enumerate(lam) for y in range(row)}


def rim_hooks(lam: Partition, length: int | None = None) -> list[RimHook]:
    """All removable rim hooks, optionally of one length; leg = rows met - 1."""
    n = sum(lam)
    count = len(lam) + n + 1
    betas = beta_numbers(lam, 0, count)
    bead_set = set(betas)
    out = []
    for b in betas:
        lengths = [length] if length is not None else range(1, n + 1)
        for h in lengths:
            if h >= 1 and (b - h) not in bead_set and b - h >= -count:
                out.append(_hook_from_beads(lam, b, h, betas))
    out.sort(key=lambda hk: (min(c[0] for c in hk.cells), len(hk.cells)))
    return out


def _is_rim_hook(outer: Partition, cells: set) -> bool:
    # connected skew shape with no 2x2 square
    if not cells:
        return False
    for (x, y) in cells:
        if {(x + 1, y), (x, y + 1), (x + 1, y + 1)} <= cells:
            return False
    seen = set()
    stack = [next(iter(cells))]
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        x, y = c
        for d in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if d in cells and d not in seen:
                stack.append(d)
    return seen == cells


def _shape_from_cells(cells: set) -> Partition:
    rows: dict[int, int] = {}
    for x, y in cells:
        rows[x] = max(rows.get(x, 0), y)
    parts = [rows.get(x, 0) for x in range(1, max(rows, default=0) + 1)]
    return make_partition(parts)


def remove_rim_hook(lam: Partition, cells: Iterable[tuple[int, int]]) -> Partition:
    cells = set(cells)
    outer = _cells(lam)
    if not cells <= outer:
        raise ContractError("hook cells are not in the diagram")
    inner = outer - cells
    try:
        mu = _shape_from_cells(inner)
    except ContractError:
        raise ContractError("removal does not leave a partition") from None
    if _cells(mu) != inner or not _is_rim_hook(lam, cells):
        raise ContractError("cells do not form a removable rim hook")
    return mu


def add_rim_hook(lam: Partition, cells: Iterable[tuple[int, int]]) -> Partition:
    cells = set(cells)
    inner = _cells(lam)
    if cells & inner:
        raise ContractError("hook cells overlap the diagram")
    try:
        mu = _shape_from_cells(inner | cells)
    except ContractError:
        raise ContractError("addition does not give a partition") from None
    if _cells(mu) != inner | cells or not _is_rim_hook(mu, cells):
        raise ContractError("cells do not form an addable rim hook")
    return mu


def leg_length(cells: Iterable[tuple[int, int]]) -> int:
    rows = {x for x, _ in cells}
    return len(rows) - 1


def is_core(lam: Partition, e: int) -> bool:
    return e == 0 or not rim_hooks(lam, e)


# ------------------------------------------------------------- enumeration

def partitions(n: int, max_part: int | None = None) -> list[Partition]:
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def multipartitions(n: int, r: int) -> list[Multipartition]:
    if r == 0:
        return [()] if n == 0 else []
    out = []
    for m in range(n + 1):
        for head in partitions(m):
            for tail in multipartitions(n - m, r - 1):
                out.append((head,) + tail)
    return out


def subsets(items: Sequence, k: int):
    return combinations(items, k)
