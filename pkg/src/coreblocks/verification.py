"""Cross-checks between the closed formulas, the induction engine and
brute-force oracles, collected into deterministic JSON reports."""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Callable, Iterable, Sequence

from .core_combinatorics import (
    Multicharge,
    is_core,
    is_kleshchev_greedy,
    multipartitions,
    partitions,
    remove_rim_hook,
    rim_hooks,
)
from .fock_engine import (
    DEFAULT_BUDGET,
    FockVector,
    MATRIX_BASIS,
    SearchBudgetExhausted,
    apply_f_sequence,
    canonical_column,
    check_column_invariants,
    compute_column_matrix,
    expand_g_to_f_sequence,
    f_divided,
    g_divided,
    matrix_is_kleshchev,
)
from .closed_formulas import (
    TableDataError,
    block_labels,
    classify_r4,
    classify_weight2,
    column_r4_matrix,
    column_weight2_matrix,
    d_via_mt2,
    hook_relation,
    hook_relation_diagram,
    kleshchev_r4,
    kleshchev_weight2,
    r4_family,
    r4_shapes,
    weight2_blocks,
)
from .block_geometry import (
    BlockMatrix,
    block_class,
    enumerate_tree_class,
    from_core_parameters,
    is_tree,
    pair_weight,
    tree_classify,
    weight,
)
from .laurent import ONE, ZERO, LaurentPoly, quantum_factorial

PASS, FAIL, SKIP = "pass", "fail", "skipped"


@dataclass
class VerificationReport:
    """Pass counts per check, plus full records for every failure and skip."""

    suite: str
    params: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    skips: list = field(default_factory=list)
    findings: dict = field(default_factory=dict)

    def record(self, check: str, ok: bool, subject: str = "", detail: str = "",
               payload: dict | None = None) -> bool:
        status = PASS if ok else FAIL
        self._bump(check, status)
        if not ok:
            self.failures.append({"check": check, "subject": subject, "detail": detail,
                                  "payload": payload or {}})
        return ok

    def skip(self, check: str, subject: str, reason: str, payload: dict | None = None) -> None:
        self._bump(check, SKIP)
        self.skips.append({"check": check, "subject": subject, "reason": reason,
                           "payload": payload or {}})

    def note(self, key: str, value) -> None:
        self.findings[key] = value

    def _bump(self, check: str, status: str) -> None:
        slot = self.counts.setdefault(check, {PASS: 0, FAIL: 0, SKIP: 0})
        slot[status] += 1

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"suite": self.suite, "params": self.params, "ok": self.ok,
                "counts": self.counts, "failures": self.failures,
                "skips": self.skips, "findings": self.findings}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def summary(self) -> str:
        lines = [f"[{'PASS' if self.ok else 'FAIL'}] {self.suite} {json.dumps(self.params, sort_keys=True)}"]
        for check in sorted(self.counts):
            c = self.counts[check]
            lines.append(f"  {check:<28} pass={c[PASS]} fail={c[FAIL]} skipped={c[SKIP]}")
        for f in self.failures[:10]:
            lines.append(f"  FAIL {f['check']}: {f['subject']} {f['detail']}")
        if len(self.failures) > 10:
            lines.append(f"  ... {len(self.failures) - 10} more failures")
        for key in sorted(self.findings):
            lines.append(f"  finding {key}: {json.dumps(self.findings[key], sort_keys=True)}")
        return "\n".join(lines)


def merge_reports(suite: str, reports: Iterable[VerificationReport]) -> VerificationReport:
    out = VerificationReport(suite)
    for rep in reports:
        out.params[rep.suite] = rep.params
        for check, c in rep.counts.items():
            for status, n in c.items():
                out.counts.setdefault(f"{rep.suite}.{check}", {PASS: 0, FAIL: 0, SKIP: 0})[status] += n
        out.failures += [dict(f, check=f"{rep.suite}.{f['check']}") for f in rep.failures]
        out.skips += [dict(s, check=f"{rep.suite}.{s['check']}") for s in rep.skips]
        for k, v in rep.findings.items():
            out.findings[f"{rep.suite}.{k}"] = v
    return out


def _mp_json(mu) -> list:
    return [list(p) for p in mu]


def _col_json(col: dict) -> list:
    return [{"label": str(m) if isinstance(m, BlockMatrix) else _mp_json(m), "poly": c.to_json()}
            for m, c in sorted(col.items(), key=lambda t: str(t[0]))]


def _to_partitions(col: dict, base: Sequence[int]) -> dict:
    return {from_core_parameters(base, m)[1]: c for m, c in col.items()}


# ------------------------------------------------------------------ weight 2

def verify_weight2(e_range: Iterable[int], yz_max: int | None = 2, budget: int = DEFAULT_BUDGET,
                   column_fn: Callable[[BlockMatrix], dict] | None = None,
                   mt2: bool = True) -> VerificationReport:
    """Exhaustive comparison over every weight-2 block (all u) with e in e_range.

    column_fn replaces the closed-form column (used for fault injection)."""
    e_list = sorted(set(e_range))
    rep = VerificationReport("weight2", {"e": e_list, "yz_max": yz_max, "budget": budget})
    formula = column_fn or column_weight2_matrix
    blocks = 0
    for e in e_list:
        base = (0,) * e
        for u, Y, Z in weight2_blocks(e, yz_max):
            blocks += 1
            labs = block_labels(u, Y, Z, e)
            y, z = len(Y) - 1, len(Z) - 1
            where = f"e={e} u={u} Y={list(Y)} Z={list(Z)}"
            mats = {lab.matrix(): lab for lab in labs}
            cls = block_class(labs[0].matrix())
            rep.record("census", len(cls) == (y + 2) * (z + 2) - 1 and set(cls) == set(mats), where,
                       f"class size {len(cls)}, labels {len(mats)}")
            klesh = [lab for lab in labs if kleshchev_weight2(lab)]
            rep.record("kleshchev_count", len(klesh) == (y + 1) * (z + 1), where,
                       f"{len(klesh)} Kleshchev labels")
            mps = {lab: from_core_parameters(base, lab.matrix()) for lab in labs}
            mc = mps[labs[0]][0]
            for lab in labs:
                m = lab.matrix()
                subject = f"{where} {lab.name()}"
                back = classify_weight2(m)
                rep.record("classification", back is not None and back.matrix() == m, subject,
                           f"classified as {back.name() if back else None}")
                rep.record("kleshchev", kleshchev_weight2(lab) == matrix_is_kleshchev(m), subject,
                           payload={"matrix": m.to_json(base)})
            for lab in klesh:
                m = lab.matrix()
                subject = f"{where} {lab.name()}"
                try:
                    got = compute_column_matrix(m, budget)
                except SearchBudgetExhausted as exc:
                    rep.skip("column", subject, str(exc), {"matrix": m.to_json(base)})
                    continue
                want = formula(m)
                rep.record("column", want == got, subject, "closed form differs from induction",
                           {"matrix": m.to_json(base), "formula": _col_json(want), "induction": _col_json(got)})
                col = _to_partitions(got, base)
                lam = mps[lab][1]
                problems = check_column_invariants(col, lam, 2)
                rep.record("mullconj", not problems, subject, "; ".join(problems))
                if not mt2:
                    continue
                partner = max(col, key=lambda mu: (col[mu].max_degree(), mu))
                bad = [mps[other][1] for other in labs
                       if d_via_mt2(mps[other][1], lam, partner, mc) != col.get(mps[other][1], ZERO)]
                rep.record("mt2", not bad, subject, f"{len(bad)} entries differ",
                           {"matrix": m.to_json(base), "rows": [_mp_json(b) for b in bad]})
    rep.params["blocks"] = blocks
    return rep


# ------------------------------------------------------------------ r = 4

def _shared_components(a: BlockMatrix, b: BlockMatrix, positional: bool) -> int:
    if positional:
        return sum(x == y for x, y in zip(a.bits, b.bits))
    return sum((Counter(a.bits) & Counter(b.bits)).values())


def _check_r4_label(rep: VerificationReport, lab, budget: int, tally: Counter, examples: list) -> None:
    m = lab.matrix()
    base = (0,) * m.width
    subject = f"e={lab.e} Y={[list(s) for s in lab.Y]} {lab.name()}"
    rep.record("classification", classify_r4(m) == lab, subject)
    klesh = kleshchev_r4(lab)
    if not rep.record("kleshchev", klesh == matrix_is_kleshchev(m), subject,
                      payload={"matrix": m.to_json(base)}):
        return
    if not klesh:
        return
    try:
        got = compute_column_matrix(m, budget)
    except SearchBudgetExhausted as exc:
        rep.skip("column", subject, str(exc), {"matrix": m.to_json(base)})
        return
    try:
        want = column_r4_matrix(m)
    except TableDataError as exc:
        rep.record("column", False, subject, str(exc), {"matrix": m.to_json(base)})
        return
    rep.record("column", want == got, subject, "tabulated column differs from induction",
               {"matrix": m.to_json(base), "table": _col_json(want), "induction": _col_json(got)})
    rep.record("ungraded_01", all(c.at_one() in (0, 1) for c in got.values()), subject)
    col = _to_partitions(got, base)
    lam = from_core_parameters(base, m)[1]
    problems = check_column_invariants(col, lam, 3)
    rep.record("mullconj", not problems, subject, "; ".join(problems))
    top = max(got, key=lambda k: (got[k].max_degree(), k))
    for mu in got:
        for positional in (True, False):
            key = "positional" if positional else "up_to_order"
            holds = (_shared_components(mu, m, positional) >= 2
                     or _shared_components(top, mu, positional) >= 2)
            tally[(key, holds)] += 1
            if not holds and sum(x["reading"] == key for x in examples) < 5:
                examples.append({"reading": key, "label": subject, "mu": str(mu),
                                 "lambda": str(m), "partner": str(top)})


def verify_r4(e_range: Iterable[int], y_max: int = 2, sample: int | None = 60, seed: int = 0,
              budget: int = DEFAULT_BUDGET, blocks: Iterable[BlockMatrix] | None = None) -> VerificationReport:
    """Tabulated four-component family against induction on sampled block shapes.

    With blocks given, each matrix is checked on its own and matrices outside
    the family are skipped."""
    e_list = sorted(set(e_range))
    rep = VerificationReport("r4", {"e": e_list, "y_max": y_max, "sample": sample, "seed": seed,
                                    "budget": budget})
    tally: Counter = Counter()
    examples: list = []
    if blocks is not None:
        mats = list(blocks)
        rep.params = {"explicit_blocks": len(mats), "budget": budget}
        for m in mats:
            lab = classify_r4(m)
            if lab is None:
                rep.skip("classification", str(m), "not in the four-component tree family")
                continue
            _check_r4_label(rep, lab, budget, tally, examples)
    else:
        n_blocks = 0
        for e in e_list:
            shapes = list(r4_shapes(e, y_max))
            if sample is not None and sample < len(shapes):
                shapes = random.Random(seed * 1009 + e).sample(shapes, sample)
            for Y in shapes:
                n_blocks += 1
                for lab in r4_family(Y, e):
                    _check_r4_label(rep, lab, budget, tally, examples)
        rep.params["blocks"] = n_blocks
    for key in ("positional", "up_to_order"):
        rep.note(f"two_equal_components.{key}",
                 {"holds": tally[(key, True)], "fails": tally[(key, False)]})
    if examples:
        rep.note("two_equal_components.examples", examples)
    return rep


# ----------------------------------------------------------- invariants

DEFAULT_SIZES = {
    "weight_hooks": 500,
    "multicore_r": 4,
    "multicore_e": 6,
    "multicore_n": 10,
    "nice_ind": 200,
    "divided_powers": 60,
    "ignore01": 60,
    "klesh_reduce_e": 5,
    "tree_r": 4,
    "tree_width": 7,
    "tree_ordered_width": 4,
    "oracle_columns": 400,
}


def _random_partition(rng: random.Random, n: int) -> tuple[int, ...]:
    parts = partitions(n)
    return parts[rng.randrange(len(parts))]


def _check_weight_hooks(rep: VerificationReport, rng: random.Random, count: int) -> None:
    done = 0
    while done < count:
        r = rng.randint(1, 4)
        e = rng.randint(2, 6)
        mc = Multicharge(tuple(rng.randrange(e) for _ in range(r)), e)
        lam = tuple(_random_partition(rng, rng.randint(0, 7)) for _ in range(r))
        s = rng.randrange(r)
        hooks = rim_hooks(lam[s], e)
        if not hooks:
            continue
        hook = hooks[rng.randrange(len(hooks))]
        mu = lam[:s] + (remove_rim_hook(lam[s], hook.cells),) + lam[s + 1:]
        w_lam, w_mu = weight(lam, mc), weight(mu, mc)
        subject = f"mc={mc.charges} e={e} lam={lam} component={s + 1}"
        rep.record("weight_nonnegative", w_lam >= 0 and w_mu >= 0, subject)
        rep.record("rim_hook_drop", w_lam - w_mu == r, subject, f"{w_lam} -> {w_mu}")
        if r == 1:
            rep.record("weight_r1", w_lam == _hook_weight(lam[0], e), subject)
        done += 1


def _hook_weight(lam: tuple[int, ...], e: int) -> int:
    n = 0
    while True:
        hooks = rim_hooks(lam, e)
        if not hooks:
            return n
        lam = remove_rim_hook(lam, hooks[0].cells)
        n += 1


def _check_multicores(rep: VerificationReport, r_max: int, e_max: int, n_max: int) -> None:
    """Multicore weight against the pairwise sum; charges normalised to a_1 = 0
    since a global residue shift fixes both sides."""
    for e in range(2, e_max + 1):
        cores = [(lam, sum(lam)) for n in range(n_max + 1) for lam in partitions(n) if is_core(lam, e)]
        pair_cache: dict = {}
        for r in range(2, r_max + 1):
            tally = 0
            ok = True
            first_bad = None
            for rest in product(range(e), repeat=r - 1):
                charges = (0,) + rest
                mc = Multicharge(charges, e)
                for combo in _core_tuples(cores, r, n_max):
                    total = 0
                    for s in range(r):
                        for t in range(s + 1, r):
                            key = (combo[s], charges[s], combo[t], charges[t])
                            if key not in pair_cache:
                                pair_cache[key] = pair_weight(combo[s], charges[s], combo[t], charges[t], e)
                            total += pair_cache[key]
                    tally += 1
                    if weight(combo, mc) != total and ok:
                        ok = False
                        first_bad = {"charges": list(charges), "multipartition": _mp_json(combo)}
            rep.record("multicore_pairwise", ok, f"e={e} r={r} cases={tally}", payload=first_bad)


def _core_tuples(cores, r: int, budget: int):
    if r == 0:
        yield ()
        return
    for lam, n in cores:
        if n <= budget:
            for rest in _core_tuples(cores, r - 1, budget - n):
                yield (lam,) + rest


def _random_matrix(rng: random.Random, r: int, e: int) -> BlockMatrix:
    while True:
        bits = tuple(tuple(rng.randint(0, 1) for _ in range(e)) for _ in range(r))
        m = BlockMatrix(bits, e)
        if m.is_reduced():
            return m


def _random_base(rng: random.Random, e: int, top: int = 3) -> tuple[int, ...]:
    b = [rng.randint(0, top) for _ in range(e)]
    b[rng.randrange(e)] = 0
    return tuple(b)


def _check_nice_ind(rep: VerificationReport, rng: random.Random, count: int) -> None:
    done = 0
    while done < count:
        r = rng.randint(1, 3)
        e = rng.randint(2, 5)
        L = _random_matrix(rng, r, e)
        base = _random_base(rng, e)
        i = rng.randint(1, e - 1)
        k = rng.randint(1, r)
        gvec = g_divided(FockVector.basis(L, MATRIX_BASIS), i, k)
        mc, lam = from_core_parameters(base, L)
        lhs = {from_core_parameters(base, m)[1]: c for m, c in gvec.items()}
        rhs = dict(apply_f_sequence(FockVector.basis(lam, mc=mc), expand_g_to_f_sequence(base, i, k)).items())
        rep.record("nice_ind", lhs == rhs, f"B={base} L={L} i={i} k={k}",
                   payload={"base": list(base), "matrix": L.to_json(), "i": i, "k": k})
        done += 1


def _check_divided_powers(rep: VerificationReport, rng: random.Random, count: int) -> None:
    for _ in range(count):
        r = rng.randint(1, 3)
        e = rng.choice([0, 2, 3, 4])
        mc = Multicharge(tuple(rng.randrange(e) if e else rng.randint(-2, 2) for _ in range(r)), e)
        n = rng.randint(0, 4)
        mps = multipartitions(n, r)
        lam = mps[rng.randrange(len(mps))]
        i = rng.randrange(e) if e else rng.randint(-4, 4)
        k = rng.randint(1, 3)
        vec = FockVector.basis(lam, mc=mc)
        single = vec
        for _ in range(k):
            single = f_divided(single, i, 1)
        divided = f_divided(vec, i, k).scale(quantum_factorial(k))
        rep.record("divided_powers", dict(single.items()) == dict(divided.items()),
                   f"mc={mc.charges} e={e} lam={lam} i={i} k={k}")


def _insert_column(m: BlockMatrix, pos: int, value: int) -> BlockMatrix:
    bits = tuple(row[:pos] + (value,) + row[pos:] for row in m.bits)
    return BlockMatrix(bits, m.e + 1 if m.e else 0, m.lo)


def _check_ignore01(rep: VerificationReport, rng: random.Random, count: int, budget: int) -> None:
    labs = [lab for e in (4, 5) for u, Y, Z in weight2_blocks(e, 1) for lab in block_labels(u, Y, Z, e)
            if kleshchev_weight2(lab)]
    for _ in range(count):
        lab = labs[rng.randrange(len(labs))]
        m = lab.matrix()
        pos = rng.randint(0, m.width)
        value = rng.randint(0, 1)
        bigger = _insert_column(m, pos, value)
        subject = f"{m} + column {value} at {pos}"
        try:
            small = compute_column_matrix(m, budget)
            big = compute_column_matrix(bigger, budget)
        except SearchBudgetExhausted as exc:
            rep.skip("ignore01", subject, str(exc))
            continue
        mapped = {_insert_column(k, pos, value): c for k, c in small.items()}
        rep.record("ignore01", mapped == big, subject)


def _check_klesh_reduce(rep: VerificationReport, rng: random.Random, e_max: int) -> None:
    for e in range(3, e_max + 1):
        seen: set = set()
        for u, Y, Z in weight2_blocks(e, None):
            for lab in block_labels(u, Y, Z, e):
                m = lab.matrix()
                if m in seen:
                    continue
                seen.add(m)
                ref = matrix_is_kleshchev(m)
                bases = [tuple(b) for b in product((0, 1), repeat=e) if 0 in b]
                bases += [_random_base(rng, e, 2) for _ in range(2)]
                bad = []
                for b in bases:
                    mc, lam = from_core_parameters(b, m)
                    if is_kleshchev_greedy(lam, mc) != ref:
                        bad.append(b)
                rep.record("klesh_reduce", not bad, f"e={e} {m}", f"{len(bad)} bases disagree",
                           {"bases": [list(b) for b in bad[:5]]})


def _allowed_columns(r: int) -> list[tuple[int, ...]]:
    return [c for c in product((0, 1), repeat=r) if sum(c) < r]


def _check_trees(rep: VerificationReport, r_max: int, width_max: int, ordered_width: int) -> None:
    """Tree parse exists exactly for tree weight graphs, and the enumerated
    class equals the bead-swap class.  The weight graph depends only on the
    multiset of columns, so multisets are covered exhaustively and full column
    orders up to ordered_width."""
    for r in range(2, r_max + 1):
        cols = _allowed_columns(r)
        for width in range(2, width_max + 1):
            agree = trees = class_ok = 0
            first_bad = None
            for combo in combinations_with_replacement(cols, width):
                m = BlockMatrix(tuple(tuple(c[s] for c in combo) for s in range(r)), width)
                tree = is_tree(m)
                tc = tree_classify(m)
                if (tc is not None) != tree:
                    first_bad = first_bad or {"matrix": str(m), "tree": tree}
                    continue
                agree += 1
                if tc is None:
                    continue
                trees += 1
                if set(enumerate_tree_class(tc.Y, tc.pi, width)) == set(block_class(m)):
                    class_ok += 1
                else:
                    first_bad = first_bad or {"matrix": str(m), "class": "mismatch"}
            rep.record("tree_classification", first_bad is None, f"r={r} width={width}",
                       f"agree={agree} trees={trees} classes={class_ok}", first_bad)
        for width in range(2, ordered_width + 1):
            bad = 0
            for combo in product(cols, repeat=width):
                m = BlockMatrix(tuple(tuple(c[s] for c in combo) for s in range(r)), width)
                if (tree_classify(m) is not None) != is_tree(m):
                    bad += 1
            rep.record("tree_classification_ordered", bad == 0, f"r={r} width={width}", f"{bad} disagree")


def _check_oracle(rep: VerificationReport, rng: random.Random, count: int, budget: int) -> None:
    """Induction columns against the independent canonical-basis computation."""
    pool = [lab for e in (4, 5) for u, Y, Z in weight2_blocks(e, 2) for lab in block_labels(u, Y, Z, e)]
    pool += [lab for Y in list(r4_shapes(5, 1)) for lab in r4_family(Y, 5)]
    cache: dict = {}
    for _ in range(count):
        lab = pool[rng.randrange(len(pool))]
        m = lab.matrix()
        base = (0,) * m.width
        mc, lam = from_core_parameters(base, m)
        subject = f"{lab.name()} {m}"
        try:
            got = compute_column_matrix(m, budget)
        except SearchBudgetExhausted as exc:
            rep.skip("canonical_basis", subject, str(exc))
            continue
        ref = canonical_column(lam, mc, cache.setdefault((mc.charges, mc.e), {}))
        if got is None:
            rep.record("canonical_basis", ref is None, subject)
            continue
        rep.record("canonical_basis", _to_partitions(got, base) == ref, subject)


def verify_invariants(seed: int = 0, sizes: dict | None = None,
                      budget: int = DEFAULT_BUDGET) -> VerificationReport:
    cfg = dict(DEFAULT_SIZES)
    cfg.update(sizes or {})
    rep = VerificationReport("invariants", {"seed": seed, "sizes": cfg})
    rng = random.Random(seed)
    _check_weight_hooks(rep, rng, cfg["weight_hooks"])
    _check_multicores(rep, cfg["multicore_r"], cfg["multicore_e"], cfg["multicore_n"])
    _check_nice_ind(rep, rng, cfg["nice_ind"])
    _check_divided_powers(rep, rng, cfg["divided_powers"])
    _check_ignore01(rep, rng, cfg["ignore01"], budget)
    _check_klesh_reduce(rep, rng, cfg["klesh_reduce_e"])
    _check_trees(rep, cfg["tree_r"], cfg["tree_width"], cfg["tree_ordered_width"])
    _check_oracle(rep, rng, cfg["oracle_columns"], budget)
    return rep


def verify_hook_relation(e_range: Iterable[int], yz_max: int | None = 2) -> VerificationReport:
    """Matrix criterion for the hook relation against the Young-diagram one."""
    e_list = sorted(set(e_range))
    rep = VerificationReport("hook_relation", {"e": e_list, "yz_max": yz_max})
    for e in e_list:
        base = (0,) * e
        for u, Y, Z in weight2_blocks(e, yz_max):
            labs = block_labels(u, Y, Z, e)
            mps = [from_core_parameters(base, lab.matrix()) for lab in labs]
            mc = mps[0][0]
            bad = [(a[1], b[1]) for a in mps for b in mps
                   if hook_relation(a[1], b[1], mc) != hook_relation_diagram(a[1], b[1])]
            rep.record("hook_relation", not bad, f"e={e} u={u} Y={list(Y)} Z={list(Z)}",
                       f"{len(bad)} pairs differ")
    return rep
