"""Command-line front end: ``coreblocks {info,decomp,trees,verify}``."""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import Callable, Sequence

from .core_combinatorics import (
    ContractError,
    MalformedBeta,
    Multicharge,
    ParseError,
    format_multipartition,
    is_kleshchev,
    make_multipartition,
    mp_size,
    parse_multipartition,
    residue_content,
)
from .fock_engine import DEFAULT_BUDGET, DecompMatrix, SearchBudgetExhausted, block_decomposition_matrix, matrix_is_kleshchev
from .closed_formulas import classify_r4, classify_weight2, column_r4_matrix, column_weight2_matrix
from .block_geometry import (
    BlockMatrix,
    ClassOverflow,
    PrecOrder,
    block_class,
    canonical_tree_rep,
    check_base,
    enumerate_tree_class,
    from_core_parameters,
    is_decomposable,
    matrix_weight,
    parse_matrix,
    to_core_parameters,
    tree_classify,
    weight,
    weight_graph,
)
from .verification import merge_reports, verify_hook_relation, verify_invariants, verify_r4, verify_weight2

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


# ------------------------------------------------------------------ inputs

def _int_list(text: str, what: str) -> tuple[int, ...]:
    out = []
    pos = 0
    for tok in text.split(","):
        try:
            out.append(int(tok))
        except ValueError:
            raise InputError(f"{what}: bad integer {tok.strip()!r} (column {pos + 1})") from None
        pos += len(tok) + 1
    return tuple(out)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def read_input(args) -> tuple[Multicharge, tuple, tuple[int, ...] | None, BlockMatrix | None]:
    """Resolve the single input form to (mc, lam, B, M); B, M are None off core blocks."""
    data = _load_json(args.json_input) if getattr(args, "json_input", None) else None
    if data is not None:
        if "bits" in data:
            m = BlockMatrix.from_json(data)
            base = tuple(data["base"]) if data.get("base") is not None else None
            return _from_pair(base, m)
        if "multipartition" in data:
            charges = data.get("multicharge", data.get("charge"))
            if charges is None or "e" not in data:
                raise InputError("JSON input needs 'e' and 'multicharge'")
            return _from_mp(make_multipartition(data["multipartition"]), tuple(charges), int(data["e"]))
        raise InputError("JSON input must hold a multipartition or a block matrix")
    has_mp = args.mp is not None
    has_mat = args.matrix is not None
    if has_mp == has_mat:
        raise InputError("give exactly one of --mp (with --charge) or --matrix (with --base)")
    if has_mp:
        if args.charge is None or args.e is None:
            raise InputError("--mp needs --e and --charge")
        try:
            lam = parse_multipartition(args.mp)
        except ParseError as exc:
            raise InputError(f"--mp: {exc}") from None
        return _from_mp(lam, _int_list(args.charge, "--charge"), args.e)
    m = parse_matrix(args.matrix, args.e)
    base = _int_list(args.base, "--base") if args.base is not None else None
    return _from_pair(base, m)


def _from_mp(lam, charges, e):
    mc = Multicharge(charges, e)
    if len(lam) != mc.r:
        raise InputError(f"multipartition has {len(lam)} components but the multicharge has {mc.r}")
    got = to_core_parameters(lam, mc)
    if got is None:
        return mc, lam, None, None
    return mc, lam, got[0], got[1]


def _from_pair(base, m):
    if base is not None:
        base = check_base(base)
        if len(base) != m.e:
            raise InputError(f"--base has {len(base)} entries but e={m.e}")
    mc, lam = from_core_parameters(base, m)
    return mc, lam, base, m


# -------------------------------------------------------------------- info

def block_info(mc: Multicharge, lam, base, m) -> dict:
    info: dict = {
        "e": mc.e,
        "multicharge": list(mc.charges),
        "multipartition": [list(p) for p in lam],
        "size": mp_size(lam),
        "residue_content": {str(i): c for i, c in sorted(residue_content(lam, mc).items())},
        "weight": weight(lam, mc),
        "kleshchev": is_kleshchev(lam, mc),
        "core_block": m is not None,
    }
    if m is None:
        return info
    info["base"] = list(base) if base is not None else None
    info["prec_order"] = list(PrecOrder.from_base(base).pi) if base is not None and m.e >= 2 else None
    info["matrix"] = [list(r) for r in m.bits]
    info["weight_graph"] = weight_graph(m).to_json()
    info["decomposable"] = is_decomposable(m) is not None
    tc = tree_classify(m)
    info["tree"] = tc.to_json() if tc is not None else None
    lab = classify_weight2(m) or classify_r4(m)
    info["label"] = lab.name() if lab is not None else None
    return info


def render_info(info: dict) -> str:
    lam = tuple(tuple(p) for p in info["multipartition"])
    lines = [
        f"multipartition  {format_multipartition(lam)}",
        f"e={info['e']}  multicharge=({','.join(map(str, info['multicharge']))})  n={info['size']}",
        "residues        " + " ".join(f"{i}:{c}" for i, c in info["residue_content"].items()),
        f"weight          {info['weight']}",
        f"kleshchev       {'yes' if info['kleshchev'] else 'no'}",
        f"core block      {'yes' if info['core_block'] else 'no'}",
    ]
    if not info["core_block"]:
        return "\n".join(lines)
    if info["base"] is not None:
        lines.append(f"B               ({','.join(map(str, info['base']))})")
    if info["prec_order"] is not None:
        lines.append(f"column order    {' '.join(map(str, info['prec_order']))}")
    lines.append("M")
    lines.extend("  " + " ".join(map(str, row)) for row in info["matrix"])
    edges = info["weight_graph"]["edges"]
    graph = ", ".join(f"{x['s']}-{x['t']}" + (f"(x{x['multiplicity']})" if x["multiplicity"] > 1 else "")
                      for x in edges)
    lines.append(f"weight graph    {graph or 'no edges'}")
    if info["decomposable"]:
        lines.append("decomposable    yes")
    tree = info["tree"]
    if tree is not None:
        ys = "|".join(",".join(map(str, s)) or "-" for s in tree["Y"])
        lines.append(f"tree            Y={ys} pi={','.join(map(str, tree['pi']))}")
    if info["label"]:
        lines.append(f"label           {info['label']}")
    return "\n".join(lines)


# ------------------------------------------------------------------ decomp

def _formula_fn(base, m0: BlockMatrix) -> Callable:
    if classify_weight2(m0) is not None:
        fn = column_weight2_matrix
    elif classify_r4(m0) is not None:
        fn = column_r4_matrix
    else:
        raise InputError("no closed formula covers this block")

    def column(m: BlockMatrix) -> dict:
        return {from_core_parameters(base, mm)[1]: c for mm, c in fn(m).items()}

    return column


def _label_names(d: DecompMatrix) -> list[str] | None:
    names = []
    for m in d.row_matrices:
        lab = classify_weight2(m) or classify_r4(m)
        if lab is None:
            return None
        names.append(lab.name())
    return names


def decomp_matrix(base, m: BlockMatrix, method: str = "induction", budget: int = DEFAULT_BUDGET) -> DecompMatrix:
    fn = _formula_fn(base, m) if method == "formula" else None
    d = block_decomposition_matrix(base, m, budget, fn)
    d.row_names = _label_names(d)
    return d


# ------------------------------------------------------------------- trees

def tree_shapes(r: int, e: int, y_max: int):
    """(Y, pi) with Y_0..Y_{r-1} partitioning the e runners, Y_r empty."""
    for assign in itertools.product(range(r), repeat=e):
        Y = [[] for _ in range(r + 1)]
        for c, s in enumerate(assign):
            Y[s].append(c)
        if not Y[1] or not Y[r - 1]:
            continue
        if any(len(Y[s]) > y_max for s in range(1, r)):
            continue
        for pi in itertools.permutations(range(r)):
            yield tuple(tuple(s) for s in Y), pi


def tree_classes(r: int, e: int, y_max: int) -> list[dict]:
    if r < 2 or e < 2:
        raise InputError("trees need r >= 2 and e >= 2")
    seen = set()
    out = []
    for Y, pi in tree_shapes(r, e, y_max):
        members = frozenset(enumerate_tree_class(Y, pi, e))
        if members in seen:
            continue
        seen.add(members)
        rep = canonical_tree_rep(Y, pi, e)
        out.append({
            "Y": [list(s) for s in Y],
            "pi": [p + 1 for p in pi],
            "y": [len(Y[s]) for s in range(1, r)],
            "representative": [list(row) for row in rep.bits],
            "weight": matrix_weight(rep),
            "size": len(members),
            "kleshchev": sum(1 for mm in members if matrix_is_kleshchev(mm)),
        })
    return out


def render_trees(classes: list[dict]) -> str:
    lines = []
    for c in classes:
        ys = "|".join(",".join(map(str, s)) or "-" for s in c["Y"])
        rep = ";".join("".join(map(str, row)) for row in c["representative"])
        lines.append(f"Y={ys:<16} pi={','.join(map(str, c['pi']))}  N=[{rep}]  "
                     f"weight={c['weight']} size={c['size']} kleshchev={c['kleshchev']}")
    lines.append(f"{len(classes)} classes")
    return "\n".join(lines)


# ------------------------------------------------------------------ parser

def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--e", type=int, help="quantum characteristic e (0 or >= 2)")
    p.add_argument("--charge", help="multicharge as a comma list, e.g. 0,1,2")
    p.add_argument("--mp", help="multipartition, e.g. '-|2,1|1,1,1'")
    p.add_argument("--base", help="base tuple B as a comma list")
    p.add_argument("--matrix", help="0/1 matrix, rows separated by ';', e.g. '0101;1100'")
    p.add_argument("--json-input", metavar="FILE", help="read the input from a JSON file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coreblocks",
                                 description="Graded decomposition numbers of core blocks.")
    sub = ap.add_subparsers(dest="command", required=True)
    fmt = dict(choices=("text", "json"), default="text")

    p = sub.add_parser("info", help="summarise a multipartition or block matrix")
    _add_input(p)
    p.add_argument("--format", **fmt)
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("decomp", help="decomposition matrix of the block")
    _add_input(p)
    p.add_argument("--method", choices=("induction", "formula"), default="induction")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", **fmt)
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("trees", help="enumerate tree-block classes")
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--e", type=int, default=4)
    p.add_argument("--y-max", type=int, default=2)
    p.add_argument("--format", **fmt)
    p.add_argument("--out", metavar="FILE")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=("weight2", "r4", "invariants", "hook", "all"))
    p.add_argument("--e-max", type=int, default=None)
    p.add_argument("--y-max", type=int, default=2)
    p.add_argument("--sample", type=int, default=60, help="r=4 block shapes per e (0 = exhaustive)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", **fmt)
    p.add_argument("--out", metavar="FILE", help="write the JSON report here")
    return ap


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _run_verify(args) -> int:
    reports = []
    if args.suite in ("weight2", "all"):
        reports.append(verify_weight2(range(3, (args.e_max or 6) + 1), args.y_max, args.budget))
    if args.suite in ("r4", "all"):
        reports.append(verify_r4(range(5, (args.e_max or 8) + 1), args.y_max,
                                 args.sample or None, args.seed, args.budget))
    if args.suite in ("invariants", "all"):
        reports.append(verify_invariants(args.seed, budget=args.budget))
    if args.suite in ("hook", "all"):
        reports.append(verify_hook_relation(range(3, (args.e_max or 6) + 1), args.y_max))
    rep = reports[0] if len(reports) == 1 else merge_reports("all", reports)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rep.dumps() + "\n")
    print(rep.dumps() if args.format == "json" and not args.out else rep.summary())
    return EXIT_OK if rep.ok else EXIT_FAIL


def _run(args) -> int:
    if args.command == "verify":
        return _run_verify(args)
    if args.command == "trees":
        classes = tree_classes(args.r, args.e, args.y_max)
        _emit(json.dumps(classes, indent=2) if args.format == "json" else render_trees(classes), args.out)
        return EXIT_OK
    if args.command == "decomp" and args.json_input:
        data = _load_json(args.json_input)
        if "entries" in data:
            d = DecompMatrix.from_json(data)
            _emit(json.dumps(d.to_json(), indent=2) if args.format == "json" else d.render(), args.out)
            return EXIT_BUDGET if d.failed else EXIT_OK
    mc, lam, base, m = read_input(args)
    if args.command == "info":
        info = block_info(mc, lam, base, m)
        _emit(json.dumps(info, indent=2) if args.format == "json" else render_info(info), args.out)
        return EXIT_OK
    if m is None:
        raise InputError(f"{format_multipartition(lam)} does not lie in a core block")
    d = decomp_matrix(base, m, args.method, args.budget)
    _emit(json.dumps(d.to_json(), indent=2) if args.format == "json" else d.render(), args.out)
    return EXIT_BUDGET if d.failed else EXIT_OK


def _glue_values(argv: list[str]) -> list[str]:
    # "--mp -|2,1|1" would otherwise read the value as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--mp", "--matrix", "--charge", "--base"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_glue_values(argv))
    try:
        return _run(args)
    except (InputError, ParseError, MalformedBeta, ContractError, ClassOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SearchBudgetExhausted as exc:
        print(f"error: search budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
