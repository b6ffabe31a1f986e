"""Command-line front end.

Exit codes: 0 success (or "yes"), 2 a definite "no" (not invertible, no
witness found, a failed self-check), 1 bad input or an internal error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .brauer import brauer_complex
from .classfun import ClassFunction, cfb_basis, constraint_rows, omega
from .groups import FiniteGroup, build_group, conjugacy_classes_of_subgroups, sylow_classes
from .io import (
    classfun_from_doc,
    complex_to_doc,
    dumps,
    load_complex,
    parse_subgroup,
    read_json,
    save_complex,
    write_json,
)
from .picard import generator_complex, marks
from .search import Budget, realize_search
from .selfcheck import default_prime, run_suite


def _prime(G: FiniteGroup, args) -> int:
    return args.p if args.p else default_prime(G)


def _class_lines(G: FiniteGroup, p: int) -> list[str]:
    syl = set(sylow_classes(G, p))
    out = []
    for i, c in enumerate(conjugacy_classes_of_subgroups(G, p)):
        tag = " Sylow" if i in syl else ""
        out.append(f"  [{i}] {c.representative.label} order={c.order} conjugates={len(c.members)}{tag}")
    return out


def cmd_group(args) -> int:
    G = build_group(args.group)
    p = _prime(G, args)
    print(f"group {G.name or '(unnamed)'}")
    print(f"order {G.order}")
    print(f"subgroups {len(G.subgroups)}")
    classes = conjugacy_classes_of_subgroups(G, p)
    print(f"{p}-subgroup classes {len(classes)}")
    print("\n".join(_class_lines(G, p)))
    return 0


def cmd_subgroups(args) -> int:
    G = build_group(args.group)
    classes = conjugacy_classes_of_subgroups(G)
    print(f"subgroup classes {len(classes)}")
    for i, c in enumerate(classes):
        members = " ".join(S.label for S in c.members)
        print(f"  [{i}] order={c.order} {members}")
    return 0


def cmd_cfb(args) -> int:
    G = build_group(args.group)
    p = _prime(G, args)
    L = cfb_basis(G, p)
    print("classes")
    print("\n".join(_class_lines(G, p)))
    print("constraints")
    for row, m in constraint_rows(G, p):
        rel = "= 0" if m == 0 else f"= 0 mod {m}"
        print(f"  {list(row)} . h {rel}")
    print(f"rank {L.rank}")
    if L.index:
        print(f"index {L.index}")
    else:
        print("index (not full rank)")
    print("basis")
    for b in L.basis:
        print(f"  {list(b)}")
    return 0


def cmd_omega(args) -> int:
    G = build_group(args.group)
    p = _prime(G, args)
    for i, c in enumerate(conjugacy_classes_of_subgroups(G, p)):
        print(f"omega[{i}] {c.representative.label}: {list(omega(G, p, c).values)}")
    return 0


def cmd_marks(args) -> int:
    rep = marks(load_complex(args.complex))
    print("\n".join(rep.lines()))
    return 0


def cmd_invertible(args) -> int:
    rep = marks(load_complex(args.complex))
    if rep.invertible:
        print(f"invertible, lambda={list(rep.class_function.values)}")
        return 0
    print(f"not invertible, witness {rep.witness.label}")
    return 2


def cmd_gens(args) -> int:
    G = build_group(args.group)
    p = _prime(G, args)
    out = Path(args.o or ".")
    out.mkdir(parents=True, exist_ok=True)
    for i, c in enumerate(conjugacy_classes_of_subgroups(G, p)):
        path = out / f"gen_{i}.json"
        save_complex(path, generator_complex(G, p, c))
        print(f"{path} P={c.representative.label}")
    return 0


def cmd_brauer(args) -> int:
    X = load_complex(args.complex)
    H = parse_subgroup(X.group, args.subgroup, X.p)
    doc = complex_to_doc(brauer_complex(X, H).complex)
    if args.o:
        write_json(args.o, doc)
    else:
        print(dumps(doc))
    return 0


def _target(G: FiniteGroup, p: int, text: str) -> ClassFunction:
    if Path(text).is_file():
        return classfun_from_doc(read_json(text), G)
    return ClassFunction(G, p, tuple(int(v) for v in text.split(",")))


def cmd_realize(args) -> int:
    G = build_group(args.group)
    p = _prime(G, args)
    target = _target(G, p, args.target)
    budget = Budget.parse(args.budget, G, seed=args.seed)
    res = realize_search(target, budget)
    scope = "exhaustive" if res.exhaustive else "partial"
    print(f"target {list(target.values)}")
    print(f"searched {res.configurations} configurations, {res.candidates} candidate maps ({scope})")
    if res.witness is None:
        print("none within budget")
        return 2
    print(f"found complex with dims {res.witness.dims()}")
    if args.o:
        save_complex(args.o, res.witness)
    else:
        print(dumps(complex_to_doc(res.witness)))
    return 0


def cmd_check(args) -> int:
    failed = 0
    for name in args.groups:
        G = build_group(name)
        p = args.p or default_prime(G)
        print(f"{G.name} (p={p})")
        for c in run_suite(G, p):
            print(f"  {c.line()}")
            failed += not c.ok
    print("all checks passed" if not failed else f"{failed} checks failed")
    return 0 if not failed else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="endotriv", description="Permutation complexes, Brauer quotients and h-marks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, group=True, complex_file=False):
        sp = sub.add_parser(name, help=help_text)
        if group:
            sp.add_argument("group", help="catalog name (C4, D8, Q8, V4, C3xC3, ...) or group JSON file")
        if complex_file:
            sp.add_argument("complex", help="complex JSON file")
        sp.add_argument("-p", type=int, default=None, help="prime (default: the prime of a p-group)")
        sp.set_defaults(func=fn)
        return sp

    add("group", cmd_group, "order, subgroup count and p-subgroup classes")
    add("subgroups", cmd_subgroups, "all conjugacy classes of subgroups")
    add("cfb", cmd_cfb, "the Borel-Smith lattice of class functions")
    add("omega", cmd_omega, "indicator class functions of the p-subgroup classes")
    add("marks", cmd_marks, "Brauer-quotient homology of a complex", group=False, complex_file=True)
    add("invertible", cmd_invertible, "invertibility test (exit 0 yes, 2 no)", group=False, complex_file=True)
    sp = add("gens", cmd_gens, "write every generator complex to a directory")
    sp.add_argument("-o", help="output directory")
    sp = add("brauer", cmd_brauer, "Brauer quotient of a complex at a subgroup", group=False, complex_file=True)
    sp.add_argument("subgroup", help="label such as {0,2} or a p-subgroup class index")
    sp.add_argument("-o", help="output file")
    sp = add("realize", cmd_realize, "search for an invertible complex with given h-marks")
    sp.add_argument("target", help="comma-separated values or a class-function JSON file")
    sp.add_argument("--budget", default="", help="e.g. degrees=3,summands=2,classes=0:1:5,candidates=100000")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", help="output file for the witness")
    sp = sub.add_parser("check", help="run the invariant suites")
    sp.add_argument("groups", nargs="+")
    sp.add_argument("-p", type=int, default=None)
    sp.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:  # GroupError, FormatError, ComplexError included
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # internal failures still follow the exit-code contract
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
