"""Command-line driver.

Subcommands:
  e1         list the first-page basis per degree
  homology   homology table of the m-fold loop space (the second page)
  cobar      homology of the cobar construction on the space's coalgebra
  compare    three-way single-loop agreement report
  selftest   golden corpus + structural property suites

Output is deterministic byte-for-byte for a fixed configuration.  The
environment variable LOOPHOM_JOBS (default 1) caps the worker threads used
for independent per-degree rank computations.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import cobar as cobar_mod
from . import dgal, spaces
from .exactlin import FieldSpec, rank
from .freepn import FreeAlgebra
from .graded import homology_dimensions, homology_representatives
from .lie import AlgebraError


class CliError(Exception):
    pass


def _field(char: int) -> FieldSpec:
    try:
        return FieldSpec(char)
    except Exception as exc:
        raise CliError(str(exc))


def _load_space(path: str) -> spaces.SpacePresentation:
    try:
        with open(path) as fh:
            return spaces.loads(fh.read())
    except OSError as exc:
        raise CliError(f"cannot read presentation: {exc}")
    except spaces.SpaceError as exc:
        raise CliError(f"bad presentation file: {exc}")


def _jobs() -> int:
    try:
        return max(1, int(os.environ.get("LOOPHOM_JOBS", "1")))
    except ValueError:
        return 1


def _emit(payload: dict, fmt: str, out: str | None, table_lines) -> None:
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = "\n".join(table_lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _space_args(args) -> dict:
    kw = {"trunc": getattr(args, "trunc", None), "dim": getattr(args, "dim", None)}
    if args.family == "file":
        if not getattr(args, "presentation", None):
            raise CliError("--family file needs --presentation PATH")
        kw["space"] = _load_space(args.presentation)
    elif args.family in ("rp", "cp"):
        if kw["trunc"] is None:
            raise CliError(f"--family {args.family} needs --trunc N")
    elif args.family == "sphere":
        if kw["dim"] is None:
            raise CliError("--family sphere needs --dim D")
    else:
        raise CliError(f"unknown family {args.family!r}")
    return kw


def cmd_e1(args) -> int:
    f = _field(args.char)
    kw = _space_args(args)
    page = dgal.build_page(args.family, f, args.loops, args.max_dim, **kw)
    alg = FreeAlgebra(page.gens, args.max_dim)
    basis = alg.basis()
    degrees = []
    lines = [f"first page: {args.family} loops={args.loops} char={args.char}"]
    for k in range(1, args.max_dim + 1):
        labels = [alg.render_mono(m) for m in basis[k]]
        degrees.append({"degree": k, "dim": len(labels), "generators": labels})
        lines.append(f"  degree {k}: dim {len(labels)}")
        for lab in labels:
            lines.append(f"    {lab}")
    payload = {"space": args.family, "trunc": getattr(args, "trunc", None),
               "loops": args.loops, "characteristic": args.char,
               "degrees": degrees}
    _emit(payload, args.format, args.out, lines)
    return 0


def cmd_homology(args) -> int:
    f = _field(args.char)
    kw = _space_args(args)
    lo, hi = args.frm, args.to
    max_deg = hi + 1
    page, gd = dgal.build_gd(args.family, f, args.loops, max_deg, **kw)
    window = dgal.extend_and_assemble(page, gd, max_deg)
    alg = FreeAlgebra(page.gens, max_deg)
    basis = alg.basis()

    def row(k: int):
        reps = homology_representatives(window, k)
        labels = [alg.render({basis[k][i]: c for i, c in vec.items()})
                  for vec in reps]
        return {"degree": k, "dim": len(labels),
                "rank": rank(window.matrix(k), f), "generators": labels}

    jobs = _jobs()
    ks = list(range(lo, hi + 1))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            degrees = list(ex.map(row, ks))
    else:
        degrees = [row(k) for k in ks]
    lines = [f"homology: {args.family} loops={args.loops} char={args.char}"]
    for d in degrees:
        lines.append(f"  H_{d['degree']}: dim {d['dim']}")
        for lab in d["generators"]:
            lines.append(f"    {lab}")
    payload = {"space": args.family, "trunc": getattr(args, "trunc", None),
               "loops": args.loops, "characteristic": args.char,
               "degrees": degrees}
    _emit(payload, args.format, args.out, lines)
    return 0


def _space_for_cobar(args) -> spaces.SpacePresentation:
    f = _field(args.char)
    bound = args.to + 2
    if args.family == "rp":
        return spaces.rp_quotient(args.trunc, f, max_degree=bound)
    if args.family == "cp":
        return spaces.cp_quotient(args.trunc, f, max_degree=bound)
    if args.family == "sphere":
        return spaces.sphere(args.dim, f, max_degree=bound)
    if args.family == "file":
        return _load_space(args.presentation)
    raise CliError(f"unknown family {args.family!r}")


def cmd_cobar(args) -> int:
    sp = _space_for_cobar(args)
    try:
        c = cobar_mod.from_space(sp)
        dims = cobar_mod.cobar_homology(c, args.frm, args.to)
    except cobar_mod.CobarError as exc:
        raise CliError(str(exc))
    degrees = [{"degree": k, "dim": dims[k], "rank": 0, "generators": []}
               for k in range(args.frm, args.to + 1)]
    lines = [f"cobar homology: {args.family} char={args.char}"]
    for d in degrees:
        lines.append(f"  H_{d['degree']}: dim {d['dim']}")
    payload = {"space": args.family, "trunc": getattr(args, "trunc", None),
               "loops": 1, "characteristic": args.char, "degrees": degrees}
    _emit(payload, args.format, args.out, lines)
    return 0


def compare_report(family: str, trunc: int, char: int, hi: int,
                   corrupt: bool = False) -> tuple:
    """Three-way report: cobar vs word-count series vs the assembled page
    at one loop.  Returns (agree, first_bad_degree, table_rows)."""
    f = _field(char)
    if family == "rp":
        sp = spaces.rp_quotient(trunc, f, max_degree=hi + 2)
    elif family == "cp":
        sp = spaces.cp_quotient(trunc, f, max_degree=hi + 2)
    else:
        raise CliError("compare covers rp and cp")
    co = cobar_mod.cobar_homology(cobar_mod.from_space(sp), 1, hi)
    _, _, series = dgal.m1_presentation(family, trunc, hi)
    page, gd = dgal.build_gd(family, f, 1, hi + 1, trunc=trunc)
    if corrupt:
        # test hook: erase the top generator's image; the differential still
        # squares to zero (nothing below refers to it) but homology drifts
        images = dict(gd.images)
        for name in reversed(page.gens.names):
            if images.get(name):
                images[name] = {}
                break
        gd = dgal.GeneratorDifferential(images)
    window = dgal.extend_and_assemble(page, gd, hi + 1)
    e2 = homology_dimensions(window, 1, hi)
    rows = []
    first_bad = None
    for k in range(1, hi + 1):
        a, b, c = co[k], series.get(k, 0), e2[k]
        ok = a == b == c
        if not ok and first_bad is None:
            first_bad = k
        rows.append((k, a, b, c, ok))
    return first_bad is None, first_bad, rows


def cmd_compare(args) -> int:
    try:
        agree, bad, rows = compare_report(args.family, args.trunc, args.char,
                                          args.to, corrupt=args.corrupt)
    except dgal.ConfigError as exc:
        raise CliError(str(exc))
    lines = [f"single-loop three-way comparison: {args.family} trunc={args.trunc} "
             f"char={args.char} degrees 1..{args.to}"]
    lines.append("  degree  cobar  words  page")
    for k, a, b, c, ok in rows:
        mark = "" if ok else "   <-- differs"
        lines.append(f"  {k:>6}  {a:>5}  {b:>5}  {c:>4}{mark}")
    lines.append("AGREE" if agree else f"DISAGREE (first differing degree {bad})")
    payload = {"space": args.family, "trunc": args.trunc, "loops": 1,
               "characteristic": args.char,
               "agree": agree, "first_differing_degree": bad,
               "degrees": [{"degree": k, "cobar": a, "words": b, "page": c}
                           for k, a, b, c, _ in rows]}
    _emit(payload, args.format, args.out, lines)
    return 0 if agree else 1


GOLDEN_CONFIGS = [
    ("rp", 2, 2, 2, 1, 7),
    ("rp", 3, 3, 2, 1, 7),
    ("rp", 4, 4, 2, 1, 7),
    ("cp", 2, 4, 2, 1, 13),
    ("cp", 2, 4, 3, 1, 11),
]


def golden_payload(family: str, trunc: int, loops: int, char: int,
                   lo: int, hi: int) -> dict:
    f = _field(char)
    rows = dgal.e2_homology(family, f, loops, lo, hi, trunc=trunc)
    degrees = [{"degree": k, "dim": dim, "generators": labels}
               for k, dim, labels in rows]
    return {"space": family, "trunc": trunc, "loops": loops,
            "characteristic": char, "degrees": degrees}


def cmd_selftest(args) -> int:
    import importlib.resources as resources
    failures = []
    print("golden corpus:")
    for family, trunc, loops, char, lo, hi in GOLDEN_CONFIGS:
        name = f"{family}-{trunc}-{loops}-{char}.json"
        try:
            ref = json.loads(
                resources.files("loophom").joinpath("golden", name).read_text())
        except FileNotFoundError:
            failures.append(name)
            print(f"  {name}: MISSING")
            continue
        got = golden_payload(family, trunc, loops, char, lo, hi)
        ref.pop("_comment", None)
        ok = got == ref
        print(f"  {name}: {'ok' if ok else 'MISMATCH'}")
        if not ok:
            failures.append(name)
    print("differential squares to zero on the shipped configurations:")
    for family, trunc, loops, char, lo, hi in GOLDEN_CONFIGS:
        f = _field(char)
        page, gd = dgal.build_gd(family, f, loops, hi + 1, trunc=trunc)
        try:
            dgal.extend_and_assemble(page, gd, hi + 1)  # raises on failure
            print(f"  {family}-{trunc}-{loops}-{char}: ok")
        except Exception as exc:
            failures.append(f"dd-{family}-{trunc}-{loops}-{char}")
            print(f"  {family}-{trunc}-{loops}-{char}: FAIL {exc}")
    print("basis counts against the series oracle (degree <= 8):")
    from . import counting
    from .freepn import GeneratorSet
    for p, n in [(2, 1), (2, 2), (3, 3), (0, 1)]:
        f = _field(p)
        g = GeneratorSet(tuple(f"a_{i}" for i in range(1, 5)),
                         tuple(range(1, 5)), f, n)
        alg = FreeAlgebra(g, 8)
        pairs = [(alg.atom_degree(a), alg.atom_degree(a) % 2)
                 for a in alg.atoms()]
        want = counting.free_commutative_series(pairs, p, 8)
        got = [len(alg.basis()[d]) for d in range(9)]
        ok = want == got
        print(f"  char {p}, bracket degree {n}: {'ok' if ok else 'FAIL'}")
        if not ok:
            failures.append(f"basis-{p}-{n}")
    if failures:
        print(f"SELFTEST FAILED: {failures}")
        return 1
    print("SELFTEST PASSED")
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="loophom",
                                 description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add_common(p, loops=True, rng=False, maxdim=False):
        p.add_argument("--family", required=True,
                       choices=["rp", "cp", "sphere", "file"])
        p.add_argument("--trunc", type=int, help="skeleton index for rp/cp")
        p.add_argument("--dim", type=int, help="sphere dimension")
        p.add_argument("--presentation", help="space file for --family file")
        p.add_argument("--char", type=int, required=True,
                       help="field characteristic (0 or a prime)")
        if loops:
            p.add_argument("--loops", type=int, required=True)
        if rng:
            p.add_argument("--from", dest="frm", type=int, required=True)
            p.add_argument("--to", type=int, required=True)
        if maxdim:
            p.add_argument("--max-dim", dest="max_dim", type=int, required=True)
        p.add_argument("--format", choices=["table", "json"], default="table")
        p.add_argument("--out", help="write output to a file")

    p_e1 = sub.add_parser("e1", help="first-page basis listing")
    add_common(p_e1, loops=True, maxdim=True)

    p_h = sub.add_parser("homology", help="loop-space homology table")
    add_common(p_h, loops=True, rng=True)

    p_c = sub.add_parser("cobar", help="cobar-construction homology")
    add_common(p_c, loops=False, rng=True)

    p_cmp = sub.add_parser("compare", help="three-way single-loop agreement")
    p_cmp.add_argument("--family", required=True, choices=["rp", "cp"])
    p_cmp.add_argument("--trunc", type=int, required=True)
    p_cmp.add_argument("--char", type=int, required=True)
    p_cmp.add_argument("--to", type=int, required=True)
    p_cmp.add_argument("--corrupt", action="store_true",
                       help="test hook: perturb one generator differential")
    p_cmp.add_argument("--format", choices=["table", "json"], default="table")
    p_cmp.add_argument("--out")

    sub.add_parser("selftest", help="golden corpus and property suites")

    args = ap.parse_args(argv)
    try:
        if args.cmd == "e1":
            return cmd_e1(args)
        if args.cmd == "homology":
            return cmd_homology(args)
        if args.cmd == "cobar":
            return cmd_cobar(args)
        if args.cmd == "compare":
            return cmd_compare(args)
        if args.cmd == "selftest":
            return cmd_selftest(args)
    except (CliError, dgal.ConfigError, spaces.SpaceError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
