"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 a checked identity failed.
"""
from __future__ import annotations

import argparse
import dataclasses
import random
import sys
from pathlib import Path

from .errors import FullSupport, InputError, Violation
from .fields import field_from_spec
from .fourier import build_dual_set, chebotarev_minor_check, fourier_transform, rank_support, \
    support_size, tao_bound_check
from .groups import Subgroup, homs_to_units, is_subgroup, trivial_character
from .harness import SweepConfig, run_sweep, verify_lemma_suite
from .io import emit_report, group_from_ref, load_bundle, load_function
from .permmodule import dim_FGf
from .uncertainty import analyze, classify_equality_classical, coset_indicator_function, \
    greedy_translate_bound

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2, 3
SUITES = ["structural", "rk_supp", "fourier", "chebotarev", "atlas"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="actionuncertainty", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="bounds for one function file")
    p.add_argument("--function", required=True)
    p.add_argument("--x0", type=int, help="base point in supp(f); defaults to the smallest")
    _common(p)

    p = sub.add_parser("sweep", help="exhaustive sweep from a config file")
    p.add_argument("--config", required=True)
    _common(p)

    p = sub.add_parser("fourier", help="transform of a function against a representation bundle")
    p.add_argument("--function", required=True)
    p.add_argument("--bundle", required=True)
    _common(p)

    p = sub.add_parser("verify", help="lemma suites")
    p.add_argument("--suite", action="append", choices=SUITES, help="repeatable; default all")
    _common(p)

    p = sub.add_parser("chebotarev", help="minors of the prime-order Fourier matrix")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--samples", type=int, default=100, help="random f for the additive bound")
    _common(p)

    p = sub.add_parser("make-witness", help="build c eta I_{gamma H} on the regular set")
    p.add_argument("--group", required=True, help="group file, or a bundled name such as Z6")
    p.add_argument("--subgroup", required=True, help="comma-separated element indices")
    p.add_argument("--gamma", type=int, default=0)
    p.add_argument("--field", required=True)
    p.add_argument("--c", default="1")
    p.add_argument("--character", type=int, default=0,
                   help="0 is trivial; others index Hom(H, F^x) sorted by values")
    _common(p)
    return parser


def _group_ref(text: str):
    path = Path(text)
    return str(path) if path.suffix == ".json" or path.exists() else f"data:groups/{text}.json"


def cmd_analyze(args) -> tuple[dict, bool]:
    f = load_function(args.function)
    rep = analyze(f, args.x0)
    out = rep.to_json()
    out["classification"] = classify_equality_classical(f, rep.x0).to_json()
    try:
        gr = greedy_translate_bound(f, rep.x0)
        out["greedy"] = {"t": gr.t, "chosen": list(gr.chosen), "cover_bound": gr.cover_bound}
    except FullSupport:
        out["greedy"] = None
    return out, True


def cmd_sweep(args) -> tuple[object, bool]:
    cfg = SweepConfig.load(args.config)
    if args.jobs != 1:
        cfg = dataclasses.replace(cfg, jobs=args.jobs)
    ledger = run_sweep(cfg)
    for fmt, path in sorted(cfg.outputs.items()):
        emit_report(ledger, fmt, cfg.base_dir / path)
    return ledger, ledger.ok


def cmd_fourier(args) -> tuple[dict, bool]:
    f = load_function(args.function)
    bundle = load_bundle(args.bundle)
    if bundle.group.cayley != f.group.cayley:
        raise InputError("bundle and function live on different groups")
    ds = build_dual_set(f.gset, bundle)
    ft = fourier_transform(f, ds)
    rk, dim = rank_support(ft), dim_FGf(f)
    out = {
        "group": f.group.name, "action": f.gset.kind, "field": bundle.field.spec,
        "multiplicities": list(ds.multiplicities),
        "blocks": [[[v.to_json() for v in row] for row in ft.block(s)] for s in range(len(ft.blocks))],
        "rank_support": rk, "support_size": support_size(ft), "dim": dim,
    }
    if rk != dim:
        raise Violation(f"rk-supp {rk} differs from dim {dim}")
    return out, True


def cmd_verify(args) -> tuple[object, bool]:
    ledger = verify_lemma_suite(seed=args.seed, suites=args.suite)
    return ledger, ledger.ok


def cmd_chebotarev(args) -> tuple[dict, bool]:
    res = chebotarev_minor_check(args.p)
    tao_bound_check(args.p, args.samples, random.Random(args.seed))
    out = {"p": res.p, "minors_checked": res.minors_checked, "all_nonzero": res.all_nonzero,
           "first_zero": [list(x) for x in res.first_zero] if res.first_zero else None,
           "additive_bound_samples": args.samples, "seed": args.seed}
    return out, res.all_nonzero


def cmd_make_witness(args) -> tuple[dict, bool]:
    ref = _group_ref(args.group)
    g = group_from_ref(ref, Path.cwd())
    fc = field_from_spec(args.field)
    try:
        elems = sorted({int(x) for x in args.subgroup.split(",") if x.strip()})
    except ValueError as exc:
        raise InputError(f"bad subgroup list {args.subgroup!r}") from exc
    if not is_subgroup(g, elems):
        raise InputError(f"{elems} is not a subgroup of {g.name}")
    h = Subgroup(g, tuple(elems))
    triv = trivial_character(h, fc)
    chars = [triv] + [c for c in homs_to_units(h, fc) if c != triv]
    if not 0 <= args.character < len(chars):
        raise InputError(f"character index out of range (H has {len(chars)} characters over {fc.spec})")
    f = coset_indicator_function(g, h, args.gamma, chars[args.character], args.c, fc)
    group_obj = {"name": g.name, "cayley": [list(r) for r in g.cayley]}
    return {"action": {"group": group_obj, "kind": "regular"}, "field": fc.spec,
            "values": f.to_json()}, True


COMMANDS = {"analyze": cmd_analyze, "sweep": cmd_sweep, "fourier": cmd_fourier,
            "verify": cmd_verify, "chebotarev": cmd_chebotarev, "make-witness": cmd_make_witness}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        obj, ok = COMMANDS[args.command](args)
        emit_report(obj, args.format, args.out)
    except Violation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (InputError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK if ok else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
