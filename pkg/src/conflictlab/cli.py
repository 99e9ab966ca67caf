"""Command-line experiment harness.

Subcommands: measures, verify-theorem, survey, chi-lb, simulate, compose.
JSON reports go to stdout with --json; --csv writes a one-row-per-function
projection; --figure renders a matplotlib chart next to the delimited
output.  Wall-clock timing goes to stderr so reports stay byte-identical
across runs.  CONFLICT_LAB_THREADS caps the per-function fan-out.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__, conflict, measures, montecarlo, report, trees
from .truthtable import (
    SpecError,
    TruthTable,
    evaluate,
    index_point,
    parse_spec,
    serialize,
)

SURVEY_FAMILIES = ("AND", "OR", "XOR", "MAJ", "ANDOR")


class CommandError(Exception):
    def __init__(self, message, code=2):
        super().__init__(message)
        self.code = code


def _thread_count():
    raw = os.environ.get("CONFLICT_LAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_functions(work, items):
    threads = _thread_count()
    if threads == 1:
        return [work(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(work, items))


def _guard_arity(t: TruthTable, max_n: int):
    if t.n > max_n:
        raise CommandError(f"arity {t.n} exceeds --max-n {max_n}")


def _pair_json(pair: conflict.DistributionPair):
    return {
        "mu0": {x: report.rational(w) for x, w in sorted(pair.mu0.items())},
        "mu1": {x: report.rational(w) for x, w in sorted(pair.mu1.items())},
    }


def _pair_from_json(doc):
    def side(d):
        return {x: report.parse_rational(w) for x, w in d.items()}
    return conflict.DistributionPair(side(doc["mu0"]), side(doc["mu1"]))


def _certificate_witness(t: TruthTable):
    best = None
    for idx in range(t.size):
        x = index_point(idx, t.n)
        size, cert = measures.certificate_at(t, x)
        if best is None or size > best[0]:
            best = (size, cert)
    return best


def _function_record(spec_text: str, t: TruthTable, with_chi=True):
    bs, bs_point, packing = measures.block_sensitivity(t)
    c_size, cert = _certificate_witness(t)
    d, opt_tree = measures.decision_tree_depth(t)
    record = {
        "spec": spec_text,
        "table": serialize(t),
        "n": t.n,
        "bs": bs,
        "C": c_size,
        "D": d,
        "s": measures.sensitivity(t),
        "witness": {
            "bs_point": bs_point,
            "bs_blocks": report.blocks_as_lists(packing.blocks),
            "certificate_point": cert.point,
            "certificate_indices": sorted(cert.indices),
            "optimal_depth_tree": trees.to_text(opt_tree),
        },
    }
    if with_chi and not t.is_constant():
        bound = conflict.chi_lower_bound(t)
        record["chi_lb"] = report.rational(bound.value)
        record["witness"]["chi_pair"] = _pair_json(bound.pair)
        record["witness"]["chi_tree"] = trees.to_text(bound.tree)
        record["chi_provenance"] = bound.provenance
    elif with_chi:
        record["chi_lb"] = "0/1"
    return record


def _emit(doc, args, human_lines):
    if getattr(args, "json", False):
        sys.stdout.write(report.to_json(doc))
    else:
        for line in human_lines:
            print(line)
    if getattr(args, "csv", None):
        report.write_csv(doc, args.csv)


def _human_measures(record):
    lines = [
        f"function      {record['spec']}  (table {record['table']}, n={record['n']})",
        f"bs            {record['bs']}   at {record['witness']['bs_point']} "
        f"blocks {record['witness']['bs_blocks']}",
        f"C             {record['C']}   at {record['witness']['certificate_point']} "
        f"indices {record['witness']['certificate_indices']}",
        f"D             {record['D']}   tree {record['witness']['optimal_depth_tree']}",
        f"sensitivity   {record['s']}",
    ]
    if "chi_lb" in record:
        lines.append(f"chi lower bd  {record['chi_lb']}")
    return lines


def cmd_measures(args):
    t = parse_spec(args.spec)
    _guard_arity(t, args.max_n)
    record = _function_record(args.spec, t)
    doc = report.build_report(args.command_echo, [record])
    _emit(doc, args, _human_measures(record))
    return 0


def cmd_chi_lb(args):
    t = parse_spec(args.spec)
    _guard_arity(t, args.max_n)
    if t.is_constant():
        raise CommandError("conflict lower bound undefined for constant functions")
    bound = conflict.chi_lower_bound(t)
    if args.budget > 0:
        searched = conflict.maximize_pairs(t, budget=args.budget, seed=args.seed)
        if searched.value > bound.value:
            bound = searched
    bs, _, _ = measures.block_sensitivity(t)
    record = {
        "spec": args.spec,
        "table": serialize(t),
        "n": t.n,
        "bs": bs,
        "chi_lb": report.rational(bound.value),
        "chi_provenance": bound.provenance,
        "witness": {
            "chi_pair": _pair_json(bound.pair),
            "chi_tree": trees.to_text(bound.tree),
        },
    }
    doc = report.build_report(args.command_echo, [record])
    _emit(doc, args, [
        f"function      {args.spec}",
        f"bs            {bs}",
        f"chi lower bd  {record['chi_lb']}  ({bound.provenance})",
        f"tree          {record['witness']['chi_tree']}",
    ])
    return 0


def _theorem_record(t: TruthTable):
    spec_text = serialize(t)
    bs, _, _ = measures.block_sensitivity(t)
    bound = conflict.chi_lower_bound(t)
    target = Fraction(bs + 1, 2)
    return {
        "spec": spec_text,
        "n": t.n,
        "bs": bs,
        "chi_lb": report.rational(bound.value),
        "bound": report.rational(target),
        "ok": bound.value >= target,
        "equality": bound.value == target,
    }


def cmd_verify_theorem(args):
    if args.mode == "all":
        if args.n > 4:
            raise CommandError("--mode all supports n <= 4")
        tables = [TruthTable(args.n, bits)
                  for bits in range(1, (1 << (1 << args.n)) - 1)]
    else:
        if args.n > 8:
            raise CommandError("--mode random supports n <= 8")
        rng = random.Random(args.seed)
        size = 1 << args.n
        tables = []
        seen = set()
        while len(tables) < args.count:
            bits = rng.getrandbits(size)
            if bits == 0 or bits == (1 << size) - 1 or bits in seen:
                continue
            seen.add(bits)
            tables.append(TruthTable(args.n, bits))

    records = _map_functions(_theorem_record, tables)
    failures = [r for r in records if not r["ok"]]
    equalities = sum(1 for r in records if r["equality"])
    doc = report.build_report(args.command_echo, records, extra={
        "checked": len(records),
        "failures": len(failures),
        "equality_instances": equalities,
    })
    lines = [
        f"checked {len(records)} nonconstant functions at n={args.n} ({args.mode})",
        f"failures {len(failures)}, equality instances {equalities}",
    ]
    _emit(doc, args, lines)
    if getattr(args, "figure", None):
        report.render_theorem_figure(doc, args.figure)
    return 0 if not failures else 1


def survey_specs(families, n_min, n_max):
    specs = []
    for family in families:
        for n in range(n_min, n_max + 1):
            if family == "MAJ":
                if n % 2 == 1 and n >= 3:
                    specs.append(f"MAJ:{n}")
            elif family == "ANDOR":
                if n * n <= conflict.DP_MAX_ARITY:
                    specs.append(f"COMPOSE(AND:{n},OR:{n})")
            else:
                specs.append(f"{family}:{n}")
    return specs


def cmd_survey(args):
    families = [f.strip().upper() for f in args.families.split(",")]
    for f in families:
        if f not in SURVEY_FAMILIES:
            raise CommandError(f"unknown family {f!r}; choose from {SURVEY_FAMILIES}")
    specs = survey_specs(families, args.n_min, args.n_max)

    def build(spec_text):
        t = parse_spec(spec_text)
        _guard_arity(t, args.max_n)
        return _function_record(spec_text, t)

    records = _map_functions(build, specs)
    doc = report.build_report(args.command_echo, records)
    header = f"{'function':28} {'n':>3} {'bs':>3} {'C':>3} {'D':>3} {'s':>3} {'chi_lb':>8}"
    lines = [header] + [
        f"{r['spec']:28} {r['n']:>3} {r['bs']:>3} {r['C']:>3} {r['D']:>3} "
        f"{r['s']:>3} {r.get('chi_lb', '-'):>8}"
        for r in doc["records"]
    ]
    _emit(doc, args, lines)
    if getattr(args, "figure", None):
        report.render_survey_figure(doc, args.figure)
    return 0


def cmd_simulate(args):
    t = parse_spec(args.spec)
    _guard_arity(t, args.max_n)
    if t.is_constant():
        raise CommandError("cannot simulate on a constant function")
    if args.pair == "witness":
        pair = conflict.witness_pair(t)
    else:
        with open(args.pair) as handle:
            pair = _pair_from_json(json.load(handle))
        pair.check_against(t)
    if args.tree == "optimal":
        tree = conflict.min_expected_conflict(t, pair).tree
    else:
        with open(args.tree) as handle:
            tree = trees.parse_tree(handle.read())
    exact = conflict.walk_stats(t, pair, tree)
    sim = montecarlo.simulate_walk(t, pair, tree, args.samples, args.seed)
    deviation = abs(sim.mean - float(exact.expectation))
    within = deviation <= 3 * sim.stderr if sim.stderr else deviation == 0
    record = {
        "spec": args.spec,
        "n": t.n,
        "samples": sim.n_samples,
        "seed": sim.seed,
        "generator": sim.generator,
        "mean": sim.mean,
        "stderr": sim.stderr,
        "distribution": {str(r): p for r, p in sim.distribution.items()},
        "exact_mean": report.rational(exact.expectation),
        "exact_distribution": {str(r): report.rational(p)
                               for r, p in exact.distribution.items()},
        "within_3se": within,
    }
    doc = report.build_report(args.command_echo, [record])
    _emit(doc, args, [
        f"function    {args.spec}",
        f"samples     {sim.n_samples} (seed {sim.seed}, {sim.generator})",
        f"mean        {sim.mean:.6f} +- {sim.stderr:.6f}",
        f"exact mean  {record['exact_mean']}",
        f"within 3se  {within}",
    ])
    return 0


def cmd_compose(args):
    left = parse_spec(args.outer)
    right = parse_spec(args.inner)
    from .truthtable import compose as compose_tables
    composed = compose_tables(left, right)
    record = {"spec": f"COMPOSE({args.outer},{args.inner})",
              "table": serialize(composed), "n": composed.n}
    doc = report.build_report(args.command_echo, [record])
    _emit(doc, args, [record["table"]])
    return 0


def _add_common(parser, max_n_default=12):
    parser.add_argument("--json", action="store_true",
                        help="machine-parseable JSON report on stdout")
    parser.add_argument("--csv", metavar="PATH", help="write CSV projection")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--budget", type=int, default=0,
                        help="heuristic pair-search iterations")
    parser.add_argument("--max-n", type=int, default=max_n_default,
                        help="refuse functions above this arity")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="conflictlab",
        description="Boolean function complexity lab",
    )
    parser.add_argument("--version", action="version",
                        version=f"conflictlab {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("measures", help="all measures of one function")
    p.add_argument("spec")
    _add_common(p)
    p.set_defaults(run=cmd_measures)

    p = sub.add_parser("chi-lb", help="certified conflict lower bound")
    p.add_argument("spec")
    _add_common(p)
    p.set_defaults(run=cmd_chi_lb)

    p = sub.add_parser("verify-theorem",
                       help="check chi lower bound >= (bs+1)/2 over many functions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("all", "random"), default="all")
    p.add_argument("--count", type=int, default=100,
                   help="sample size in random mode")
    p.add_argument("--figure", metavar="PATH", help="render a scatter figure")
    _add_common(p)
    p.set_defaults(run=cmd_verify_theorem)

    p = sub.add_parser("survey", help="tabulate measures across function families")
    p.add_argument("--families", default=",".join(SURVEY_FAMILIES))
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--figure", metavar="PATH", help="render a bar-chart figure")
    _add_common(p)
    p.set_defaults(run=cmd_survey)

    p = sub.add_parser("simulate", help="Monte Carlo cross-check of the walk")
    p.add_argument("spec")
    p.add_argument("--pair", default="witness",
                   help="'witness' or a JSON pair file")
    p.add_argument("--tree", default="optimal",
                   help="'optimal' or a tree text file")
    p.add_argument("--samples", type=int, default=10**6)
    _add_common(p)
    p.set_defaults(run=cmd_simulate)

    p = sub.add_parser("compose", help="compose two functions, print n:HEX")
    p.add_argument("outer")
    p.add_argument("inner")
    _add_common(p)
    p.set_defaults(run=cmd_compose)

    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.command_echo = ["conflictlab"] + argv
    start = time.perf_counter()
    try:
        code = args.run(args)
    except (SpecError, conflict.ConstantFunctionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    finally:
        elapsed = time.perf_counter() - start
        print(f"[conflictlab] elapsed {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
