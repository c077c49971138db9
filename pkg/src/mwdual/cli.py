"""Command-line front end.

Subcommands: ``classify``, ``construct``, ``enumerate``, ``dual``,
``reproduce`` and ``sweep``. JSON output uses sorted keys and decimal-string
coefficients so identical arguments give byte-identical output.

Exit codes: 0 ok, 1 fixture mismatch, 2 invalid input, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from math import comb
from typing import Sequence

from .chaingap import FAILS, build_chain_pair, classify_chain
from .chainring import chain_kravchuk
from .codes import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    MultiplicityFunction,
    brute_force_dual_wwe,
    code_size,
    generator_matrix,
    se_from_orbits,
    wwe_from_orbits,
)
from .enumerators import macwilliams_transform, specialize, truncated_dual_wwe
from .fixtures import FIXTURE_IDS, run_fixture
from .matrixgap import build_degenerate_pair, build_swap, classify_matrix
from .matrixring import ORDERINGS, rank_kravchuk
from .weights import CHAIN, MATRIX, WeightTable, c_coefficients

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    """Arguments that parse but do not describe a valid request."""


# --- argument helpers ------------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _weight(args) -> WeightTable:
    if args.weights is None:
        raise UsageError("--weights is required")
    if args.q is None:
        raise UsageError("--q is required")
    vals = tuple(args.weights)
    if args.ring == CHAIN:
        if args.m is not None and args.m != len(vals):
            raise UsageError(f"--m {args.m} but {len(vals)} weight values given (one per valuation 0..m-1)")
        return WeightTable.chain(args.q, vals)
    if args.k is not None and args.k != len(vals):
        raise UsageError(f"--k {args.k} but {len(vals)} weight values given (one per rank 1..k)")
    return WeightTable.matrix(args.q, vals)


def _load_code(path: str, ordering: str) -> MultiplicityFunction:
    try:
        raw = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read code file: {exc}") from None
    try:
        data = json.loads(raw)
        return MultiplicityFunction.from_json(data, ordering)
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"malformed code JSON: {exc}") from None


def _code_weight(args, eta: MultiplicityFunction) -> WeightTable | None:
    if args.weights is None:
        return None
    mod = eta.module
    n = mod.ring.m if eta.family == CHAIN else mod.k
    if len(args.weights) != n:
        raise UsageError(f"the code's ring needs {n} weight values, got {len(args.weights)}")
    return WeightTable(eta.family, mod.q, n, tuple(args.weights))


def _kravchuk(eta: MultiplicityFunction):
    mod = eta.module
    if eta.family == CHAIN:
        return chain_kravchuk(mod.q, mod.ring.m)
    return rank_kravchuk(mod.k, mod.q)


def _emit(obj, fmt: str, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


# --- subcommands -------------------------------------------------------------------------


def run_classify(args) -> int:
    w = _weight(args)
    verdict = classify_chain(w) if w.family == CHAIN else classify_matrix(w)
    out = verdict.to_json()
    line = f"{verdict.verdict} (rule {verdict.rule})"
    if verdict.verdict == FAILS:
        field = "k" if w.family == CHAIN else ("s" if verdict.rule.startswith("swap") else "j")
        line += f": {field}={verdict.k} d={verdict.d} delta={verdict.delta}"
    elif verdict.reason:
        line += f": {verdict.reason}"
    _emit(out, args.format, line)
    return EXIT_OK


def _chain_pair_json(pair) -> dict:
    return {
        "kind": "chain",
        "k": pair.k,
        "weights": list(pair.weight.values),
        "q": pair.weight.q,
        "m": pair.weight.m,
        "a": [str(x) for x in pair.a],
        "Delta": str(pair.Delta),
        "length": pair.length,
        "eta_C": pair.eta_C.to_json(),
        "eta_D": pair.eta_D.to_json(),
    }


def run_construct(args) -> int:
    w = _weight(args)
    if w.family == CHAIN:
        k = args.k if args.k is not None else w.m
        pair = build_chain_pair(w, k)
        out = _chain_pair_json(pair)
        first, second = pair.eta_C, pair.eta_D
    else:
        k = w.k
        m = args.m if args.m is not None else k + 1
        if m <= k:
            raise UsageError(f"matrix constructions need m > k, got m={m}, k={k}")
        cs = c_coefficients(w)
        if all(cs):
            pair = build_swap(args.s if args.s is not None else 1, k, m, w.q, w, args.ordering)
            first, second = pair.eta_C, pair.eta_D
        else:
            zero_js = [j for j in range(2, k + 1) if cs[j - 1] == 0]
            j = args.s if args.s is not None else zero_js[0]
            pair = build_degenerate_pair(j, k, m, w.q, w, args.ordering)
            first, second = pair.eta_plus, pair.eta_minus
        out = pair.to_json()
    same = wwe_from_orbits(first, w) == wwe_from_orbits(second, w)
    out["equal_wwe"] = same
    text = [
        f"{out['kind']} pair, length {first.length}, equal w-weight enumerators: {same}",
        f"first:  {wwe_from_orbits(first, w).to_text()}",
        f"second: {wwe_from_orbits(second, w).to_text()}",
    ]
    _emit(out, args.format, "\n".join(text))
    return EXIT_OK


def run_enumerate(args) -> int:
    eta = _load_code(args.code, args.ordering)
    se = se_from_orbits(eta)
    out = {"length": eta.length, "code_size": str(code_size(eta)), "se": se.to_json()}
    text = [f"length {eta.length}, |C| = {code_size(eta)}", f"se:  {se.to_text()}"]
    w = _code_weight(args, eta)
    if w is not None:
        wwe = wwe_from_orbits(eta, w)
        out["wwe"] = wwe.to_json()
        text.append(f"wwe: {wwe.to_text(args.max_degree)}")
    _emit(out, args.format, "\n".join(text))
    return EXIT_OK


def run_dual(args) -> int:
    eta = _load_code(args.code, args.ordering)
    w = _code_weight(args, eta)
    out: dict = {"length": eta.length, "method": args.method}
    text = []
    if args.method == "brute":
        if w is None:
            raise UsageError("--method brute needs --weights")
        wwe = brute_force_dual_wwe(generator_matrix(eta), w, args.budget)
        if args.max_degree is not None:
            wwe = wwe.truncate(args.max_degree)
    elif args.max_degree is not None:
        if w is None:
            raise UsageError("--max-degree needs --weights")
        wwe = truncated_dual_wwe(se_from_orbits(eta), _kravchuk(eta), code_size(eta), w, args.max_degree)
    else:
        classes = eta.module.classes
        # rough size of the expanded dual enumerator
        if comb(eta.length + classes - 1, classes - 1) * classes > args.budget:
            raise BudgetExceeded("full dual enumerator exceeds the budget; pass --max-degree for a prefix")
        dual_se = macwilliams_transform(se_from_orbits(eta), _kravchuk(eta), code_size(eta))
        out["se"] = dual_se.to_json()
        text.append(f"dual se:  {dual_se.to_text()}")
        wwe = specialize(dual_se, w) if w is not None else None
    if wwe is not None:
        out["wwe"] = wwe.to_json()
        text.append(f"dual wwe: {wwe.to_text()}" + (" + ..." if args.max_degree is not None else ""))
    _emit(out, args.format, "\n".join(text))
    return EXIT_OK


def run_reproduce(args) -> int:
    if args.all == (args.fixture is not None):
        raise UsageError("give exactly one fixture id or --all")
    ids = FIXTURE_IDS if args.all else (args.fixture,)
    reports = [run_fixture(fid) for fid in ids]
    lines = []
    for r in reports:
        lines.append(f"{'PASS' if r.ok else 'FAIL'} {r.fixture} ({len(r.checks)} checks)")
        for c in r.mismatches():
            lines.append(f"  {c.name}: expected {c.expected!r}, got {c.actual!r}")
    out = {"ok": all(r.ok for r in reports), "fixtures": [r.to_json() for r in reports]}
    _emit(out, args.format, "\n".join(lines))
    return EXIT_OK if out["ok"] else EXIT_MISMATCH


def _sweep_point(point: tuple[str, int, tuple[int, ...]]) -> list[str]:
    family, q, values = point
    w = WeightTable(family, q, len(values), values)
    v = classify_chain(w) if family == CHAIN else classify_matrix(w)
    witness = [str(v.k), str(v.d), str(v.delta)] if v.verdict == FAILS else ["", "", ""]
    return [family, str(q), str(len(values)), " ".join(map(str, values)), v.verdict, v.rule, *witness]


def run_sweep(args) -> int:
    qs = args.q_list or [2]
    sizes = args.n_list or [2]
    if args.max_weight < 1 or args.max_weight > 12:
        raise UsageError("--max-weight must be between 1 and 12")
    points = []
    for q in qs:
        WeightTable(args.ring, q, 1, (1,))  # validates q
        for n in sizes:
            if not 1 <= n <= 4:
                raise UsageError("sweep sizes (m or k) must lie in 1..4")
            for vals in itertools.product(range(1, args.max_weight + 1), repeat=n):
                points.append((args.ring, q, vals))
    if len(points) > args.budget:
        raise BudgetExceeded(f"sweep has {len(points)} points, budget {args.budget}")
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(_sweep_point, points, chunksize=16))
    else:
        rows = [_sweep_point(p) for p in points]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    size_name = "m" if args.ring == CHAIN else "k"
    writer.writerow(["ring", "q", size_name, "weights", "verdict", "rule", "witness_k", "witness_d", "witness_delta"])
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


# --- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mwdual", description="MacWilliams duality for weights on chain and matrix rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, weights_required=False):
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--ordering", choices=sorted(ORDERINGS), default="lex")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--weights", type=_int_list, required=weights_required)

    def ring_args(p):
        p.add_argument("--ring", choices=(CHAIN, MATRIX), required=True)
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--m", type=int)
        p.add_argument("--k", type=int)

    p = sub.add_parser("classify", help="decide whether a weight respects duality")
    ring_args(p)
    common(p, weights_required=True)
    p.set_defaults(func=run_classify)

    p = sub.add_parser("construct", help="build a code pair with equal w-weight enumerators")
    ring_args(p)
    common(p, weights_required=True)
    p.add_argument("--s", type=int, help="matrix swap rank s, or row dimension j for degenerate weights")
    p.set_defaults(func=run_construct)

    for name, func, helptext in (
        ("enumerate", run_enumerate, "primal enumerators of a code given as JSON"),
        ("dual", run_dual, "dual enumerators of a code given as JSON"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--code", required=True, help="multiplicity-function JSON file, or - for stdin")
        common(p)
        if name == "dual":
            p.add_argument("--method", choices=("pipeline", "brute"), default="pipeline")
        p.set_defaults(func=func)

    p = sub.add_parser("reproduce", help="rebuild a worked example and compare exactly")
    p.add_argument("fixture", nargs="?", choices=FIXTURE_IDS)
    p.add_argument("--all", action="store_true")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=run_reproduce)

    p = sub.add_parser("sweep", help="classify every weight in a bounded grid (CSV)")
    p.add_argument("--ring", choices=(CHAIN, MATRIX), required=True)
    p.add_argument("--q", dest="q_list", type=_int_list)
    p.add_argument("--m", dest="n_list", type=_int_list, help="chain lengths m (chain sweeps)")
    p.add_argument("--k", dest="k_list", type=_int_list, help="matrix sizes k (matrix sweeps)")
    p.add_argument("--max-weight", type=int, default=4)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=run_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    if args.command == "sweep" and args.ring == MATRIX:
        args.n_list = args.k_list
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except ValueError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
