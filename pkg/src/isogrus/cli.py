"""Command-line front end.

Subcommands: enumerate, cupdiag, kl, dp, multiply, contract, alperin,
selfcheck.  Weights are entered as strings over {u, d}; generator words
for ``multiply`` use the grammar documented in the README, for example
``L(duu,1);R(duu,1)`` with cups named by their left vertex.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import cache
from .algebra import (
    AlgebraElement,
    Generator,
    generator_element,
    idem,
    lower,
    multiply,
    normalize_word,
    raise_,
)
from .cellmod import alperin_diagram
from .combinatorics import (
    Weight,
    enumerate_weights,
    weight_to_tilepartition,
)
from .contraction import ContractionError, contractible_sites, phi_weight
from .cups import cup_diagram
from .orientation import dp_set, kl_polynomial
from .render import render
from .selfcheck import run_selfcheck


class UsageError(ValueError):
    pass


def _weight(text: str) -> Weight:
    try:
        return Weight(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_enumerate(args) -> int:
    ws = enumerate_weights(args.n)
    if args.format == "json":
        data = [
            {"weight": w.to_json(), "tiling": weight_to_tilepartition(w).to_json()} for w in ws
        ]
        print(json.dumps(data, sort_keys=True))
    else:
        for w in ws:
            t = weight_to_tilepartition(w)
            print(f"{w.arrows}  {t}")
    return 0


def cmd_cupdiag(args) -> int:
    w = _weight(args.weight)
    d = cup_diagram(w)
    print(render(d, args.render, labels=w if args.render != "json" else None))
    return 0


def cmd_kl(args) -> int:
    lam, mu = _weight(getattr(args, "lambda")), _weight(args.mu)
    if lam.n != mu.n:
        raise UsageError("lambda and mu must have the same rank")
    print(str(kl_polynomial(lam, mu)))
    return 0


def cmd_dp(args) -> int:
    lam = _weight(getattr(args, "lambda"))
    pairs = dp_set(lam)
    if args.by_degree:
        kmax = max(d for _, d in pairs)
        data = {
            str(k): [m.arrows for m, d in pairs if d == k] for k in range(kmax + 1)
        }
    else:
        data = [{"mu": m.arrows, "degree": d} for m, d in pairs]
    print(json.dumps(data, sort_keys=True))
    return 0


_GEN_RE = re.compile(r"^([ILR])\(([ud]+)(?:,(\d+))?\)$")


def parse_word(text: str) -> list[Generator]:
    """Parse ``L(w,v);R(w,v);I(w)``; cups are named by their left vertex."""
    word = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = _GEN_RE.match(chunk)
        if not m:
            raise UsageError(f"cannot parse generator {chunk!r}")
        kind, arrows, left = m.group(1), m.group(2), m.group(3)
        w = _weight(arrows)
        if kind == "I":
            if left is not None:
                raise UsageError("idempotents take no cup argument")
            word.append(idem(w))
            continue
        if left is None:
            raise UsageError(f"{kind} generators need a cup: {chunk!r}")
        p = cup_diagram(w).cup_at(int(left))
        if p is None or p.left != int(left):
            raise UsageError(f"no cup with left vertex {left} in the diagram of {w}")
        word.append(lower(w, p) if kind == "L" else raise_(w, p))
    if not word:
        raise UsageError("empty generator word")
    return word


def cmd_multiply(args) -> int:
    word = parse_word(args.word)
    if any(g.base.n != args.n for g in word):
        raise UsageError("generator ranks disagree with --n")
    key = cache.word_key(args.n, args.word)
    result = cache.load(key)
    if result is None:
        result = normalize_word(word)
        cache.store(key, result)
    print(json.dumps(result.to_json(), sort_keys=True))
    return 0


def cmd_contract(args) -> int:
    lam = _weight(getattr(args, "lambda"))
    try:
        out = phi_weight(lam, args.k)
    except ContractionError as exc:
        raise UsageError(str(exc)) from exc
    data = {
        "input": lam.to_json(),
        "k": args.k,
        "sites": sorted(contractible_sites(lam)),
        "contracted": out.to_json(),
        "diagram": cup_diagram(out).to_json(),
    }
    print(json.dumps(data, sort_keys=True))
    return 0


def cmd_alperin(args) -> int:
    lam = _weight(getattr(args, "lambda"))
    graph = alperin_diagram(lam)
    print(render(graph, args.format))
    return 0


def cmd_selfcheck(args) -> int:
    results = run_selfcheck(args.n, seed=args.seed, jobs=args.jobs)
    failed = 0
    for r in results:
        status = "pass" if r.ok else "FAIL"
        print(f"[{status}] {r.name}: {r.detail}")
        failed += 0 if r.ok else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="isogrus", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list the weights and tilings of a rank")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("cupdiag", help="draw the cup diagram of a weight")
    p.add_argument("--weight", required=True)
    p.add_argument("--render", choices=["ascii", "tikz", "json"], default="ascii")
    p.set_defaults(fn=cmd_cupdiag)

    p = sub.add_parser("kl", help="leading polynomial of an ordered pair")
    p.add_argument("--lambda", required=True)
    p.add_argument("--mu", required=True)
    p.set_defaults(fn=cmd_kl)

    p = sub.add_parser("dp", help="weights orienting over lambda, with degrees")
    p.add_argument("--lambda", required=True)
    p.add_argument("--by-degree", action="store_true")
    p.set_defaults(fn=cmd_dp)

    p = sub.add_parser("multiply", help="normalize a generator word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(fn=cmd_multiply)

    p = sub.add_parser("contract", help="contract a weight at a site")
    p.add_argument("--lambda", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=cmd_contract)

    p = sub.add_parser("alperin", help="layered submodule diagram of a cell module")
    p.add_argument("--lambda", required=True)
    p.add_argument("--format", choices=["dot", "json", "tikz"], default="dot")
    p.set_defaults(fn=cmd_alperin)

    p = sub.add_parser("selfcheck", help="run the invariant suite up to a rank")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_selfcheck)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
