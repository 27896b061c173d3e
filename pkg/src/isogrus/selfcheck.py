"""Named invariant suite behind the ``selfcheck`` subcommand.

Each check sweeps every rank from 1 (or 2) up to the requested bound,
capped at the documented budget for the expensive algebraic sweeps.
Randomized checks draw from an explicit seed so runs are reproducible.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable

from . import algebra, cellmod, contraction
from .algebra import (
    basis,
    canonical_chain,
    dual,
    element_of,
    generator_element,
    generators,
    multiply,
    multiply_generators,
    normalize_word,
)
from .combinatorics import (
    TilePartition,
    Weight,
    addable_removable,
    bruhat_leq,
    enumerate_tilepartitions,
    enumerate_weights,
    tile_content,
    tilepartition_to_weight,
    weight_to_tilepartition,
)
from .cups import (
    breadth,
    commute,
    cup_diagram,
    dyck_path,
    flip_cup,
    trace_tiled_diagram,
)
from .orientation import dp_brute, dp_k, dp_set, orient, socle_weight


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


Check = Callable[[int, random.Random], CheckResult]
_REGISTRY: list[tuple[str, Check]] = []


def _register(name: str):
    def deco(fn):
        _REGISTRY.append((name, fn))
        return fn

    return deco


def _result(name: str, ok: bool, detail: str) -> CheckResult:
    return CheckResult(name, ok, detail)


@_register("coset-count")
def _coset_count(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(1, min(nmax, 12) + 1):
        if len(enumerate_weights(n)) != 2 ** (n - 1):
            return _result("coset-count", False, f"rank {n}")
    return _result("coset-count", True, f"ranks 1..{min(nmax, 12)}")


@_register("bijection-round-trip")
def _round_trip(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(1, min(nmax, 10) + 1):
        for w in enumerate_weights(n):
            if tilepartition_to_weight(weight_to_tilepartition(w)) != w:
                return _result("bijection-round-trip", False, str(w))
    return _result("bijection-round-trip", True, f"ranks 1..{min(nmax, 10)}")


@_register("two-oracle-diagrams")
def _two_oracle(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(1, min(nmax, 8) + 1):
        for w in enumerate_weights(n):
            t = weight_to_tilepartition(w)
            if trace_tiled_diagram(t).diagram != cup_diagram(w):
                return _result("two-oracle-diagrams", False, str(w))
    return _result("two-oracle-diagrams", True, f"ranks 1..{min(nmax, 8)}")


@_register("degree-equals-flips")
def _degree_flips(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(1, min(nmax, 8) + 1):
        for lam in enumerate_weights(n):
            for mu, d in dp_set(lam):
                op = orient(mu, lam)
                if op.degree != len(op.flipped) or op.degree != d:
                    return _result("degree-equals-flips", False, f"{mu} over {lam}")
    return _result("degree-equals-flips", True, f"ranks 1..{min(nmax, 8)}")


@_register("commute-iff-disjoint-paths")
def _commie(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(2, min(nmax, 8) + 1):
        for w in enumerate_weights(n):
            t = weight_to_tilepartition(w)
            d = cup_diagram(w)
            paths = {p: dyck_path(p, t).tile_set() for p in d.cups}
            for i, p in enumerate(d.cups):
                for q in d.cups[i + 1 :]:
                    if commute(p, q, d) != paths[p].isdisjoint(paths[q]):
                        return _result("commute-iff-disjoint-paths", False, f"{w} {p} {q}")
    return _result("commute-iff-disjoint-paths", True, f"ranks 2..{min(nmax, 8)}")


@_register("commute-iff-mutual-survival")
def _commie2(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(2, min(nmax, 8) + 1):
        for w in enumerate_weights(n):
            d = cup_diagram(w)
            for i, p in enumerate(d.cups):
                for q in d.cups[i + 1 :]:
                    inq = cup_diagram(flip_cup(w, q)).cup_with_ends(p.left, p.right) == p
                    inp = cup_diagram(flip_cup(w, p)).cup_with_ends(q.left, q.right) == q
                    if commute(p, q, d) != (inp and inq):
                        return _result("commute-iff-mutual-survival", False, f"{w} {p} {q}")
    return _result("commute-iff-mutual-survival", True, f"ranks 2..{min(nmax, 8)}")


@_register("dyck-structure")
def _dyck_structure(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(2, min(nmax, 8) + 1):
        for w in enumerate_weights(n):
            t = weight_to_tilepartition(w)
            for p in cup_diagram(w).cups:
                dp = dyck_path(p, t)
                cups_caps = [s for _, s in dp.tiles if s in ("cup", "cupcap")]
                if len(cups_caps) != breadth(p):
                    return _result("dyck-structure", False, f"breadth {w} {p}")
                for (r, c), s in dp.tiles:
                    if s == "cupcap" and (tile_content(r, c) % 2 != 0 or tile_content(r, c) == 0):
                        return _result("dyck-structure", False, f"cup-cap parity {w} {p}")
                removed = t.tiles() - weight_to_tilepartition(flip_cup(w, p)).tiles()
                ct1 = Counter(tile_content(r, c) for (r, c) in dp.tile_set())
                ct2 = Counter(tile_content(r, c) for (r, c) in removed)
                if ct1 != ct2:
                    return _result("dyck-structure", False, f"contents {w} {p}")
    return _result("dyck-structure", True, f"ranks 2..{min(nmax, 8)}")


@_register("per-content-uniqueness")
def _per_content(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(1, min(nmax, 7) + 1):
        for t in enumerate_tilepartitions(n):
            add, rem = addable_removable(t)
            for group in (add, rem):
                contents = [tile_content(r, c) for (r, c) in group]
                if len(contents) != len(set(contents)):
                    return _result("per-content-uniqueness", False, str(t))
    return _result("per-content-uniqueness", True, f"ranks 1..{min(nmax, 7)}")


@_register("socle-is-argmax")
def _socle(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(1, min(nmax, 8) + 1):
        for lam in enumerate_weights(n):
            pairs = dp_set(lam)
            kmax = max(d for _, d in pairs)
            top = [m for m, d in pairs if d == kmax]
            if len(top) != 1 or socle_weight(lam) != top[0]:
                return _result("socle-is-argmax", False, str(lam))
            if dp_k(lam, 0) != [lam]:
                return _result("socle-is-argmax", False, f"bottom layer of {lam}")
    return _result("socle-is-argmax", True, f"ranks 1..{min(nmax, 8)}")


@_register("dp-candidates-match-brute")
def _dp_brute(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(1, min(nmax, 6) + 1):
        for lam in enumerate_weights(n):
            if dp_set(lam) != dp_brute(lam):
                return _result("dp-candidates-match-brute", False, str(lam))
    return _result("dp-candidates-match-brute", True, f"ranks 1..{min(nmax, 6)}")


@_register("dimension-count")
def _dimension(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(1, min(nmax, 7) + 1):
        want = sum(len(dp_set(lam)) ** 2 for lam in enumerate_weights(n))
        if len(basis(n)) != want:
            return _result("dimension-count", False, f"rank {n}")
    return _result("dimension-count", True, f"ranks 1..{min(nmax, 7)}")


@_register("generator-associativity")
def _assoc(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(2, min(nmax, 5) + 1):
        gens = generators(n)
        elems = {g: generator_element(g) for g in gens}
        for g1 in gens:
            for g2 in gens:
                if g2.target != g1.source:
                    continue
                x12 = multiply(elems[g1], elems[g2])
                for g3 in gens:
                    if g3.target != g2.source:
                        continue
                    if multiply(x12, elems[g3]) != multiply(elems[g1], multiply(elems[g2], elems[g3])):
                        return _result("generator-associativity", False, f"{g1} {g2} {g3}")
    return _result("generator-associativity", True, f"ranks 2..{min(nmax, 5)}")


@_register("basis-closure-and-degree")
def _closure(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(2, min(nmax, 4) + 1):
        B = basis(n)
        bset = set(B)
        for t1 in B:
            for t2 in B:
                if t1.nu != t2.mu:
                    continue
                prod = multiply(element_of(t1), element_of(t2))
                for t in prod.terms:
                    if t not in bset:
                        return _result("basis-closure-and-degree", False, f"{t1} {t2} -> {t}")
                    if t.degree != t1.degree + t2.degree:
                        return _result("basis-closure-and-degree", False, f"degree {t1} {t2}")
                    if not bruhat_leq(
                        weight_to_tilepartition(t.lam), weight_to_tilepartition(t1.lam)
                    ):
                        return _result("basis-closure-and-degree", False, f"cell order {t1} {t2}")
    return _result("basis-closure-and-degree", True, f"ranks 2..{min(nmax, 4)}")


@_register("duality-anti-automorphism")
def _duality(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(2, min(nmax, 5) + 1):
        gens = [g for g in generators(n) if g.kind != "I"]
        for _ in range(200):
            word = _random_word(gens, rng, steps=6)
            if word is None:
                continue
            x = normalize_word(word)
            if dual(dual(x)) != x:
                return _result("duality-anti-automorphism", False, "involution")
            lhs = dual(x)
            rhs = normalize_word([g.star() for g in reversed(word)])
            if lhs != rhs:
                return _result("duality-anti-automorphism", False, f"{[str(g) for g in word]}")
    return _result("duality-anti-automorphism", True, f"ranks 2..{min(nmax, 5)}, 200 words each")


def _random_word(gens, rng: random.Random, steps: int):
    g = rng.choice(gens)
    word = [g]
    for _ in range(steps - 1):
        nxt = [h for h in gens if h.source == word[-1].target]
        if not nxt:
            return None
        word.append(rng.choice(nxt))
    return word


@_register("chain-independence")
def _chains(nmax: int, rng: random.Random) -> CheckResult:
    from .algebra import lower

    for n in range(2, min(nmax, 6) + 1):
        tries = 0
        while tries < 100:
            lam = rng.choice(enumerate_weights(n))
            cands = [m for m, d in dp_set(lam) if d >= 2]
            if not cands:
                tries += 1
                continue
            mu = rng.choice(cands)
            word = _random_descent(mu, lam, rng)
            tries += 1
            if word is None:
                continue
            got = normalize_word(word)
            want = normalize_word(canonical_chain(mu, lam))
            if got != want:
                return _result("chain-independence", False, f"{mu} -> {lam}")
    return _result("chain-independence", True, f"ranks 2..{min(nmax, 6)}, 100 draws each")


def _random_descent(mu: Weight, lam: Weight, rng: random.Random):
    from .algebra import lower

    word = []
    cur = mu
    while cur != lam:
        op = orient(cur, lam)
        if op is None:
            return None
        flips = list(op.flipped)
        legal = []
        for p in flips:
            nxt = flip_cup(cur, p)
            if orient(nxt, lam) is not None:
                legal.append(p)
        if not legal:
            return None
        p = rng.choice(legal)
        word.append(lower(cur, p))
        cur = flip_cup(cur, p)
    return word


@_register("contraction")
def _contraction(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(3, min(nmax, 8) + 1):
        for k in range(0, n):
            dom = [w for w in enumerate_weights(n) if k in contraction.contractible_sites(w)]
            imgs = {contraction.phi_weight(w, k) for w in dom}
            if len(imgs) != len(dom) or (dom and len(dom) != 2 ** (n - 3)):
                return _result("contraction", False, f"bijectivity n={n} k={k}")
            for w in dom:
                if contraction.dilate_weight(contraction.phi_weight(w, k), k) != w:
                    return _result("contraction", False, f"round trip {w} k={k}")
    for n in range(3, min(nmax, 6) + 1):
        gens = generators(n)
        elems = {g: generator_element(g) for g in gens}
        for k in range(0, n):
            trunc = []
            for g in gens:
                try:
                    trunc.append((g,) + contraction.phi_generator(g, k))
                except contraction.ContractionError:
                    continue
            for g1, c1, i1 in trunc:
                for g2, c2, i2 in trunc:
                    if g2.target != g1.source:
                        continue
                    lhs = multiply(
                        generator_element(i1).scaled(c1), generator_element(i2).scaled(c2)
                    )
                    rhs = contraction.phi_element(multiply(elems[g1], elems[g2]), k)
                    if lhs != rhs:
                        return _result("contraction", False, f"homomorphism {g1} {g2} k={k}")
    return _result("contraction", True, f"ranks 3..{min(nmax, 8)}")


@_register("alperin-edges")
def _alperin(nmax: int, rng: random.Random) -> CheckResult:
    for n in range(2, min(nmax, 6) + 1):
        for lam in enumerate_weights(n):
            graph = cellmod.alperin_diagram(lam)
            comb = {(e.src, e.dst) for e in graph.edges}
            if comb != cellmod.action_edges(lam):
                return _result("alperin-edges", False, str(lam))
            cellmod.radical_filtration(lam)
    return _result("alperin-edges", True, f"ranks 2..{min(nmax, 6)}")


def run_selfcheck(nmax: int, seed: int = 0, jobs: int = 1, names: list[str] | None = None) -> list[CheckResult]:
    selected = [(n, f) for n, f in _REGISTRY if names is None or n in names]
    if jobs > 1:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_run_one, name, nmax, seed) for name, _ in selected]
            return [f.result() for f in futs]
    return [_run_one(name, nmax, seed) for name, _ in selected]


def _run_one(name: str, nmax: int, seed: int) -> CheckResult:
    fn = dict(_REGISTRY)[name]
    rng = random.Random(seed)
    return fn(nmax, rng)
