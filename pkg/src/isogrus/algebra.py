"""The basic algebra on cup-diagram weights and its rewriting engine.

Elements are exact integer-coefficient combinations of basis triples
(valley; top, source): the triple stands for the product of the full
descent from the source weight into the valley with the full ascent
out to the top weight, both taken along canonical chains (largest
right endpoint flipped first on the way down, last on the way up).

Arbitrary words in the degree-0/1 generators are normalized by a
directed rewriting loop: ascents followed by descents ("peaks") are
pushed down through the quadratic relations, and the remaining
monotone runs are put into canonical order.  Exactly one rewrite rule
must apply to every adjacent pair; the dispatcher asserts this.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .combinatorics import Weight
from .cups import (
    Cup,
    adjacent,
    adjacent_cups,
    breadth,
    commute,
    covers,
    cup_diagram,
    doubly_covers,
    flip_cup,
    unflip_cup,
)
from .gaussian import ONE, GaussInt
from .orientation import dp_set, orient

_FUEL = 200_000


class EngineError(RuntimeError):
    """Internal invariant of the rewriting engine failed."""


class RankMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Generator:
    """Idem(w), Lower(w, p): w -> w-p, or Raise(w, p): w-p -> w."""

    kind: str  # "I", "L" or "R"
    base: Weight  # the upper weight (the one owning the cup)
    cup: Cup | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("I", "L", "R"):
            raise ValueError(f"bad generator kind {self.kind!r}")
        if (self.cup is None) != (self.kind == "I"):
            raise ValueError("cup required exactly for non-idempotent generators")
        if self.cup is not None and self.cup not in cup_diagram(self.base).cups:
            raise ValueError(f"{self.cup} is not a cup of the diagram of {self.base}")

    @property
    def source(self) -> Weight:
        if self.kind == "L":
            return self.base
        if self.kind == "R":
            return flip_cup(self.base, self.cup)
        return self.base

    @property
    def target(self) -> Weight:
        if self.kind == "L":
            return flip_cup(self.base, self.cup)
        return self.base

    @property
    def degree(self) -> int:
        return 0 if self.kind == "I" else 1

    def star(self) -> "Generator":
        if self.kind == "I":
            return self
        return Generator("R" if self.kind == "L" else "L", self.base, self.cup)

    def __str__(self) -> str:
        if self.kind == "I":
            return f"I({self.base})"
        return f"{self.kind}({self.base},{self.cup.left},{self.cup.right})"


def idem(w: Weight) -> Generator:
    return Generator("I", w)


def lower(w: Weight, p: Cup) -> Generator:
    return Generator("L", w, p)


def raise_(w: Weight, p: Cup) -> Generator:
    return Generator("R", w, p)


def generators(n: int) -> list[Generator]:
    """All degree-0 and degree-1 generators of the rank-n algebra."""
    from .combinatorics import enumerate_weights

    out: list[Generator] = []
    for w in enumerate_weights(n):
        out.append(idem(w))
        for p in cup_diagram(w).cups:
            out.append(lower(w, p))
            out.append(raise_(w, p))
    return out


def gen_between(src: Weight, dst: Weight) -> Generator:
    """The degree-1 generator from ``src`` to ``dst`` (must be one flip)."""
    cands = []
    for p in cup_diagram(src).cups:
        if flip_cup(src, p) == dst:
            cands.append(lower(src, p))
    for p in cup_diagram(dst).cups:
        if flip_cup(dst, p) == src:
            cands.append(raise_(dst, p))
    if len(cands) != 1:
        raise EngineError(f"{len(cands)} single-step generators from {src} to {dst}")
    return cands[0]


# ---------------------------------------------------------------------------
# basis triples and canonical words
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class BasisTriple:
    """(valley, top, source): descend source -> valley, ascend -> top."""

    lam: Weight
    mu: Weight
    nu: Weight

    def __post_init__(self) -> None:
        if orient(self.mu, self.lam) is None or orient(self.nu, self.lam) is None:
            raise ValueError(f"triple ({self.lam},{self.mu},{self.nu}) is not oriented")

    @property
    def degree(self) -> int:
        return orient(self.mu, self.lam).degree + orient(self.nu, self.lam).degree

    def star(self) -> "BasisTriple":
        return BasisTriple(self.lam, self.nu, self.mu)

    def __str__(self) -> str:
        return f"({self.lam},{self.mu},{self.nu})"


def basis(n: int) -> list[BasisTriple]:
    """All triples; the algebra dimension is the sum of |DP|^2."""
    from .combinatorics import enumerate_weights

    out = []
    for lam in enumerate_weights(n):
        dps = [m for m, _ in dp_set(lam)]
        for mu in dps:
            for nu in dps:
                out.append(BasisTriple(lam, mu, nu))
    return sorted(out, key=lambda t: (t.lam.arrows, t.mu.arrows, t.nu.arrows))


def canonical_flip_order(mu: Weight, lam: Weight) -> list[Cup]:
    """Flipped cups of the oriented pair, largest right endpoint first."""
    op = orient(mu, lam)
    if op is None:
        raise ValueError(f"{mu} -> {lam} is not oriented")
    return sorted(op.flipped, key=lambda c: -c.right)


def canonical_chain(mu: Weight, lam: Weight) -> list[Generator]:
    """Descent word mu -> lam as Lower generators, first applied first."""
    word = []
    cur = mu
    for c in canonical_flip_order(mu, lam):
        here = cup_diagram(cur).cup_with_ends(c.left, c.right)
        if here is None:
            raise EngineError(f"flip {c} lost while descending {mu} -> {lam}")
        word.append(lower(cur, here))
        cur = flip_cup(cur, here)
    if cur != lam:
        raise EngineError(f"descent from {mu} ended at {cur}, wanted {lam}")
    return word


def word_of_triple(t: BasisTriple) -> list[Generator]:
    down = canonical_chain(t.nu, t.lam)
    up = [g.star() for g in reversed(canonical_chain(t.mu, t.lam))]
    return down + up


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class AlgebraElement:
    """Finite Gaussian-integer combination of basis triples."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[BasisTriple, GaussInt] | None = None):
        self.terms: dict[BasisTriple, GaussInt] = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[k] = v

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, GaussInt()) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return AlgebraElement(out)

    def scaled(self, c: GaussInt | int) -> "AlgebraElement":
        if isinstance(c, int):
            c = GaussInt(c, 0)
        return AlgebraElement({k: c * v for k, v in self.terms.items()})

    def sorted_terms(self) -> list[tuple[BasisTriple, GaussInt]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0].lam.arrows, kv[0].mu.arrows, kv[0].nu.arrows))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{t}" for t, c in self.sorted_terms())

    def to_json(self) -> dict:
        return {
            "terms": [
                {"lambda": t.lam.arrows, "mu": t.mu.arrows, "nu": t.nu.arrows, "re": c.re, "im": c.im}
                for t, c in self.sorted_terms()
            ]
        }


def zero() -> AlgebraElement:
    return AlgebraElement()


def element_of(t: BasisTriple, coeff: GaussInt | int = 1) -> AlgebraElement:
    if isinstance(coeff, int):
        coeff = GaussInt(coeff, 0)
    return AlgebraElement({t: coeff})


def element_degree(x: AlgebraElement) -> int | None:
    """Degree when homogeneous; None for zero or mixed elements."""
    degs = {t.degree for t in x.terms}
    if len(degs) != 1:
        return None
    return degs.pop()


def dual(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement({t.star(): c for t, c in x.terms.items()})


# ---------------------------------------------------------------------------
# the rewriting engine
# ---------------------------------------------------------------------------


def _located(w: Weight, c: Cup, require_same_decoration: bool = True) -> Cup:
    got = cup_diagram(w).cup_with_ends(c.left, c.right)
    if got is None:
        raise EngineError(f"no cup at ({c.left},{c.right}) in the diagram of {w}")
    if require_same_decoration and got.decorated != c.decorated:
        raise EngineError(f"decoration of {c} changed in {w}")
    return got


def _is_doubly_covered(w: Weight, p: Cup) -> bool:
    d = cup_diagram(w)
    return any(
        q != p and doubly_covers(q, p) and not commute(p, q, d)
        for q in d.cups
    )


def _is_covered(w: Weight, p: Cup) -> bool:
    d = cup_diagram(w)
    return any(
        q != p and covers(q, p) and not commute(p, q, d)
        for q in d.cups
    )


def _selfdual_terms(y: Weight, p: Cup) -> list[tuple[int, list[Generator]]]:
    """Rewrite Lower(y,p) . Raise(y,p) into valley routes below y-p."""
    lam = flip_cup(y, p)
    dy = cup_diagram(y)
    dlam = cup_diagram(lam)
    out: list[tuple[int, list[Generator]]] = []
    sign_global = (-1) ** (breadth(p) - 1)

    for q in dy.cups:
        if q == p or not commute(p, q, dy):
            continue
        if not (covers(q, p) or doubly_covers(q, p)):
            continue
        ql = _located(lam, q)
        coeff = 2 * (-1) ** breadth(ql)
        out.append((sign_global * coeff, [lower(lam, ql), raise_(lam, ql)]))

    adj = adjacent_cups(y, p)
    if _is_doubly_covered(y, p):
        if len(adj) != 2:
            raise EngineError(f"doubly covered {p} in {y} has {len(adj)} adjacent cups")
        a, b = adj
        if covers(b, a):
            inner, outer = a, b
        elif covers(a, b):
            inner, outer = b, a
        else:
            raise EngineError(f"adjacent pair of doubly covered {p} in {y} is not nested")
        if commute(inner, outer, dlam):
            raise EngineError(f"adjacent pair of doubly covered {p} in {y} commutes")
        out.append((sign_global * 2 * (-1) ** breadth(outer), [lower(lam, outer), raise_(lam, outer)]))
        out.append((sign_global * (-1) ** breadth(inner), [lower(lam, inner), raise_(lam, inner)]))
    else:
        for t in adj:
            out.append((sign_global * (-1) ** breadth(t), [lower(lam, t), raise_(lam, t)]))
    return out


def _noncom_adjacent_pair(y: Weight, q: Cup, concentric: bool) -> tuple[Cup, Cup]:
    """Adjacent pair of q in the diagram of y - q, validated for shape."""
    adj = adjacent_cups(y, q)
    if len(adj) != 2:
        raise EngineError(f"expected two adjacent cups for {q} in {y}, got {len(adj)}")
    a, b = adj
    lam = flip_cup(y, q)
    dlam = cup_diagram(lam)
    nested = covers(a, b) or covers(b, a)
    if concentric:
        if not nested or commute(a, b, dlam):
            raise EngineError(f"adjacent pair of {q} in {y} is not concentric non-commuting")
        inner, outer = (b, a) if covers(a, b) else (a, b)
        return inner, outer  # q1 < q2
    if nested or not commute(a, b, dlam):
        raise EngineError(f"adjacent pair of {q} in {y} is not commuting non-concentric")
    left, right = (a, b) if a.left < b.left else (b, a)
    return left, right  # q1, q2 from left to right


def _peak_rewrite(r: Generator, l: Generator) -> list[tuple[int, list[Generator]]]:
    """Rewrite Raise(y,a) followed by Lower(y,b) through lower valleys."""
    y = r.base
    a, b = r.cup, l.cup
    x = r.source  # y - a
    z = l.target  # y - b
    dy = cup_diagram(y)

    cases = {
        "same": a == b,
        "commute": a != b and commute(a, b, dy),
        "a_in_b": a != b and not commute(a, b, dy) and covers(b, a),
        "b_in_a": a != b and not commute(a, b, dy) and covers(a, b),
        "a_left_b": a != b and not commute(a, b, dy) and doubly_covers(b, a),
        "b_left_a": a != b and not commute(a, b, dy) and doubly_covers(a, b),
    }
    hits = [k for k, v in cases.items() if v]
    if len(hits) != 1:
        raise EngineError(f"pattern dispatch matched {hits} for raise {a} / lower {b} at {y}")
    case = hits[0]

    if case == "same":
        return _selfdual_terms(y, a)

    if case == "commute":
        bx = _located(x, b)
        v = flip_cup(x, bx)
        return [(1, [lower(x, bx), gen_between(v, z)])]

    if case == "a_in_b":
        q1, _ = _noncom_adjacent_pair(y, a, concentric=False)
        q1x = _located(x, q1)
        v = flip_cup(x, q1x)
        return [(1, [lower(x, q1x), gen_between(v, z)])]

    if case == "a_left_b":
        _, q2 = _noncom_adjacent_pair(y, a, concentric=True)
        q2x = _located(x, q2)
        v = flip_cup(x, q2x)
        return [(1, [lower(x, q2x), gen_between(v, z)])]

    if case == "b_in_a":
        q1, _ = _noncom_adjacent_pair(y, b, concentric=False)
        q1z = _located(z, q1)
        v = flip_cup(z, q1z)
        return [(1, [gen_between(x, v), raise_(z, q1z)])]

    # case == "b_left_a"
    _, q2 = _noncom_adjacent_pair(y, b, concentric=True)
    q2z = _located(z, q2)
    v = flip_cup(z, q2z)
    return [(1, [gen_between(x, v), raise_(z, q2z)])]


def _adjacency_rewrite(l1: Generator, l2: Generator) -> list[tuple[int, list[Generator]]]:
    """Eliminate an adjacent descent pair via the aligned-cup relation."""
    x = l1.base
    s, t = l1.cup, l2.cup
    bottom = l2.target
    from .cups import generated_cup

    u = generated_cup(s, t, x)
    if u is None:
        return []  # the product vanishes
    coeff = (-1) ** (breadth(u) - breadth(t))
    v = flip_cup(x, u)
    return [(coeff, [lower(x, u), gen_between(v, bottom)])]


def _swap_descent_pair(l1: Generator, l2: Generator) -> list[Generator] | None:
    """Exchange two commuting consecutive descents; None if not commuting."""
    x = l1.base
    s, t = l1.cup, l2.cup
    bottom = l2.target
    tx = cup_diagram(x).cup_with_ends(t.left, t.right)
    if tx is None or tx.decorated != t.decorated or not commute(s, tx, cup_diagram(x)):
        return None
    v = flip_cup(x, tx)
    return [lower(x, tx), gen_between(v, bottom)]


def _descent_defect(downs: tuple[Generator, ...]) -> list[tuple[int, tuple[Generator, ...]]] | None:
    """One rewriting step on a descent run; None when fully canonical.

    Adjacent consecutive flips are eliminated first.  If the composite
    is not orientable, an interacting non-consecutive pair is walked
    together through commuting exchanges.  Otherwise out-of-order
    commuting neighbours are exchanged until the largest right
    endpoint is flipped first.
    """
    d = len(downs)
    if d < 2:
        return None

    for j in range(d - 1):
        if adjacent(downs[j].cup, downs[j + 1].cup):
            out = []
            for coeff, pair in _adjacency_rewrite(downs[j], downs[j + 1]):
                out.append((coeff, downs[:j] + tuple(pair) + downs[j + 2 :]))
            return out

    source = downs[0].source
    weights = [source] + [g.target for g in downs]
    kbad = None
    for k in range(1, d):
        if orient(source, weights[k + 1]) is None:
            kbad = k
            break
    if kbad is not None:
        mover = downs[kbad].cup
        ends = {mover.left, mover.right}
        js = [j for j in range(kbad) if len({downs[j].cup.left, downs[j].cup.right} & ends) == 1]
        if not js:
            raise EngineError(f"descent run broke orientability without an adjacent witness: "
                              f"{[str(g) for g in downs]}")
        j = max(js)
        swapped = _swap_descent_pair(downs[j], downs[j + 1])
        if swapped is not None:
            return [(1, downs[:j] + tuple(swapped) + downs[j + 2 :])]
        swapped = _swap_descent_pair(downs[kbad - 1], downs[kbad])
        if swapped is not None:
            return [(1, downs[: kbad - 1] + tuple(swapped) + downs[kbad + 1 :])]
        raise EngineError(f"cannot migrate interacting flips together in "
                          f"{[str(g) for g in downs]}")

    for j in range(d - 1):
        s, t = downs[j].cup, downs[j + 1].cup
        if t.right > s.right:
            swapped = _swap_descent_pair(downs[j], downs[j + 1])
            if swapped is None:
                raise EngineError(f"out-of-order non-commuting descent pair {s}, {t} "
                                  f"in {[str(g) for g in downs]}")
            return [(1, downs[:j] + tuple(swapped) + downs[j + 2 :])]
    return None


def _ascent_defect(ups: tuple[Generator, ...]) -> list[tuple[int, tuple[Generator, ...]]] | None:
    """Dual of the descent fix, by starring the whole run."""
    starred = tuple(g.star() for g in reversed(ups))
    res = _descent_defect(starred)
    if res is None:
        return None
    out = []
    for coeff, run in res:
        out.append((coeff, tuple(g.star() for g in reversed(run))))
    return out


def _find_peak(word: tuple[Generator, ...]) -> int | None:
    for i in range(len(word) - 1):
        if word[i].kind == "R" and word[i + 1].kind == "L":
            return i
    return None


def normalize_word(
    word: list[Generator] | tuple[Generator, ...], source: Weight | None = None
) -> AlgebraElement:
    """Reduce a composable generator word to the basis expansion."""
    word = tuple(word)
    if not word:
        if source is None:
            raise EngineError("cannot normalize an empty word without a profile")
        return element_of(BasisTriple(source, source, source))
    for g1, g2 in zip(word, word[1:]):
        if g1.target != g2.source:
            return zero()
    key = tuple((g.kind, g.base.arrows, (g.cup.left, g.cup.right) if g.cup else None) for g in word)
    return _normalize_cached(key, word)


_norm_cache: dict[tuple, AlgebraElement] = {}


def clear_caches() -> None:
    _norm_cache.clear()
    _pair_cache.clear()


def _normalize_cached(key: tuple, word: tuple[Generator, ...]) -> AlgebraElement:
    hit = _norm_cache.get(key)
    if hit is not None:
        return hit
    res = _normalize_impl(word)
    _norm_cache[key] = res
    return res


def _normalize_impl(word: tuple[Generator, ...]) -> AlgebraElement:
    if not word:
        raise EngineError("cannot normalize an empty word without a profile")
    src = word[0].source
    stripped = tuple(g for g in word if g.kind != "I")
    if not stripped:
        t = BasisTriple(src, src, src)
        return element_of(t)

    result = zero()
    stack: list[tuple[GaussInt, tuple[Generator, ...]]] = [(ONE, stripped)]
    fuel = _FUEL
    while stack:
        coeff, w = stack.pop()
        fuel -= 1
        if fuel <= 0:
            raise EngineError("rewriting fuel exhausted")

        i = _find_peak(w)
        if i is not None:
            for c2, rep in _peak_rewrite(w[i], w[i + 1]):
                stack.append((coeff * c2, w[:i] + tuple(rep) + w[i + 2 :]))
            continue

        # no peaks: word = descent run then ascent run
        split = next((j for j, g in enumerate(w) if g.kind == "R"), len(w))
        downs, ups = w[:split], w[split:]

        rep = _descent_defect(downs)
        if rep is not None:
            for c2, run in rep:
                stack.append((coeff * c2, run + ups))
            continue
        rep = _ascent_defect(ups)
        if rep is not None:
            for c2, run in rep:
                stack.append((coeff * c2, downs + run))
            continue

        result = result + _finalize(w, downs, ups).scaled(coeff)
    return result


def _finalize(w: tuple[Generator, ...], downs: tuple[Generator, ...], ups: tuple[Generator, ...]) -> AlgebraElement:
    nu = w[0].source
    lam = downs[-1].target if downs else nu
    mu = ups[-1].target if ups else lam

    down_cups = [g.cup for g in downs]
    if orient(nu, lam) is None:
        raise EngineError(f"descent {nu} -> {lam} is not oriented after reduction")
    want = canonical_flip_order(nu, lam)
    if [(c.left, c.right) for c in down_cups] != [(c.left, c.right) for c in want]:
        raise EngineError(f"descent run {[str(c) for c in down_cups]} is not canonical for {nu} -> {lam}")

    up_cups = [g.cup for g in reversed(ups)]
    if orient(mu, lam) is None:
        raise EngineError(f"ascent {lam} -> {mu} is not oriented after reduction")
    want_up = canonical_flip_order(mu, lam)
    if [(c.left, c.right) for c in up_cups] != [(c.left, c.right) for c in want_up]:
        raise EngineError(f"ascent run {[str(c) for c in up_cups]} is not canonical for {lam} -> {mu}")

    return element_of(BasisTriple(lam, mu, nu))


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

_pair_cache: dict[tuple[BasisTriple, BasisTriple], AlgebraElement] = {}


def _multiply_triples(t1: BasisTriple, t2: BasisTriple) -> AlgebraElement:
    """t1 . t2 with t2 applied first."""
    if t1.nu != t2.mu:
        return zero()
    key = (t1, t2)
    hit = _pair_cache.get(key)
    if hit is None:
        hit = normalize_word(word_of_triple(t2) + word_of_triple(t1), source=t2.nu)
        _pair_cache[key] = hit
    return hit


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Product in the algebra; the right factor acts first."""
    ranks = {t.lam.n for t in x.terms} | {t.lam.n for t in y.terms}
    if len(ranks) > 1:
        raise RankMismatchError(f"mixed ranks {sorted(ranks)}")
    out = zero()
    for t1, c1 in x.terms.items():
        for t2, c2 in y.terms.items():
            prod = _multiply_triples(t1, t2)
            if not prod.is_zero():
                out = out + prod.scaled(c1 * c2)
    return out


def generator_element(g: Generator) -> AlgebraElement:
    if g.kind == "I":
        return element_of(BasisTriple(g.base, g.base, g.base))
    lam = flip_cup(g.base, g.cup)
    if g.kind == "L":
        return element_of(BasisTriple(lam, lam, g.base))
    return element_of(BasisTriple(lam, g.base, lam))


def multiply_generators(gens: list[Generator]) -> AlgebraElement:
    """Product of a generator word, first applied first."""
    return normalize_word(gens)
