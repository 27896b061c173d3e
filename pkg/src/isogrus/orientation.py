"""Orientations of cup diagrams, degrees and the graded leading terms.

An oriented pair (mu, lambda) places lambda's arrows on top of mu's cup
diagram: plain cups must carry one arrow of each kind, decorated cups
two equal arrows, plain rays a down arrow and the decorated ray an up
arrow.  The degree counts the clockwise cups (right vertex down), which
are exactly the cups flipped in passing from mu to lambda.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .combinatorics import DOWN, UP, Weight, enumerate_weights
from .cups import Cup, CupDiagram, cup_diagram, unflip_cup


@dataclass(frozen=True)
class OrientedPair:
    mu: Weight
    lam: Weight
    degree: int
    flipped: tuple[Cup, ...]


def _cup_clockwise(w: Weight, c: Cup) -> bool | None:
    """True/False for a consistently oriented cup, None when invalid."""
    a, b = w[c.left], w[c.right]
    if c.decorated:
        if a == b == UP:
            return False
        if a == b == DOWN:
            return True
        return None
    if (a, b) == (DOWN, UP):
        return False
    if (a, b) == (UP, DOWN):
        return True
    return None


def orient(mu: Weight, lam: Weight) -> OrientedPair | None:
    """Oriented pair data, or None when some strand label is illegal."""
    if mu.n != lam.n:
        raise ValueError(f"rank mismatch: {mu.n} vs {lam.n}")
    return _orient_cached(mu.arrows, lam.arrows)


@lru_cache(maxsize=None)
def _orient_cached(mu_arrows: str, lam_arrows: str) -> OrientedPair | None:
    mu, lam = Weight(mu_arrows), Weight(lam_arrows)
    d = cup_diagram(mu)
    flipped = []
    for c in d.cups:
        cw = _cup_clockwise(lam, c)
        if cw is None:
            return None
        if cw:
            flipped.append(c)
    for r in d.rays:
        want = UP if r.decorated else DOWN
        if lam[r.vertex] != want:
            return None
    return OrientedPair(mu, lam, len(flipped), tuple(flipped))


def degree(mu: Weight, lam: Weight) -> int:
    op = orient(mu, lam)
    if op is None:
        raise ValueError(f"{mu} does not orient under {lam}")
    return op.degree


@dataclass(frozen=True)
class KLPolynomial:
    """q^k or zero; the leading combinatorics never produces longer sums."""

    power: int | None  # None encodes the zero polynomial

    def is_zero(self) -> bool:
        return self.power is None

    def __str__(self) -> str:
        if self.power is None:
            return "0"
        if self.power == 0:
            return "1"
        if self.power == 1:
            return "q"
        return f"q^{self.power}"

    def evaluate(self, q: int = 1) -> int:
        return 0 if self.power is None else q**self.power


def kl_polynomial(lam: Weight, mu: Weight) -> KLPolynomial:
    op = orient(mu, lam)
    return KLPolynomial(None if op is None else op.degree)


def dp_set(lam: Weight) -> list[tuple[Weight, int]]:
    """All mu whose diagram orients under lam, with degrees.

    Candidates are generated from lam itself: every admissible diagram
    over lam's arrows is tried, rather than scanning all weights.
    """
    return list(_dp_cached(lam.arrows))


@lru_cache(maxsize=None)
def _dp_cached(lam_arrows: str) -> tuple[tuple[Weight, int], ...]:
    lam = Weight(lam_arrows)
    out = []
    for mu in _candidate_sources(lam):
        op = orient(mu, lam)
        if op is not None:
            out.append((mu, op.degree))
    out.sort(key=lambda t: (t[1], t[0].arrows))
    return tuple(out)


def _candidate_sources(lam: Weight) -> list[Weight]:
    """Weights whose diagrams could possibly orient under ``lam``.

    Builds every non-crossing diagram whose per-strand labels are legal
    for lam and reads off its base weight; validity of the diagram as
    an actual cup diagram is checked by the caller via orient().
    """
    n = lam.n
    results: set[Weight] = set()

    def base_weight(cups: list[Cup], rays: list[tuple[int, bool]]) -> Weight:
        chars = [DOWN] * n
        for c in cups:
            if c.decorated:
                chars[c.left - 1] = UP
                chars[c.right - 1] = UP
            else:
                chars[c.left - 1] = DOWN
                chars[c.right - 1] = UP
        for v, dec in rays:
            chars[v - 1] = UP if dec else DOWN
        return Weight("".join(chars))

    def extend(vertices: list[int], cups: list[Cup], rays: list[tuple[int, bool]]) -> None:
        if not vertices:
            try:
                results.add(base_weight(cups, rays))
            except ValueError:
                pass
            return
        v = vertices[0]
        rest = vertices[1:]
        # ray at v
        lab = lam[v]
        extend(rest, cups, rays + [(v, lab == UP)])
        # cup from v to a later vertex, splitting the remainder
        for i, u in enumerate(rest):
            inner, outer = rest[:i], rest[i + 1 :]
            pair = (lam[v], lam[u])
            for dec in (False, True):
                if dec and pair not in ((UP, UP), (DOWN, DOWN)):
                    continue
                if not dec and pair not in ((DOWN, UP), (UP, DOWN)):
                    continue
                try:
                    c = Cup(v, u, dec)
                except ValueError:
                    continue
                # inner vertices must pair among themselves (non-crossing)
                extend_inner(inner, outer, cups + [c], rays)

    def extend_inner(inner: list[int], outer: list[int], cups: list[Cup], rays: list[tuple[int, bool]]) -> None:
        if not inner:
            extend(outer, cups, rays)
            return
        v = inner[0]
        rest = inner[1:]
        extend_inner(rest, outer, cups, rays + [(v, lam[v] == UP)])
        for i, u in enumerate(rest):
            pair = (lam[v], lam[u])
            for dec in (False, True):
                if dec and pair not in ((UP, UP), (DOWN, DOWN)):
                    continue
                if not dec and pair not in ((DOWN, UP), (UP, DOWN)):
                    continue
                try:
                    c = Cup(v, u, dec)
                except ValueError:
                    continue
                extend_inner(rest[:i], rest[i + 1 :] + outer, cups + [c], rays)
        # NOTE: a vertex inside a cup may also carry a ray in general
        # diagrams, but such diagrams never validate; pruning is safe.

    extend(list(range(1, n + 1)), [], [])
    return sorted(results, key=lambda w: w.arrows)


def dp_k(lam: Weight, k: int) -> list[Weight]:
    return [mu for mu, d in dp_set(lam) if d == k]


def dp_layers(lam: Weight) -> list[list[Weight]]:
    """DP stratified by degree, from 0 up to the socle layer."""
    pairs = dp_set(lam)
    kmax = max(d for _, d in pairs)
    return [[mu for mu, d in pairs if d == j] for j in range(kmax + 1)]


def socle_weight(lam: Weight) -> Weight:
    """The unique source of the top-degree orientation over ``lam``.

    Built by pairing up-down vertices with plain cups, then down-down
    pairs (across plain cups only) with decorated cups, and closing the
    leftover tail: an optional down vertex hooks the first leftover up
    arrow anticlockwise, remaining up pairs close decorated, and a last
    single vertex becomes a ray.
    """
    n = lam.n
    free = list(range(1, n + 1))
    cups: list[Cup] = []
    clockwise: set[Cup] = set()

    # step 1: up-down neighbours, clockwise plain cups
    changed = True
    while changed:
        changed = False
        for i in range(len(free) - 1):
            a, b = free[i], free[i + 1]
            if lam[a] == UP and lam[b] == DOWN:
                c = Cup(a, b, False)
                cups.append(c)
                clockwise.add(c)
                del free[i : i + 2]
                changed = True
                break

    # step 2: down-down pairs separated only by plain cups
    def only_plain_between(a: int, b: int) -> bool:
        if any(a < v < b for v in free):
            return False
        return not any(c2.decorated and a < c2.left < b for c2 in cups)

    changed = True
    while changed:
        changed = False
        for i in range(len(free) - 1):
            a, b = free[i], free[i + 1]
            if lam[a] == DOWN and lam[b] == DOWN and only_plain_between(a, b):
                c = Cup(a, b, True)
                cups.append(c)
                clockwise.add(c)
                del free[i : i + 2]
                changed = True
                break

    # step 3: the tail is at most one down vertex then a run of ups
    rays: list[tuple[int, bool]] = []
    downs = [v for v in free if lam[v] == DOWN]
    ups = [v for v in free if lam[v] == UP]
    if len(downs) > 1 or (downs and ups and downs[0] > ups[0]):
        raise AssertionError(f"unexpected tail pattern in socle construction for {lam}")
    if downs and ups:
        cups.append(Cup(downs[0], ups[0], False))  # anticlockwise
        free = [v for v in free if v not in (downs[0], ups[0])]
        ups = ups[1:]
    elif downs:
        rays.append((downs[0], False))
        free = [v for v in free if v != downs[0]]
    while len(ups) >= 2:
        cups.append(Cup(ups[0], ups[1], True))  # anticlockwise up-up
        ups = ups[2:]
    if ups:
        rays.append((ups[0], True))

    # read the base weight of the constructed diagram
    mu = lam
    for c in clockwise:
        mu = unflip_cup_labels(mu, c)
    return mu


def unflip_cup_labels(m: Weight, c: Cup) -> Weight:
    if c.decorated:
        return m.with_arrows({c.left: UP, c.right: UP})
    return m.with_arrows({c.left: DOWN, c.right: UP})


def max_degree(lam: Weight) -> int:
    return max(d for _, d in dp_set(lam))


def dp_brute(lam: Weight) -> list[tuple[Weight, int]]:
    """Independent oracle: scan every weight of the rank."""
    out = []
    for mu in enumerate_weights(lam.n):
        op = orient(mu, lam)
        if op is not None:
            out.append((mu, op.degree))
    out.sort(key=lambda t: (t[1], t[0].arrows))
    return out
