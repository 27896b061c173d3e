"""Cell modules, the generator action and layered submodule diagrams.

The module over a fixed bottom weight has one basis vector for every
weight orienting over it, graded by orientation degree.  Generators act
through the algebra, discarding terms whose valley drops below the
bottom weight; the surviving coefficients connect consecutive layers
and assemble into a layered graph with simple head and socle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    AlgebraElement,
    BasisTriple,
    Generator,
    element_of,
    generator_element,
    multiply,
)
from .combinatorics import Weight, bruhat_leq, weight_to_tilepartition
from .cups import Cup, cup_diagram, flip_cup
from .gaussian import GaussInt
from .orientation import dp_set, socle_weight


@dataclass(frozen=True)
class CellModule:
    lam: Weight
    basis: tuple[tuple[Weight, int], ...]  # (mu, degree), degree-sorted

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def layers(self) -> list[list[Weight]]:
        kmax = max(d for _, d in self.basis)
        return [[m for m, d in self.basis if d == j] for j in range(kmax + 1)]


def cell_module(lam: Weight) -> CellModule:
    return CellModule(lam, tuple(dp_set(lam)))


def act(g: Generator, u: dict[Weight, GaussInt], lam: Weight) -> dict[Weight, GaussInt]:
    """Left action of a generator on a combination of module vectors."""
    out: dict[Weight, GaussInt] = {}
    ge = generator_element(g)
    for mu, c in u.items():
        vec = element_of(BasisTriple(lam, mu, lam))
        prod = multiply(ge, vec)
        for t, c2 in prod.terms.items():
            if t.lam != lam:
                if not bruhat_leq(weight_to_tilepartition(t.lam), weight_to_tilepartition(lam)):
                    raise AssertionError(f"cell action left the ideal: {t} under {lam}")
                continue  # strictly lower cell, discarded in the quotient
            if t.nu != lam:
                raise AssertionError(f"unexpected source profile {t} in cell action")
            s = out.get(t.mu, GaussInt()) + c * c2
            if s:
                out[t.mu] = s
            else:
                out.pop(t.mu, None)
    return out


def act_on_vector(g: Generator, mu: Weight, lam: Weight) -> dict[Weight, GaussInt]:
    return act(g, {mu: GaussInt(1, 0)}, lam)


@dataclass(frozen=True)
class AlperinEdge:
    src: Weight  # in layer k
    dst: Weight  # in layer k+1
    cup: Cup
    added: bool  # dst = src + cup when True, else dst = src - cup
    coeff: GaussInt


@dataclass(frozen=True)
class AlperinGraph:
    lam: Weight
    layers: tuple[tuple[Weight, ...], ...]
    edges: tuple[AlperinEdge, ...]

    @property
    def socle(self) -> Weight:
        (only,) = self.layers[-1]
        return only

    @property
    def head(self) -> Weight:
        (only,) = self.layers[0]
        return only


def _combinatorial_edges(lam: Weight, layers: list[list[Weight]]) -> list[tuple[Weight, Weight, Cup, bool]]:
    out = []
    for k in range(len(layers) - 1):
        for mu in layers[k]:
            for nu in layers[k + 1]:
                for p in cup_diagram(nu).cups:
                    if flip_cup(nu, p) == mu:  # mu = nu - p, edge adds p
                        out.append((mu, nu, p, True))
                for p in cup_diagram(mu).cups:
                    if flip_cup(mu, p) == nu:  # nu = mu - p, edge removes p
                        out.append((mu, nu, p, False))
    return out


def alperin_diagram(lam: Weight, verify_action: bool = True) -> AlperinGraph:
    """Layered extension graph of the module over ``lam``.

    Edges come from single-cup moves between consecutive layers; each
    is confirmed against the generator action, whose coefficient (unit
    by construction) is recorded.
    """
    cm = cell_module(lam)
    layers = cm.layers()
    edges = []
    for mu, nu, p, added in _combinatorial_edges(lam, layers):
        if added:
            from .algebra import raise_

            g = raise_(nu, p)
        else:
            from .algebra import lower

            g = lower(mu, p)
        coeff = GaussInt(1, 0)
        if verify_action:
            image = act_on_vector(g, mu, lam)
            coeff = image.get(nu, GaussInt())
            if not coeff:
                raise AssertionError(f"combinatorial edge {mu}->{nu} not confirmed by the action")
            if (coeff.re, coeff.im) not in ((1, 0), (-1, 0)):
                raise AssertionError(f"edge {mu}->{nu} has non-unit coefficient {coeff}")
        edges.append(AlperinEdge(mu, nu, p, added, coeff))
    return AlperinGraph(lam, tuple(tuple(l) for l in layers), tuple(edges))


def action_edges(lam: Weight) -> set[tuple[Weight, Weight]]:
    """Edges found by sweeping every degree-1 generator over the module."""
    cm = cell_module(lam)
    degs = dict(cm.basis)
    out = set()
    from .algebra import generators

    for g in generators(lam.n):
        if g.kind == "I":
            continue
        for mu in degs:
            if g.source != mu:
                continue
            for nu, c in act_on_vector(g, mu, lam).items():
                if degs[nu] == degs[mu] + 1 and c:
                    out.add((mu, nu))
    return out


def radical_filtration(lam: Weight, validate: bool = True) -> list[list[Weight]]:
    """Grading layers; equal to the radical and socle filtrations.

    Validation checks that degree-1 generators only push layer k into
    layer k+1 and that every vector below the top layer admits some
    raising out of its layer.
    """
    cm = cell_module(lam)
    layers = cm.layers()
    if validate:
        degs = dict(cm.basis)
        reached: dict[Weight, set[Weight]] = {m: set() for m in degs}
        from .algebra import generators

        for g in generators(lam.n):
            if g.kind == "I":
                continue
            for mu in degs:
                if g.source != mu:
                    continue
                for nu, c in act_on_vector(g, mu, lam).items():
                    if not c:
                        continue
                    if degs[nu] != degs[mu] + 1:
                        raise AssertionError(f"action does not raise the layer: {mu} -> {nu}")
                    reached[mu].add(nu)
        kmax = len(layers) - 1
        for mu, d in degs.items():
            if d < kmax and not reached[mu]:
                raise AssertionError(f"{mu} in layer {d} admits no raising action")
        assert layers[-1] == [socle_weight(lam)]
    return layers
