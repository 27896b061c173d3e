"""Decorated cup diagrams and the strand calculus of tiled diagrams.

Two independent constructions of the same diagram live here: the
direct pairing algorithm on a weight (:func:`cup_diagram`) and the
strand tracing of the tiling (:func:`trace_tiled_diagram`), in which
every tile holds a cup-cap generator and strands are followed through
the resulting planar wiring.  Their agreement is a standing test.

Vertices are integers 1..n; the half-integer picture coordinate of
vertex v is v - 1/2 and is used only for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .combinatorics import (
    DOWN,
    UP,
    TilePartition,
    Weight,
    tile_content,
    weight_to_tilepartition,
)


class CupDiagramError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Cup:
    left: int
    right: int
    decorated: bool

    def __post_init__(self) -> None:
        if not self.left < self.right:
            raise CupDiagramError(f"cup endpoints out of order: ({self.left},{self.right})")

    def __str__(self) -> str:
        return f"{'dec' if self.decorated else 'und'}({self.left},{self.right})"


@dataclass(frozen=True, order=True)
class Ray:
    vertex: int
    decorated: bool

    def __str__(self) -> str:
        return f"{'dec' if self.decorated else 'und'}ray({self.vertex})"


@dataclass(frozen=True, order=True)
class CupDiagram:
    n: int
    cups: tuple[Cup, ...]
    rays: tuple[Ray, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for c in self.cups:
            for v in (c.left, c.right):
                if not 1 <= v <= self.n or v in seen:
                    raise CupDiagramError(f"vertex {v} reused or out of range")
                seen.add(v)
        for r in self.rays:
            if not 1 <= r.vertex <= self.n or r.vertex in seen:
                raise CupDiagramError(f"vertex {r.vertex} reused or out of range")
            seen.add(r.vertex)
        if len(seen) != self.n:
            raise CupDiagramError("cups and rays do not cover every vertex")
        for a in self.cups:
            for b in self.cups:
                if a < b and _crossing(a, b):
                    raise CupDiagramError(f"cups {a} and {b} cross")
        if sum(1 for r in self.rays if r.decorated) > 1:
            raise CupDiagramError("more than one decorated ray")
        for c in self.cups:
            if c.decorated and not self._left_exposed(c.left):
                raise CupDiagramError(f"decorated cup {c} is not exposed to the left wall")
        for r in self.rays:
            if r.decorated and not self._left_exposed(r.vertex):
                raise CupDiagramError(f"decorated ray {r} is not exposed to the left wall")

    def _left_exposed(self, v: int) -> bool:
        return not any(not c.decorated and c.left < v < c.right for c in self.cups)

    def cup_at(self, vertex: int) -> Cup | None:
        for c in self.cups:
            if vertex in (c.left, c.right):
                return c
        return None

    def cup_with_ends(self, left: int, right: int) -> Cup | None:
        for c in self.cups:
            if (c.left, c.right) == (left, right):
                return c
        return None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "cups": [{"l": c.left, "r": c.right, "dec": c.decorated} for c in self.cups],
            "rays": [{"v": r.vertex, "dec": r.decorated} for r in self.rays],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CupDiagram":
        return cls(
            data["n"],
            tuple(sorted(Cup(c["l"], c["r"], c["dec"]) for c in data["cups"])),
            tuple(sorted(Ray(r["v"], r["dec"]) for r in data["rays"])),
        )

    def __str__(self) -> str:
        parts = [str(c) for c in self.cups] + [str(r) for r in self.rays]
        return "{" + ", ".join(parts) + "}"


def _crossing(a: Cup, b: Cup) -> bool:
    inside_a = (a.left < b.left < a.right, a.left < b.right < a.right)
    return inside_a[0] != inside_a[1]


def _make_diagram(n: int, cups: list[Cup], rays: list[Ray]) -> CupDiagram:
    return CupDiagram(n, tuple(sorted(cups)), tuple(sorted(rays)))


def cup_diagram(w: Weight) -> CupDiagram:
    """Pairing algorithm on a weight.

    Join neighbouring down-up pairs with plain cups until none remain
    (vertices already joined are skipped over), then join the leftover
    up-up pairs left to right with decorated cups, and finish with rays,
    decorating the ray at the single leftover up arrow if there is one.
    """
    return _cup_diagram_cached(w.arrows)


@lru_cache(maxsize=None)
def _cup_diagram_cached(arrows: str) -> CupDiagram:
    w = Weight(arrows)
    n = w.n
    free = list(range(1, n + 1))
    cups: list[Cup] = []
    changed = True
    while changed:
        changed = False
        for i in range(len(free) - 1):
            a, b = free[i], free[i + 1]
            if w[a] == DOWN and w[b] == UP:
                cups.append(Cup(a, b, False))
                del free[i : i + 2]
                changed = True
                break
    i = 0
    while i + 1 < len(free):
        a, b = free[i], free[i + 1]
        if w[a] == UP and w[b] == UP:
            cups.append(Cup(a, b, True))
            del free[i : i + 2]
        else:
            i += 1
    rays = [Ray(v, w[v] == UP) for v in free]
    return _make_diagram(n, cups, rays)


# ---------------------------------------------------------------------------
# strand tracing through the tiled diagram
# ---------------------------------------------------------------------------
#
# Each tile [r, c] is a diamond spanning picture x in [r-c, r-c+2],
# with its south corner at height r+c-2.  The row-1 corner of the
# staircase is at the bottom; the weight line runs along the top of
# the picture.  Inside a tile the generator contributes two arcs:
#
#   cup: joins the tile's NW and NE edges   (NW edge is shared with
#        the tile [r, c+1], NE with [r+1, c])
#   cap: joins the SW and SE edges          (SW shared with [r-1, c],
#        SE with [r, c-1])
#
# Both arcs of a content-0 tile carry a dot.  Outside the tiles,
# vertical wires at x = v - 1/2 connect the exposed edges to the frame.

CUP = "cup"
CAP = "cap"
CUPCAP = "cupcap"
EXTRA = "extra"

_TOP = "top"
_BOT = "bot"


@dataclass(frozen=True)
class StrandData:
    """One traced strand: its endpoints, dots mod 2 and tile incidences."""

    ends: tuple[tuple[str, int], tuple[str, int]]
    decorated: bool
    incidences: tuple[tuple[tuple[int, int], str], ...]  # ((r, c), shape)


@dataclass(frozen=True)
class TracedTiling:
    tiling: TilePartition
    diagram: CupDiagram
    strands: tuple[StrandData, ...]
    bottom_caps: tuple[Cup, ...]

    def strand_of_cup(self, cup: Cup) -> StrandData:
        want = {(_TOP, cup.left), (_TOP, cup.right)}
        for s in self.strands:
            if set(s.ends) == want:
                return s
        raise CupDiagramError(f"no strand for {cup}")


def _tile_edges(r: int, c: int) -> dict[str, tuple]:
    # canonical edge ids shared between neighbouring tiles
    return {
        "nw": ("e", r, c + 1, "se"),
        "ne": ("e", r + 1, c, "sw"),
        "sw": ("e", r, c, "sw"),
        "se": ("e", r, c, "se"),
    }


def trace_tiled_diagram(t: TilePartition) -> TracedTiling:
    return _trace_cached(t)


@lru_cache(maxsize=None)
def _trace_cached(t: TilePartition) -> TracedTiling:
    n = t.n
    tiles = sorted(t.tiles())
    present = set(tiles)

    # adjacency structure: each node is an edge id or a frame vertex
    links: dict[tuple, list[tuple[tuple, tuple[tuple[int, int], str] | None, int]]] = {}

    def connect(a: tuple, b: tuple, label: tuple[tuple[int, int], str] | None, dots: int) -> None:
        links.setdefault(a, []).append((b, label, dots))
        links.setdefault(b, []).append((a, label, dots))

    for (r, c) in tiles:
        e = _tile_edges(r, c)
        dots = 1 if tile_content(r, c) == 0 else 0
        connect(e["nw"], e["ne"], ((r, c), CUP), dots)
        connect(e["sw"], e["se"], ((r, c), CAP), dots)

    # wires: vertex v crosses the left half of diagonal v-1 tiles and the
    # right half of diagonal v-2 tiles; only exposed edges join the wire.
    for v in range(1, n + 1):
        crossings: list[tuple[float, tuple]] = []
        for (r, c) in tiles:
            d = r - c
            if d == v - 1:
                if (r, c + 1) not in present:  # nw edge exposed
                    crossings.append((r + c - 0.5, _tile_edges(r, c)["nw"]))
                if (r - 1, c) not in present:  # sw edge exposed
                    crossings.append((r + c - 1.5, _tile_edges(r, c)["sw"]))
            elif d == v - 2:
                if (r + 1, c) not in present:  # ne edge exposed
                    crossings.append((r + c - 0.5, _tile_edges(r, c)["ne"]))
                if (r, c - 1) not in present:  # se edge exposed
                    crossings.append((r + c - 1.5, _tile_edges(r, c)["se"]))
        crossings.sort(key=lambda x: -x[0])
        chain: list[tuple] = [(_TOP, v)] + [e for (_, e) in crossings] + [(_BOT, v)]
        if len(chain) % 2 != 0:
            raise CupDiagramError(f"odd wire crossing count at vertex {v} of {t}")
        for i in range(0, len(chain), 2):
            connect(chain[i], chain[i + 1], None, 0)

    # walk the strands from every frame vertex
    strands: list[StrandData] = []
    seen_nodes: set[tuple] = set()
    for start in [(_TOP, v) for v in range(1, n + 1)] + [(_BOT, v) for v in range(1, n + 1)]:
        if start in seen_nodes:
            continue
        path_nodes = [start]
        seen_nodes.add(start)
        dots = 0
        shapes: dict[tuple[int, int], set[str]] = {}
        order: list[tuple[int, int]] = []
        node, prev = start, None
        while True:
            nbrs = links.get(node, [])
            step = None
            for (other, label, d) in nbrs:
                if other != prev or (len(nbrs) == 1):
                    if other in path_nodes and other[0] not in (_TOP, _BOT):
                        continue
                    step = (other, label, d)
                    break
            if step is None:
                raise CupDiagramError(f"dead end while tracing {t} at {node}")
            nxt, label, d = step
            dots += d
            if label is not None:
                tile, shape = label
                if tile not in shapes:
                    shapes[tile] = set()
                    order.append(tile)
                shapes[tile].add(shape)
            if nxt[0] in (_TOP, _BOT):
                seen_nodes.add(nxt)
                end = nxt
                break
            path_nodes.append(nxt)
            prev, node = node, nxt
        inc = []
        for tile in order:
            got = shapes[tile]
            inc.append((tile, CUPCAP if got == {CUP, CAP} else got.pop()))
        strands.append(StrandData((start, end), dots % 2 == 1, tuple(inc)))
        seen_nodes.update(path_nodes)

    interior = {node for node in links if node[0] not in (_TOP, _BOT)}
    if not interior <= seen_nodes:
        raise CupDiagramError(f"closed loop in the tiling of {t}")

    cups: list[Cup] = []
    rays: list[Ray] = []
    bottom: list[Cup] = []
    for s in strands:
        (k0, v0), (k1, v1) = s.ends
        if k0 == _TOP and k1 == _TOP:
            cups.append(Cup(min(v0, v1), max(v0, v1), s.decorated))
        elif k0 == _BOT and k1 == _BOT:
            bottom.append(Cup(min(v0, v1), max(v0, v1), s.decorated))
        else:
            top_v = v0 if k0 == _TOP else v1
            rays.append(Ray(top_v, s.decorated))
    diagram = _make_diagram(n, cups, rays)
    return TracedTiling(t, diagram, tuple(strands), tuple(sorted(bottom)))


# ---------------------------------------------------------------------------
# cup statistics and relations
# ---------------------------------------------------------------------------


def breadth(p: Cup) -> int:
    """Size statistic of a cup; counts its local cups and cup-caps."""
    if p.decorated:
        return (p.right + p.left - 1) // 2
    return (p.right - p.left + 1) // 2


def covers(p: Cup, q: Cup) -> bool:
    """True when q nests strictly inside p."""
    return p.left < q.left and p.right > q.right


def doubly_covers(p: Cup, q: Cup) -> bool:
    """True when p is decorated and q lies entirely to its left."""
    return p.decorated and q.right < p.left


def commute(p: Cup, q: Cup, d: CupDiagram) -> bool:
    """Whether the two cups can be handled independently.

    Nested or separated-by-a-decoration pairs commute only when a third
    cup witnesses enough room between them; unrelated pairs always do.
    """
    if p == q:
        raise CupDiagramError("commute needs two distinct cups")
    others = [r for r in d.cups if r not in (p, q)]
    if covers(p, q):
        return any(covers(p, r) and covers(r, q) for r in others)
    if covers(q, p):
        return any(covers(q, r) and covers(r, p) for r in others)
    if doubly_covers(p, q):
        return any(
            (doubly_covers(p, r) and covers(r, q)) or (doubly_covers(p, r) and doubly_covers(r, q))
            for r in others
        )
    if doubly_covers(q, p):
        return any(
            (doubly_covers(q, r) and covers(r, p)) or (doubly_covers(q, r) and doubly_covers(r, p))
            for r in others
        )
    return True


def anticlockwise_in_own(w: Weight, p: Cup) -> bool:
    """Cup orientation within the diagram of its own weight (always true)."""
    if p.decorated:
        return w[p.left] == UP and w[p.right] == UP
    return w[p.left] == DOWN and w[p.right] == UP


class FlipError(ValueError):
    pass


def flip_cup(m: Weight, p: Cup) -> Weight:
    """Reflect both endpoint arrows of an anticlockwise cup of ``m``.

    Plain cups trade down-up for up-down; decorated cups trade up-up
    for down-down.  Rays and already-flipped cups are rejected.
    """
    d = cup_diagram(m)
    if p not in d.cups:
        raise FlipError(f"{p} is not a cup of the diagram of {m}")
    if p.decorated:
        return m.with_arrows({p.left: DOWN, p.right: DOWN})
    return m.with_arrows({p.left: UP, p.right: DOWN})


def unflip_cup(m: Weight, p: Cup) -> Weight:
    """Inverse of :func:`flip_cup`: reinstates the anticlockwise labels."""
    if p.decorated:
        w = m.with_arrows({p.left: UP, p.right: UP})
    else:
        w = m.with_arrows({p.left: DOWN, p.right: UP})
    if p not in cup_diagram(w).cups:
        raise FlipError(f"{p} is not a cup of the diagram of {w}")
    return w


def adjacent(p: Cup, t: Cup) -> bool:
    """Exactly one shared endpoint."""
    return len({p.left, p.right} & {t.left, t.right}) == 1


def adjacent_cups(m: Weight, p: Cup) -> list[Cup]:
    """Cups of the flipped diagram sharing exactly one vertex with p."""
    lam = flip_cup(m, p)
    return [t for t in cup_diagram(lam).cups if adjacent(p, t)]


def generated_cup(p: Cup, t: Cup, m: Weight) -> Cup | None:
    """The cup of ``m``'s diagram aligned with the adjacent cup ``t``.

    Undefined (None) for the inner cup of a nested non-commuting
    adjacent pair, and absent when no aligned cup exists.
    """
    d = cup_diagram(m)
    if p not in d.cups:
        raise CupDiagramError(f"{p} not in the diagram of {m}")
    if not adjacent(p, t):
        raise CupDiagramError(f"{p} and {t} are not adjacent")
    others = adjacent_cups(m, p)
    if t not in others:
        raise CupDiagramError(f"{t} is not an adjacent cup of {p} in the flip of {m}")
    if len(others) == 2:
        a, b = others
        inner, outer = (a, b) if covers(b, a) else ((b, a) if covers(a, b) else (None, None))
        if inner is not None and not commute(inner, outer, cup_diagram(flip_cup(m, p))) and t == inner:
            return None
    for u in d.cups:
        if u != p and (u.left == t.left or u.right == t.right):
            return u
    return None


@dataclass(frozen=True)
class DyckPath:
    """Tiles removed from the tiling when one cup is flipped."""

    generating_cup: Cup
    tiles: tuple[tuple[tuple[int, int], str], ...]

    def tile_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(tile for tile, _ in self.tiles)

    def contents(self) -> tuple[int, ...]:
        return tuple(sorted(tile_content(r, c) for (r, c), _ in self.tiles))

    @property
    def first(self) -> int:
        return tile_content(*self.tiles[0][0])

    @property
    def last(self) -> int:
        return tile_content(*self.tiles[-1][0])


def dyck_path(p: Cup, t: TilePartition) -> DyckPath:
    """Tile set whose deletion realizes the flip of ``p``, with shapes.

    The strand of ``p`` contributes its local cups, caps and cup-caps;
    each cup-cap additionally drags along the untouched tile directly
    below it.  Incidences are ordered along the strand from the left
    endpoint; the trailing entry is always the rightmost tile.
    """
    traced = trace_tiled_diagram(t)
    target = traced.diagram.cup_with_ends(p.left, p.right)
    if target is None or target != p:
        raise CupDiagramError(f"{p} is not a cup of the trace of {t}")
    strand = traced.strand_of_cup(p)
    inc = list(strand.incidences)
    # orient the incidence list to start at the left endpoint
    first_end = strand.ends[0][1]
    if first_end != p.left:
        inc.reverse()
    out: list[tuple[tuple[int, int], str]] = []
    for tile, shape in inc:
        out.append((tile, shape))
        if shape == CUPCAP:
            r, c = tile
            extra = (r - 1, c - 1)
            if not t.contains(*extra):
                raise CupDiagramError(f"missing support tile {extra} below cup-cap in {t}")
            out.append((extra, EXTRA))
    return DyckPath(p, tuple(out))
