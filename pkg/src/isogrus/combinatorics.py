"""Weights, tile-partitions and the bijection between them.

A *weight* is a row of n arrows (up/down) with an even number of up
arrows; it indexes a minimal coset representative.  A *tile-partition*
is the staircase tiling carrying the same data: its rows record how
many tiles sit in each row of the admissible region.  Tiles are cells
[r, c] with 1 <= c <= r, a cell being present only if the cells [r-1, c]
and [r, c-1] that support it are present (or fall outside the region).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

UP = "u"
DOWN = "d"


class InvalidWeightError(ValueError):
    pass


class InvalidTilingError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Weight:
    """A length-n sequence of arrows, serialized as a string over {u, d}."""

    arrows: str

    def __post_init__(self) -> None:
        if len(self.arrows) < 1:
            raise InvalidWeightError("rank must be at least 1")
        bad = set(self.arrows) - {UP, DOWN}
        if bad:
            raise InvalidWeightError(f"invalid arrow symbols: {sorted(bad)}")
        if self.arrows.count(UP) % 2 != 0:
            raise InvalidWeightError(f"odd number of up arrows in {self.arrows!r}")

    @property
    def n(self) -> int:
        return len(self.arrows)

    def __getitem__(self, vertex: int) -> str:
        """Arrow at vertex ``vertex`` (1-based)."""
        if not 1 <= vertex <= self.n:
            raise IndexError(f"vertex {vertex} out of range 1..{self.n}")
        return self.arrows[vertex - 1]

    def is_up(self, vertex: int) -> bool:
        return self[vertex] == UP

    def with_arrows(self, changes: dict[int, str]) -> "Weight":
        chars = list(self.arrows)
        for vertex, arrow in changes.items():
            chars[vertex - 1] = arrow
        return Weight("".join(chars))

    def swapped(self, i: int) -> "Weight":
        """Exchange the arrows at vertices i and i+1."""
        a, b = self[i], self[i + 1]
        return self.with_arrows({i: b, i + 1: a})

    def __str__(self) -> str:
        return self.arrows

    def to_json(self) -> dict:
        return {"n": self.n, "arrows": self.arrows}

    @classmethod
    def from_json(cls, data: dict) -> "Weight":
        w = cls(data["arrows"])
        if w.n != data["n"]:
            raise InvalidWeightError("rank field disagrees with arrow string")
        return w


def identity_weight(n: int) -> Weight:
    if n < 1:
        raise InvalidWeightError("rank must be at least 1")
    return Weight(DOWN * n)


def enumerate_weights(n: int) -> list[Weight]:
    """All rank-n weights with an even up-count, lexicographically.

    The count is 2^(n-1): one for each subset of even size.
    """
    if n < 1:
        raise InvalidWeightError("rank must be at least 1")
    out = []
    for bits in range(1 << n):
        s = bin(bits).count("1")
        if s % 2 == 0:
            arrows = "".join(UP if bits & (1 << (n - 1 - i)) else DOWN for i in range(n))
            out.append(Weight(arrows))
    out.sort(key=lambda w: w.arrows)
    return out


@dataclass(frozen=True, order=True)
class TilePartition:
    """Row-length vector of a staircase tiling, plus the ambient rank."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidTilingError("rank must be at least 1")
        if any(r <= 0 for r in self.rows):
            raise InvalidTilingError("row lengths must be positive")
        if len(self.rows) > self.n:
            raise InvalidTilingError("more rows than the rank allows")
        for r, length in enumerate(self.rows, start=1):
            if length > r:
                raise InvalidTilingError(f"row {r} has {length} tiles but holds at most {r}")
        # every tile must be supported by the tile below-left and below-right
        for r in range(2, len(self.rows) + 1):
            need = min(self.rows[r - 1], r - 1)
            if self.rows[r - 2] < need:
                raise InvalidTilingError(f"row {r} overhangs row {r - 1}")

    @property
    def length(self) -> int:
        """Number of tiles."""
        return sum(self.rows)

    def tiles(self) -> frozenset[tuple[int, int]]:
        return frozenset((r, c) for r, length in enumerate(self.rows, start=1) for c in range(1, length + 1))

    def contains(self, r: int, c: int) -> bool:
        return 1 <= c <= r and r <= len(self.rows) and self.rows[r - 1] >= c

    def to_json(self) -> dict:
        return {"n": self.n, "rows": list(self.rows)}

    @classmethod
    def from_json(cls, data: dict) -> "TilePartition":
        return cls(data["n"], tuple(data["rows"]))

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.rows) + ")" if self.rows else "()"


def empty_partition(n: int) -> TilePartition:
    return TilePartition(n, ())


def tile_content(r: int, c: int) -> int:
    """Generator index attached to the tile [r, c].

    Diagonal tiles alternate between the two fork generators; the tile
    [r, c] with r > c carries the index r - c + 1.
    """
    if not 1 <= c <= r:
        raise InvalidTilingError(f"cell [{r},{c}] lies outside the admissible region")
    if r == c:
        return 0 if r % 2 == 1 else 1
    return r - c + 1


def addable_removable(t: TilePartition) -> tuple[set[tuple[int, int]], set[tuple[int, int]]]:
    """Addable and removable tiles of ``t`` within rank ``t.n``.

    A tile is addable (removable) when adding (deleting) it leaves a
    valid tile-partition.  There is at most one of each per content.
    """
    rows = list(t.rows)
    addable: set[tuple[int, int]] = set()
    removable: set[tuple[int, int]] = set()
    for r in range(1, t.n + 1):
        cur = rows[r - 1] if r <= len(rows) else 0
        # candidate addition at the end of row r
        c = cur + 1
        if c <= r:
            new_rows = rows + [0] * (r - len(rows))
            new_rows[r - 1] = c
            if _valid_rows(new_rows, t.n):
                addable.add((r, c))
        # candidate removal of the last tile of row r
        if cur >= 1:
            new_rows = rows.copy()
            new_rows[r - 1] = cur - 1
            if _valid_rows(new_rows, t.n):
                removable.add((r, cur))
    return addable, removable


def _valid_rows(rows: list[int], n: int) -> bool:
    trimmed = list(rows)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    if any(x == 0 for x in trimmed):
        return False
    try:
        TilePartition(n, tuple(trimmed))
    except InvalidTilingError:
        return False
    return True


def bruhat_leq(a: TilePartition, b: TilePartition) -> bool:
    """Containment order on tilings of one rank."""
    if a.n != b.n:
        raise InvalidTilingError(f"rank mismatch: {a.n} vs {b.n}")
    ra, rb = a.rows, b.rows
    if len(ra) > len(rb):
        return False
    return all(ra[i] <= rb[i] for i in range(len(ra)))


def _removal_site(w: Weight) -> int | None:
    """Content of some removable tile, read off the arrow pattern.

    The tiling behind ``w`` has a removable tile of content k >= 1
    exactly when vertices (k, k+1) read down-up, and one of content 0
    exactly when vertices (1, 2) read up-up.  Returns the largest such
    k so that peeling is deterministic; None on the identity weight.
    """
    best = None
    for k in range(1, w.n):
        if w[k] == DOWN and w[k + 1] == UP:
            best = k
    if best is not None:
        return best
    if w.n >= 2 and w[1] == UP and w[2] == UP:
        return 0
    return None


def _apply_generator(w: Weight, k: int) -> Weight:
    """Act by the k-th simple generator on the weight."""
    if k == 0:
        a, b = w[1], w[2]
        if (a, b) == (UP, UP):
            return w.with_arrows({1: DOWN, 2: DOWN})
        if (a, b) == (DOWN, DOWN):
            return w.with_arrows({1: UP, 2: UP})
        return w
    return w.swapped(k)


def weight_to_tilepartition(w: Weight) -> TilePartition:
    """Tiling of the coset labelled by ``w``.

    Works by repeatedly detaching a removable tile (witnessed by a
    down-up pattern, or an up-up pattern at the wall) until the
    identity weight remains, then rebuilding the rows in reverse.
    """
    return _weight_to_tiles_cached(w.arrows)


@lru_cache(maxsize=None)
def _weight_to_tiles_cached(arrows: str) -> TilePartition:
    w = Weight(arrows)
    n = w.n
    contents: list[int] = []
    cur = w
    while True:
        k = _removal_site(cur)
        if k is None:
            break
        contents.append(k)
        cur = _apply_generator(cur, k)
    if cur.arrows != DOWN * n:
        raise InvalidWeightError(f"weight {arrows!r} did not reduce to the identity")
    rows: list[int] = []
    for k in reversed(contents):
        r = _addable_row_of_content(rows, n, k)
        if r is None:
            raise InvalidWeightError(f"no addable tile of content {k} while rebuilding {arrows!r}")
        if r > len(rows):
            rows.extend([0] * (r - len(rows)))
        rows[r - 1] += 1
    return TilePartition(n, tuple(rows))


def _addable_row_of_content(rows: list[int], n: int, k: int) -> int | None:
    for r in range(1, n + 1):
        cur = rows[r - 1] if r <= len(rows) else 0
        c = cur + 1
        if c > r or tile_content(r, c) != k:
            continue
        new_rows = rows + [0] * (r - len(rows))
        new_rows[r - 1] = c
        if _valid_rows(new_rows, n):
            return r
    return None


def tilepartition_to_weight(t: TilePartition) -> Weight:
    """Inverse of :func:`weight_to_tilepartition`.

    Applies the generator of each tile, column by column, to the
    identity weight.  Any column-reading order of the tiles yields a
    reduced word for the same coset, so the result is well defined.
    """
    w = identity_weight(t.n)
    for k in _column_word(t):
        nxt = _apply_generator(w, k)
        if nxt == w:
            raise InvalidTilingError(f"column word of {t} is not reduced at generator {k}")
        w = nxt
    return w


def _column_word(t: TilePartition) -> Iterator[int]:
    ncols = max(t.rows) if t.rows else 0
    for c in range(1, ncols + 1):
        for r in range(c, len(t.rows) + 1):
            if t.rows[r - 1] >= c:
                yield tile_content(r, c)


def enumerate_tilepartitions(n: int) -> list[TilePartition]:
    """The 2^(n-1) tilings of rank n, in weight order."""
    return [weight_to_tilepartition(w) for w in enumerate_weights(n)]
