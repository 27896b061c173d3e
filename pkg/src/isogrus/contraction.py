"""Rank-lowering maps: deleting a minimal cup and its two vertices.

A weight is contractible at k when its tiling has a removable tile of
content k; on the diagram side this is witnessed by the smallest
possible cup sitting at the vertices (k, k+1), decorated exactly when
k = 0 (then at vertices (1, 2)).  Contracting deletes the two vertices,
shifts the tail left and repairs the up-arrow parity at the first
vertex.  On the algebra side the map multiplies each elementary step
by 1, -1 or a fourth root of unity read off the step's removed tiles.
"""

from __future__ import annotations

from .combinatorics import (
    DOWN,
    TilePartition,
    UP,
    Weight,
    addable_removable,
    tile_content,
    weight_to_tilepartition,
)
from .cups import CAP, CUP, Cup, cup_diagram, dyck_path, flip_cup
from .gaussian import I, ONE, GaussInt
from .algebra import (
    AlgebraElement,
    BasisTriple,
    EngineError,
    Generator,
    canonical_chain,
    element_of,
    zero,
)


class ContractionError(ValueError):
    pass


def contractible_sites(lam: Weight) -> set[int]:
    """All k at which the tiling of ``lam`` has a removable content-k tile."""
    t = weight_to_tilepartition(lam)
    _, rem = addable_removable(t)
    return {tile_content(r, c) for (r, c) in rem}


def witness_cup(lam: Weight, k: int) -> Cup:
    """The minimal cup recording contractibility at k."""
    d = cup_diagram(lam)
    if k == 0:
        c = d.cup_with_ends(1, 2)
        if c is not None and c.decorated:
            return c
    else:
        c = d.cup_with_ends(k, k + 1)
        if c is not None and not c.decorated:
            return c
    raise ContractionError(f"{lam} is not contractible at {k}")


def _deleted_vertices(k: int) -> tuple[int, int]:
    return (1, 2) if k == 0 else (k, k + 1)


def phi_weight(lam: Weight, k: int) -> Weight:
    """Contract at a valid site; bijective onto the rank-(n-2) weights."""
    if k not in contractible_sites(lam):
        raise ContractionError(f"{lam} is not contractible at {k}")
    return _phi_weight_raw(lam, k)


def _phi_weight_raw(lam: Weight, k: int) -> Weight:
    a, b = _deleted_vertices(k)
    chars = [lam[v] for v in range(1, lam.n + 1) if v not in (a, b)]
    if chars and chars.count(UP) % 2 != 0:
        chars[0] = UP if chars[0] == DOWN else DOWN
    if not chars:
        raise ContractionError("cannot contract below rank 1")
    return Weight("".join(chars))


def dilate_weight(w: Weight, k: int) -> Weight:
    """Inverse of :func:`phi_weight` on weights, for round-trip checks."""
    a, _ = _deleted_vertices(k)
    ins = (UP, UP) if k == 0 else (DOWN, UP)
    chars = list(w.arrows)
    chars[a - 1 : a - 1] = list(ins)
    if "".join(chars).count(UP) % 2 != 0:
        pos = 0 if a != 1 else 2
        chars[pos] = UP if chars[pos] == DOWN else DOWN
    out = Weight("".join(chars))
    if k not in contractible_sites(out):
        raise ContractionError(f"dilation of {w} at {k} is not contractible")
    return out


def phi_cup(p: Cup, k: int, lam: Weight) -> Cup:
    """Image of a non-witness cup of ``lam``'s diagram under contraction."""
    w = witness_cup(lam, k)
    if p == w:
        raise ContractionError("the witness cup has no image")
    a, b = _deleted_vertices(k)
    if {p.left, p.right} & {a, b}:
        raise ContractionError(f"{p} shares a vertex with the witness cup")

    def shift(v: int) -> int:
        return v if v < a else v - 2

    target = _phi_weight_raw(lam, k)
    img = cup_diagram(target).cup_with_ends(shift(p.left), shift(p.right))
    if img is None:
        raise ContractionError(f"{p} has no image cup in {target}")
    return img


def _half(v: int) -> float:
    return v - 0.5


def _step_factor(base: Weight, p: Cup, k: int) -> GaussInt:
    """Coefficient of one elementary descent under contraction at k."""
    lp, rp = _half(p.left), _half(p.right)
    if p.decorated and k in (0, 1) and k < lp:
        return GaussInt(-1, 0)
    if lp < k < rp:
        t = weight_to_tilepartition(base)
        path = dyck_path(p, t)
        shapes = [sh for (r, c), sh in path.tiles if tile_content(r, c) == k and sh in (CUP, CAP)]
        if len(shapes) != 1:
            raise EngineError(f"no unique cup/cap of content {k} on the path of {p} in {base}")
        return I if shapes[0] == CAP else -I
    return ONE


def phi_generator(g: Generator, k: int) -> tuple[GaussInt, Generator]:
    """Image of a truncated degree-0/1 generator, with its coefficient."""
    if g.kind == "I":
        if k not in contractible_sites(g.base):
            raise ContractionError(f"{g.base} is not contractible at {k}")
        from .algebra import idem

        return ONE, idem(phi_weight(g.base, k))

    hi = g.base
    lo = flip_cup(hi, g.cup)
    for wgt in (hi, lo):
        if k not in contractible_sites(wgt):
            raise ContractionError(f"{wgt} is not contractible at {k}")
    if g.cup == witness_cup(hi, k):
        raise ContractionError("cannot contract a generator along its own cup")
    coeff = _step_factor(hi, g.cup, k)
    from .algebra import gen_between

    ghi, glo = phi_weight(hi, k), phi_weight(lo, k)
    img = gen_between(ghi, glo) if g.kind == "L" else gen_between(glo, ghi)
    if (img.kind == "L") != (g.kind == "L"):
        raise EngineError(f"contraction reversed the direction of {g}")
    return coeff, img


def phi_triple(t: BasisTriple, k: int) -> tuple[GaussInt, BasisTriple]:
    """Image of a basis triple whose canonical word stays contractible."""
    for outer in (t.mu, t.nu):
        if k not in contractible_sites(outer):
            raise ContractionError(f"profile {outer} is not contractible at {k}")
    coeff = ONE
    for leg in (t.nu, t.mu):
        cur = leg
        for g in canonical_chain(leg, t.lam):
            if k not in contractible_sites(g.base) or k not in contractible_sites(g.target):
                raise ContractionError(
                    f"canonical word of {t} leaves the contractible family at {g}"
                )
            if g.cup == witness_cup(g.base, k):
                raise ContractionError(f"canonical word of {t} flips the witness cup")
            coeff = coeff * _step_factor(g.base, g.cup, k)
            cur = g.target
    img = BasisTriple(
        _phi_weight_raw(t.lam, k), _phi_weight_raw(t.mu, k), _phi_weight_raw(t.nu, k)
    )
    return coeff, img


def phi_element(x: AlgebraElement, k: int) -> AlgebraElement:
    out = zero()
    for t, c in x.terms.items():
        factor, img = phi_triple(t, k)
        out = out + element_of(img, c * factor)
    return out
