from collections import Counter

import pytest

from isogrus.combinatorics import (
    TilePartition,
    Weight,
    enumerate_weights,
    tile_content,
    tilepartition_to_weight,
    weight_to_tilepartition,
)
from isogrus.cups import (
    Cup,
    CupDiagram,
    CupDiagramError,
    FlipError,
    Ray,
    adjacent,
    adjacent_cups,
    breadth,
    commute,
    covers,
    cup_diagram,
    doubly_covers,
    dyck_path,
    flip_cup,
    generated_cup,
    trace_tiled_diagram,
    unflip_cup,
)


def diag(w):
    return cup_diagram(Weight(w))


class TestDrawcups:
    def test_nine_vertex_construction(self):
        d = diag("uuudduuud")
        assert set(d.cups) == {
            Cup(1, 2, True),
            Cup(3, 8, True),
            Cup(4, 7, False),
            Cup(5, 6, False),
        }
        assert d.rays == (Ray(9, False),)

    def test_all_down_is_rays(self):
        d = diag("ddddd")
        assert d.cups == () and len(d.rays) == 5
        assert all(not r.decorated for r in d.rays)

    def test_decorated_ray(self):
        d = diag("duud")
        assert set(d.cups) == {Cup(1, 2, False)}
        assert set(d.rays) == {Ray(3, True), Ray(4, False)}

    def test_unique_decorated_ray(self):
        for n in range(1, 9):
            for w in enumerate_weights(n):
                d = cup_diagram(w)
                assert sum(1 for r in d.rays if r.decorated) <= 1

    def test_noncrossing_enforced(self):
        with pytest.raises(CupDiagramError):
            CupDiagram(4, (Cup(1, 3, False), Cup(2, 4, False)), ())

    def test_exposure_enforced(self):
        with pytest.raises(CupDiagramError):
            CupDiagram(4, (Cup(1, 4, False), Cup(2, 3, True)), ())


class TestTracing:
    def test_two_oracles_agree(self):
        for n in range(1, 9):
            for w in enumerate_weights(n):
                t = weight_to_tilepartition(w)
                assert trace_tiled_diagram(t).diagram == cup_diagram(w)

    def test_staircase_strand_shapes(self):
        # strand through the outer cup of the 6-tile staircase
        t = TilePartition(4, (1, 2, 3))
        traced = trace_tiled_diagram(t)
        p = traced.diagram.cup_with_ends(3, 4)
        shapes = dict(traced.strand_of_cup(p).incidences)
        assert shapes[(3, 1)] == "cup"
        assert shapes[(3, 2)] == "cupcap"
        assert shapes[(3, 3)] == "cap"

    def test_bottom_edge_shape(self):
        # decorated non-nested caps on the left, then plain verticals
        for n in range(2, 9):
            for w in enumerate_weights(n):
                traced = trace_tiled_diagram(weight_to_tilepartition(w))
                caps = sorted(traced.bottom_caps)
                for c in caps:
                    assert c.decorated
                    assert c.right == c.left + 1
                used = {v for c in caps for v in (c.left, c.right)}
                assert used == set(range(1, 2 * len(caps) + 1))


class TestBreadth:
    def test_plain_formula(self):
        assert breadth(Cup(4, 7, False)) == 2  # endpoints at 7/2 and 13/2
        assert breadth(Cup(5, 6, False)) == 1

    def test_decorated_formula(self):
        assert breadth(Cup(1, 2, True)) == 1
        assert breadth(Cup(3, 6, True)) == 4

    def test_counts_local_cups(self):
        for n in range(2, 8):
            for w in enumerate_weights(n):
                t = weight_to_tilepartition(w)
                for p in cup_diagram(w).cups:
                    dp = dyck_path(p, t)
                    assert breadth(p) == sum(
                        1 for _, s in dp.tiles if s in ("cup", "cupcap")
                    )


class TestCupRelations:
    def test_covers(self):
        assert covers(Cup(1, 4, False), Cup(2, 3, False))
        assert not covers(Cup(1, 2, False), Cup(3, 4, False))

    def test_doubly_covers(self):
        assert doubly_covers(Cup(3, 4, True), Cup(1, 2, False))
        assert not doubly_covers(Cup(3, 4, False), Cup(1, 2, False))

    def test_nested_with_witness_commutes(self):
        d = diag("dddnuuu".replace("n", "u"))  # ddduuuu
        inner = d.cup_with_ends(3, 4)
        outer = d.cup_with_ends(1, 6)
        mid = d.cup_with_ends(2, 5)
        assert commute(inner, outer, d)
        assert not commute(inner, mid, d)
        assert not commute(mid, outer, d)

    def test_disjoint_plain_cups_commute(self):
        d = diag("dudu")
        a, b = d.cups
        assert commute(a, b, d)

    def test_decorated_chain(self):
        d = diag("uuuuuu")
        c12, c34, c56 = sorted(d.cups)
        assert commute(c12, c56, d)  # witnessed by the middle cup
        assert not commute(c12, c34, d)
        assert not commute(c34, c56, d)

    def test_commute_iff_disjoint_paths(self):
        for n in range(2, 9):
            for w in enumerate_weights(n):
                t = weight_to_tilepartition(w)
                d = cup_diagram(w)
                paths = {p: dyck_path(p, t).tile_set() for p in d.cups}
                for i, p in enumerate(d.cups):
                    for q in d.cups[i + 1 :]:
                        assert commute(p, q, d) == paths[p].isdisjoint(paths[q])

    def test_commute_iff_mutual_survival(self):
        for n in range(2, 9):
            for w in enumerate_weights(n):
                d = cup_diagram(w)
                for i, p in enumerate(d.cups):
                    for q in d.cups[i + 1 :]:
                        inq = cup_diagram(flip_cup(w, q)).cup_with_ends(p.left, p.right) == p
                        inp = cup_diagram(flip_cup(w, p)).cup_with_ends(q.left, q.right) == q
                        assert commute(p, q, d) == (inp and inq)


class TestFlips:
    def test_nine_vertex_flip(self):
        mu = Weight("uuudduuud")
        lam = flip_cup(mu, Cup(4, 7, False))
        assert lam == Weight("uuuududud")
        assert set(cup_diagram(lam).cups) == {
            Cup(1, 2, True),
            Cup(3, 4, True),
            Cup(5, 6, False),
            Cup(7, 8, False),
        }

    def test_decorated_flip(self):
        assert flip_cup(Weight("uu"), Cup(1, 2, True)) == Weight("dd")

    def test_flip_unflip_identity(self):
        for n in range(2, 8):
            for w in enumerate_weights(n):
                for p in cup_diagram(w).cups:
                    assert unflip_cup(flip_cup(w, p), p) == w

    def test_flip_rejects_non_cup(self):
        with pytest.raises(FlipError):
            flip_cup(Weight("dd"), Cup(1, 2, False))


class TestAdjacency:
    def test_shared_vertex_rule(self):
        assert adjacent(Cup(2, 3, False), Cup(1, 2, False))
        assert not adjacent(Cup(1, 2, False), Cup(3, 4, False))
        assert not adjacent(Cup(1, 2, False), Cup(1, 2, True))

    def test_covered_cup_has_two_neighbours(self):
        # p nested under one non-commuting cup
        mu = Weight("dduu")
        p = cup_diagram(mu).cup_with_ends(2, 3)
        assert sorted(adjacent_cups(mu, p)) == [Cup(1, 2, False), Cup(3, 4, False)]

    def test_generated_cup_plain(self):
        mu = Weight("dduu")
        p = cup_diagram(mu).cup_with_ends(2, 3)
        t = Cup(3, 4, False)
        assert generated_cup(p, t, mu) == Cup(1, 4, False)

    def test_generated_cup_decorated(self):
        mu = Weight("duuu")
        p = cup_diagram(mu).cup_with_ends(1, 2)
        t = Cup(1, 4, True)
        assert generated_cup(p, t, mu) == Cup(3, 4, True)

    def test_inner_of_nested_pair_undefined(self):
        mu = Weight("duuu")
        p = cup_diagram(mu).cup_with_ends(1, 2)
        r = Cup(2, 3, False)  # inner adjacent cup after the flip
        assert generated_cup(p, r, mu) is None

    def test_uncovered_cup_has_at_most_one_neighbour(self):
        for n in range(2, 8):
            for w in enumerate_weights(n):
                d = cup_diagram(w)
                for p in d.cups:
                    noncom_cover = any(
                        q != p
                        and (covers(q, p) or doubly_covers(q, p))
                        and not commute(p, q, d)
                        for q in d.cups
                    )
                    k = len(adjacent_cups(w, p))
                    assert k == 2 if noncom_cover else k <= 1


class TestDyckPaths:
    def test_first_last_staircase(self):
        t = TilePartition(4, (1, 2, 3))
        p = trace_tiled_diagram(t).diagram.cup_with_ends(3, 4)
        dp = dyck_path(p, t)
        assert dp.first == 2 and dp.last == 3

    def test_contents_match_removed_tiles(self):
        for n in range(2, 9):
            for w in enumerate_weights(n):
                t = weight_to_tilepartition(w)
                for p in cup_diagram(w).cups:
                    dp = dyck_path(p, t)
                    removed = t.tiles() - weight_to_tilepartition(flip_cup(w, p)).tiles()
                    assert Counter(tile_content(r, c) for r, c in dp.tile_set()) == Counter(
                        tile_content(r, c) for r, c in removed
                    )

    def test_plain_contents_are_an_interval(self):
        for n in range(2, 9):
            for w in enumerate_weights(n):
                t = weight_to_tilepartition(w)
                for p in cup_diagram(w).cups:
                    if p.decorated:
                        continue
                    dp = dyck_path(p, t)
                    cts = sorted(dp.contents())
                    assert cts == list(range(dp.first, dp.last + 1))

    def test_decorated_contents_double_low(self):
        for n in range(2, 9):
            for w in enumerate_weights(n):
                t = weight_to_tilepartition(w)
                for p in cup_diagram(w).cups:
                    if not p.decorated:
                        continue
                    dp = dyck_path(p, t)
                    counts = Counter(dp.contents())
                    first = dp.first
                    # the wall pair shows once each; doubled contents run 2..first
                    for k in range(2, first + 1):
                        assert counts[k] == 2
                    for k in range(max(first + 1, 2), dp.last + 1):
                        assert counts[k] == 1

    def test_cupcaps_even_content_only(self):
        for n in range(2, 9):
            for w in enumerate_weights(n):
                t = weight_to_tilepartition(w)
                for p in cup_diagram(w).cups:
                    for (r, c), s in dyck_path(p, t).tiles:
                        if s == "cupcap":
                            k = tile_content(r, c)
                            assert k > 0 and k % 2 == 0
                            assert p.decorated

    def test_extras_sit_below_cupcaps(self):
        for n in range(2, 8):
            for w in enumerate_weights(n):
                t = weight_to_tilepartition(w)
                for p in cup_diagram(w).cups:
                    tiles = list(dyck_path(p, t).tiles)
                    for i, ((r, c), s) in enumerate(tiles):
                        if s == "extra":
                            (pr, pc), ps = tiles[i - 1]
                            assert ps == "cupcap" and (r, c) == (pr - 1, pc - 1)
