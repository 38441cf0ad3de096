import pytest

from biplane.augment import augment_to_4conn, flip_pair_helper
from biplane.connectivity import (check_4conn_augmentation, kappa_of,
                                  vertex_connectivity)
from biplane.errors import ImpossibleError, PreconditionError
from biplane.generators import (generate_fan, generate_no5conn_counterexample,
                                generate_wheel, random_triangulation,
                                regular_polygon_points)
from biplane.geometry import PointSet, segments_properly_cross
from biplane.connectivity import cut_structures
from biplane.triangulation import (TriangulationClass, classify, edge_key,
                                   flip, is_flippable, triangulate)

from oracles import bf_vertex_connectivity


class TestGenerators:
    def test_wheel_shape_and_kappa(self):
        t = generate_wheel(8)
        assert classify(t) is TriangulationClass.WHEEL
        assert kappa_of(t) == 3
        assert len(set(range(8)) - set(t.hull)) == 1

    def test_fan_shape_and_kappa(self):
        t = generate_fan(7)
        assert classify(t) is TriangulationClass.FAN
        assert kappa_of(t) == 2

    @pytest.mark.parametrize("n", [4, 5, 6, 9, 12])
    def test_wheel_sizes(self, n):
        assert classify(generate_wheel(n)) is TriangulationClass.WHEEL

    @pytest.mark.parametrize("n", [4, 5, 8, 11])
    def test_fan_sizes(self, n):
        assert classify(generate_fan(n)) is TriangulationClass.FAN


class TestFlipPairHelper:
    def _pentagon_instance(self):
        # pentagon with apex triangles matching the helper's precondition
        ps = regular_polygon_points(5, 1000)
        t = triangulate(ps)
        hull = list(t.hull)
        for i in range(5):
            u, v, w = hull[i], hull[(i + 1) % 5], hull[(i + 2) % 5]
            tri = tuple(sorted((u, v, w)))
            if tri in t.triangles:
                e = edge_key(u, w)
                others = [x for x in t.opposites(e) if x != v]
                if others:
                    return t, u, v, w, others[0]
        pytest.skip("no matching apex configuration")

    def test_double_flip_found(self):
        t, u, v, w, v2 = self._pentagon_instance()
        t2, moves = flip_pair_helper(t, u, v, w, v2)
        assert len(moves) == 2
        assert moves[0][0] == edge_key(u, w)
        assert moves[0][1] == edge_key(v, v2)
        assert moves[1][0] in (edge_key(u, v2), edge_key(v2, w))

    def test_small_input_rejected(self):
        ps = PointSet([(0, 0), (10, 0), (10, 10), (0, 10)])
        t = triangulate(ps)
        hull = list(t.hull)
        with pytest.raises(PreconditionError):
            flip_pair_helper(t, hull[0], hull[1], hull[2], 0)

    def test_tiebreak_prefers_first_candidate(self):
        t, u, v, w, v2 = self._pentagon_instance()
        t1 = flip(t, edge_key(u, w))
        both = is_flippable(t1, edge_key(u, v2)) and is_flippable(t1, edge_key(v2, w))
        _, moves = flip_pair_helper(t, u, v, w, v2)
        if both:
            assert moves[1][0] == edge_key(u, v2)


class TestAugmentTo4Conn:
    def test_wheel_rejected(self):
        with pytest.raises(ImpossibleError):
            augment_to_4conn(generate_wheel(9))

    def test_fan_rejected(self):
        with pytest.raises(ImpossibleError):
            augment_to_4conn(generate_fan(8))

    def test_convex_5_rejected(self):
        with pytest.raises((PreconditionError, ImpossibleError)):
            augment_to_4conn(triangulate(regular_polygon_points(5)))

    def test_base_case_5_points_is_k5(self):
        ps = PointSet([(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)])
        t = triangulate(ps)
        extra = augment_to_4conn(t)
        assert len(extra) == 2
        union = set(t.edges) | set(extra)
        assert len(union) == 10  # complete graph on 5 vertices
        assert vertex_connectivity(5, union) == 4

    def test_convex_6_pattern(self):
        t = triangulate(regular_polygon_points(6))
        if classify(t) is TriangulationClass.FAN:
            pytest.skip("scan triangulation of the hexagon is a fan")
        extra = augment_to_4conn(t)
        assert len(extra) == 3
        assert vertex_connectivity(6, set(t.edges) | set(extra)) >= 4

    def test_convex_6_all_patterns(self):
        ps = regular_polygon_points(6)
        t = triangulate(ps)
        seen = 0
        stack = [t]
        tried = set()
        while stack:
            cur = stack.pop()
            key = frozenset(cur.edges)
            if key in tried:
                continue
            tried.add(key)
            if classify(cur) is not TriangulationClass.FAN:
                extra = augment_to_4conn(cur)
                assert vertex_connectivity(6, set(cur.edges) | set(extra)) >= 4
                seen += 1
            for e in sorted(cur.edges):
                if is_flippable(cur, e):
                    stack.append(flip(cur, e))
        assert seen >= 2  # both triangle and path chord patterns occur

    @pytest.mark.parametrize("seed", range(40))
    def test_random_triangulations(self, seed):
        n = 5 + seed % 8
        t = random_triangulation(n, seed)
        if classify(t) is not TriangulationClass.OTHER:
            pytest.skip("wheel or fan sampled")
        extra = augment_to_4conn(t)
        ps = t.ps
        ee = sorted(extra)
        for i in range(len(ee)):
            for j in range(i + 1, len(ee)):
                assert not segments_properly_cross(ps[ee[i][0]], ps[ee[i][1]],
                                                   ps[ee[j][0]], ps[ee[j][1]])
        assert not set(extra) & set(t.edges)
        union = set(t.edges) | set(extra)
        kappa = vertex_connectivity(n, union)
        assert kappa >= 4
        if n <= 8:
            assert bf_vertex_connectivity(n, union) >= 4
        ok, violations = check_4conn_augmentation(t, extra)
        assert ok, violations


class TestNo5ConnCounterexample:
    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_kappa_4_and_empty_cut_report(self, k):
        t = generate_no5conn_counterexample(k)
        assert len(t.ps) == 4 * k + 4
        assert kappa_of(t) == 4
        rep = cut_structures(t)
        assert rep.is_empty()

    def test_k3_has_16_points(self):
        assert len(generate_no5conn_counterexample(3).ps) == 16

    def test_upper_chain_crossing_property(self):
        k = 3
        t = generate_no5conn_counterexample(k)
        ps = t.ps
        m = 2 * k
        xs = list(range(m))
        ys = [m + i for i in range(m - 3)]
        bottom = list(range(2 * m - 3, 2 * m + 4))
        for i, y in enumerate(ys):
            a, b = ps[xs[i + 1]], ps[xs[i + 2]]
            for w in bottom:
                assert segments_properly_cross(ps[y], ps[w], a, b)

    def test_k1_rejected(self):
        with pytest.raises(PreconditionError):
            generate_no5conn_counterexample(1)
