import random

import pytest

from covereval.cover import Cover
from covereval.graph import Graph, GraphError
from covereval.quality import (
    avg_degree_score, avg_odf_score, community_stats, flake_odf_score,
    internal_density_score, max_odf_score, overlapping_modularity,
    quality_report,
)

from gen import random_graph, random_partition
from oracles import newman_modularity


def complete_graph(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def two_triangles():
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


class TestCommunityStats:
    def test_k4_whole(self):
        cs = community_stats(complete_graph(4), {0, 1, 2, 3})
        assert cs.n_s == 4 and cs.m_s == 6
        assert cs.out_frac == (0.0, 0.0, 0.0, 0.0)
        assert cs.e_out == 0

    def test_triangle_in_k4(self):
        cs = community_stats(complete_graph(4), {0, 1, 2})
        assert cs.n_s == 3 and cs.m_s == 3
        assert cs.out_frac == (1 / 3, 1 / 3, 1 / 3)
        assert cs.e_out == 3

    def test_outside_node_rejected(self):
        with pytest.raises(GraphError):
            community_stats(complete_graph(4), {0, 7})
        with pytest.raises(GraphError):
            community_stats(complete_graph(4), set())

    def test_random_matches_edge_scan(self):
        rng = random.Random(41)
        for _ in range(15):
            n = rng.randint(4, 25)
            g, edges = random_graph(rng, n, 0.3)
            s = set(rng.sample(range(n), rng.randint(1, n)))
            cs = community_stats(g, s)
            m_s = sum(1 for u, v in edges if u in s and v in s)
            e_out = sum((u in s) + (v in s)
                        for u, v in edges if (u in s) != (v in s))
            assert cs.m_s == m_s and cs.e_out == e_out


class TestScoreFunctions:
    def test_k4(self):
        cs = community_stats(complete_graph(4), {0, 1, 2, 3})
        assert avg_degree_score(cs) == 3.0
        assert internal_density_score(cs) == 1.0
        assert max_odf_score(cs) == avg_odf_score(cs) == flake_odf_score(cs) == 0.0

    def test_triangle_in_k4(self):
        cs = community_stats(complete_graph(4), {0, 1, 2})
        assert avg_degree_score(cs) == 2.0
        assert internal_density_score(cs) == 1.0
        assert max_odf_score(cs) == pytest.approx(1 / 3)
        assert avg_odf_score(cs) == pytest.approx(1 / 3)
        assert flake_odf_score(cs) == 0.0  # intra 2 > 3/2 for every member

    def test_single_node_of_k4(self):
        cs = community_stats(complete_graph(4), {0})
        assert avg_degree_score(cs) == 0.0
        assert internal_density_score(cs) == 0.0
        assert max_odf_score(cs) == 1.0 and flake_odf_score(cs) == 1.0

    def test_avg_degree_complete(self):
        for n in range(2, 21):
            cs = community_stats(complete_graph(n), set(range(n)))
            assert avg_degree_score(cs) == n - 1


class TestOverlappingModularity:
    def test_whole_graph_cover_is_zero(self):
        rng = random.Random(43)
        for _ in range(5):
            g, _ = random_graph(rng, rng.randint(3, 15), 0.5)
            if g.edge_count == 0:
                continue
            c = Cover.from_sets([set(range(g.n))])
            assert overlapping_modularity(g, c) == 0.0

    def test_two_disjoint_triangles(self):
        g = two_triangles()
        c = Cover.from_sets([{0, 1, 2}, {3, 4, 5}])
        assert overlapping_modularity(g, c) == pytest.approx(0.5, abs=1e-12)

    def test_partition_equals_newman(self):
        rng = random.Random(47)
        done = 0
        while done < 20:
            n = rng.randint(4, 20)
            g, edges = random_graph(rng, n, 0.4)
            if g.edge_count == 0:
                continue
            blocks = random_partition(rng, n, rng.randint(2, 4))
            cover = Cover.from_sets(blocks)
            labels = {u: bi for bi, b in enumerate(blocks) for u in b}
            want = newman_modularity(n, edges, labels)
            assert overlapping_modularity(g, cover) == pytest.approx(want, abs=1e-12)
            done += 1

    def test_edgeless_rejected(self):
        with pytest.raises(GraphError):
            overlapping_modularity(Graph(3, []), Cover.from_sets([{0}]))


class TestQualityReport:
    def test_duplicate_community_equals_single(self):
        g = complete_graph(4)
        single = quality_report(g, Cover.from_sets([{0, 1, 2}]))
        double = quality_report(g, Cover.from_sets([{0, 1, 2}, {0, 1, 2}]))
        for key in ("AD", "AO", "FO", "ID", "MO"):
            assert single.as_dict()[key] == double.as_dict()[key]

    def test_schema(self):
        g = complete_graph(4)
        d = quality_report(g, Cover.from_sets([{0, 1}, {2, 3}])).as_dict()
        assert sorted(d) == ["AD", "AO", "FO", "ID", "MO", "OM"]

    def test_random_matches_recomputation(self):
        rng = random.Random(53)
        for _ in range(10):
            n = rng.randint(5, 20)
            g, edges = random_graph(rng, n, 0.4)
            if g.edge_count == 0:
                continue
            sets = [set(rng.sample(range(n), rng.randint(1, n)))
                    for _ in range(rng.randint(1, 5))]
            rep = quality_report(g, Cover.from_sets(sets)).as_dict()
            # independent recomputation from the raw edge set
            ad = ao = fo = idn = mo = 0.0
            for s in sets:
                m_s = sum(1 for u, v in edges if u in s and v in s)
                fracs, bad = [], 0
                for u in s:
                    nbrs = [v for a, b in edges for u2, v in ((a, b), (b, a))
                            if u2 == u]
                    d = len(nbrs)
                    din = sum(1 for v in nbrs if v in s)
                    fracs.append((d - din) / d if d else 0.0)
                    bad += din < d / 2
                ad += 2 * m_s / len(s)
                idn += m_s / (len(s) * (len(s) - 1) / 2) if len(s) > 1 else 0.0
                mo += max(fracs)
                ao += sum(fracs) / len(s)
                fo += bad / len(s)
            k = len(sets)
            assert rep["AD"] == pytest.approx(ad / k, abs=1e-12)
            assert rep["ID"] == pytest.approx(idn / k, abs=1e-12)
            assert rep["MO"] == pytest.approx(mo / k, abs=1e-12)
            assert rep["AO"] == pytest.approx(ao / k, abs=1e-12)
            assert rep["FO"] == pytest.approx(fo / k, abs=1e-12)

    def test_relabeling_invariance(self):
        rng = random.Random(59)
        g, edges = random_graph(rng, 12, 0.4)
        perm = list(range(12))
        rng.shuffle(perm)
        g2 = Graph(12, [(perm[u], perm[v]) for u, v in edges])
        sets = [set(rng.sample(range(12), 5)) for _ in range(3)]
        sets2 = [{perm[u] for u in s} for s in sets]
        a = quality_report(g, Cover.from_sets(sets)).as_dict()
        b = quality_report(g2, Cover.from_sets(sets2)).as_dict()
        for key in a:
            assert a[key] == pytest.approx(b[key], abs=1e-12)
