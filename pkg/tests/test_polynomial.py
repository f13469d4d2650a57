import math
import random
from fractions import Fraction

import pytest

from oracles import zfs_counts_ref
from zfl import graphs
from zfl.polynomial import (
    EnumerationCapError,
    ZfPolynomial,
    binom,
    consecutive_pair_lower_bound,
    degree_count_bound,
    degree_sum_bound,
    endpoint_hit_probability,
    few_low_degree_bound,
    high_min_degree_covers_all,
    min_degree_bound,
    path_count_lower_bound,
    prob_empty_graph,
    prob_kn_closed_form,
    prob_path,
    prob_zfs_exact,
    small_k_range,
    tree_count_bound,
    verify_coeff_invariants,
    zf_path_closed_form,
    zf_path_polynomial,
    zf_polynomial_exact,
)


def rand_graph(rng, lo=1, hi=9):
    n = rng.randint(lo, hi)
    p = rng.random()
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return graphs.make_graph(n, edges)


class TestExactCounts:
    def test_p4(self):
        assert zf_polynomial_exact(graphs.path(4)).coeffs == (0, 2, 6, 4, 1)

    def test_c4(self):
        assert zf_polynomial_exact(graphs.cycle(4)).coeffs == (0, 0, 4, 4, 1)

    def test_k3(self):
        assert zf_polynomial_exact(graphs.complete(3)).coeffs == (0, 0, 3, 1)

    def test_matches_bruteforce_random(self):
        rng = random.Random(10)
        for _ in range(15):
            g = rand_graph(rng, 1, 7)
            assert list(zf_polynomial_exact(g).coeffs) == zfs_counts_ref(g.n, g.edges())

    def test_cap_and_override(self):
        with pytest.raises(EnumerationCapError):
            zf_polynomial_exact(graphs.path(25))
        with pytest.raises(EnumerationCapError):
            zf_polynomial_exact(graphs.path(31), max_n=31)

    def test_coefficient_invariants_random(self):
        rng = random.Random(11)
        for _ in range(40):
            verify_coeff_invariants(zf_polynomial_exact(rand_graph(rng)))

    def test_json_roundtrip(self):
        poly = zf_polynomial_exact(graphs.cycle(5))
        assert ZfPolynomial.from_json(poly.to_json()) == poly


class TestPathClosedForm:
    def test_examples(self):
        assert zf_path_closed_form(5, 1) == 2
        assert zf_path_closed_form(5, 2) == 9
        assert zf_path_closed_form(7, 7) == 1

    @pytest.mark.parametrize("n", range(1, 11))
    def test_matches_enumeration(self, n):
        assert zf_polynomial_exact(graphs.path(n)).coeffs == zf_path_polynomial(n).coeffs

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            zf_path_closed_form(5, 6)


class TestProbability:
    def test_c4_half(self):
        poly = zf_polynomial_exact(graphs.cycle(4))
        assert prob_zfs_exact(poly, 0.5) == pytest.approx(9 / 16, abs=1e-15)
        assert prob_zfs_exact(poly, Fraction(1, 2), exact=True) == Fraction(9, 16)

    def test_endpoints(self):
        poly = zf_polynomial_exact(graphs.grid(2, 3))
        assert poly.prob(0.0) == 0.0
        assert poly.prob(1.0) == 1.0

    def test_monotone_in_p(self):
        rng = random.Random(12)
        for _ in range(25):
            poly = zf_polynomial_exact(rand_graph(rng))
            vals = [poly.prob(k / 40) for k in range(41)]
            assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_union_product_rule(self):
        rng = random.Random(13)
        for _ in range(30):
            g1 = rand_graph(rng, 1, 6)
            g2 = rand_graph(rng, 1, 6)
            u = graphs.disjoint_union(g1, g2)
            pu = zf_polynomial_exact(u)
            p1 = zf_polynomial_exact(g1)
            p2 = zf_polynomial_exact(g2)
            for k in (1, 7, 13):
                p = Fraction(k, 14)
                assert pu.prob_exact(p) == p1.prob_exact(p) * p2.prob_exact(p)


class TestClosedFormsKnAndPath:
    def test_k3_half_exact(self):
        assert prob_kn_closed_form(3, 0.5) == pytest.approx(0.5, abs=1e-15)

    def test_p_one(self):
        for n in (2, 5, 9):
            assert prob_kn_closed_form(n, 1.0) == 1.0

    def test_k5_matches_enumeration(self):
        poly = zf_polynomial_exact(graphs.complete(5))
        for k in range(0, 21):
            p = k / 20
            assert prob_kn_closed_form(5, p) == pytest.approx(poly.prob(p), abs=1e-13)

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            prob_kn_closed_form(1, 0.5)

    @pytest.mark.parametrize("n", [1, 2, 3, 6, 11, 16])
    def test_path_recurrence_matches_enumeration(self, n):
        poly = zf_polynomial_exact(graphs.path(n))
        for k in range(0, 21):
            p = k / 20
            assert prob_path(n, p) == pytest.approx(poly.prob(p), abs=1e-13)
        for k in (1, 9, 17):
            p = Fraction(k, 20)
            assert prob_path(n, p, exact=True) == poly.prob_exact(p)

    def test_empty_graph(self):
        assert prob_empty_graph(3, 0.5) == 0.125


class TestBounds:
    def test_degree_sum_examples(self):
        star = graphs.complete_multipartite([1, 3])  # one center, three leaves
        assert degree_sum_bound(star, 0.5) == pytest.approx(1.875)
        c4 = graphs.cycle(4)
        assert degree_sum_bound(c4, 0.1) == pytest.approx(0.08)
        exact = zf_polynomial_exact(c4).prob(0.1)
        assert exact == pytest.approx(0.0361, abs=1e-4)
        assert degree_sum_bound(c4, 0.1) >= exact
        assert degree_sum_bound(c4, 0.0) == 0.0

    def test_degree_sum_needs_edge(self):
        with pytest.raises(ValueError):
            degree_sum_bound(graphs.empty_graph(3), 0.5)

    def test_min_degree_examples(self):
        for p in (0.1, 0.4, 0.9):
            assert min_degree_bound(graphs.complete(2), p) == pytest.approx(2 * p)
            assert 2 * p - p * p <= 2 * p
        assert min_degree_bound(graphs.cycle(6), 0.2) == pytest.approx(0.48)
        assert min_degree_bound(graphs.hypercube(3), 0.3) == pytest.approx(0.648)

    def test_min_degree_rejects_isolated(self):
        with pytest.raises(ValueError):
            min_degree_bound(graphs.disjoint_union(graphs.path(2), graphs.complete(1)), 0.3)

    def test_min_degree_dominates(self):
        for g in (graphs.cycle(6), graphs.hypercube(3), graphs.complete(5)):
            poly = zf_polynomial_exact(g)
            for k in range(1, 20):
                p = k / 20
                assert min_degree_bound(g, p) >= poly.prob(p) - 1e-12

    def test_few_low_degree_examples(self):
        c8 = graphs.cycle(8)
        assert few_low_degree_bound(c8, 0.3, 2, 0) == pytest.approx(2 * 8 * 0.09)
        p8 = graphs.path(8)
        assert few_low_degree_bound(p8, 0.1, 2, 2) == pytest.approx(0.96)
        g33 = graphs.grid(3, 3)
        poly = zf_polynomial_exact(g33)
        b = few_low_degree_bound(g33, 0.1, 4, 3)
        assert b >= poly.prob(0.1)

    def test_few_low_degree_precondition_checks(self):
        with pytest.raises(ValueError):
            few_low_degree_bound(graphs.path(8), 0.1, 2, 1)  # two leaves > 1^1
        with pytest.raises(ValueError):
            few_low_degree_bound(graphs.cycle(8), 0.9, 2, 0)  # p above e^(-1/2)
        with pytest.raises(ValueError):
            few_low_degree_bound(
                graphs.disjoint_union(graphs.cycle(3), graphs.complete(1)), 0.1, 2, 0)

    def test_degree_count_examples(self):
        assert degree_count_bound(graphs.complete(3), 2) == 6
        assert degree_count_bound(graphs.path(3), 1) == 2
        assert degree_count_bound(graphs.cycle(4), 2) == 8

    def test_degree_count_dominates(self):
        rng = random.Random(14)
        for _ in range(25):
            g = rand_graph(rng, 2, 8)
            if g.edge_count == 0:
                continue
            poly = zf_polynomial_exact(g)
            for k in range(g.n):
                assert degree_count_bound(g, k) >= poly.coeffs[k]

    def test_path_count_lower_examples(self):
        assert path_count_lower_bound(5, 2) == Fraction(4, 9) * 10
        assert float(path_count_lower_bound(5, 2)) <= 9
        assert path_count_lower_bound(7, 0) == 0
        assert zf_path_closed_form(10, 3) == 100
        assert path_count_lower_bound(10, 3) <= 100

    @pytest.mark.parametrize("n", range(1, 13))
    def test_path_count_lower_dominated(self, n):
        for k in range(n + 1):
            assert path_count_lower_bound(n, k) <= zf_path_closed_form(n, k)

    def test_tree_count_bound_small(self):
        from zfl.corpus import enumerate_free_trees
        for n in range(2, 10):
            for t in enumerate_free_trees(n):
                if max(t.degrees) <= 2:
                    continue
                poly = zf_polynomial_exact(t)
                for k in range(n + 1):
                    assert Fraction(poly.coeffs[k]) <= tree_count_bound(n, k)


class TestSmallKRange:
    def test_value_1000_3(self):
        assert small_k_range(1000, 3) == 55

    def test_minimum_n(self):
        assert small_k_range(5, 3) >= 1

    def test_delta_check(self):
        with pytest.raises(ValueError):
            small_k_range(100, 2)

    def test_covering_predicate(self):
        # complete graphs on few vertices meet the covering condition
        assert high_min_degree_covers_all(8, 7)
        assert not high_min_degree_covers_all(1024, 5)

    def test_guaranteed_range_really_works(self, corpus_small):
        # inside the guaranteed range the path dominates the count
        for g in corpus_small:
            delta = g.min_degree()
            if delta < 3:
                continue
            kmax = small_k_range(g.n, delta)
            poly = zf_polynomial_exact(g)
            for k in range(0, min(kmax, g.n) + 1):
                assert poly.coeffs[k] <= zf_path_closed_form(g.n, k)


class TestSequenceComparators:
    def test_pair_bound_below_exact(self):
        # exact chance of an adjacent pair among m slots, by enumeration
        for m in range(2, 13):
            for t in range(1, 10):
                p = t / 10
                exact = 0.0
                for mask in range(1 << m):
                    if any(mask >> i & 3 == 3 for i in range(m - 1)):
                        exact += p ** mask.bit_count() * (1 - p) ** (m - mask.bit_count())
                assert consecutive_pair_lower_bound(m, p) <= exact + 1e-12

    def test_endpoint_vs_pair_threshold(self):
        # with enough slots and p above 8/m the adjacent pair wins
        for m in (16, 24, 40, 80):
            for t in range(1, 40):
                p = t / 40
                if p <= 8 / m or p >= 1:
                    continue
                assert endpoint_hit_probability(p) < consecutive_pair_lower_bound(m, p)


def test_binom_guard():
    assert binom(5, -1) == 0
    assert binom(4, 5) == 0
    assert binom(5, 2) == math.comb(5, 2)
