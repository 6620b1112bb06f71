import math

import numpy as np
import pytest

from wqaoa.distributions import exponential
from wqaoa.errors import CapacityError, DegenerateScaleError
from wqaoa.graphs import GraphSpec, WeightedGraph, generate
from wqaoa.polynomials import (
    PortfolioInstance,
    SpinPolynomial,
    brute_force_max,
    brute_force_min,
    cost_vector,
    maxcut_poly,
    portfolio_poly,
    rescale_graph,
    rescale_poly,
    spins_from_index,
)


def all_spin_vectors(n):
    return [spins_from_index(b, n) for b in range(1 << n)]


class TestSpinPolynomial:
    def test_zero_coefficients_dropped(self):
        p = SpinPolynomial(n=3, terms={(0,): 0.0, (1, 2): 1.0})
        assert (0,) not in p.terms
        assert p.degree == 2

    @pytest.mark.parametrize("terms,err", [
        ({(1, 0): 1.0}, "increasing"),
        ({(0, 0): 1.0}, "increasing"),
        ({(0, 5): 1.0}, "out of range"),
        ({(): 1.0}, "empty"),
    ])
    def test_validation(self, terms, err):
        with pytest.raises(ValueError, match=err):
            SpinPolynomial(n=3, terms=terms)

    def test_evaluate(self):
        p = SpinPolynomial(n=2, terms={(0,): 2.0, (0, 1): -1.0}, constant=0.5)
        assert p.evaluate([1, 1]) == 1.5
        assert p.evaluate([-1, 1]) == -0.5


class TestMaxcutPoly:
    def test_single_edge(self):
        g = WeightedGraph.from_edges(2, [(0, 1, 1.0)])
        p = maxcut_poly(g)
        assert p.constant == 0.5
        assert p.terms == {(0, 1): -0.5}
        assert p.evaluate([1, -1]) == 1.0
        assert p.sense == "max"

    def test_cycle_equal_spins(self):
        g = generate(GraphSpec(kind="cycle", n=5, seed=0))
        p = maxcut_poly(g)
        assert p.evaluate([1] * 5) == 0.0

    def test_matches_direct_cut_weight(self, rng):
        g = generate(GraphSpec(kind="erdos-renyi", n=8, seed=11, prob=0.5))
        g = g.with_weights(rng.normal(1.0, 0.7, g.num_edges))
        p = maxcut_poly(g)
        for z in all_spin_vectors(8):
            assert p.evaluate(z) == pytest.approx(g.cut_value(z), abs=1e-12)


class TestPortfolioPoly:
    def test_identity_covariance(self):
        inst = PortfolioInstance(n=2, sigma=np.eye(2), mu=np.zeros(2), q=1.0, k=1)
        p = portfolio_poly(inst)
        assert p.constant == pytest.approx(1.0)
        assert p.terms == {(0,): -0.5, (1,): -0.5}
        assert p.sense == "min"
        # oracle: evaluate the quadratic form on all four assignments
        for b in range(4):
            x = [(b >> j) & 1 for j in range(2)]
            z = [1 - 2 * xi for xi in x]
            assert p.evaluate(z) == pytest.approx(inst.objective(x), abs=1e-12)

    def test_zero_objective(self):
        inst = PortfolioInstance(n=3, sigma=np.zeros((3, 3)), mu=np.zeros(3), q=0.0, k=1)
        p = portfolio_poly(inst)
        assert p.terms == {}
        assert p.constant == 0.0

    def test_random_instance_against_direct_objective(self, rng):
        n = 6
        a = rng.normal(size=(n, n))
        inst = PortfolioInstance(n=n, sigma=a @ a.T / n, mu=rng.uniform(0, 0.1, n),
                                 q=0.5, k=3)
        p = portfolio_poly(inst)
        for b in range(1 << n):
            x = [(b >> j) & 1 for j in range(n)]
            z = [1 - 2 * xi for xi in x]
            assert p.evaluate(z) == pytest.approx(inst.objective(x), abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError, match="symmetric"):
            PortfolioInstance(n=2, sigma=np.array([[1.0, 0.5], [0.2, 1.0]]),
                              mu=np.zeros(2), q=0.5, k=1)
        with pytest.raises(ValueError, match="budget"):
            PortfolioInstance(n=2, sigma=np.eye(2), mu=np.zeros(2), q=0.5, k=2)

    def test_json_roundtrip(self):
        inst = PortfolioInstance(n=2, sigma=np.eye(2), mu=np.array([0.1, 0.2]), q=0.5, k=1)
        back = PortfolioInstance.from_json(inst.to_json())
        assert back.n == 2 and back.k == 1 and back.q == 0.5
        assert np.allclose(back.sigma, inst.sigma)


class TestRescale:
    def test_rescale_graph_unit(self):
        g = WeightedGraph.from_edges(2, [(0, 1, 1.0)])
        g2, scale = rescale_graph(g)
        assert scale == 1.0
        assert g2 == g

    def test_rescale_graph_three_four(self):
        g = WeightedGraph.from_edges(3, [(0, 1, 3.0), (1, 2, 4.0)])
        g2, scale = rescale_graph(g)
        assert scale == pytest.approx(math.sqrt(12.5), rel=1e-15)
        assert np.allclose(g2.weights, np.array([3.0, 4.0]) / scale)

    def test_rescale_graph_mean_square_one(self, rng):
        g = generate(GraphSpec(kind="random-regular", n=10, seed=2, d=2))
        g = g.with_weights(exponential(0.2).sample(rng, g.num_edges))
        g2, _ = rescale_graph(g)
        assert np.mean(g2.weights**2) == pytest.approx(1.0, abs=1e-12)

    def test_rescale_poly_single_linear(self):
        p = SpinPolynomial(n=1, terms={(0,): 2.0})
        p2, scale = rescale_poly(p)
        assert scale == 2.0
        assert p2.terms[(0,)] == 1.0

    def test_rescale_poly_unit_maxcut(self):
        g = generate(GraphSpec(kind="cycle", n=6, seed=0))
        p2, scale = rescale_poly(maxcut_poly(g))
        assert scale == pytest.approx(0.5, rel=1e-15)
        assert p2.constant == pytest.approx(6.0)  # 3.0 / 0.5

    def test_rescale_poly_mixed_orders_hand_oracle(self, rng):
        # independent evaluation of the per-order aggregate on the
        # coefficient multiset (constant excluded)
        terms = {(0,): 1.5, (2,): -0.5, (0, 1): 2.0, (1, 2, 3): -1.0, (0, 2, 3): 0.5}
        p = SpinPolynomial(n=4, terms=terms, constant=7.0)
        expect = math.sqrt(
            np.mean([1.5**2, 0.5**2])      # order 1
            + np.mean([2.0**2])            # order 2
            + np.mean([1.0**2, 0.5**2])    # order 3
        )
        _, scale = rescale_poly(p)
        assert scale == pytest.approx(expect, rel=1e-14)

    def test_rescale_poly_idempotent(self, rng):
        g = generate(GraphSpec(kind="erdos-renyi", n=8, seed=1, prob=0.5))
        g = g.with_weights(rng.exponential(5.0, g.num_edges))
        p2, _ = rescale_poly(maxcut_poly(g))
        _, scale2 = rescale_poly(p2)
        assert scale2 == pytest.approx(1.0, abs=1e-12)

    def test_argmax_invariance(self, rng):
        g = generate(GraphSpec(kind="erdos-renyi", n=7, seed=9, prob=0.6))
        g = g.with_weights(rng.normal(0.0, 2.0, g.num_edges))
        p = maxcut_poly(g)
        p2, scale = rescale_poly(p)
        v1, z1 = brute_force_max(p)
        v2, z2 = brute_force_max(p2)
        assert np.array_equal(z1, z2)
        assert v2 == pytest.approx(v1 / scale, rel=1e-12)

    def test_degenerate_errors(self):
        with pytest.raises(DegenerateScaleError):
            rescale_poly(SpinPolynomial(n=2, terms={}, constant=3.0))
        with pytest.raises(DegenerateScaleError):
            rescale_graph(WeightedGraph.from_edges(2, [(0, 1, 0.0)]))


class TestCostVector:
    def test_single_edge_bit_convention(self):
        g = WeightedGraph.from_edges(2, [(0, 1, 1.0)])
        assert cost_vector(maxcut_poly(g)).tolist() == [0.0, 1.0, 1.0, 0.0]

    def test_constant_only(self):
        p = SpinPolynomial(n=3, terms={}, constant=2.5)
        assert np.all(cost_vector(p) == 2.5)

    def test_matches_term_evaluation(self, rng):
        terms = {(0,): 0.3, (1, 3): -1.2, (0, 2, 4): 0.7}
        p = SpinPolynomial(n=5, terms=terms, constant=-0.4)
        vec = cost_vector(p)
        for b in range(32):
            assert vec[b] == pytest.approx(p.evaluate(spins_from_index(b, 5)), abs=1e-12)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            cost_vector(SpinPolynomial(n=25, terms={(0,): 1.0}))


class TestBruteForce:
    def test_odd_cycle(self):
        g = generate(GraphSpec(kind="cycle", n=5, seed=0))
        value, _ = brute_force_max(maxcut_poly(g))
        assert value == 4.0

    def test_single_weighted_edge(self):
        g = WeightedGraph.from_edges(2, [(0, 1, 3.0)])
        value, z = brute_force_max(maxcut_poly(g))
        assert value == 3.0
        assert z[0] != z[1]

    def test_against_enumeration_oracle(self, rng):
        g = generate(GraphSpec(kind="erdos-renyi", n=8, seed=21, prob=0.45))
        g = g.with_weights(rng.normal(0.5, 1.0, g.num_edges))
        value, _ = brute_force_max(maxcut_poly(g))
        best = max(g.cut_value(z) for z in all_spin_vectors(8))
        assert value == pytest.approx(best, abs=1e-12)

    def test_tie_breaks_to_lowest_index(self):
        p = SpinPolynomial(n=2, terms={}, constant=1.0)
        _, z = brute_force_max(p)
        assert np.array_equal(z, spins_from_index(0, 2))

    def test_global_flip_invariance_even_terms(self, rng):
        g = generate(GraphSpec(kind="erdos-renyi", n=6, seed=3, prob=0.7))
        g = g.with_weights(rng.exponential(1.0, g.num_edges))
        p = maxcut_poly(g)
        value, z = brute_force_max(p)
        assert p.evaluate(-z) == pytest.approx(value, abs=1e-12)

    def test_min(self, rng):
        p = SpinPolynomial(n=4, terms={(0,): 1.0, (1, 2): -2.0}, constant=0.3)
        vmin, _ = brute_force_min(p)
        oracle = min(p.evaluate(z) for z in all_spin_vectors(4))
        assert vmin == pytest.approx(oracle, abs=1e-12)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            brute_force_max(SpinPolynomial(n=25, terms={(0,): 1.0}))

    def test_n_mismatch(self):
        with pytest.raises(ValueError):
            brute_force_max(SpinPolynomial(n=3, terms={(0,): 1.0}), n=4)
