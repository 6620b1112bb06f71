import math

import numpy as np
import pytest

from wqaoa.distributions import cauchy, exponential, empirical_scale
from wqaoa.errors import PreconditionError
from wqaoa.graphs import GraphSpec, WeightedGraph, generate
from wqaoa.polynomials import maxcut_poly, rescale_graph
from wqaoa.schemes import (
    InfParamTable,
    average_degree,
    baseline_ref9,
    default_table,
    method_i,
    method_ii,
)
from wqaoa.simulator import QaoaParams, qaoa_energy


@pytest.fixture
def table():
    return default_table()


@pytest.fixture
def cubic():
    return generate(GraphSpec(kind="random-regular", n=10, seed=4, d=2))


class TestAverageDegree:
    def test_regular(self, cubic):
        assert average_degree(cubic) == 3.0

    def test_star(self):
        g = WeightedGraph.from_edges(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)])
        assert average_degree(g) == 1.5

    def test_k33(self, k33):
        assert average_degree(k33) == 3.0

    def test_empty(self):
        with pytest.raises(PreconditionError):
            average_degree(WeightedGraph(n=3, edges=()))


class TestDefaultTable:
    def test_depths_and_p1_entry(self, table):
        assert table.depths == (1, 2, 3)
        p1 = table.params(1)
        assert p1.gammas == (1.0,)
        assert p1.betas[0] == pytest.approx(math.pi / 4)
        assert p1.convention == "table"

    def test_json_roundtrip(self, table):
        back = InfParamTable.from_json(table.to_json())
        assert back.entries == table.entries
        assert back.convention == table.convention

    def test_missing_depth(self, table):
        with pytest.raises(KeyError):
            table.params(7)

    def test_p1_required(self):
        with pytest.raises(ValueError):
            InfParamTable(entries={2: ((0.1, 0.2), (0.3, 0.4))})


class TestMethodI:
    def test_unit_weights_cubic(self, cubic, table):
        params = method_i(cubic, table, 1)
        assert params.gammas[0] == pytest.approx(1.0 / math.sqrt(2))
        assert params.betas == table.params(1).betas

    def test_uniform_weight_two(self, cubic, table):
        g = cubic.with_weights([2.0] * cubic.num_edges)
        params = method_i(g, table, 1)
        assert params.gammas[0] == pytest.approx(1.0 / (2 * math.sqrt(2)))

    def test_sampled_scale_decomposition(self, cubic, table, rng):
        g = cubic.with_weights(exponential(0.2).sample(rng, cubic.num_edges))
        params = method_i(g, table, 2)
        expect = np.array(table.params(2).gammas) / (
            empirical_scale(g.weights) * math.sqrt(average_degree(g) - 1))
        assert np.allclose(params.gammas, expect, rtol=1e-14)

    def test_degenerate_degree(self, table):
        g = WeightedGraph.from_edges(4, [(0, 1, 1.0)])
        with pytest.raises(PreconditionError):
            method_i(g, table, 1)


class TestMethodII:
    def test_unit_weights_cubic(self, cubic, table):
        params = method_ii(cubic, table, 1)
        assert params.gammas[0] == pytest.approx(math.atan(1 / math.sqrt(2)))
        assert params.gammas[0] == pytest.approx(0.61548, abs=1e-5)

    def test_degree_two_gives_pi_over_four(self, table):
        g = generate(GraphSpec(kind="cycle", n=8, seed=0))
        params = method_ii(g, table, 1)
        assert params.gammas[0] == pytest.approx(math.pi / 4)

    def test_ratio_to_method_i_approaches_one(self, table):
        # arctan(x)/x -> 1: the two rules agree at large degree
        ratios = []
        for side in (2, 13):
            g = generate(GraphSpec(kind="complete-bipartite", n=2 * side, seed=0,
                                   parts=(side, side)))
            r = method_ii(g, table, 1).gammas[0] / method_i(g, table, 1).gammas[0]
            ratios.append(abs(r - 1.0))
        assert ratios[1] < ratios[0]
        assert ratios[1] < 0.03


class TestBaseline:
    def test_unit_weights_matches_method_ii_shape(self, cubic, table):
        ref = table.params(1)
        base = baseline_ref9(cubic, ref.gammas, ref.betas)
        ii = method_ii(cubic, table, 1)
        assert base.gammas[0] == pytest.approx(ii.gammas[0], rel=1e-14)

    def test_mean_abs_denominator(self, table):
        g = WeightedGraph.from_edges(4, [(0, 1, 3.0), (1, 2, 4.0), (2, 3, 3.0), (0, 3, 4.0)])
        base = baseline_ref9(g, (1.0,), (0.3,))
        assert base.gammas[0] == pytest.approx(math.atan(1.0) / 3.5)

    def test_cauchy_weights_finite(self, cubic, rng):
        g = cubic.with_weights(cauchy().sample(rng, cubic.num_edges))
        base = baseline_ref9(g, (1.0,), (0.3,))
        assert np.all(np.isfinite(base.gammas))

    def test_zero_weights(self):
        g = WeightedGraph.from_edges(3, [(0, 1, 0.0), (1, 2, 0.0), (0, 2, 0.0)])
        with pytest.raises(PreconditionError):
            baseline_ref9(g, (1.0,), (0.3,))


class TestSchemeInvariants:
    def test_betas_untouched(self, cubic, table, rng):
        g = cubic.with_weights(rng.exponential(2.0, cubic.num_edges))
        for p in (1, 2, 3):
            ref = table.params(p)
            assert method_i(g, table, p).betas == ref.betas
            assert method_ii(g, table, p).betas == ref.betas
            assert baseline_ref9(g, ref.gammas, ref.betas).betas == ref.betas

    def test_deterministic(self, cubic, table, rng):
        g = cubic.with_weights(rng.exponential(2.0, cubic.num_edges))
        assert method_i(g, table, 2) == method_i(g, table, 2)

    def test_rescale_equivalence(self, table, rng):
        # method (ii) on the original graph == fixed arctan-scaled angles
        # on the RMS-rescaled graph; the operational content of the rules
        g = generate(GraphSpec(kind="random-regular", n=12, seed=13, d=3))
        g = g.with_weights(rng.exponential(0.2, g.num_edges))
        for p in (1, 2):
            params = method_ii(g, table, p)
            e_orig = qaoa_energy(maxcut_poly(g), params)
            g_resc, _ = rescale_graph(g)
            ref = table.params(p)
            D = average_degree(g)
            factor = math.atan(1 / math.sqrt(D - 1))
            params_resc = QaoaParams(tuple(gm * factor for gm in ref.gammas),
                                     ref.betas, ref.convention)
            e_resc = qaoa_energy(maxcut_poly(g_resc), params_resc)
            # energies per unit weight scale: compare via the scale factor
            assert e_orig == pytest.approx(e_resc * empirical_scale(g.weights), abs=1e-9)
