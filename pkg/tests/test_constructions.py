import pytest
from hypothesis import given, strategies as st

from conftest import models, point_sets
from oracles import all_preorder_matrices

from tangled.algebra import is_point_generated, point_generator, relativize
from tangled.constructions import (
    add_root,
    chain_model,
    enumerate_quasiorders,
    random_bounded_morphism,
    random_model,
    random_quasiorder,
    sigma_witness,
    step_formula,
)
from tangled.kernel import Model, PointSet, QuasiOrder, is_open, tangle_gfp
from tangled.logic import evaluate, parse, to_text


class TestChainModel:
    def test_two_chain(self):
        m = chain_model(2)
        assert m.order == QuasiOrder.chain(3)
        assert m.value("q") == PointSet.of(3, [1])
        assert [m.value(f"p{n}") for n in range(3)] == [PointSet.of(3, [n]) for n in range(3)]

    def test_q_is_odd_points(self):
        assert m_q(5) == (1, 3, 5)
        assert m_q(4) == (1, 3)

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            chain_model(0)

    def test_step_formula_text(self):
        assert to_text(step_formula(0)) == "[](p0 -> <>(p1 & q))"
        assert to_text(step_formula(1)) == "[](p1 -> <>(p2 & ~q))"


def m_q(m):
    return chain_model(m).value("q").members


class TestSigmaWitness:
    @pytest.mark.parametrize("m", range(1, 17))
    def test_overall(self, m):
        report = sigma_witness(m)
        assert report.overall
        assert len(report.each_a_n_holds) == m

    @pytest.mark.parametrize("m", [1, 2, 7, 16])
    def test_tangle_formula_empty(self, m):
        model = chain_model(m)
        assert evaluate(parse("<t>{q,~q}"), model) == PointSet(m + 1, 0)

    def test_constant_q_breaks_alternation(self):
        # the literal reading of q would make it constant; then the odd step fails
        model = chain_model(3)
        flat = Model(model.order, {**model.valuation, "q": model.order.full})
        assert 0 not in evaluate(step_formula(1), flat)


class TestAddRoot:
    def test_identity_pair(self):
        m = add_root(Model(QuasiOrder.identity(2)))
        assert m.size == 3
        assert is_point_generated(m.order) and point_generator(m.order) == 2

    def test_single_point_gives_chain(self):
        m = add_root(Model(QuasiOrder.identity(1)))
        assert m.order.edges() == [(1, 0)]

    @given(models(max_size=6))
    def test_properties(self, m):
        rooted = add_root(m)
        n = m.size
        R = rooted.order
        assert R.is_valid()
        assert point_generator(R) == n
        assert all(not R.reach(x, n) for x in range(n))
        old = PointSet(n + 1, (1 << n) - 1)
        assert is_open(R, old)
        for name, s in m.valuation.items():
            assert rooted.value(name).bits == s.bits
        # restricting back gives the original order
        assert relativize(R, None, old).order == m.order

    @given(models(max_size=6), st.data())
    def test_relativizing_back_keeps_tangles(self, m, data):
        n = m.size
        rooted = add_root(m)
        old = PointSet(n + 1, (1 << n) - 1)
        rel = relativize(rooted.order, None, old)
        gamma = data.draw(st.lists(point_sets(n), min_size=1, max_size=3))
        assert rel.tangle(gamma) == tangle_gfp(m.order, gamma)


class TestEnumerate:
    @pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (2, 4), (3, 29), (4, 355)])
    def test_counts(self, n, count):
        assert len(enumerate_quasiorders(n)) == count

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_brute_force(self, n):
        got = {R.matrix() for R in enumerate_quasiorders(n)}
        assert got == set(all_preorder_matrices(n))

    @pytest.mark.slow
    def test_five_points(self):
        orders = enumerate_quasiorders(5)
        assert len(orders) == 6942
        assert len(set(orders)) == 6942

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_valid_distinct_deterministic(self, n):
        orders = enumerate_quasiorders(n)
        assert all(R.is_valid() for R in orders)
        assert len(set(orders)) == len(orders)
        assert orders == enumerate_quasiorders(n)
        assert orders[0] == QuasiOrder.identity(n)
        assert orders[-1] == QuasiOrder.cluster(n)

    def test_too_large(self):
        with pytest.raises(ValueError):
            enumerate_quasiorders(6)


class TestRandom:
    @given(st.integers(0, 9), st.integers(0, 1000))
    def test_extreme_densities(self, n, seed):
        assert random_quasiorder(n, seed, 0.0) == QuasiOrder.identity(n)
        assert random_quasiorder(n, seed, 1.0) == QuasiOrder.cluster(n)

    def test_pinned(self):
        # 0.3 on five points happens to close up into one cluster
        assert random_quasiorder(5, 42, 0.3).succ == (31,) * 5
        assert random_quasiorder(8, 7, 0.1).succ == (209, 246, 4, 217, 208, 32, 64, 128)

    def test_reproducible(self):
        assert random_quasiorder(7, 3, 0.2) == random_quasiorder(7, 3, 0.2)
        assert random_model(5, 1, 0.3) == random_model(5, 1, 0.3)

    def test_bad_density(self):
        with pytest.raises(ValueError):
            random_quasiorder(3, 0, 1.5)

    @given(st.integers(0, 10_000))
    def test_bounded_morphisms_in_range(self, seed):
        m = random_bounded_morphism(seed)
        assert 1 <= m.target.size <= 6
        assert m.source.size <= m.target.size
