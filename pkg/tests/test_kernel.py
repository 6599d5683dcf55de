import pytest
from hypothesis import given, strategies as st

from oracles import ref_closure, ref_endless_path, ref_tangle
from conftest import order_and_gamma, order_and_sets, point_sets, quasiorders

from tangled.kernel import (
    CarrierMismatchError,
    EmptyGammaError,
    GammaFamily,
    OracleBoundError,
    PointSet,
    QuasiOrder,
    closure,
    clusters,
    gamma_step,
    interior,
    is_closed,
    is_open,
    tangle_gfp,
    tangle_oracle,
    tangle_scc,
)

CHAIN3 = QuasiOrder.chain(3)
CLUSTER2 = QuasiOrder.cluster(2)


def S(n, *xs):
    return PointSet.of(n, xs)


class TestPointSet:
    def test_boolean_ops(self):
        a, b = S(4, 0, 1), S(4, 1, 2)
        assert (a | b).members == (0, 1, 2)
        assert (a & b).members == (1,)
        assert (~a).members == (2, 3)
        assert (a - b).members == (0,)
        assert a.implies(b) == S(4, 1, 2, 3)
        assert a.iff(b) == S(4, 1, 3)

    def test_str(self):
        assert str(S(3)) == "{}"
        assert str(S(3, 2, 0)) == "{0, 2}"

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            S(2, 2)
        with pytest.raises(ValueError):
            PointSet(2, 4)

    def test_mixed_carriers(self):
        with pytest.raises(CarrierMismatchError):
            S(2, 0) | S(3, 0)

    @given(st.integers(0, 6).flatmap(lambda n: st.tuples(point_sets(n), point_sets(n), point_sets(n))))
    def test_boolean_algebra_laws(self, abc):
        a, b, c = abc
        assert a | (b & c) == (a | b) & (a | c)
        assert ~(a | b) == ~a & ~b
        assert ~~a == a
        assert a | ~a == PointSet.full(a.size)
        assert (a <= b) == (a & b == a)
        assert all(x < a.size for x in a)


class TestQuasiOrder:
    def test_closes_edges(self):
        R = QuasiOrder.from_edges(3, [(0, 1), (1, 2)])
        assert R.reach(0, 2) and R.reach(1, 1)
        assert not R.reach(2, 0)
        assert R == CHAIN3

    def test_edge_out_of_range(self):
        with pytest.raises(ValueError):
            QuasiOrder.from_edges(2, [(0, 5)])

    @given(quasiorders())
    def test_invariants(self, R):
        m = R.matrix()
        assert R.is_valid()
        for x in range(R.size):
            assert m[x][x]
            for y in range(R.size):
                for z in range(R.size):
                    assert m[x][z] or not (m[x][y] and m[y][z])

    def test_unchecked_detects_corruption(self):
        assert not QuasiOrder.unchecked([0b011, 0b110, 0b100]).is_valid()


class TestClosureInterior:
    def test_chain_singleton_top(self):
        assert closure(CHAIN3, S(3, 2)) == S(3, 0, 1, 2)

    def test_empty(self):
        assert closure(CHAIN3, S(3)) == S(3)

    def test_identity(self):
        assert closure(QuasiOrder.identity(3), S(3, 1)) == S(3, 1)

    def test_interior_up_set(self):
        assert interior(CHAIN3, S(3, 1, 2)) == S(3, 1, 2)

    def test_interior_down_set(self):
        # C(-{0,1}) = C{2} = everything, so the interior is empty
        assert interior(CHAIN3, S(3, 0, 1)) == S(3)

    def test_interior_full(self):
        assert interior(CHAIN3, CHAIN3.full) == CHAIN3.full

    def test_size_mismatch(self):
        with pytest.raises(CarrierMismatchError):
            closure(CHAIN3, S(2, 0))

    def test_open_closed(self):
        assert is_open(CHAIN3, S(3, 1, 2)) and not is_closed(CHAIN3, S(3, 1, 2))
        for a in (S(3), CHAIN3.full):
            assert is_open(CHAIN3, a) and is_closed(CHAIN3, a)
        ident = QuasiOrder.identity(3)
        for bits in range(8):
            assert is_open(ident, PointSet(3, bits)) and is_closed(ident, PointSet(3, bits))

    @given(order_and_sets(k=1))
    def test_matches_reference(self, case):
        R, a = case
        assert set(closure(R, a)) == ref_closure(R.matrix(), set(a))

    @given(order_and_sets(k=2))
    def test_kuratowski(self, case):
        R, a, b = case
        assert a <= closure(R, a)
        assert closure(R, closure(R, a)) == closure(R, a)
        assert closure(R, a | b) == closure(R, a) | closure(R, b)
        assert closure(R, R.empty) == R.empty

    @given(order_and_sets(k=2))
    def test_interior_meets_closure(self, case):
        R, a, b = case
        assert interior(R, a) & closure(R, b) <= closure(R, a & b)

    @given(order_and_sets(k=1))
    def test_open_iff_up_set(self, case):
        R, a = case
        up = all(R.succ[x] & ~a.bits == 0 for x in a)
        assert is_open(R, a) == up


class TestGammaFamily:
    def test_normalises(self):
        a, b = S(3, 1), S(3, 0, 2)
        assert GammaFamily([b, a, b]) == GammaFamily([a, b])
        assert len(GammaFamily([b, a, b])) == 2

    def test_rejects_empty(self):
        with pytest.raises(EmptyGammaError):
            GammaFamily([])

    def test_rejects_mixed(self):
        with pytest.raises(CarrierMismatchError):
            GammaFamily([S(2), S(3)])


class TestGammaStep:
    def test_singleton_reduces_to_closure(self):
        assert gamma_step(CHAIN3, [S(3, 1)], CHAIN3.full) == S(3, 0, 1)

    def test_empty_argument(self):
        assert gamma_step(CHAIN3, [S(3, 0), S(3, 1)], S(3)) == S(3)

    def test_cluster(self):
        assert gamma_step(CLUSTER2, [S(2, 0), S(2, 1)], CLUSTER2.full) == S(2, 0, 1)

    def test_empty_gamma(self):
        with pytest.raises(EmptyGammaError):
            gamma_step(CHAIN3, [], CHAIN3.full)

    @given(order_and_gamma(), st.data())
    def test_monotone(self, case, data):
        R, gamma = case
        a = data.draw(point_sets(R.size))
        b = data.draw(point_sets(R.size))
        assert gamma_step(R, gamma, a & b) <= gamma_step(R, gamma, a)


ALGORITHMS = [tangle_gfp, tangle_scc, tangle_oracle]


@pytest.mark.parametrize("algo", ALGORITHMS, ids=lambda f: f.__name__)
class TestTangleExamples:
    def test_chain_alternation_is_empty(self, algo):
        assert algo(CHAIN3, [S(3, 1), S(3, 0, 2)]) == S(3)

    def test_cluster_pair(self, algo):
        assert algo(CLUSTER2, [S(2, 0), S(2, 1)]) == S(2, 0, 1)

    def test_two_chain_singleton(self, algo):
        assert algo(QuasiOrder.chain(2), [S(2, 1)]) == S(2, 0, 1)

    def test_full_pair(self, algo):
        assert algo(CHAIN3, [CHAIN3.full, CHAIN3.full]) == CHAIN3.full

    def test_empty_member(self, algo):
        assert algo(CHAIN3, [S(3)]) == S(3)

    def test_empty_gamma(self, algo):
        with pytest.raises(EmptyGammaError):
            algo(CHAIN3, [])


def test_oracle_bound():
    R = QuasiOrder.identity(13)
    with pytest.raises(OracleBoundError):
        tangle_oracle(R, [R.full])
    assert tangle_oracle(QuasiOrder.identity(3), [S(3, 1)], bound=3) == S(3, 1)
    with pytest.raises(OracleBoundError):
        tangle_oracle(QuasiOrder.identity(3), [S(3, 1)], bound=2)


class TestTangleProperties:
    @given(order_and_gamma())
    def test_three_algorithms_agree(self, case):
        R, gamma = case
        g = tangle_gfp(R, gamma)
        assert tangle_scc(R, gamma) == g
        assert tangle_oracle(R, gamma) == g

    @given(order_and_gamma(max_size=6))
    def test_matches_set_reference(self, case):
        R, gamma = case
        m = R.matrix()
        sets = [set(g) for g in gamma]
        expected = ref_tangle(m, sets)
        assert set(tangle_gfp(R, gamma)) == expected
        assert ref_endless_path(m, sets) == expected

    @given(order_and_sets(k=1))
    def test_singleton_is_closure(self, case):
        R, a = case
        assert tangle_gfp(R, [a]) == closure(R, a)

    @given(order_and_gamma())
    def test_below_closures(self, case):
        R, gamma = case
        t = tangle_gfp(R, gamma)
        for g in gamma:
            assert t <= closure(R, g)

    @given(order_and_gamma())
    def test_exact_fixed_point(self, case):
        R, gamma = case
        t = tangle_gfp(R, gamma)
        assert gamma_step(R, gamma, t) == t

    @given(order_and_gamma(), st.data())
    def test_monotone_in_gamma(self, case, data):
        R, gamma = case
        bigger = [g | data.draw(point_sets(R.size)) for g in gamma]
        assert tangle_gfp(R, gamma) <= tangle_gfp(R, bigger)

    @given(order_and_gamma())
    def test_order_and_duplicates_irrelevant(self, case):
        R, gamma = case
        assert tangle_gfp(R, gamma) == tangle_gfp(R, list(reversed(gamma)) + gamma[:1])


class TestClusters:
    def test_identity(self):
        assert clusters(QuasiOrder.identity(3)) == [S(3, 0), S(3, 1), S(3, 2)]

    def test_cluster(self):
        assert clusters(CLUSTER2) == [S(2, 0, 1)]

    def test_chain(self):
        assert clusters(CHAIN3) == [S(3, 0), S(3, 1), S(3, 2)]

    @given(quasiorders())
    def test_partition(self, R):
        ks = clusters(R)
        union = 0
        for k in ks:
            assert not union & k.bits
            union |= k.bits
        assert union == R.full.bits
        where = {x: i for i, k in enumerate(ks) for x in k}
        for x in range(R.size):
            for y in range(R.size):
                assert (where[x] == where[y]) == (R.reach(x, y) and R.reach(y, x))
