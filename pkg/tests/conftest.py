from hypothesis import settings, strategies as st

from tangled.kernel import Model, PointSet, QuasiOrder

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@st.composite
def quasiorders(draw, min_size=1, max_size=7):
    n = draw(st.integers(min_size, max_size))
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    edges = draw(st.lists(st.sampled_from(pairs), max_size=2 * n) if pairs else st.just([]))
    return QuasiOrder.from_edges(n, edges)


def point_sets(n):
    return st.integers(0, (1 << n) - 1).map(lambda bits: PointSet(n, bits))


def gammas(n, max_len=3):
    return st.lists(point_sets(n), min_size=1, max_size=max_len)


@st.composite
def order_and_sets(draw, k=1, max_size=7):
    R = draw(quasiorders(max_size=max_size))
    return (R, *[draw(point_sets(R.size)) for _ in range(k)])


@st.composite
def order_and_gamma(draw, max_size=7, max_len=3):
    R = draw(quasiorders(max_size=max_size))
    return R, draw(gammas(R.size, max_len))


@st.composite
def models(draw, names=("p", "q"), max_size=5):
    R = draw(quasiorders(max_size=max_size))
    return Model(R, {name: draw(point_sets(R.size)) for name in names})
