"""Model generators and the finite chain witnesses.

``random_quasiorder`` uses Python's :class:`random.Random` (Mersenne
Twister) seeded with the integer seed. Off-diagonal pairs ``(x, y)`` are
visited in row-major order and each is kept when ``rng.random() <
edge_density``; the result is the reflexive-transitive closure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .algebra import BoundedMorphism, check_bounded_morphism, cluster_quotient
from .kernel import Model, PointSet, QuasiOrder, iter_bits, tangle_gfp
from .logic import And, Bot, Box, Dia, Formula, Iff, Imp, Not, Or, Tangle, Top, Var, evaluate

MAX_ENUM_POINTS = 5


def chain_model(m: int) -> Model:
    """The chain ``0 <= 1 <= ... <= m`` with ``p_n = {n}`` and ``q`` the odd points."""
    if m < 1:
        raise ValueError(f"chain index must be at least 1, got {m}")
    size = m + 1
    val = {f"p{n}": PointSet.of(size, [n]) for n in range(size)}
    val["q"] = PointSet.of(size, range(1, size, 2))
    return Model(QuasiOrder.chain(size), val)


def step_formula(n: int):
    """``[](p_n -> <>(p_{n+1} & q))`` for even ``n``, with ``~q`` for odd ``n``."""
    target = Var("q") if n % 2 == 0 else Not(Var("q"))
    return Box(Imp(Var(f"p{n}"), Dia(And(Var(f"p{n + 1}"), target))))


@dataclass(frozen=True)
class WitnessReport:
    m: int
    p0_holds: bool
    each_a_n_holds: tuple[bool, ...]
    tangle_empty_at_0: bool

    @property
    def overall(self) -> bool:
        return self.p0_holds and all(self.each_a_n_holds) and self.tangle_empty_at_0


def sigma_witness(m: int) -> WitnessReport:
    """Check that point 0 of ``chain_model(m)`` satisfies the first ``m`` step
    conditions while avoiding the tangle of ``{q, ~q}``."""
    model = chain_model(m)
    cache: dict = {}
    p0 = 0 in evaluate(Var("p0"), model, cache)
    steps = tuple(0 in evaluate(step_formula(n), model, cache) for n in range(m))
    q = model.value("q")
    t = tangle_gfp(model.order, [q, ~q])
    return WitnessReport(m, p0, steps, 0 not in t)


def add_root(model: Model) -> Model:
    """Add a new point, indexed last, that reaches every point."""
    R = model.order
    n = R.size
    rows = list(R.succ) + [(1 << (n + 1)) - 1]
    order = QuasiOrder.unchecked(rows)
    val = {name: PointSet(n + 1, s.bits) for name, s in model.valuation.items()}
    return Model(order, val)


def _extensions(R: QuasiOrder) -> Iterator[tuple[int, ...]]:
    """Quasi-orders on ``n+1`` points whose restriction to the first ``n`` is ``R``.

    The new point sees an up-set ``U`` and is seen by a down-set ``D`` with
    every member of ``D`` below every member of ``U``.
    """
    n = R.size
    ups = [u for u in range(1 << n) if all(R.succ[x] & ~u == 0 for x in iter_bits(u))]
    downs = [d for d in range(1 << n) if all(R.pred[x] & ~d == 0 for x in iter_bits(d))]
    new = 1 << n
    for u in ups:
        for d in downs:
            if any(R.succ[x] & u != u for x in iter_bits(d)):
                continue
            rows = [R.succ[x] | (new if d >> x & 1 else 0) for x in range(n)]
            yield tuple(rows) + (u | new,)


def _order_key(R: QuasiOrder) -> tuple:
    return (len(R.edges()), R.edges())


def enumerate_quasiorders(n: int) -> list[QuasiOrder]:
    """Every quasi-order on ``n`` labeled points, fewest edges first."""
    if not 0 <= n <= MAX_ENUM_POINTS:
        raise ValueError(f"enumeration is limited to {MAX_ENUM_POINTS} points, got {n}")
    layer = [QuasiOrder(0, ())]
    for _ in range(n):
        layer = [QuasiOrder(len(rows), rows) for R in layer for rows in _extensions(R)]
    return sorted(layer, key=_order_key)


def random_quasiorder(n: int, seed: int, edge_density: float) -> QuasiOrder:
    if not 0.0 <= edge_density <= 1.0:
        raise ValueError(f"edge density must lie in [0, 1], got {edge_density}")
    rng = random.Random(seed)
    edges = [(x, y) for x in range(n) for y in range(n) if x != y and rng.random() < edge_density]
    return QuasiOrder.from_edges(n, edges)


def random_model(n: int, seed: int, edge_density: float, names=("p", "q")) -> Model:
    order = random_quasiorder(n, seed, edge_density)
    rng = random.Random(f"valuation:{seed}")
    return Model(order, {name: PointSet(n, rng.getrandbits(n) if n else 0) for name in names})


_UNARY = (Not, Dia, Box)
_BINARY = (And, Or, Imp, Iff)


def random_formula(rng: random.Random, max_depth: int = 6, names=("p", "q", "r")) -> Formula:
    """A random formula of depth at most ``max_depth``; leaves get likelier as depth runs out."""
    if max_depth <= 0 or rng.random() < 0.15:
        pick = rng.randrange(len(names) + 2)
        if pick < len(names):
            return Var(names[pick])
        return Bot() if pick == len(names) else Top()
    d = max_depth - 1
    kind = rng.random()
    if kind < 0.35:
        return rng.choice(_UNARY)(random_formula(rng, d, names))
    if kind < 0.85:
        return rng.choice(_BINARY)(random_formula(rng, d, names), random_formula(rng, d, names))
    return Tangle([random_formula(rng, d, names) for _ in range(rng.randint(1, 3))])


def _total_preorder(levels: list[int]) -> tuple[QuasiOrder, list[int]]:
    """Points grouped into clusters stacked in a line; returns the order and each point's level."""
    level_of = [i for i, count in enumerate(levels) for _ in range(count)]
    size = len(level_of)
    edges = [(x, y) for x in range(size) for y in range(size) if level_of[x] <= level_of[y]]
    return QuasiOrder.from_edges(size, edges), level_of


def random_bounded_morphism(seed: int, max_size: int = 6) -> BoundedMorphism:
    """A seeded bounded morphism with at most ``max_size`` target points.

    Even seeds quotient a random quasi-order by its clusters. Odd seeds
    build a line of clusters and collapse it monotonically onto a shorter
    chain, which also merges each cluster to a point.
    """
    rng = random.Random(seed)
    if seed % 2 == 0:
        n = rng.randint(1, max_size)
        m = cluster_quotient(random_quasiorder(n, rng.randrange(1 << 30), rng.choice([0.15, 0.3, 0.5])))
    else:
        size = rng.randint(1, max_size)
        cuts = sorted(rng.sample(range(1, size), rng.randint(0, size - 1))) if size > 1 else []
        bounds = [0] + cuts + [size]
        levels = [b - a for a, b in zip(bounds, bounds[1:])]
        target, level_of = _total_preorder(levels)
        k = len(levels)
        j = rng.randint(1, k)
        # monotone surjection of levels 0..k-1 onto 0..j-1
        breaks = sorted(rng.sample(range(1, k), j - 1))
        image = [sum(1 for b in breaks if b <= lv) for lv in range(k)]
        m = BoundedMorphism(QuasiOrder.chain(j), target, tuple(image[lv] for lv in level_of))
    report = check_bounded_morphism(m)
    if not report.passed:  # pragma: no cover
        raise AssertionError(f"generator produced an invalid morphism: {report}")
    return m
