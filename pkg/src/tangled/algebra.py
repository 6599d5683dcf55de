"""Abstract finite closure algebras and the constructions relating them.

Covers the atom-table presentation of a finite closure algebra and its
quasi-order dual, well-connectedness, relativisation to open elements,
homomorphisms induced by bounded morphisms, the upper MacNeille extension
of a partition-generated subalgebra, and a bounded dissection search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .kernel import (
    CarrierMismatchError,
    Model,
    PointSet,
    QuasiOrder,
    as_gamma,
    closure,
    clusters,
    is_open,
    iter_bits,
    tangle_gfp,
)
from .laws import LawReport


class RepresentationError(ValueError):
    """A table or view violates the closure-operator invariants."""


class PreconditionError(ValueError):
    """An operation was applied outside its domain."""


# --- atom tables ----------------------------------------------------------


@dataclass(frozen=True)
class ClosureTable:
    """A finite closure algebra given by the closure of each atom."""

    atom_count: int
    atom_closure: tuple[PointSet, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "atom_closure", tuple(self.atom_closure))
        if len(self.atom_closure) != self.atom_count:
            raise RepresentationError(f"expected {self.atom_count} atom closures, got {len(self.atom_closure)}")

    def validate(self) -> None:
        for x, cx in enumerate(self.atom_closure):
            if cx.size != self.atom_count:
                raise RepresentationError(f"C{{{x}}} lives on {cx.size} points")
            if x not in cx:
                raise RepresentationError(f"C{{{x}}} = {cx} does not contain {x}")
            for y in cx:
                if not self.atom_closure[y] <= cx:
                    raise RepresentationError(f"C{{{y}}} not inside C{{{x}}} although {y} in C{{{x}}}")

    def closure(self, a: PointSet) -> PointSet:
        out = PointSet.empty(self.atom_count)
        for y in a:
            out = out | self.atom_closure[y]
        return out


def table_to_order(t: ClosureTable) -> QuasiOrder:
    """``x R y`` iff ``x`` lies in the closure of ``{y}``."""
    t.validate()
    rows = [0] * t.atom_count
    for y, cy in enumerate(t.atom_closure):
        for x in cy:
            rows[x] |= 1 << y
    R = QuasiOrder.unchecked(rows)
    if not R.is_valid():
        raise RepresentationError("atom closures do not induce a quasi-order")
    return R


def order_to_table(R: QuasiOrder) -> ClosureTable:
    return ClosureTable(R.size, tuple(PointSet(R.size, R.pred[y]) for y in range(R.size)))


# --- connectedness --------------------------------------------------------


def point_generator(R: QuasiOrder) -> int | None:
    """The least point that reaches every point, if any."""
    full = (1 << R.size) - 1
    for x in range(R.size):
        if R.succ[x] == full:
            return x
    return None


def is_point_generated(R: QuasiOrder) -> bool:
    return point_generator(R) is not None


def is_well_connected(R: QuasiOrder) -> bool:
    """Closures of nonzero sets always meet.

    By additivity it suffices that the closures of any two atoms meet.
    """
    return all(R.pred[x] & R.pred[y] for x in range(R.size) for y in range(x, R.size))


# --- relativisation -------------------------------------------------------


@dataclass(frozen=True)
class RelativizedModel:
    """The algebra of subsets of an open element ``alpha``.

    Points of ``alpha`` are renumbered ``0..|alpha|-1``; ``index_map[i]`` is
    the original index of new point ``i``. Closure is ``alpha & C`` and the
    tangle is ``alpha & tangle`` computed in the ambient order.
    """

    parent: QuasiOrder
    alpha: PointSet
    index_map: tuple[int, ...]
    order: QuasiOrder
    valuation: Mapping[str, PointSet] = field(default_factory=dict, hash=False)

    @property
    def size(self) -> int:
        return len(self.index_map)

    @property
    def model(self) -> Model:
        return Model(self.order, self.valuation)

    def lift(self, b: PointSet) -> PointSet:
        if b.size != self.size:
            raise CarrierMismatchError(f"expected a set over {self.size} points, got {b.size}")
        bits = 0
        for i in iter_bits(b.bits):
            bits |= 1 << self.index_map[i]
        return PointSet(self.parent.size, bits)

    def lower(self, s: PointSet) -> PointSet:
        if s.size != self.parent.size:
            raise CarrierMismatchError(f"expected a set over {self.parent.size} points, got {s.size}")
        bits = 0
        for i, x in enumerate(self.index_map):
            bits |= (s.bits >> x & 1) << i
        return PointSet(self.size, bits)

    def closure(self, b: PointSet) -> PointSet:
        return self.lower(self.alpha & closure(self.parent, self.lift(b)))

    def interior(self, b: PointSet) -> PointSet:
        # dual within the relativised algebra, where complement is alpha - b
        return ~self.closure(~b)

    def tangle(self, gamma: Iterable[PointSet]) -> PointSet:
        lifted = [self.lift(g) for g in gamma]
        return self.lower(self.alpha & tangle_gfp(self.parent, lifted))


def relativize(R: QuasiOrder, valuation: Mapping[str, PointSet] | None, alpha: PointSet) -> RelativizedModel:
    if not is_open(R, alpha):
        raise PreconditionError(f"{alpha} is not an up-set")
    index = alpha.members
    where = {x: i for i, x in enumerate(index)}
    rows = [0] * len(index)
    for i, x in enumerate(index):
        for y in iter_bits(R.succ[x] & alpha.bits):
            rows[i] |= 1 << where[y]
    restricted = QuasiOrder.unchecked(rows)
    val = {}
    for name, s in (valuation or {}).items():
        val[name] = PointSet.of(len(index), (where[x] for x in s if x in where))
    rel = RelativizedModel(R, alpha, index, restricted, val)
    # for an up-set the induced closure is the restriction's closure
    if not restricted.is_valid() or any(
        rel.closure(PointSet.of(rel.size, [i])) != closure(restricted, PointSet.of(rel.size, [i]))
        for i in range(rel.size)
    ):
        raise RepresentationError("relativised closure differs from the restricted order")
    return rel


# --- bounded morphisms ----------------------------------------------------


@dataclass(frozen=True)
class BoundedMorphism:
    """A frame map ``target -> source``.

    Its preimage map sends subsets of ``source`` to subsets of ``target``
    and is a closure-algebra homomorphism when forth and back hold.
    """

    source: QuasiOrder
    target: QuasiOrder
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "map", tuple(self.map))
        if len(self.map) != self.target.size:
            raise ValueError(f"map has {len(self.map)} entries for {self.target.size} points")
        if any(not 0 <= z < self.source.size for z in self.map):
            raise ValueError("map leaves the source carrier")

    def preimage(self, a: PointSet) -> PointSet:
        if a.size != self.source.size:
            raise ValueError(f"set over {a.size} points, source has {self.source.size}")
        return PointSet.of(self.target.size, (x for x, z in enumerate(self.map) if z in a))


def check_bounded_morphism(m: BoundedMorphism) -> LawReport:
    law = "bounded_morphism"
    S, R2, f = m.target, m.source, m.map
    if set(f) != set(range(R2.size)):
        return LawReport(law, False, {"m": m}, "map is not surjective")
    for x in range(S.size):
        for y in iter_bits(S.succ[x]):
            if not R2.reach(f[x], f[y]):
                return LawReport(law, False, {"m": m}, f"forth fails on {x} R {y}")
        images = {f[y] for y in iter_bits(S.succ[x])}
        for z in iter_bits(R2.succ[f[x]]):
            if z not in images:
                return LawReport(law, False, {"m": m}, f"back fails at {x} towards {z}")
    return LawReport(law, True)


def check_hom_preserves_tangle(m: BoundedMorphism, gamma: Iterable[PointSet]) -> LawReport:
    """The preimage of a source tangle is the target tangle of the preimages."""
    gamma = as_gamma(gamma)
    lhs = m.preimage(tangle_gfp(m.source, gamma))
    rhs = tangle_gfp(m.target, [m.preimage(g) for g in gamma])
    if lhs == rhs:
        return LawReport("hom_preserves_tangle", True)
    return LawReport("hom_preserves_tangle", False, {"m": m, "gamma": list(gamma)}, f"{lhs} != {rhs}")


def cluster_quotient(R: QuasiOrder) -> BoundedMorphism:
    """Collapse each cluster of ``R`` to one point of a partial order."""
    ks = clusters(R)
    index = [0] * R.size
    for i, k in enumerate(ks):
        for x in k:
            index[x] = i
    edges = [(index[x], index[y]) for x, y in R.edges()]
    return BoundedMorphism(QuasiOrder.from_edges(len(ks), edges), R, tuple(index))


# --- subalgebras and the upper MacNeille extension ------------------------


@dataclass(frozen=True)
class SubalgebraView:
    """A partition-generated Boolean subalgebra with its own closure.

    Elements are the unions of ``blocks``; ``closure_map`` sends the bitmask
    of each element to its closure, itself an element.
    """

    size: int
    blocks: tuple[PointSet, ...]
    closure_map: Mapping[int, PointSet] = field(hash=False)
    order: QuasiOrder | None = None

    def __post_init__(self) -> None:
        blocks = tuple(sorted(self.blocks, key=lambda b: b.members[0] if b else -1))
        object.__setattr__(self, "blocks", blocks)
        union = 0
        for b in blocks:
            if b.size != self.size or not b:
                raise RepresentationError(f"bad block {b!r}")
            if union & b.bits:
                raise RepresentationError("blocks overlap")
            union |= b.bits
        if union != (1 << self.size) - 1:
            raise RepresentationError("blocks do not cover the carrier")
        object.__setattr__(self, "_elements", tuple(_unions(blocks, self.size)))
        elems = {e.bits for e in self.elements()}
        if set(self.closure_map) != elems:
            raise RepresentationError("closure_map must be defined exactly on the elements")
        for e in self.elements():
            ce = self.closure_map[e.bits]
            if ce.bits not in elems:
                raise RepresentationError(f"closure of {e} = {ce} is not an element")
            if not e <= ce or self.closure_map[ce.bits] != ce:
                raise RepresentationError(f"closure fails inflation or idempotence at {e}")
        if self.closure_map[0]:
            raise RepresentationError("closure of the empty element is nonempty")
        for e, f in itertools.product(self.elements(), repeat=2):
            if self.closure_map[(e | f).bits] != self.closure_map[e.bits] | self.closure_map[f.bits]:
                raise RepresentationError(f"closure not additive on {e}, {f}")

    @classmethod
    def from_order(cls, R: QuasiOrder, blocks: Iterable[PointSet]) -> SubalgebraView:
        """Restrict the Alexandroff closure of ``R`` to the subalgebra of ``blocks``.

        Raises :class:`RepresentationError` unless the element family is
        closed under that closure.
        """
        blocks = tuple(blocks)
        cmap = {}
        for combo in _unions(blocks, R.size):
            cmap[combo.bits] = closure(R, combo)
        return cls(R.size, blocks, cmap, R)

    @classmethod
    def powerset(cls, R: QuasiOrder) -> SubalgebraView:
        return cls.from_order(R, [PointSet.of(R.size, [x]) for x in range(R.size)])

    def elements(self) -> Iterator[PointSet]:
        return iter(self._elements)

    def closure_on_elements(self, a: PointSet) -> PointSet:
        return self.closure_map[a.bits]


def _unions(blocks: Sequence[PointSet], size: int) -> Iterator[PointSet]:
    for r in range(len(blocks) + 1):
        for combo in itertools.combinations(blocks, r):
            bits = 0
            for b in combo:
                bits |= b.bits
            yield PointSet(size, bits)


def upper_macneille(v: SubalgebraView, b: PointSet) -> PointSet:
    """Meet of the subalgebra closures of all elements above ``b``."""
    if b.size != v.size:
        raise CarrierMismatchError(f"expected a set over {v.size} points, got {b.size}")
    out = (1 << v.size) - 1
    for a in v.elements():
        if b.bits & ~a.bits == 0:
            out &= v.closure_map[a.bits].bits
    return PointSet(v.size, out)


@dataclass(frozen=True)
class MacNeilleOperator:
    """The upper MacNeille extension as a closure operator on every subset."""

    view: SubalgebraView

    @property
    def size(self) -> int:
        return self.view.size

    def closure(self, b: PointSet) -> PointSet:
        return upper_macneille(self.view, b)

    def interior(self, b: PointSet) -> PointSet:
        return ~self.closure(~b)

    def tangle(self, gamma: Iterable[PointSet]) -> PointSet:
        gamma = as_gamma(gamma)
        a = PointSet.full(self.size)
        while True:
            nxt = PointSet.full(self.size)
            for g in gamma:
                nxt = nxt & self.closure(g & a)
            if nxt == a:
                return a
            a = nxt


def partition_views(R: QuasiOrder) -> Iterator[SubalgebraView]:
    """Every partition-generated subalgebra closed under the closure of ``R``."""
    for parts in set_partitions(list(range(R.size))):
        blocks = [PointSet.of(R.size, p) for p in parts]
        try:
            yield SubalgebraView.from_order(R, blocks)
        except RepresentationError:
            continue


# --- dissection -----------------------------------------------------------


def set_partitions(items: Sequence[int], k: int | None = None) -> Iterator[list[list[int]]]:
    """Set partitions of ``items`` in restricted-growth-string order.

    With ``k`` given, only partitions into exactly ``k`` blocks are produced.
    """
    n = len(items)
    if n == 0:
        if k in (None, 0):
            yield []
        return
    labels = [0] * n

    def rec(i: int, blocks: int) -> Iterator[list[list[int]]]:
        if i == n:
            if k is None or blocks == k:
                out: list[list[int]] = [[] for _ in range(blocks)]
                for item, lab in zip(items, labels):
                    out[lab].append(item)
                yield out
            return
        if k is not None and blocks + (n - i) < k:
            return
        top = blocks + 1 if k is None else min(blocks + 1, k)
        for lab in range(top):
            labels[i] = lab
            yield from rec(i + 1, max(blocks, lab + 1))

    labels[0] = 0
    yield from rec(1, 1)


@dataclass(frozen=True)
class DissectionWitness:
    opens: tuple[PointSet, ...]
    others: tuple[PointSet, ...]


def dissect_witness_search(
    R: QuasiOrder, alpha: PointSet, r: int, s: int, max_points: int = 8, max_parts: int = 4
) -> DissectionWitness | None:
    """Search for a partition of ``alpha`` into ``r`` open and ``s`` further nonzero parts.

    The closure of each open part minus itself, the closure of each further
    part, and the closure of ``alpha`` minus the open parts must coincide.
    Partitions are tried in restricted-growth order and, within one, every
    assignment of parts to slots in permutation order; the first hit wins.
    """
    if not alpha:
        raise PreconditionError("alpha must be nonzero")
    if not is_open(R, alpha):
        raise PreconditionError(f"{alpha} is not open")
    if R.size > max_points or r + s > max_parts:
        raise ValueError(f"search bound exceeded: {R.size} points, {r + s} parts")
    if r < 0 or s < 0:
        raise ValueError("part counts must be nonnegative")
    c_alpha = closure(R, alpha)
    for parts in set_partitions(alpha.members, r + s):
        sets = [PointSet.of(R.size, p) for p in parts]
        for perm in itertools.permutations(sets):
            opens, others = perm[:r], perm[r:]
            if not all(is_open(R, a) for a in opens):
                continue
            union = PointSet.empty(R.size)
            for a in opens:
                union = union | a
            target = c_alpha - union
            if all(closure(R, a) - a == target for a in opens) and all(
                closure(R, b) == target for b in others
            ):
                return DissectionWitness(tuple(opens), tuple(others))
    return None
