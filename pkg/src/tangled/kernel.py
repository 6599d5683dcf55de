"""Finite quasi-orders, point sets, and the tangled closure operator.

Point sets are fixed-width bit vectors over a carrier ``{0, ..., n-1}``.
A quasi-order stores, for every point, the bitmask of its successors; the
Alexandroff closure of a set is the set of points that can see into it.

Three independent routes to the tangled closure are provided:

* :func:`tangle_gfp` iterates the post-fixed-point map down from the full
  carrier until it stabilises;
* :func:`tangle_scc` collects the clusters that meet every member of the
  family and takes their downward closure;
* :func:`tangle_oracle` enumerates every subset of a small carrier and joins
  the post-fixed points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

ORACLE_BOUND = 12


class CarrierMismatchError(ValueError):
    """Operands live on carriers of different sizes."""


class EmptyGammaError(ValueError):
    """A tangle was requested over an empty family."""


class OracleBoundError(ValueError):
    """The carrier is too large for subset enumeration."""


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class PointSet:
    """A subset of the carrier ``{0, ..., size-1}``, stored as a bitmask."""

    size: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError(f"negative carrier size {self.size}")
        if self.bits < 0 or self.bits >> self.size:
            raise ValueError(f"bits {self.bits:#x} exceed carrier of size {self.size}")

    @classmethod
    def of(cls, size: int, members: Iterable[int] = ()) -> PointSet:
        bits = 0
        for x in members:
            if not 0 <= x < size:
                raise ValueError(f"point {x} outside carrier of size {size}")
            bits |= 1 << x
        return cls(size, bits)

    @classmethod
    def empty(cls, size: int) -> PointSet:
        return cls(size, 0)

    @classmethod
    def full(cls, size: int) -> PointSet:
        return cls(size, (1 << size) - 1)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.bits))

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < self.size and bool(self.bits >> x & 1)

    def _check(self, other: PointSet) -> None:
        if not isinstance(other, PointSet):
            raise TypeError(f"expected PointSet, got {type(other).__name__}")
        if other.size != self.size:
            raise CarrierMismatchError(f"carrier sizes differ: {self.size} vs {other.size}")

    def __or__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.size, self.bits | other.bits)

    def __and__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.size, self.bits & other.bits)

    def __sub__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.size, self.bits & ~other.bits)

    def __xor__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.size, self.bits ^ other.bits)

    def __invert__(self) -> PointSet:
        return PointSet(self.size, ~self.bits & ((1 << self.size) - 1))

    def __le__(self, other: PointSet) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: PointSet) -> bool:
        return other <= self

    def __lt__(self, other: PointSet) -> bool:
        return self <= other and self.bits != other.bits

    def __gt__(self, other: PointSet) -> bool:
        return other < self

    def implies(self, other: PointSet) -> PointSet:
        """Boolean implication ``-self | other``."""
        return ~self | other

    def iff(self, other: PointSet) -> PointSet:
        return self.implies(other) & other.implies(self)

    def __str__(self) -> str:
        return "{" + ", ".join(str(x) for x in self) + "}"

    def __repr__(self) -> str:
        return f"PointSet({self.size}, {self})"


def all_subsets(size: int) -> Iterator[PointSet]:
    """Every subset of a carrier, in increasing bitmask order."""
    for bits in range(1 << size):
        yield PointSet(size, bits)


def _close_rows(size: int, rows: Sequence[int]) -> tuple[int, ...]:
    succ = [rows[x] | (1 << x) for x in range(size)]
    # Warshall over bitmask rows
    for k in range(size):
        bit = 1 << k
        row_k = succ[k]
        for x in range(size):
            if succ[x] & bit:
                succ[x] |= row_k
    return tuple(succ)


def _transpose(size: int, rows: Sequence[int]) -> tuple[int, ...]:
    cols = [0] * size
    for x in range(size):
        for y in iter_bits(rows[x]):
            cols[y] |= 1 << x
    return tuple(cols)


@dataclass(frozen=True)
class QuasiOrder:
    """A reflexive transitive relation on ``{0, ..., size-1}``.

    ``succ[x]`` is the bitmask of ``{y : x R y}``. Use the constructors,
    which always take the reflexive-transitive closure of their input.
    """

    size: int
    succ: tuple[int, ...]
    pred: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.succ) != self.size:
            raise ValueError(f"expected {self.size} rows, got {len(self.succ)}")
        object.__setattr__(self, "pred", _transpose(self.size, self.succ))

    @classmethod
    def from_edges(cls, size: int, edges: Iterable[tuple[int, int]] = ()) -> QuasiOrder:
        rows = [0] * size
        for x, y in edges:
            if not (0 <= x < size and 0 <= y < size):
                raise ValueError(f"edge ({x}, {y}) outside carrier of size {size}")
            rows[x] |= 1 << y
        return cls(size, _close_rows(size, rows))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[bool]]) -> QuasiOrder:
        size = len(matrix)
        edges = [(x, y) for x in range(size) for y in range(size) if matrix[x][y]]
        return cls.from_edges(size, edges)

    @classmethod
    def identity(cls, size: int) -> QuasiOrder:
        return cls.from_edges(size)

    @classmethod
    def chain(cls, size: int) -> QuasiOrder:
        """The linear order ``0 <= 1 <= ... <= size-1``."""
        return cls.from_edges(size, [(x, x + 1) for x in range(size - 1)])

    @classmethod
    def cluster(cls, size: int) -> QuasiOrder:
        """All points mutually related."""
        return cls.from_edges(size, [(x, y) for x in range(size) for y in range(size)])

    @classmethod
    def unchecked(cls, rows: Sequence[int]) -> QuasiOrder:
        """Build from raw rows without closing them. For tests only."""
        return cls(len(rows), tuple(rows))

    def reach(self, x: int, y: int) -> bool:
        return bool(self.succ[x] >> y & 1)

    def matrix(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(self.reach(x, y) for y in range(self.size)) for x in range(self.size))

    def edges(self) -> list[tuple[int, int]]:
        """All related pairs ``(x, y)`` with ``x != y``."""
        return [(x, y) for x in range(self.size) for y in iter_bits(self.succ[x]) if x != y]

    def is_valid(self) -> bool:
        """Check reflexivity and transitivity of the stored rows."""
        return all(self.succ[x] >> x & 1 for x in range(self.size)) and self.succ == _close_rows(
            self.size, self.succ
        )

    @property
    def full(self) -> PointSet:
        return PointSet.full(self.size)

    @property
    def empty(self) -> PointSet:
        return PointSet.empty(self.size)

    def closure(self, a: PointSet) -> PointSet:
        return closure(self, a)

    def interior(self, a: PointSet) -> PointSet:
        return interior(self, a)

    def tangle(self, gamma: Iterable[PointSet]) -> PointSet:
        return tangle_gfp(self, gamma)


@dataclass(frozen=True)
class GammaFamily:
    """A finite nonempty set of point sets over one carrier.

    Members are sorted by bitmask and deduplicated on construction, so two
    families with the same members compare equal.
    """

    sets: tuple[PointSet, ...]

    def __init__(self, sets: Iterable[PointSet]) -> None:
        items = tuple(sets)
        if not items:
            raise EmptyGammaError("a tangle needs at least one set")
        size = items[0].size
        for s in items:
            if s.size != size:
                raise CarrierMismatchError(f"family mixes carriers of size {size} and {s.size}")
        normal = tuple(sorted(set(items), key=lambda s: s.bits))
        object.__setattr__(self, "sets", normal)

    @property
    def size(self) -> int:
        return self.sets[0].size

    def __iter__(self) -> Iterator[PointSet]:
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __str__(self) -> str:
        return "{" + ", ".join(str(s) for s in self.sets) + "}"


def as_gamma(gamma: Iterable[PointSet]) -> GammaFamily:
    return gamma if isinstance(gamma, GammaFamily) else GammaFamily(gamma)


def _require(R: QuasiOrder, *sets: PointSet) -> None:
    for s in sets:
        if s.size != R.size:
            raise CarrierMismatchError(f"set over {s.size} points, order over {R.size}")


def _closure_bits(pred: Sequence[int], mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= pred[low.bit_length() - 1]
        mask ^= low
    return out


def closure(R: QuasiOrder, a: PointSet) -> PointSet:
    """Points that reach some member of ``a``."""
    _require(R, a)
    return PointSet(R.size, _closure_bits(R.pred, a.bits))


def interior(R: QuasiOrder, a: PointSet) -> PointSet:
    """The largest up-set inside ``a``."""
    return ~closure(R, ~a)


def is_open(R: QuasiOrder, a: PointSet) -> bool:
    return interior(R, a) == a


def is_closed(R: QuasiOrder, a: PointSet) -> bool:
    return closure(R, a) == a


def _step_bits(pred: Sequence[int], full: int, gamma: Sequence[int], a: int) -> int:
    out = full
    for g in gamma:
        out &= _closure_bits(pred, g & a)
    return out


def gamma_step(R: QuasiOrder, gamma: Iterable[PointSet], a: PointSet) -> PointSet:
    """Intersection over the family of ``closure(g & a)``."""
    gamma = as_gamma(gamma)
    _require(R, a, *gamma)
    bits = [g.bits for g in gamma]
    return PointSet(R.size, _step_bits(R.pred, (1 << R.size) - 1, bits, a.bits))


@lru_cache(maxsize=1 << 16)
def _gfp_bits(R: QuasiOrder, gamma: tuple[int, ...]) -> int:
    full = (1 << R.size) - 1
    a = full
    for _ in range(R.size + 1):
        b = _step_bits(R.pred, full, gamma, a)
        if b == a:
            return a
        a = b
    raise AssertionError("descending iteration failed to stabilise")  # pragma: no cover


def tangle_gfp(R: QuasiOrder, gamma: Iterable[PointSet]) -> PointSet:
    """Greatest fixed point of :func:`gamma_step`, iterated from the full carrier."""
    gamma = as_gamma(gamma)
    _require(R, *gamma)
    return PointSet(R.size, _gfp_bits(R, tuple(g.bits for g in gamma)))


def clusters(R: QuasiOrder) -> list[PointSet]:
    """Maximal classes of mutually related points, ordered by least member."""
    seen = 0
    out = []
    for x in range(R.size):
        if seen >> x & 1:
            continue
        cls = R.succ[x] & R.pred[x]
        seen |= cls
        out.append(PointSet(R.size, cls))
    return out


def tangle_scc(R: QuasiOrder, gamma: Iterable[PointSet]) -> PointSet:
    """Points that reach a cluster meeting every member of ``gamma``.

    Inside such a cluster a path can revisit each member forever; outside
    one, any endless path is eventually confined to a single cluster.
    """
    gamma = as_gamma(gamma)
    _require(R, *gamma)
    good = 0
    for k in clusters(R):
        if all(k.bits & g.bits for g in gamma):
            good |= k.bits
    return PointSet(R.size, _closure_bits(R.pred, good))


def tangle_oracle(R: QuasiOrder, gamma: Iterable[PointSet], bound: int = ORACLE_BOUND) -> PointSet:
    """Join of all post-fixed points, by enumerating every subset."""
    gamma = as_gamma(gamma)
    _require(R, *gamma)
    if R.size > bound:
        raise OracleBoundError(f"carrier of {R.size} points exceeds oracle bound {bound}")
    full = (1 << R.size) - 1
    bits = [g.bits for g in gamma]
    join = 0
    for a in range(full + 1):
        if a & ~_step_bits(R.pred, full, bits, a) == 0:
            join |= a
    return PointSet(R.size, join)


TANGLE_ALGORITHMS = {"gfp": tangle_gfp, "scc": tangle_scc, "oracle": tangle_oracle}


@dataclass(frozen=True)
class Model:
    """A quasi-order with a valuation; unlisted variables denote the empty set."""

    order: QuasiOrder
    valuation: Mapping[str, PointSet] = field(default_factory=dict, hash=False)

    def __post_init__(self) -> None:
        val = dict(sorted(self.valuation.items()))
        for name, s in val.items():
            if s.size != self.order.size:
                raise CarrierMismatchError(
                    f"valuation {name!r} over {s.size} points, order over {self.order.size}"
                )
        object.__setattr__(self, "valuation", val)

    @property
    def size(self) -> int:
        return self.order.size

    def value(self, name: str) -> PointSet:
        return self.valuation.get(name, self.order.empty)
