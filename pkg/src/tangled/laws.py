"""Checkers for the closure-algebra and tangled-closure laws.

Every checker takes an explicit instantiation and returns a
:class:`LawReport`. A failing report carries the checker's own keyword
arguments as its witness, so :func:`replay` reproduces the failure.

The ``R`` argument of each checker is anything exposing ``size``,
``closure``, ``interior`` and ``tangle`` over :class:`PointSet` values: a
:class:`QuasiOrder`, a relativised model, or an extended operator.
Drivers at the bottom of the module quantify over instantiations.
"""

from __future__ import annotations

import itertools
import random
from math import comb
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Sequence

from .kernel import PointSet, all_subsets

EXHAUSTIVE_MAX_POINTS = 5
EXHAUSTIVE_CAP = 4096
SAMPLE_SIZE = 200


@dataclass(frozen=True)
class LawReport:
    law: str
    passed: bool
    witness: dict[str, Any] | None = field(default=None, compare=False)
    detail: str = ""

    def __post_init__(self) -> None:
        if self.passed != (self.witness is None):
            raise ValueError("a report has a witness exactly when it fails")

    def __str__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.law}: {verdict}" + (f" ({self.detail})" if self.detail else "")


def _ok(law: str) -> LawReport:
    return LawReport(law, True)


def _fail(law: str, detail: str, **witness: Any) -> LawReport:
    return LawReport(law, False, witness, detail)


def _pairs(size: int) -> Iterator[tuple[PointSet, PointSet]]:
    subsets = list(all_subsets(size))
    return itertools.product(subsets, subsets)


def _random_set(rng: random.Random, size: int) -> PointSet:
    return PointSet(size, rng.getrandbits(size) if size else 0)


def check_kuratowski(R, sample: Iterable[tuple[PointSet, PointSet]] | None = None, seed: int = 0) -> LawReport:
    """Additivity, normality, inflation and idempotence of ``R.closure``.

    ``sample`` is an explicit list of ``(a, b)`` pairs; when omitted every
    pair is tried on carriers of at most five points and a seeded sample of
    200 pairs is drawn otherwise.
    """
    law = "kuratowski"
    n = R.size
    empty = PointSet.empty(n)
    if R.closure(empty) != empty:
        return _fail(law, "normality: C0 != 0", R=R, sample=[(empty, empty)])
    if sample is None:
        if n <= EXHAUSTIVE_MAX_POINTS:
            sample = _pairs(n)
        else:
            rng = random.Random(seed)
            sample = [(_random_set(rng, n), _random_set(rng, n)) for _ in range(SAMPLE_SIZE)]
    for a, b in sample:
        ca, cb = R.closure(a), R.closure(b)
        if not a <= ca:
            return _fail(law, f"inflation fails at {a}", R=R, sample=[(a, b)])
        if R.closure(ca) != ca:
            return _fail(law, f"idempotence fails at {a}", R=R, sample=[(a, b)])
        if R.closure(a | b) != ca | cb:
            return _fail(law, f"additivity fails at {a}, {b}", R=R, sample=[(a, b)])
    return _ok(law)


def check_ic_meet(R, a: PointSet, b: PointSet) -> LawReport:
    """``I a & C b <= C(a & b)``."""
    if R.interior(a) & R.closure(b) <= R.closure(a & b):
        return _ok("ic_meet")
    return _fail("ic_meet", "interior-closure meet inequality", R=R, a=a, b=b)


def _step(R, gamma: Sequence[PointSet], a: PointSet) -> PointSet:
    out = PointSet.full(R.size)
    for g in gamma:
        out = out & R.closure(g & a)
    return out


def check_fix(R, gamma: Sequence[PointSet]) -> LawReport:
    """The tangle is a post-fixed point of its own step map."""
    t = R.tangle(gamma)
    if t <= _step(R, gamma, t):
        return _ok("fix")
    return _fail("fix", f"tangle {t} is not post-fixed", R=R, gamma=list(gamma))


def check_ind(R, gamma: Sequence[PointSet], a: PointSet) -> LawReport:
    """``I(a => step(a)) & a`` lies below the tangle."""
    lhs = R.interior(a.implies(_step(R, gamma, a))) & a
    if lhs <= R.tangle(gamma):
        return _ok("ind")
    return _fail("ind", f"left side {lhs} escapes the tangle", R=R, gamma=list(gamma), a=a)


def check_closed_tangle(R, gamma: Sequence[PointSet]) -> LawReport:
    t = R.tangle(gamma)
    if R.closure(t) == t:
        return _ok("closed_tangle")
    return _fail("closed_tangle", f"tangle {t} is not closed", R=R, gamma=list(gamma))


def check_congruence(R, gamma: Sequence[PointSet], gamma2: Sequence[PointSet]) -> LawReport:
    """Pointwise interior-equivalence of two paired families bounds that of their tangles."""
    if len(gamma) != len(gamma2):
        raise ValueError(f"paired families differ in length: {len(gamma)} vs {len(gamma2)}")
    lhs = PointSet.full(R.size)
    for g, h in zip(gamma, gamma2):
        lhs = lhs & R.interior(g.iff(h))
    rhs = R.interior(R.tangle(gamma).iff(R.tangle(gamma2)))
    if lhs <= rhs:
        return _ok("congruence")
    return _fail("congruence", f"{lhs} not below {rhs}", R=R, gamma=list(gamma), gamma2=list(gamma2))


CHECKERS: dict[str, Callable[..., LawReport]] = {
    "kuratowski": check_kuratowski,
    "ic_meet": check_ic_meet,
    "fix": check_fix,
    "ind": check_ind,
    "closed_tangle": check_closed_tangle,
    "congruence": check_congruence,
}


def replay(report: LawReport) -> LawReport:
    """Re-run the checker named by a failing report on its witness."""
    if report.witness is None:
        raise ValueError("passing reports carry nothing to replay")
    return CHECKERS[report.law](**report.witness)


# --- drivers -------------------------------------------------------------


def families(subsets: Sequence[PointSet], max_len: int = 2) -> Iterator[tuple[PointSet, ...]]:
    """Unordered families of 1..max_len sets, repetition allowed."""
    for k in range(1, max_len + 1):
        yield from itertools.combinations_with_replacement(subsets, k)


def paired_families(subsets: Sequence[PointSet], max_len: int = 2) -> Iterator[tuple[tuple, tuple]]:
    for k in range(1, max_len + 1):
        for g in itertools.product(subsets, repeat=k):
            for h in itertools.product(subsets, repeat=k):
                yield g, h


def instantiations(law: str, size: int, max_len: int = 2) -> Iterator[dict[str, Any]]:
    """Every instantiation of ``law`` over a carrier, as checker kwargs."""
    subsets = list(all_subsets(size))
    if law == "kuratowski":
        for a, b in _pairs(size):
            yield {"sample": [(a, b)]}
    elif law == "ic_meet":
        for a, b in _pairs(size):
            yield {"a": a, "b": b}
    elif law in ("fix", "closed_tangle"):
        for g in families(subsets, max_len):
            yield {"gamma": list(g)}
    elif law == "ind":
        for g in families(subsets, max_len):
            for a in subsets:
                yield {"gamma": list(g), "a": a}
    elif law == "congruence":
        for g, h in paired_families(subsets, max_len):
            yield {"gamma": list(g), "gamma2": list(h)}
    else:
        raise KeyError(f"unknown law {law!r}")


def count_instantiations(law: str, size: int, max_len: int = 2) -> int:
    m = 1 << size
    fam = sum(_multichoose(m, k) for k in range(1, max_len + 1))
    return {
        "kuratowski": m * m,
        "ic_meet": m * m,
        "fix": fam,
        "closed_tangle": fam,
        "ind": fam * m,
        "congruence": sum(m ** (2 * k) for k in range(1, max_len + 1)),
    }[law]


def _multichoose(m: int, k: int) -> int:
    return comb(m + k - 1, k)


def sampled_instantiations(law: str, size: int, seed: int, count: int = SAMPLE_SIZE, max_len: int = 2):
    rng = random.Random(f"{law}:{size}:{seed}")

    def rs() -> PointSet:
        return _random_set(rng, size)

    def rg() -> list[PointSet]:
        return [rs() for _ in range(rng.randint(1, max_len))]

    for _ in range(count):
        if law == "kuratowski":
            yield {"sample": [(rs(), rs())]}
        elif law == "ic_meet":
            yield {"a": rs(), "b": rs()}
        elif law in ("fix", "closed_tangle"):
            yield {"gamma": rg()}
        elif law == "ind":
            yield {"gamma": rg(), "a": rs()}
        elif law == "congruence":
            g = rg()
            yield {"gamma": g, "gamma2": [rs() for _ in g]}
        else:
            raise KeyError(f"unknown law {law!r}")


def sweep_law(R, law: str, seed: int = 0, exhaustive: bool | None = None) -> LawReport:
    """Check one law over every instantiation, or a seeded sample of them.

    By default a law is swept exhaustively when the carrier has at most five
    points and the instantiation count stays within ``EXHAUSTIVE_CAP``.
    """
    if exhaustive is None:
        exhaustive = R.size <= EXHAUSTIVE_MAX_POINTS and count_instantiations(law, R.size) <= EXHAUSTIVE_CAP
    cases = instantiations(law, R.size) if exhaustive else sampled_instantiations(law, R.size, seed)
    checker = CHECKERS[law]
    for kwargs in cases:
        report = checker(R, **kwargs)
        if not report.passed:
            return report
    return _ok(law)


def sweep_all(R, seed: int = 0, exhaustive: bool | None = None) -> list[LawReport]:
    return [sweep_law(R, law, seed, exhaustive) for law in CHECKERS]
