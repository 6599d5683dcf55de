"""Denotations of formulas in finite models, validity, and countermodel search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from ..kernel import Model, PointSet, QuasiOrder, all_subsets, closure, interior, tangle_gfp
from .syntax import (
    And,
    Bot,
    Box,
    Dia,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    Tangle,
    Top,
    Var,
    conj,
    variables,
)

DEFAULT_MAX_POINTS = 5


def evaluate(f: Formula, m: Model, cache: dict | None = None) -> PointSet:
    """The set of points where ``f`` holds.

    ``cache`` memoises subformula denotations; it must only be reused with
    the same model.
    """
    if cache is None:
        cache = {}
    hit = cache.get(f)
    if hit is not None:
        return hit
    R = m.order
    if isinstance(f, Bot):
        out = R.empty
    elif isinstance(f, Top):
        out = R.full
    elif isinstance(f, Var):
        out = m.value(f.name)
    elif isinstance(f, Not):
        out = ~evaluate(f.arg, m, cache)
    elif isinstance(f, Dia):
        out = closure(R, evaluate(f.arg, m, cache))
    elif isinstance(f, Box):
        out = interior(R, evaluate(f.arg, m, cache))
    elif isinstance(f, Tangle):
        out = tangle_gfp(R, [evaluate(a, m, cache) for a in f.args])
    else:
        left, right = evaluate(f.left, m, cache), evaluate(f.right, m, cache)
        if isinstance(f, And):
            out = left & right
        elif isinstance(f, Or):
            out = left | right
        elif isinstance(f, Imp):
            out = left.implies(right)
        elif isinstance(f, Iff):
            out = left.iff(right)
        else:
            raise TypeError(f"not a formula: {f!r}")
    cache[f] = out
    return out


def is_valid_in(f: Formula, m: Model, cache: dict | None = None) -> bool:
    return evaluate(f, m, cache) == m.order.full


def valuations(order: QuasiOrder, names: Iterable[str]) -> Iterator[dict[str, PointSet]]:
    """Every assignment of subsets to ``names``, in lexicographic order."""
    names = sorted(names)
    subsets = list(all_subsets(order.size))
    for combo in itertools.product(subsets, repeat=len(names)):
        yield dict(zip(names, combo))


def models_up_to(max_points: int, names: Iterable[str]) -> Iterator[Model]:
    """All models on 1..max_points labeled points over ``names``."""
    from ..constructions import enumerate_quasiorders

    names = sorted(names)
    for n in range(1, max_points + 1):
        for order in enumerate_quasiorders(n):
            for val in valuations(order, names):
                yield Model(order, val)


@dataclass(frozen=True)
class Countermodel:
    model: Model
    point: int


def countermodel_search(f: Formula, max_points: int = DEFAULT_MAX_POINTS) -> Countermodel | None:
    """The first model, in enumeration order, where ``f`` fails somewhere."""
    for m in models_up_to(max_points, variables(f)):
        failing = ~evaluate(f, m)
        if failing:
            return Countermodel(m, failing.members[0])
    return None


# --- axiom schemes --------------------------------------------------------

SCHEMES = ("K", "T", "4", "FIX", "IND")


def axiom_instance(
    scheme: str,
    subst: Mapping[str, Formula] | None = None,
    gamma: Iterable[Formula] | None = None,
    chosen: Formula | None = None,
) -> Formula:
    """Instantiate an axiom scheme.

    ``K`` needs ``phi`` and ``psi``; ``T`` and ``4`` need ``phi``; ``FIX``
    needs ``gamma`` and the member ``chosen``; ``IND`` needs ``gamma`` and
    ``phi``.
    """
    subst = dict(subst or {})

    def letter(name: str) -> Formula:
        if name not in subst:
            raise ValueError(f"scheme {scheme} needs a substitution for {name!r}")
        return subst[name]

    if scheme == "K":
        phi, psi = letter("phi"), letter("psi")
        return Imp(Box(Imp(phi, psi)), Imp(Box(phi), Box(psi)))
    if scheme == "T":
        phi = letter("phi")
        return Imp(phi, Dia(phi))
    if scheme == "4":
        phi = letter("phi")
        return Imp(Dia(Dia(phi)), Dia(phi))
    if scheme in ("FIX", "IND"):
        if gamma is None:
            raise ValueError(f"scheme {scheme} needs a nonempty gamma")
        t = Tangle(gamma)
        if scheme == "FIX":
            if chosen is None:
                raise ValueError("scheme FIX needs a chosen member of gamma")
            if chosen not in t.args:
                raise ValueError(f"{chosen} is not a member of {t}")
            return Imp(t, Dia(And(chosen, t)))
        phi = letter("phi")
        body = conj(Dia(And(g, phi)) for g in t.args)
        return Imp(Box(Imp(phi, body)), Imp(phi, t))
    raise ValueError(f"unknown scheme {scheme!r}")
