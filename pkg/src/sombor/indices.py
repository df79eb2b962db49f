"""Vertex-degree-based edge-sum indices: the Sombor index and SO1..SO6.

Every index here has the form ``sum over edges uv of F(d_u, d_v)`` for a
symmetric weight ``F``.  Constant factors in a definition (the 1/2 of SO1
and SO4, the pi factors) live inside the per-edge weight so the edge-sum
and the degree-pair-profile routes share one formula table.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Mapping

from .graph import EmptyGraphError, Graph, GraphError, IsolatedVertexError, Profile, degree_pair_profile

SQRT2 = math.sqrt(2.0)
PI = math.pi


class WeightError(GraphError):
    code = "index"


class IndexId(str, enum.Enum):
    SO = "SO"
    SO1 = "SO1"
    SO2 = "SO2"
    SO3 = "SO3"
    SO4 = "SO4"
    SO5 = "SO5"
    SO6 = "SO6"

    @classmethod
    def parse(cls, name: str) -> "IndexId":
        try:
            return cls(name.strip().upper())
        except ValueError:
            raise WeightError(f"unknown index {name!r}; expected one of {', '.join(i.value for i in cls)}") from None


def _so(a, b):
    return math.sqrt(a * a + b * b)


def _so1(a, b):
    return 0.5 * abs(a * a - b * b)


def _so2(a, b):
    return abs(a * a - b * b) / (a * a + b * b)


def _so3(a, b):
    return SQRT2 * PI * (a * a + b * b) / (a + b)


def _so4(a, b):
    r = (a * a + b * b) / (a + b)
    return 0.5 * PI * r * r


def _so5(a, b):
    return 2.0 * PI * abs(a * a - b * b) / (SQRT2 + 2.0 * math.sqrt(a * a + b * b))


def _so6(a, b):
    r = (a * a - b * b) / (SQRT2 + 2.0 * math.sqrt(a * a + b * b))
    return PI * r * r


BUILTIN_WEIGHTS: dict[IndexId, Callable[[int, int], float]] = {
    IndexId.SO: _so,
    IndexId.SO1: _so1,
    IndexId.SO2: _so2,
    IndexId.SO3: _so3,
    IndexId.SO4: _so4,
    IndexId.SO5: _so5,
    IndexId.SO6: _so6,
}


@dataclass(frozen=True)
class EdgeWeightFunction:
    """A user-supplied ``F(a, b)``.

    Symmetry is always spot-checked on the degree pairs that occur; set
    ``assume_symmetric`` to record that the caller vouches for it globally.
    """

    func: Callable[[int, int], float]
    name: str = "custom"
    assume_symmetric: bool = False


@dataclass(frozen=True)
class IndexValue:
    value: float
    index: str
    symmetry: str = "builtin"  # builtin | asserted | unverified

    def __float__(self):
        return self.value


def _weight(f: IndexId | str | EdgeWeightFunction):
    if isinstance(f, EdgeWeightFunction):
        return f.func, f.name, ("asserted" if f.assume_symmetric else "unverified")
    ident = f if isinstance(f, IndexId) else IndexId.parse(f)
    return BUILTIN_WEIGHTS[ident], ident.value, "builtin"


def _checked_term(func, name, a, b, check_symmetry):
    w = float(func(a, b))
    if not math.isfinite(w):
        raise WeightError(f"{name}: non-finite weight at degree pair ({a}, {b})")
    if check_symmetry and a != b:
        w2 = float(func(b, a))
        if not math.isclose(w, w2, rel_tol=1e-12, abs_tol=1e-300):
            raise WeightError(f"{name}: F({a},{b})={w!r} but F({b},{a})={w2!r}; weight is not symmetric")
    return w


def edge_sum_index(
    g: Graph, f: IndexId | str | EdgeWeightFunction, *, ignore_isolated: bool = False
) -> IndexValue:
    """``sum over edges of F(d_u, d_v)``, accumulated with :func:`math.fsum`.

    Isolated vertices are an error unless ``ignore_isolated`` is set (they
    contribute no edges, but the standing assumption is minimum degree >= 1).
    """
    func, name, symmetry = _weight(f)
    if not ignore_isolated and 0 in g.degrees:
        raise IsolatedVertexError(f"vertex {g.degrees.index(0)} is isolated")
    d = g.degrees
    cache: dict[tuple[int, int], float] = {}
    terms = []
    for u, v in g.edges:
        a, b = d[u], d[v]
        w = cache.get((a, b))
        if w is None:
            w = cache[(a, b)] = _checked_term(func, name, a, b, symmetry != "builtin")
        terms.append(w)
    return IndexValue(math.fsum(terms), name, symmetry)


def compute(g: Graph, index: IndexId | str, *, ignore_isolated: bool = False) -> IndexValue:
    return edge_sum_index(g, index if isinstance(index, IndexId) else IndexId.parse(index),
                          ignore_isolated=ignore_isolated)


def index_from_profile(profile: Mapping[tuple[int, int], int], f: IndexId | str | EdgeWeightFunction) -> IndexValue:
    """``sum over degree classes of count * F(a, b)``."""
    if not profile or sum(profile.values()) == 0:
        raise EmptyGraphError("empty degree-pair profile")
    func, name, symmetry = _weight(f)
    total = math.fsum(
        count * _checked_term(func, name, a, b, symmetry != "builtin")
        for (a, b), count in sorted(profile.items())
        if count
    )
    return IndexValue(total, name, symmetry)


def all_indices(g: Graph, *, ignore_isolated: bool = False) -> dict[IndexId, float]:
    """All seven built-ins, evaluated edge by edge."""
    if not ignore_isolated and 0 in g.degrees:
        raise IsolatedVertexError(f"vertex {g.degrees.index(0)} is isolated")
    d = g.degrees
    pairs = [(d[u], d[v]) for u, v in g.edges]
    out = {}
    for ident, func in BUILTIN_WEIGHTS.items():
        cache: dict[tuple[int, int], float] = {}
        terms = []
        for p in pairs:
            w = cache.get(p)
            if w is None:
                w = cache[p] = func(*p)
            terms.append(w)
        out[ident] = math.fsum(terms)
    return out


def all_from_profile(profile: Profile) -> dict[IndexId, float]:
    return {ident: index_from_profile(profile, ident).value for ident in IndexId}


__all__ = [
    "IndexId", "IndexValue", "EdgeWeightFunction", "BUILTIN_WEIGHTS",
    "edge_sum_index", "compute", "index_from_profile", "all_indices", "all_from_profile",
    "degree_pair_profile",
]
