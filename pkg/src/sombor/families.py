"""Generators for the named graph families.

Canonical labelings (kept stable so edge lists are reproducible):

* ``path(n)``: ``0 - 1 - ... - n-1``; ``cycle(n)`` adds ``n-1 - 0``.
* ``star(n)``: centre ``0``, leaves ``1..n``.
* ``complete_bipartite(m, n)``: the ``m``-side is ``0..m-1``, the ``n``-side follows.
* ``wheel(n)``: rim ``cycle(n)`` on ``0..n-1``, hub ``n`` (``n`` is the rim size).
* ``friendship(n)``: ``n`` disjoint ``K2`` on ``0..2n-1``, hub ``2n``.
* ``ladder``, ``book``, ``grid``: :func:`~sombor.graph.cartesian_product` numbering,
  ``(a, x) -> a * |V(second)| + x``.
* ``dutch_windmill(n, m)`` and every cactus chain: :func:`~sombor.graph.point_attach`
  numbering, i.e. the first polygon keeps ``0..s-1`` and every later polygon
  contributes its vertices in order, minus the glued one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from . import graph as gc
from .graph import Graph, GraphError


class FamilyError(GraphError):
    code = "family-params"


def path(n: int) -> Graph:
    return gc.make_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return gc.make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    return gc.make_graph(n + 1, [(0, i) for i in range(1, n + 1)])


def complete_bipartite(m: int, n: int) -> Graph:
    return gc.make_graph(m + n, [(a, m + b) for a in range(m) for b in range(n)])


def wheel(n: int) -> Graph:
    return gc.join(cycle(n), gc.empty_graph(1))


def ladder(n: int) -> Graph:
    return gc.cartesian_product(path(n), path(2))


def friendship(n: int) -> Graph:
    return gc.join(gc.disjoint_union(*[path(2)] * n), gc.empty_graph(1))


def book(n: int) -> Graph:
    return gc.cartesian_product(star(n), path(2))


def dutch_windmill(n: int, m: int) -> Graph:
    """``m`` copies of ``cycle(n)`` sharing vertex 0."""
    return gc.point_attach([cycle(n)] * m, [(0, 0, i, 0) for i in range(1, m)])


def grid(m: int, n: int) -> Graph:
    """``P_m □ P_n``: ``m`` rows, ``n`` columns."""
    return gc.cartesian_product(path(m), path(n))


def chain_cactus(sizes: Sequence[int], offsets: Sequence[int]) -> Graph:
    """Chain of polygons glued at single vertices.

    Polygon ``i`` is ``cycle(sizes[i])``; it is entered at its vertex 0 and
    the next polygon is glued at its vertex ``offsets[i]`` (so offset 1 is
    ortho, offset 2 meta, half the size para).  ``offsets`` has one entry
    per junction.
    """
    if len(offsets) != len(sizes) - 1:
        raise FamilyError("need one offset per junction")
    for s, d in zip(sizes, offsets):
        if not 1 <= d < s:
            raise FamilyError(f"offset {d} invalid for a {s}-cycle")
    polys = [cycle(s) for s in sizes]
    ids = [(i, d, i + 1, 0) for i, d in enumerate(offsets)]
    return gc.point_attach(polys, ids)


def _uniform_chain(size: int, offset: int) -> Callable[[int], Graph]:
    def build(n: int) -> Graph:
        return chain_cactus([size] * n, [offset] * (n - 1))

    return build


@dataclass(frozen=True)
class Family:
    name: str
    cli_name: str
    params: tuple[str, ...]
    build: Callable[..., Graph]
    constraint: Callable[..., bool]
    constraint_text: str
    symbol: str


FAMILIES: dict[str, Family] = {
    f.name: f
    for f in [
        Family("path", "path", ("n",), path, lambda n: n >= 1, "n>=1", "P_n"),
        Family("cycle", "cycle", ("n",), cycle, lambda n: n >= 3, "n>=3", "C_n"),
        Family("star", "star", ("n",), star, lambda n: n >= 1, "n>=1", "K_{1,n}"),
        Family(
            "complete_bipartite", "kmn", ("m", "n"), complete_bipartite,
            lambda m, n: m >= n >= 1, "m>=n>=1", "K_{m,n}",
        ),
        Family("wheel", "wheel", ("n",), wheel, lambda n: n >= 3, "n>=3 (rim size)", "W_{n+1}"),
        Family("ladder", "ladder", ("n",), ladder, lambda n: n >= 2, "n>=2", "L_n"),
        Family("friendship", "friendship", ("n",), friendship, lambda n: n >= 1, "n>=1", "F_n"),
        Family("book", "book", ("n",), book, lambda n: n >= 1, "n>=1", "B_n"),
        Family(
            "dutch_windmill", "windmill", ("n", "m"), dutch_windmill,
            lambda n, m: n >= 3 and m >= 2, "n>=3 and m>=2", "D_n^(m)",
        ),
        Family("grid", "grid", ("m", "n"), grid, lambda m, n: m >= 2 and n >= 2, "m>=2 and n>=2", "P_m□P_n"),
        Family("tri_chain", "tri-chain", ("n",), _uniform_chain(3, 1), lambda n: n >= 2, "n>=2", "T_n"),
        Family("square_para_chain", "sq-para", ("n",), _uniform_chain(4, 2), lambda n: n >= 2, "n>=2", "Q_n"),
        Family("square_ortho_chain", "sq-ortho", ("n",), _uniform_chain(4, 1), lambda n: n >= 2, "n>=2", "O_n"),
        Family("hex_ortho_chain", "hex-ortho", ("n",), _uniform_chain(6, 1), lambda n: n >= 2, "n>=2", "O_n^h"),
        Family("hex_para_chain", "hex-para", ("n",), _uniform_chain(6, 3), lambda n: n >= 2, "n>=2", "L_n (hex)"),
        Family("hex_meta_chain", "hex-meta", ("n",), _uniform_chain(6, 2), lambda n: n >= 2, "n>=2", "M_n"),
    ]
}

CACTUS_FAMILIES = (
    "tri_chain", "square_para_chain", "square_ortho_chain",
    "hex_ortho_chain", "hex_para_chain", "hex_meta_chain",
)

_BY_CLI = {f.cli_name: f.name for f in FAMILIES.values()}


def resolve_family(name: str) -> str:
    """Accept either the internal or the CLI family name."""
    if name in FAMILIES:
        return name
    if name in _BY_CLI:
        return _BY_CLI[name]
    raise FamilyError(f"unknown family {name!r}")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        fam = FAMILIES.get(resolve_family(self.family))
        object.__setattr__(self, "family", fam.name)
        missing = [p for p in fam.params if p not in self.params]
        extra = [p for p in self.params if p not in fam.params]
        if missing or extra:
            raise FamilyError(
                f"{fam.cli_name} takes parameters {', '.join(fam.params)}"
                + (f"; missing {', '.join(missing)}" if missing else "")
                + (f"; unexpected {', '.join(extra)}" if extra else "")
            )
        params = {p: int(self.params[p]) for p in fam.params}
        object.__setattr__(self, "params", params)
        if not fam.constraint(**params):
            raise FamilyError(f"{fam.cli_name} requires {fam.constraint_text}, got {self.describe()}")

    def describe(self) -> str:
        fam = FAMILIES[self.family]
        return f"{fam.cli_name}(" + ",".join(f"{k}={v}" for k, v in self.params.items()) + ")"

    def generate(self) -> Graph:
        return FAMILIES[self.family].build(**self.params)


def generate(spec: FamilySpec | str, **params: int) -> Graph:
    """Build the canonical graph for ``spec`` (or a family name plus params)."""
    if isinstance(spec, str):
        spec = FamilySpec(spec, params)
    return spec.generate()
