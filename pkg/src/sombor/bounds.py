"""Empirical checks of the published inequalities.

Every check returns a :class:`BoundReport` with both sides, a slack
(positive means the claim holds) and a verdict.  Reports embed the full
instance, so :func:`replay` can re-evaluate any of them.  The lab records
what it sees: a printed bound that fails on an admissible instance is
reported as ``violated``, it is not explained away.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import families
from .graph import (
    Graph,
    GraphError,
    LinkSpec,
    degree_extremes,
    delete_edge,
    is_connected,
    is_regular,
    link,
    make_graph,
    make_link_spec,
)
from .indices import IndexId, compute

TIGHT_TOL = 1e-9
STRICT_EPS = 1e-12
SQRT2 = math.sqrt(2.0)


class PreconditionError(GraphError):
    code = "precondition"


class BoundId(str, enum.Enum):
    EDGE_DEL_SO1 = "edge_del_so1"
    LINK_SO1 = "link_so1"
    LINK_SO1_UNIFORM = "link_so1_uniform"
    SANDWICH_SO2 = "sandwich_so2"
    DEL_SO2 = "del_so2"
    SANDWICH_SO3 = "sandwich_so3"
    DEL_SO3 = "del_so3"
    SANDWICH_SO4 = "sandwich_so4"
    DEL_SO4 = "del_so4"
    SANDWICH_SO5 = "sandwich_so5"
    DEL_SO5 = "del_so5"
    UPPER_SO6 = "upper_so6"

    @property
    def cli_name(self) -> str:
        return self.value.replace("_", "-")

    @classmethod
    def parse(cls, name: str) -> "BoundId":
        try:
            return cls(name.strip().lower().replace("-", "_"))
        except ValueError:
            raise PreconditionError(
                f"unknown check {name!r}; expected one of {', '.join(b.cli_name for b in cls)}"
            ) from None


SANDWICHES = (BoundId.SANDWICH_SO2, BoundId.SANDWICH_SO3, BoundId.SANDWICH_SO4,
              BoundId.SANDWICH_SO5, BoundId.UPPER_SO6)
DELETIONS = (BoundId.DEL_SO2, BoundId.DEL_SO3, BoundId.DEL_SO4, BoundId.DEL_SO5)
LINKS = (BoundId.LINK_SO1, BoundId.LINK_SO1_UNIFORM)
# hypotheses as printed: these four statements assume a non-regular graph
_NEEDS_NONREGULAR = {BoundId.EDGE_DEL_SO1, BoundId.DEL_SO2, BoundId.DEL_SO5}


@dataclass(frozen=True)
class BoundReport:
    bound: BoundId
    instance: dict[str, Any]
    lhs: float
    rhs: float
    slack: float
    strict: bool
    verdict: str  # holds | tight | violated
    preconditions_met: bool = True
    rhs_upper: float | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "bound": self.bound.value,
            "instance": self.instance,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "rhs_upper": self.rhs_upper,
            "slack": self.slack,
            "strict": self.strict,
            "verdict": self.verdict,
            "preconditions_met": self.preconditions_met,
        }


def verdict_for(slack: float, strict: bool) -> str:
    if abs(slack) <= TIGHT_TOL:
        return "tight"
    if slack > (STRICT_EPS if strict else 0.0):
        return "holds"
    return "violated"


def graph_instance(g: Graph, label: str, edge: Sequence[int] | None = None) -> dict[str, Any]:
    inst: dict[str, Any] = {"label": label, "graph": {"n": g.vertex_count, "edges": [list(e) for e in g.edges]}}
    if edge is not None:
        inst["edge"] = [int(edge[0]), int(edge[1])]
    return inst


def link_instance(spec: LinkSpec, label: str) -> dict[str, Any]:
    return {
        "label": label,
        "link": {
            "monomers": [{"n": g.vertex_count, "edges": [list(e) for e in g.edges]} for g in spec.monomers],
            "anchors": [list(a) for a in spec.anchors],
        },
    }


def _graph_from(obj: dict[str, Any]) -> Graph:
    return make_graph(obj["n"], obj["edges"])


def _so(g: Graph, i: IndexId) -> float:
    # G - e may contain isolated vertices; they contribute no edges
    return compute(g, i, ignore_isolated=True).value


def _report(bound, inst, lhs, rhs, slack, strict, pre=True, upper=None):
    return BoundReport(bound, inst, lhs, rhs, slack, strict, verdict_for(slack, strict), pre, upper)


def check_edge_deletion_so1(g: Graph, e: Sequence[int], label: str = "graph") -> BoundReport:
    """``SO1(G) > SO1(G - e) + (min_deg^2 - max_deg^2) / 2`` for non-regular ``G``."""
    if is_regular(g):
        raise PreconditionError("edge-deletion bound for SO1 assumes a non-regular graph")
    lo, hi = degree_extremes(g)
    ge = delete_edge(g, *e)
    lhs = _so(g, IndexId.SO1)
    rhs = _so(ge, IndexId.SO1) + 0.5 * (lo * lo - hi * hi)
    return _report(BoundId.EDGE_DEL_SO1, graph_instance(g, label, e), lhs, rhs, lhs - rhs, True)


def link_preconditions(spec: LinkSpec) -> bool:
    """Every partial link ``L(G_1..G_i)``, ``i >= 2`` (including the whole), is non-regular."""
    for i in range(2, len(spec.monomers) + 1):
        partial = link(LinkSpec(spec.monomers[:i], spec.anchors[:i]))
        if is_regular(partial):
            return False
    return True


def check_link_so1(spec: LinkSpec, label: str = "link", uniform: bool = False) -> BoundReport:
    """Link bound with per-monomer extremes, or the whole-graph variant when ``uniform``.

    Preconditions are evaluated and recorded; the inequality is evaluated either way.
    """
    spec = make_link_spec(spec.monomers, spec.anchors)
    g = link(spec)
    k = len(spec.monomers)
    parts = math.fsum(_so(m, IndexId.SO1) for m in spec.monomers)
    lhs = _so(g, IndexId.SO1)
    if uniform:
        lo, hi = degree_extremes(g)
        rhs = (k - 1) / 2 * (lo * lo - hi * hi) + parts
    else:
        ext = [degree_extremes(m) for m in spec.monomers]
        rhs = (parts + 0.5 * math.fsum(lo * lo for lo, _ in ext[:-1])
               - 0.5 * math.fsum(hi * hi for _, hi in ext[1:]))
    bound = BoundId.LINK_SO1_UNIFORM if uniform else BoundId.LINK_SO1
    return _report(bound, link_instance(spec, label), lhs, rhs, lhs - rhs, True, link_preconditions(spec))


def check_link_so1_uniform(spec: LinkSpec, label: str = "link") -> BoundReport:
    return check_link_so1(spec, label, uniform=True)


def sandwich_sides(g: Graph, bound: BoundId) -> tuple[float, float | None, float | None]:
    """``(value, lower, upper)``; a missing side is ``None``."""
    lo, hi = degree_extremes(g)
    m = g.edge_count
    so1 = _so(g, IndexId.SO1)
    if bound is BoundId.SANDWICH_SO2:
        return _so(g, IndexId.SO2), so1 / hi**2, so1 / lo**2
    if bound is BoundId.SANDWICH_SO3:
        c = SQRT2 * math.pi
        return _so(g, IndexId.SO3), c * (so1 + m * lo**2) / hi, c * (so1 + m * hi**2) / lo
    if bound is BoundId.SANDWICH_SO4:
        return (
            _so(g, IndexId.SO4),
            math.pi * lo**2 / (2 * hi**2) * (m * lo**2 + so1),
            math.pi * hi**2 / (2 * lo**2) * (m * hi**2 + so1),
        )
    if bound is BoundId.SANDWICH_SO5:
        c = 2 * SQRT2 * math.pi * so1
        return _so(g, IndexId.SO5), c / (2 * hi + 1), c / (2 * lo + 1)
    if bound is BoundId.UPPER_SO6:
        return _so(g, IndexId.SO6), None, 2 * math.pi * (hi**2 - lo**2) * so1 / (SQRT2 + 2 * lo * SQRT2) ** 2
    raise PreconditionError(f"{bound.cli_name} is not a sandwich bound")


def check_sandwich(g: Graph, bound: BoundId | str, label: str = "graph") -> BoundReport:
    bound = bound if isinstance(bound, BoundId) else BoundId.parse(bound)
    value, lower, upper = sandwich_sides(g, bound)
    inst = graph_instance(g, label)
    if lower is None:
        return _report(bound, inst, value, upper, upper - value, False)
    slack = min(value - lower, upper - value)
    return _report(bound, inst, value, lower, slack, False, upper=upper)


def deletion_sides(g: Graph, e: Sequence[int], bound: BoundId) -> tuple[float, float]:
    lo, hi = degree_extremes(g)
    m = g.edge_count
    ge = delete_edge(g, *e)
    if bound is BoundId.DEL_SO2:
        return _so(g, IndexId.SO2), lo**2 / hi**2 * (_so(ge, IndexId.SO2) + 0.5 - hi**2 / (2 * lo**2))
    if bound is BoundId.DEL_SO3:
        return (_so(g, IndexId.SO3),
                lo / hi * _so(ge, IndexId.SO3) + (2 * m + 1) * math.pi / (SQRT2 * hi) * (lo**2 - hi**2))
    if bound is BoundId.DEL_SO4:
        return (_so(g, IndexId.SO4),
                _so(ge, IndexId.SO4) + (2 * m + 1) * math.pi * lo**2 * (lo**2 - hi**2) / (2 * hi**2))
    if bound is BoundId.DEL_SO5:
        return _so(g, IndexId.SO5), _so(ge, IndexId.SO5) + SQRT2 * math.pi / (2 * hi + 1) * (lo**2 - hi**2)
    raise PreconditionError(f"{bound.cli_name} is not an edge-deletion bound")


def check_deletion(g: Graph, e: Sequence[int], bound: BoundId | str, label: str = "graph") -> BoundReport:
    bound = bound if isinstance(bound, BoundId) else BoundId.parse(bound)
    if bound is BoundId.EDGE_DEL_SO1:
        return check_edge_deletion_so1(g, e, label)
    lhs, rhs = deletion_sides(g, e, bound)
    pre = not (bound in _NEEDS_NONREGULAR and is_regular(g))
    return _report(bound, graph_instance(g, label, e), lhs, rhs, lhs - rhs, True, pre)


def replay(report: BoundReport | dict[str, Any]) -> BoundReport:
    """Re-evaluate a report from its embedded instance."""
    if isinstance(report, BoundReport):
        bound, inst = report.bound, report.instance
    else:
        bound, inst = BoundId(report["bound"]), report["instance"]
    label = inst.get("label", "replay")
    if bound in LINKS:
        spec = make_link_spec([_graph_from(m) for m in inst["link"]["monomers"]], inst["link"]["anchors"])
        return check_link_so1(spec, label, uniform=bound is BoundId.LINK_SO1_UNIFORM)
    g = _graph_from(inst["graph"])
    if bound in SANDWICHES:
        return check_sandwich(g, bound, label)
    return check_deletion(g, inst["edge"], bound, label)


# --- random instances ---------------------------------------------------------


def random_connected_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    """G(n, p) conditioned on connectivity; ``p`` creeps up after each rejection."""
    iu = np.triu_indices(n, k=1)
    while True:
        mask = rng.random(len(iu[0])) < p
        g = make_graph(n, zip(iu[0][mask].tolist(), iu[1][mask].tolist()))
        if is_connected(g):
            return g
        p = min(1.0, p + 0.02)


def random_chain_cactus(rng: np.random.Generator, max_vertices: int) -> tuple[Graph, str]:
    while True:
        k = int(rng.integers(2, 9))
        sizes = [int(s) for s in rng.integers(3, 9, size=k)]
        if sum(sizes) - (k - 1) <= max_vertices:
            break
    offsets = [int(rng.integers(1, s)) for s in sizes[:-1]]
    g = families.chain_cactus(sizes, offsets)
    return g, f"cactus(sizes={sizes},offsets={offsets})"


def random_link_spec(rng: np.random.Generator, max_vertices: int) -> LinkSpec:
    k = int(rng.integers(2, 6))
    cap = max(2, min(8, max_vertices // k))
    monomers, anchors = [], []
    for _ in range(k):
        n = int(rng.integers(2, cap + 1))
        g = random_connected_graph(rng, n, float(rng.uniform(0.2, 0.9)))
        x, y = (int(v) for v in rng.choice(n, size=2, replace=False))
        monomers.append(g)
        anchors.append((x, y))
    return make_link_spec(monomers, anchors)


@dataclass
class FuzzResult:
    seed: int
    count: int
    reports: list[BoundReport]
    summary: dict[str, Counter] = field(default_factory=dict)

    def violations(self, bounds: Sequence[BoundId] | None = None, preconditions_only: bool = True):
        return [
            r for r in self.reports
            if r.verdict == "violated"
            and (bounds is None or r.bound in bounds)
            and (r.preconditions_met or not preconditions_only)
        ]


def _instance_checks(seed: int, i: int, n_min: int, n_max: int) -> list[tuple[BoundId, BoundReport | None]]:
    """All applicable checks on fuzz instance ``i``; ``None`` marks a skipped check."""
    rng = np.random.default_rng([seed, i])
    kind = ("gnp", "cactus", "link")[int(rng.integers(3))]
    spec = None
    if kind == "gnp":
        n = int(rng.integers(n_min, n_max + 1))
        p = float(rng.uniform(0.05, 0.95))
        g = random_connected_graph(rng, n, p)
        label = f"fuzz#{i} gnp(n={n},p={p:.4f})"
    elif kind == "cactus":
        g, desc = random_chain_cactus(rng, n_max)
        label = f"fuzz#{i} {desc}"
    else:
        spec = random_link_spec(rng, n_max)
        g = link(spec)
        label = f"fuzz#{i} link(k={len(spec.monomers)})"

    out: list[tuple[BoundId, BoundReport | None]] = []
    for b in SANDWICHES:
        out.append((b, check_sandwich(g, b, label)))
    e = g.edges[int(rng.integers(g.edge_count))]
    regular = is_regular(g)
    out.append((BoundId.EDGE_DEL_SO1, None if regular else check_edge_deletion_so1(g, e, label)))
    for b in DELETIONS:
        out.append((b, None if (regular and b in _NEEDS_NONREGULAR) else check_deletion(g, e, b, label)))
    if spec is not None:
        ok = link_preconditions(spec)
        for b in LINKS:
            out.append((b, check_link_so1(spec, label, uniform=b is BoundId.LINK_SO1_UNIFORM) if ok else None))
    return out


def _chunk(args):
    seed, lo, hi, n_min, n_max = args
    return [_instance_checks(seed, i, n_min, n_max) for i in range(lo, hi)]


def fuzz_bounds(
    seed: int, count: int, n_min: int = 3, n_max: int = 40, workers: int = 1
) -> FuzzResult:
    """Check every applicable bound on ``count`` seeded random instances.

    Instance ``i`` is drawn from its own generator keyed by ``(seed, i)``,
    so the stream is identical however it is split across ``workers``.
    Only non-holding reports are kept; ``summary`` counts every outcome.
    """
    if count < 1:
        raise PreconditionError("count must be at least 1")
    if not 3 <= n_min <= n_max:
        raise PreconditionError("need 3 <= n_min <= n_max")
    if workers > 1:
        step = math.ceil(count / workers)
        chunks = [(seed, lo, min(count, lo + step), n_min, n_max) for lo in range(0, count, step)]
        with ProcessPoolExecutor(workers) as pool:
            per_instance = [x for part in pool.map(_chunk, chunks) for x in part]
    else:
        per_instance = _chunk((seed, 0, count, n_min, n_max))

    summary = {b.value: Counter(evaluated=0, holds=0, tight=0, violated=0, skipped=0) for b in BoundId}
    kept = []
    for checks in per_instance:
        for b, rep in checks:
            c = summary[b.value]
            if rep is None:
                c["skipped"] += 1
                continue
            c["evaluated"] += 1
            c[rep.verdict] += 1
            if rep.verdict != "holds":
                kept.append(rep)
    return FuzzResult(seed, count, kept, summary)
