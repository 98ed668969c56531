"""Structural analysis: aperiodicity, cofinality, and simplicity verdicts.

Verdicts are three-valued; on acyclic graphs every question below is
decided exactly, while on cyclic graphs the procedures are sound searches
that may return "unknown".
"""

from dataclasses import dataclass

from . import algebra, boundary, degrees, groupoid
from .rings import QQ


@dataclass(frozen=True)
class AperiodicityVerdict:
    status: str  # "aperiodic" | "periodic" | "unknown"
    vertex: str | None = None
    m: tuple | None = None
    n: tuple | None = None
    witness: tuple | None = None  # (mu, nu, alpha) with mu*alpha*y = nu*alpha*y
    note: str = ""


@dataclass(frozen=True)
class CofinalityVerdict:
    status: str  # "cofinal" | "not_cofinal" | "unknown"
    vertex: str | None = None
    path: object | None = None  # a boundary path unreachable from vertex
    note: str = ""


@dataclass(frozen=True)
class FaithfulnessVerdict:
    status: str  # "faithful" | "not_faithful" | "unknown"
    kernel: object | None = None  # a non-zero element killed by the representation
    note: str = ""


@dataclass(frozen=True)
class SimplicityReport:
    predicates: dict
    aperiodicity: AperiodicityVerdict
    cofinality: CofinalityVerdict
    ring_is_field: bool
    basically_simple: str  # "yes" | "no" | "unknown"
    simple: str
    dimension: int | None = None


# ----------------------------------------------------------------------
# aperiodicity


def _deterministic_from(g, v):
    """True iff every vertex reachable from v has at most one out-edge per color."""
    for w in g.reachable(v):
        for c in range(1, g.k + 1):
            if len(g.out_edges(w, c)) > 1:
                return False
    return True


def _staircase(g, v):
    """Walk the unique maximal path from v in a deterministic region.

    Returns ("finite", edges) at a dead end, or ("cycle", prefix, cycle) on
    the first vertex repeat.
    """
    seen = {v: 0}
    edges = []
    cur = v
    while True:
        eid = None
        for c in range(1, g.k + 1):
            out = g.out_edges(cur, c)
            if out:
                eid = out[0]
                break
        if eid is None:
            return ("finite", edges, None)
        edges.append(eid)
        cur = g.edge(eid).source
        if cur in seen:
            split = seen[cur]
            return ("cycle", edges[:split], edges[split:])
        seen[cur] = len(edges)


def check_aperiodic(g, bound=None):
    """Decide whether every vertex ranges an aperiodic boundary path.

    Acyclic graphs are aperiodic outright.  On cyclic graphs, a vertex whose
    reachable region is deterministic carries a single boundary path; if
    that path closes a cycle, all of v's boundary is periodic and a kernel
    witness in the style of the one-sided shift argument is produced.
    """
    if g.is_acyclic():
        return AperiodicityVerdict(status="aperiodic", note="acyclic graph")
    unresolved = []
    for v in g.vertices:
        if not _has_cycle_within(g, g.reachable(v)):
            continue
        if not _deterministic_from(g, v):
            unresolved.append(v)
            continue
        kind, prefix_edges, cycle_edges = _staircase(g, v)
        if kind == "finite":
            continue
        mu = g.path(prefix_edges) if prefix_edges else g.vertex(v)
        alpha = g.path(cycle_edges)
        nu = g.compose(mu, alpha)
        m = mu.degree
        n = nu.degree
        return AperiodicityVerdict(
            status="periodic",
            vertex=v,
            m=m,
            n=n,
            witness=(mu, nu, alpha),
            note="deterministic region closes a cycle",
        )
    if unresolved:
        return AperiodicityVerdict(
            status="unknown",
            note=f"cyclic non-deterministic region at {sorted(unresolved)}",
        )
    return AperiodicityVerdict(status="aperiodic", note="all regions resolve")


def _has_cycle_within(g, verts):
    color = {w: 0 for w in verts}
    for v0 in verts:
        if color[v0]:
            continue
        stack = [(v0, iter(g.out_edges(v0)))]
        color[v0] = 1
        while stack:
            v, it = stack[-1]
            eid = next(it, None)
            if eid is None:
                color[v] = 2
                stack.pop()
                continue
            w = g.edge(eid).source
            if color[w] == 1:
                return True
            if color[w] == 0:
                color[w] = 1
                stack.append((w, iter(g.out_edges(w))))
    return False


def periodicity_kernel(ring, verdict):
    """The non-zero element annihilated by the boundary representation:
    s_{mu alpha} s_{mu alpha}^* - s_{nu alpha} s_{mu alpha}^*."""
    mu, nu, alpha = verdict.witness
    g = mu.graph
    mu_alpha = g.compose(mu, alpha)
    nu_alpha = g.compose(nu, alpha)
    return algebra.generator(ring, mu_alpha, mu_alpha) - algebra.generator(
        ring, nu_alpha, mu_alpha
    )


# ----------------------------------------------------------------------
# cofinality


def _visited_vertices(g, x):
    if x.is_finite:
        return {boundary.vertex_at(x, n) for n in degrees.below(x.head.degree)}
    verts = {boundary.vertex_at(x, n) for n in degrees.below(x.head.degree)}
    cyc = x.cycle
    for n in degrees.below(cyc.degree):
        verts.add(g.factor(cyc, n)[0].source)
    return verts


def check_cofinal(g, bound=3):
    """Decide whether every vertex can reach every boundary path.

    Exact on acyclic graphs.  On cyclic graphs, all-pairs reachability is a
    certificate for cofinality; otherwise a periodic boundary witness is
    searched inside deterministic regions, and failing both the verdict is
    unknown.
    """
    if g.is_acyclic():
        for v in g.vertices:
            reach = g.reachable(v)
            for x in boundary.enumerate_boundary(g):
                if not (_visited_vertices(g, x) & reach):
                    return CofinalityVerdict(status="not_cofinal", vertex=v, path=x)
        return CofinalityVerdict(status="cofinal", note="exact boundary sweep")
    if all(g.reachable(v) == set(g.vertices) for v in g.vertices):
        return CofinalityVerdict(status="cofinal", note="all-pairs reachability")
    for w in g.vertices:
        if not _deterministic_from(g, w):
            continue
        kind, prefix_edges, cycle_edges = _staircase(g, w)
        if kind != "cycle":
            continue
        head = g.path(prefix_edges) if prefix_edges else g.vertex(w)
        x = boundary.lasso(head, g.path(cycle_edges))
        for v in g.vertices:
            if not (_visited_vertices(g, x) & g.reachable(v)):
                return CofinalityVerdict(status="not_cofinal", vertex=v, path=x)
    return CofinalityVerdict(
        status="unknown", note="reachability incomplete and no witness found"
    )


# ----------------------------------------------------------------------
# groupoid formulations


def is_effective(g, bound=None):
    """Three-valued: the groupoid is effective iff the graph is aperiodic.

    On acyclic graphs this is additionally verified pointwise: an element
    with equal legs must have offset zero.
    """
    verdict = check_aperiodic(g, bound=bound)
    if g.is_acyclic():
        direct = all(
            el.m == degrees.zero(g.k)
            for el in groupoid.enumerate_groupoid(g)
            if el.x == el.y
        )
        assert direct == (verdict.status == "aperiodic")
    if verdict.status == "aperiodic":
        return "yes"
    if verdict.status == "periodic":
        return "no"
    return "unknown"


def is_minimal(g, bound=3):
    """Three-valued: the groupoid is minimal iff the graph is cofinal.

    On acyclic graphs this coincides with the boundary having one orbit,
    which is checked directly.
    """
    verdict = check_cofinal(g, bound=bound)
    if g.is_acyclic():
        direct = len(boundary.orbits(g)) <= 1
        assert direct == (verdict.status == "cofinal")
    if verdict.status == "cofinal":
        return "yes"
    if verdict.status == "not_cofinal":
        return "no"
    return "unknown"


def boundary_rep_faithful(g, ring=QQ, bound=None):
    """Whether the boundary-path representation is injective: it is exactly
    when the graph is aperiodic; a periodic witness yields a kernel element."""
    verdict = check_aperiodic(g, bound=bound)
    if verdict.status == "aperiodic":
        return FaithfulnessVerdict(status="faithful")
    if verdict.status == "periodic":
        return FaithfulnessVerdict(
            status="not_faithful", kernel=periodicity_kernel(ring, verdict)
        )
    return FaithfulnessVerdict(status="unknown", note=verdict.note)


# ----------------------------------------------------------------------
# the headline report


def _meet(a, b):
    order = {"no": 0, "unknown": 1, "yes": 2}
    if "no" in (a, b):
        return "no"
    if "unknown" in (a, b):
        return "unknown"
    return "yes"


def report(g, ring=QQ, bound=3):
    aper = check_aperiodic(g, bound=bound)
    cof = check_cofinal(g, bound=bound)
    aper3 = {"aperiodic": "yes", "periodic": "no", "unknown": "unknown"}[aper.status]
    cof3 = {"cofinal": "yes", "not_cofinal": "no", "unknown": "unknown"}[cof.status]
    basic = _meet(aper3, cof3)
    simple = basic if ring.is_field else ("no" if basic != "unknown" else "unknown")
    if basic == "no":
        simple = "no"
    dim = None
    if g.is_acyclic() and ring.is_field:
        dim = groupoid.dim_over_field(g, ring)
    return SimplicityReport(
        predicates=g.predicates(),
        aperiodicity=aper,
        cofinality=cof,
        ring_is_field=ring.is_field,
        basically_simple=basic,
        simple=simple,
        dimension=dim,
    )
