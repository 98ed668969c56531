"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's clever code paths: they
work from raw definitions (enumerate all paths, check all cases) so the
fast implementations can be gated against them.
"""

import itertools
import random

import pytest

from kpx import boundary as bnd
from kpx import presets
from kpx.degrees import join, le, sub, zero
from kpx.kgraph import omega_graph


@pytest.fixture(scope="session")
def lambda2():
    return presets.lambda2()


@pytest.fixture(scope="session")
def loop():
    return presets.single_loop()


@pytest.fixture(scope="session")
def omega13():
    return omega_graph((3,))


@pytest.fixture(scope="session")
def omega211():
    return omega_graph((1, 1))


@pytest.fixture(scope="session")
def omega3111():
    return omega_graph((1, 1, 1))


@pytest.fixture(scope="session")
def cloops():
    return presets.commuting_loops(3)


@pytest.fixture(scope="session")
def point():
    return presets.single_vertex(2)


@pytest.fixture(scope="session")
def twodots():
    return presets.two_isolated_vertices()


ACYCLIC_NAMES = ["lambda2", "omega13", "omega211", "point", "twodots", "omega3111"]


@pytest.fixture(scope="session", params=ACYCLIC_NAMES)
def acyclic_graph(request):
    builders = {
        "lambda2": presets.lambda2,
        "omega13": lambda: omega_graph((3,)),
        "omega211": lambda: omega_graph((1, 1)),
        "point": lambda: presets.single_vertex(2),
        "twodots": presets.two_isolated_vertices,
        "omega3111": lambda: omega_graph((1, 1, 1)),
    }
    return builders[request.param]()


# ---------------------------------------------------------------- oracles


def mce_oracle(g, lam, mu):
    """Minimal common extensions straight from the definition: search every
    path of degree d(lam) v d(mu) from r(lam) and test both prefixes."""
    if lam.range != mu.range:
        return set()
    d = join(lam.degree, mu.degree)
    out = set()
    for tau in g.paths_from(lam.range, d):
        if g.has_prefix(tau, lam) and g.has_prefix(tau, mu):
            out.add(tau)
    return out


def exhaustive_oracle(g, v, paths):
    """Definition of exhaustive: every path from v has a common extension
    with some member.  Exact on acyclic graphs (finite path set)."""
    for lam in sorted(g.paths_at(v), key=lambda p: p.sort_key()):
        if not any(g.minimal_common_extensions(lam, mu) for mu in paths):
            return lam
    return None


def exhaustive_oracle_bool(g, v, paths):
    return all(
        any(g.minimal_common_extensions(lam, mu) for mu in paths)
        for lam in g.paths_at(v)
    )


def boundary_oracle(g, lam):
    """A finite path is a boundary path iff for every exhaustive finite set E
    at any of its vertices lam(n), some member of E is picked up by the tail.
    Exact on acyclic graphs; sweeps every finite set of paths at the vertex."""
    for n_idx in _degree_box(lam.degree):
        v = g.vertex_at(lam, n_idx)
        tail = g.segment(lam, n_idx, lam.degree)
        pool = sorted(g.paths_at(v), key=lambda p: p.sort_key())
        for size in range(1, len(pool) + 1):
            for combo in itertools.combinations(pool, size):
                if not exhaustive_oracle_bool(g, v, combo):
                    continue
                if not any(g.has_prefix(tail, mu) for mu in combo if le(mu.degree, tail.degree)):
                    return False
        # only minimal exhaustive sets matter; one full sweep per vertex
    return True


def _degree_box(d):
    return itertools.product(*(range(n + 1) for n in d))


def groupoid_points(g):
    from kpx.groupoid import enumerate_groupoid

    return enumerate_groupoid(g)


def convolve_oracle(f1, f2, points):
    """Pointwise convolution over an explicit list of groupoid elements:
    (f1 * f2)(a) = sum over b with same range of f1(b) f2(b^-1 a)."""
    from kpx.groupoid import GroupoidElement, eval_function

    ring = f1.ring
    out = {}
    for a in points:
        total = ring.zero
        for b in points:
            if b.x != a.x:
                continue
            # b^-1 a = (y_b, m_a - m_b, y_a) when legal
            inv = GroupoidElement(b.y, sub_z(a.m, b.m), a.y)
            total = total + eval_function(f1, b) * eval_function(f2, inv)
        if total != ring.zero:
            out[a] = total
    return out


def sub_z(m, n):
    return tuple(a - b for a, b in zip(m, n))


def eval_span_on_boundary(g, a, basis=None):
    """Matrix of the boundary-path representation of a span-form element,
    as a dict mapping basis path -> image vector."""
    if basis is None:
        basis = bnd.enumerate_boundary(g)
    return {x: bnd.boundary_rep(a, {x: a.ring.one}) for x in basis}


def random_span(g, ring, rng, npaths=None, nterms=3, maxdeg=None):
    """Random span-form element with source-matched pairs."""
    from kpx.algebra import SpanForm

    if npaths is None:
        npaths = list(g.all_paths())
    by_source = {}
    for p in npaths:
        by_source.setdefault(p.source, []).append(p)
    a = SpanForm(ring)
    for _ in range(nterms):
        lam = rng.choice(npaths)
        mu = rng.choice(by_source[lam.source])
        c = ring.from_int(rng.randint(-3, 3))
        if c != ring.zero:
            a = a + SpanForm(ring, {(lam, mu): c})
    return a


def random_cell(g, rng, npaths=None, max_avoid=2):
    from kpx.groupoid import make_cell

    if npaths is None:
        npaths = list(g.all_paths())
    by_source = {}
    for p in npaths:
        by_source.setdefault(p.source, []).append(p)
    for _ in range(200):
        lam = rng.choice(npaths)
        mu = rng.choice(by_source[lam.source])
        exts = [p for p in g.paths_at(lam.source) if not p.is_vertex()]
        navoid = rng.randint(0, min(max_avoid, len(exts)))
        avoid = rng.sample(exts, navoid) if navoid else []
        cell = make_cell(lam, mu, avoid)
        if cell is not None:
            return cell
    raise RuntimeError("could not build a nonempty cell")


def cell_points(cell, points):
    from kpx.groupoid import element_in_cell

    return {a for a in points if element_in_cell(a, cell)}


def func_points(g, f, points):
    from kpx.groupoid import eval_function

    return {a: v for a in points if (v := eval_function(f, a)) != f.ring.zero}
