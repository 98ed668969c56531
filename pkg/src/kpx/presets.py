"""Small built-in graphs used by the test-suite and handy at the REPL."""

from .kgraph import Edge, KGraph, KGraphSpec, Square


def lambda2():
    """A rank-2 graph with five vertices, one commuting square, and a source.

    Color 1 edges: e1: v1<-v2, e2: v3<-v4, e3: v1<-v5.
    Color 2 edges: f1: v2<-v4, f2: v1<-v3.  Square: e1*f1 = f2*e2.
    """
    spec = KGraphSpec(
        k=2,
        vertices=("v1", "v2", "v3", "v4", "v5"),
        edges=(
            Edge("e1", 1, "v1", "v2"),
            Edge("e2", 1, "v3", "v4"),
            Edge("e3", 1, "v1", "v5"),
            Edge("f1", 2, "v2", "v4"),
            Edge("f2", 2, "v1", "v3"),
        ),
        squares=(Square(first=("e1", "f1"), second=("f2", "e2")),),
    )
    return KGraph.validate(spec)


def single_loop():
    """One vertex with a single loop: the rank-1 graph of a cycle."""
    spec = KGraphSpec(
        k=1,
        vertices=("v",),
        edges=(Edge("e", 1, "v", "v"),),
        squares=(),
    )
    return KGraph.validate(spec)


def single_vertex(k=1):
    spec = KGraphSpec(k=k, vertices=("v",), edges=(), squares=())
    return KGraph.validate(spec)


def two_isolated_vertices():
    spec = KGraphSpec(k=1, vertices=("u", "v"), edges=(), squares=())
    return KGraph.validate(spec)


def commuting_loops(n=3):
    """One vertex, one color-1 loop e and n color-2 loops f1..fn, with
    squares e*fi = fi*e.  A small cyclic rank-2 graph."""
    edges = [Edge("e", 1, "v", "v")]
    squares = []
    for i in range(1, n + 1):
        edges.append(Edge(f"f{i}", 2, "v", "v"))
        squares.append(Square(first=("e", f"f{i}"), second=(f"f{i}", "e")))
    spec = KGraphSpec(k=2, vertices=("v",), edges=tuple(edges), squares=tuple(squares))
    return KGraph.validate(spec)
