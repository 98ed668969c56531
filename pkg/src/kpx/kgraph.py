"""Finite higher-rank graphs presented by colored skeletons with squares.

A rank-k graph is presented by a k-colored digraph together with a complete
collection of commuting squares pairing each bicolored edge path with its
factorization in the opposite color order.  Paths are stored in a normal
form where edge colors appear in non-decreasing order; the squares are the
rewriting rules that transport any edge word into that normal form.
"""

import itertools
from dataclasses import dataclass, field

from . import degrees
from .errors import (
    BadSquare,
    CubeInconsistent,
    DegreeOutOfRange,
    InvalidSpec,
    MissingEndpoint,
    NotBijective,
    NotComposable,
    RangeMismatch,
    UnknownId,
)


@dataclass(frozen=True)
class Edge:
    id: str
    color: int
    range: str
    source: str


@dataclass(frozen=True)
class Square:
    """A commuting square: the path first[0]*first[1] equals second[0]*second[1].

    ``first`` lists the lower color first; ``second`` lists the higher color
    first.  Both sides are composable two-edge words for the same morphism.
    """

    first: tuple
    second: tuple


@dataclass(frozen=True)
class KGraphSpec:
    k: int
    vertices: tuple
    edges: tuple
    squares: tuple


@dataclass(frozen=True)
class Path:
    """A morphism in normal form: a range vertex plus a color-sorted edge word."""

    graph: "KGraph" = field(compare=False, repr=False)
    range: str
    edges: tuple

    @property
    def source(self):
        if not self.edges:
            return self.range
        return self.graph.edge(self.edges[-1]).source

    @property
    def degree(self):
        d = [0] * self.graph.k
        for eid in self.edges:
            d[self.graph.edge(eid).color - 1] += 1
        return tuple(d)

    def is_vertex(self):
        return not self.edges

    def label(self):
        return self.range if not self.edges else ".".join(self.edges)

    def __repr__(self):
        return f"Path({self.label()})"

    def sort_key(self):
        return (len(self.edges), self.edges, self.range)


class KGraph:
    """A validated finite rank-k graph."""

    def __init__(self, spec):
        self.k = spec.k
        self.vertices = tuple(spec.vertices)
        self._edges = {e.id: e for e in spec.edges}
        self.squares = tuple(spec.squares)
        # swap tables between the two orientations of a bicolored word
        self._to_colormajor = {}    # (hi, lo) word -> (lo, hi) word
        self._from_colormajor = {}  # (lo, hi) word -> (hi, lo) word
        for sq in self.squares:
            self._from_colormajor[sq.first] = sq.second
            self._to_colormajor[sq.second] = sq.first
        self._out = {}  # (vertex, color) -> sorted edge ids with that range
        for v in self.vertices:
            for c in range(1, self.k + 1):
                self._out[(v, c)] = []
        for eid in sorted(self._edges):
            e = self._edges[eid]
            self._out[(e.range, e.color)].append(eid)
        self._all_paths_cache = None
        self._acyclic = None

    @property
    def spec(self):
        """The specification this graph was built from."""
        return KGraphSpec(
            self.k,
            self.vertices,
            tuple(self._edges[eid] for eid in sorted(self._edges)),
            self.squares,
        )

    # ------------------------------------------------------------------
    # construction and validation

    @classmethod
    def validate(cls, spec):
        """Check a specification and return the graph, raising diagnostics."""
        if spec.k < 1:
            raise InvalidSpec(f"rank must be >= 1, got {spec.k}")
        vset = set()
        for v in spec.vertices:
            if v in vset:
                raise InvalidSpec(f"duplicate vertex id {v!r}")
            vset.add(v)
        eids = {}
        for e in spec.edges:
            if e.id in eids or e.id in vset:
                raise InvalidSpec(f"duplicate id {e.id!r}")
            if not 1 <= e.color <= spec.k:
                raise InvalidSpec(f"edge {e.id!r} has color {e.color} outside 1..{spec.k}")
            if e.range not in vset:
                raise MissingEndpoint(f"edge {e.id!r} has unknown range {e.range!r}")
            if e.source not in vset:
                raise MissingEndpoint(f"edge {e.id!r} has unknown source {e.source!r}")
            eids[e.id] = e

        def check_pair(pair, increasing, sq):
            a, b = pair
            if a not in eids or b not in eids:
                raise BadSquare(f"square {sq} refers to unknown edge")
            ea, eb = eids[a], eids[b]
            if ea.source != eb.range:
                raise BadSquare(f"square side {pair} is not composable")
            if increasing and not ea.color < eb.color:
                raise BadSquare(f"square side {pair} must list the lower color first")
            if not increasing and not ea.color > eb.color:
                raise BadSquare(f"square side {pair} must list the higher color first")
            return ea, eb

        seen_first = {}
        seen_second = {}
        for sq in spec.squares:
            e, f = check_pair(sq.first, True, sq)
            f2, e2 = check_pair(sq.second, False, sq)
            if {e.color, f.color} != {f2.color, e2.color}:
                raise BadSquare(f"square {sq} mixes color pairs")
            if e.range != f2.range or f.source != e2.source:
                raise BadSquare(f"square {sq} endpoints do not match")
            if sq.first in seen_first:
                raise NotBijective(f"edge pair {sq.first} appears in two squares")
            if sq.second in seen_second:
                raise NotBijective(f"edge pair {sq.second} appears in two squares")
            seen_first[sq.first] = sq
            seen_second[sq.second] = sq

        # every composable bicolored pair must occur on exactly one square side
        for a, b in itertools.product(eids.values(), repeat=2):
            if a.color == b.color or a.source != b.range:
                continue
            pair = (a.id, b.id)
            table = seen_first if a.color < b.color else seen_second
            if pair not in table:
                raise NotBijective(f"edge pair {pair} is not covered by any square")

        graph = cls(spec)
        if spec.k >= 3:
            graph._check_cubes()
        return graph

    def _check_cubes(self):
        """Tricolored words must normalize identically along both swap orders."""
        for x in self._edges.values():
            for y in self._edges.values():
                if y.range != x.source or y.color >= x.color:
                    continue
                for z in self._edges.values():
                    if z.range != y.source or z.color >= y.color:
                        continue
                    w = [x.id, y.id, z.id]
                    a = self._normalize_word(list(w), first_swap=0)
                    b = self._normalize_word(list(w), first_swap=1)
                    if a != b:
                        raise CubeInconsistent(
                            f"word {w} normalizes to both {a} and {b}"
                        )

    # ------------------------------------------------------------------
    # basic accessors

    def edge(self, eid):
        try:
            return self._edges[eid]
        except KeyError:
            raise UnknownId(f"unknown edge id {eid!r}") from None

    def edge_ids(self):
        return sorted(self._edges)

    def out_edges(self, v, color=None):
        if v not in self._out and (v, 1) not in self._out:
            pass
        if color is not None:
            return list(self._out[(v, color)])
        out = []
        for c in range(1, self.k + 1):
            out.extend(self._out[(v, c)])
        return out

    def vertex(self, v):
        if v not in self.vertices:
            raise UnknownId(f"unknown vertex id {v!r}")
        return Path(self, v, ())

    def path(self, edge_ids):
        """Build a path from a composable edge word and normalize it."""
        ids = list(edge_ids)
        if not ids:
            raise UnknownId("empty edge word; use vertex() for vertex paths")
        edges = [self.edge(eid) for eid in ids]
        for a, b in zip(edges, edges[1:]):
            if a.source != b.range:
                raise NotComposable(f"edges {a.id} and {b.id} do not compose")
        word = self._normalize_word(ids)
        return Path(self, edges[0].range, tuple(word))

    def parse_path(self, text):
        """Parse a path literal: a vertex id or dot-joined edge ids."""
        if text in self.vertices:
            return self.vertex(text)
        return self.path(text.split("."))

    # ------------------------------------------------------------------
    # normal form machinery

    def _normalize_word(self, word, first_swap=None):
        """Sort an edge word into non-decreasing color order via squares."""
        w = list(word)
        if first_swap is not None:
            i = first_swap
            w[i], w[i + 1] = self._to_colormajor[(w[i], w[i + 1])]
        changed = True
        while changed:
            changed = False
            for i in range(len(w) - 1):
                a, b = w[i], w[i + 1]
                if self.edge(a).color > self.edge(b).color:
                    try:
                        w[i], w[i + 1] = self._to_colormajor[(a, b)]
                    except KeyError:
                        raise NotBijective(
                            f"no square covers the edge pair {(a, b)}"
                        ) from None
                    changed = True
        return w

    def compose(self, lam, mu):
        if lam.source != mu.range:
            raise NotComposable(f"{lam!r} and {mu!r} do not compose")
        if not lam.edges:
            return mu
        if not mu.edges:
            return lam
        word = self._normalize_word(list(lam.edges) + list(mu.edges))
        return Path(self, lam.range, tuple(word))

    def _peel_first(self, range_v, word, color):
        """Rewrite the word so that it starts with an edge of the given color.

        Returns (edge_id, remaining word).  Requires the word to contain an
        edge of that color.
        """
        w = list(word)
        pos = next(i for i, eid in enumerate(w) if self.edge(eid).color == color)
        while pos > 0:
            a, b = w[pos - 1], w[pos]
            w[pos - 1], w[pos] = self._from_colormajor[(a, b)]
            pos -= 1
        return w[0], w[1:]

    def factor(self, lam, m):
        """Split lam into its unique prefix of degree m and the rest."""
        if not degrees.le(m, lam.degree):
            raise DegreeOutOfRange(f"{m} exceeds degree {lam.degree}")
        head = []
        word = list(lam.edges)
        rem = list(m)
        while any(rem):
            color = next(i + 1 for i, c in enumerate(rem) if c)
            eid, word = self._peel_first(lam.range, word, color)
            head.append(eid)
            rem[color - 1] -= 1
        prefix = (
            Path(self, lam.range, tuple(self._normalize_word(head)))
            if head
            else Path(self, lam.range, ())
        )
        tail_range = prefix.source
        tail = (
            Path(self, tail_range, tuple(self._normalize_word(word)))
            if word
            else Path(self, tail_range, ())
        )
        return prefix, tail

    def segment(self, lam, m, n):
        """The factor lam(m, n) for m <= n <= d(lam)."""
        if not degrees.le(m, n):
            raise DegreeOutOfRange(f"segment needs {m} <= {n}")
        prefix, _ = self.factor(lam, n)
        return self.factor(prefix, m)[1]

    def vertex_at(self, lam, m):
        """The vertex lam(m) visited at internal degree m."""
        return self.factor(lam, m)[0].source

    def has_prefix(self, lam, mu):
        """True iff mu is the degree-d(mu) prefix of lam."""
        if not degrees.le(mu.degree, lam.degree) or lam.range != mu.range:
            return False
        return self.factor(lam, mu.degree)[0] == mu

    # ------------------------------------------------------------------
    # path enumeration

    def paths_from(self, v, n):
        """All paths with range v and degree exactly n, sorted."""
        if v not in self.vertices:
            raise UnknownId(f"unknown vertex id {v!r}")
        if not any(n):
            return [self.vertex(v)]
        color = next(i + 1 for i, c in enumerate(n) if c)
        rest = degrees.sub(n, degrees.unit(self.k, color))
        out = set()
        for eid in self._out[(v, color)]:
            head = self.path([eid])
            for tail in self.paths_from(self.edge(eid).source, rest):
                out.add(self.compose(head, tail))
        return sorted(out, key=Path.sort_key)

    def paths_upto(self, v, n):
        """All paths with range v and degree <= n, sorted."""
        out = []
        for m in degrees.below(n):
            out.extend(self.paths_from(v, m))
        return sorted(set(out), key=Path.sort_key)

    def paths_leq(self, v, n):
        """The relative boundary set: paths of degree <= n that cannot be
        extended in any color where the degree falls short of n."""
        out = []
        for lam in self.paths_upto(v, n):
            ok = True
            for i in range(self.k):
                if lam.degree[i] < n[i] and self._out[(lam.source, i + 1)]:
                    ok = False
                    break
            if ok:
                out.append(lam)
        return out

    def all_paths(self):
        """Every path in an acyclic graph, sorted (cached)."""
        if self._all_paths_cache is None:
            from .errors import NotAcyclic

            if not self.is_acyclic():
                raise NotAcyclic("the path category of a cyclic graph is infinite")
            paths = set()
            queue = [self.vertex(v) for v in self.vertices]
            while queue:
                lam = queue.pop()
                if lam in paths:
                    continue
                paths.add(lam)
                for eid in self.out_edges(lam.source):
                    queue.append(self.compose(lam, self.path([eid])))
            self._all_paths_cache = sorted(paths, key=Path.sort_key)
        return self._all_paths_cache

    def paths_at(self, v):
        """All paths with range v (acyclic graphs), sorted."""
        return [lam for lam in self.all_paths() if lam.range == v]

    # ------------------------------------------------------------------
    # common extensions

    def minimal_common_extensions(self, lam, mu):
        """All pairs (rho, tau) with lam*rho = mu*tau of degree d(lam) v d(mu)."""
        if lam.range != mu.range:
            return frozenset()
        top = degrees.join(lam.degree, mu.degree)
        out = set()
        for rho in self.paths_from(lam.source, degrees.sub(top, lam.degree)):
            ext = self.compose(lam, rho)
            head, tau = self.factor(ext, mu.degree)
            if head == mu:
                out.add((rho, tau))
        return frozenset(out)

    def mce(self, lam, mu):
        """The minimal common extensions themselves, sorted."""
        exts = {self.compose(lam, rho) for rho, _ in self.minimal_common_extensions(lam, mu)}
        return sorted(exts, key=Path.sort_key)

    def ext(self, lam, E):
        """Union of first components of minimal-extension pairs against E."""
        for mu in E:
            if mu.range != lam.range:
                raise RangeMismatch(f"{mu!r} does not share range with {lam!r}")
        out = set()
        for mu in E:
            for rho, _ in self.minimal_common_extensions(lam, mu):
                out.add(rho)
        return frozenset(out)

    # ------------------------------------------------------------------
    # exhaustive sets

    def exhaustiveness_witness(self, v, E):
        """A path gamma in v*Lambda with no common extension with any member
        of E, or None if E is exhaustive at v.

        Works by a least-fixpoint search over states (vertex, obligation set):
        a witness through a first edge a must avoid every path in the
        minimal-extension transfer of the obligations along a.  Degrees of
        obligations never increase, so the state space is finite even on
        cyclic graphs.
        """
        E = frozenset(E)
        for mu in E:
            if mu.range != v:
                raise RangeMismatch(f"{mu!r} is not a path at {v!r}")
        start = (v, E)
        succ = {}
        stack = [start]
        seen = {start}
        while stack:
            state = stack.pop()
            w, S = state
            if not S:
                continue  # terminal: witness found
            if any(p.is_vertex() for p in S):
                succ[state] = []  # dead: the vertex meets everything
                continue
            lst = []
            for eid in self.out_edges(w):
                a = self.path([eid])
                transfer = self.ext(a, S)
                nxt = (a.source, frozenset(transfer))
                lst.append((eid, nxt))
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
            succ[state] = lst
        dist = {s: 0 for s in seen if not s[1]}
        changed = True
        while changed:
            changed = False
            for state, lst in succ.items():
                best = min(
                    (dist[n] + 1 for _, n in lst if n in dist), default=None
                )
                if best is not None and best < dist.get(state, best + 1):
                    dist[state] = best
                    changed = True
        if start not in dist:
            return None
        word = []
        state = start
        while state[1]:
            eid, state = next(
                (eid, nxt)
                for eid, nxt in succ[state]
                if nxt in dist and dist[nxt] == dist[state] - 1
            )
            word.append(eid)
        return self.path(word) if word else self.vertex(v)

    def is_exhaustive(self, v, E):
        """True iff every path at v has a common extension with a member of E."""
        return self.exhaustiveness_witness(v, E) is None

    def finite_exhaustive_sets(self, v, max_size, max_degree):
        """All exhaustive subsets of {lam in v*Lambda \\ {v} : d(lam) <= bound}
        with at most max_size elements, sorted."""
        candidates = [
            lam for lam in self.paths_upto(v, max_degree) if not lam.is_vertex()
        ]
        out = []
        for size in range(1, max_size + 1):
            for combo in itertools.combinations(candidates, size):
                E = frozenset(combo)
                if self.is_exhaustive(v, E):
                    out.append(E)
        return out

    # ------------------------------------------------------------------
    # predicates

    def is_acyclic(self):
        if self._acyclic is None:
            color = {v: 0 for v in self.vertices}  # 0 new, 1 open, 2 done
            self._acyclic = True
            for v0 in self.vertices:
                if color[v0] or not self._acyclic:
                    continue
                stack = [(v0, iter(self.out_edges(v0)))]
                color[v0] = 1
                while stack:
                    v, it = stack[-1]
                    eid = next(it, None)
                    if eid is None:
                        color[v] = 2
                        stack.pop()
                        continue
                    w = self.edge(eid).source
                    if color[w] == 1:
                        self._acyclic = False
                        break
                    if color[w] == 0:
                        color[w] = 1
                        stack.append((w, iter(self.out_edges(w))))
        return self._acyclic

    def has_sources(self):
        """True iff some vertex receives no edge of some color."""
        return any(
            not self._out[(v, c)]
            for v in self.vertices
            for c in range(1, self.k + 1)
        )

    def is_locally_convex(self):
        for v in self.vertices:
            for i in range(1, self.k + 1):
                for j in range(1, self.k + 1):
                    if i == j:
                        continue
                    for eid in self._out[(v, i)]:
                        if self._out[(v, j)] and not self._out[(self.edge(eid).source, j)]:
                            return False
        return True

    def predicates(self):
        return {
            "acyclic": self.is_acyclic(),
            "has_sources": self.has_sources(),
            "locally_convex": self.is_locally_convex(),
            "row_finite": True,
        }

    def reachable(self, v):
        """Vertices w with a path from range v to source w, including v."""
        seen = {v}
        stack = [v]
        while stack:
            w = stack.pop()
            for eid in self.out_edges(w):
                u = self.edge(eid).source
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return seen

    def max_path_degree(self):
        """Componentwise maximum degree over all paths (acyclic graphs)."""
        top = degrees.zero(self.k)
        for lam in self.all_paths():
            top = degrees.join(top, lam.degree)
        return top


def omega_graph(m):
    """The rank-k lattice segment graph: vertices are tuples p <= m, with one
    color-i edge from p to p + e_i whenever that stays below m."""
    k = len(m)

    def name(p):
        return ",".join(str(c) for c in p)

    verts = [tuple(p) for p in degrees.below(m)]
    edges = []
    for p in verts:
        for i in range(1, k + 1):
            q = degrees.add(p, degrees.unit(k, i))
            if degrees.le(q, m):
                edges.append(
                    Edge(id=f"{name(p)}>{name(q)}", color=i, range=name(p), source=name(q))
                )
    eid = {(e.range, e.source): e.id for e in edges}
    squares = []
    for p in verts:
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                pi = degrees.add(p, degrees.unit(k, i))
                pj = degrees.add(p, degrees.unit(k, j))
                pij = degrees.add(pi, degrees.unit(k, j))
                if not degrees.le(pij, m):
                    continue
                squares.append(
                    Square(
                        first=(eid[(name(p), name(pi))], eid[(name(pi), name(pij))]),
                        second=(eid[(name(p), name(pj))], eid[(name(pj), name(pij))]),
                    )
                )
    spec = KGraphSpec(k=k, vertices=tuple(name(p) for p in verts),
                      edges=tuple(edges), squares=tuple(squares))
    return KGraph.validate(spec)
