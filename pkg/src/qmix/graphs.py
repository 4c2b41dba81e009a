"""Weighted-graph model: parsing, matrices, combinatorial statistics and
structure detectors (twins, twin subgraphs, pendant pairs), plus the
subdivision and pendant-attachment constructions.

Vertices are dense integers 0..n-1.  Graphs are simple, loopless and
undirected with strictly positive edge weights.  Values are immutable, so
every operation here is a pure function and safe for concurrent use.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np

MAX_GRAPH6_VERTICES = 100_000


class GraphFormatError(ValueError):
    """Malformed textual graph input (graph6 line or weighted edge list)."""


class WeightClass(enum.Enum):
    UNIT = "unit"
    INTEGER = "integer"
    REAL = "real"


class MatrixKind(enum.Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"
    SIGNLESS_LAPLACIAN = "signless"


class TwinKind(enum.Enum):
    FALSE = "false"  # non-adjacent twins / isomorphic parts with no cross edges
    TRUE = "true"    # adjacent twins / regular parts with a regular cross graph


Weight = int | float
Edge = tuple[int, int, Weight]


def _is_integral(w) -> bool:
    if isinstance(w, int):
        return True
    if isinstance(w, Fraction):
        return w.denominator == 1
    return float(w).is_integer()


@dataclass(frozen=True)
class WeightedGraph:
    """Immutable weighted graph.  Use :meth:`build` to validate input."""

    n: int
    edges: tuple[Edge, ...]
    weight_class: WeightClass

    @classmethod
    def build(cls, n: int, edges, weight_class: WeightClass | None = None) -> "WeightedGraph":
        if n <= 0:
            raise ValueError("vertex count must be positive")
        seen: set[tuple[int, int]] = set()
        canon: list[Edge] = []
        for u, v, w in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex id out of range in edge ({u}, {v})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if w <= 0:
                raise ValueError(f"edge ({u}, {v}) has nonpositive weight {w}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            canon.append((key[0], key[1], w))
        canon.sort(key=lambda e: (e[0], e[1]))
        if all(w == 1 for _, _, w in canon):
            inferred = WeightClass.UNIT
        elif all(_is_integral(w) for _, _, w in canon):
            inferred = WeightClass.INTEGER
        else:
            inferred = WeightClass.REAL
        if weight_class is None:
            weight_class = inferred
        elif weight_class is WeightClass.UNIT and inferred is not WeightClass.UNIT:
            raise ValueError("unit weight class requires every weight to equal 1")
        elif weight_class is WeightClass.INTEGER and inferred is WeightClass.REAL:
            raise ValueError("integer weight class requires integral weights")
        if weight_class is WeightClass.REAL:
            canon = [(u, v, float(w)) for u, v, w in canon]
        else:
            canon = [(u, v, int(w)) for u, v, w in canon]
        return cls(n=n, edges=tuple(canon), weight_class=weight_class)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_integer_weights(self) -> bool:
        return self.weight_class in (WeightClass.UNIT, WeightClass.INTEGER)


# ---------------------------------------------------------------------------
# Parsing

def parse_graph6(text: str) -> WeightedGraph:
    """Decode one graph6 line (bit-exact McKay encoding) into a unit-weight graph."""
    line = text.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise GraphFormatError("empty graph6 line")
    try:
        data = [ord(ch) - 63 for ch in line]
    except TypeError:  # pragma: no cover - str input only
        raise GraphFormatError("graph6 input must be text")
    if any(v < 0 or v > 63 for v in data):
        raise GraphFormatError("graph6 characters must lie in chr(63)..chr(126)")
    if data[0] < 63:
        n, body = data[0], data[1:]
    elif len(data) >= 2 and data[1] < 63:
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 vertex count")
        n, body = (data[1] << 12) | (data[2] << 6) | data[3], data[4:]
    else:
        if len(data) < 8:
            raise GraphFormatError("truncated graph6 vertex count")
        n = 0
        for v in data[2:8]:
            n = (n << 6) | v
        body = data[8:]
    if n <= 0:
        raise GraphFormatError("graph6 vertex count must be positive")
    if n > MAX_GRAPH6_VERTICES:
        raise GraphFormatError(f"graph6 vertex count {n} exceeds the cap {MAX_GRAPH6_VERTICES}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise GraphFormatError(
            f"graph6 payload has {len(body)} characters, expected {need} for n={n}")
    bits = []
    for v in body:
        bits.extend(((v >> 5) & 1, (v >> 4) & 1, (v >> 3) & 1,
                     (v >> 2) & 1, (v >> 1) & 1, v & 1))
    if any(bits[nbits:]):
        raise GraphFormatError("graph6 padding bits must be zero")
    edges = []
    i = 0
    for k in range(1, n):
        for j in range(k):
            if bits[i]:
                edges.append((j, k, 1))
            i += 1
    return WeightedGraph.build(n, edges, WeightClass.UNIT)


def parse_weighted_edgelist(text: str) -> WeightedGraph:
    """Parse UTF-8 lines "u v w" (0-based ids, '#' comments) into a graph.

    The weight class is inferred: all ones -> unit, all integral -> integer,
    otherwise real.  The vertex count is the largest id plus one.
    """
    edges: dict[tuple[int, int], Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphFormatError(f"line {lineno}: expected 'u v w'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: vertex ids must be integers") from None
        try:
            w = Fraction(parts[2])
        except (ValueError, ZeroDivisionError):
            raise GraphFormatError(f"line {lineno}: weight {parts[2]!r} is not a decimal number") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: vertex ids must be nonnegative")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        if w <= 0:
            raise GraphFormatError(f"line {lineno}: nonpositive weight {parts[2]}")
        key = (min(u, v), max(u, v))
        if key in edges:
            raise GraphFormatError(f"line {lineno}: duplicate edge {key}")
        edges[key] = w
    if not edges:
        raise GraphFormatError("edge list contains no edges")
    n = max(v for _, v in edges) + 1
    out: list[Edge] = []
    for (u, v), w in edges.items():
        out.append((u, v, int(w) if w.denominator == 1 else float(w)))
    return WeightedGraph.build(n, out)


# ---------------------------------------------------------------------------
# Matrices and basic statistics

def adjacency_lists(g: WeightedGraph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    for row in adj:
        row.sort()
    return adj


def weight_map(g: WeightedGraph) -> dict[tuple[int, int], Weight]:
    """Symmetric lookup of edge weights; missing pairs mean non-adjacency."""
    m: dict[tuple[int, int], Weight] = {}
    for u, v, w in g.edges:
        m[(u, v)] = w
        m[(v, u)] = w
    return m


def adjacency_matrix(g: WeightedGraph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        a[u, v] = a[v, u] = float(w)
    return a


def matrix_of(g: WeightedGraph, kind: MatrixKind) -> np.ndarray:
    """Adjacency, Laplacian (D - A) or signless Laplacian (D + A) of g.

    D holds weighted degrees (row sums of A), so the Laplacian rows sum to
    zero and both Laplacians are positive semidefinite.
    """
    a = adjacency_matrix(g)
    if kind is MatrixKind.ADJACENCY:
        return a
    d = np.diag(a.sum(axis=1))
    return d - a if kind is MatrixKind.LAPLACIAN else d + a


def degrees(g: WeightedGraph) -> list[int]:
    """Combinatorial degrees (incident edge counts, ignoring weights)."""
    deg = [0] * g.n
    for u, v, _ in g.edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def weighted_degrees(g: WeightedGraph) -> list[Weight]:
    deg: list[Weight] = [0] * g.n
    for u, v, w in g.edges:
        deg[u] += w
        deg[v] += w
    return deg


@dataclass(frozen=True)
class DegreeStats:
    deg: tuple[int, ...]
    avg_degree: Fraction
    max_degree: int
    edge_count: int
    dist2_pairs: int


def common_neighbors(g: WeightedGraph, j: int, ell: int) -> int:
    """Number of common neighbors of two distinct vertices."""
    if j == ell:
        raise ValueError("common_neighbors requires two distinct vertices")
    adj = adjacency_lists(g)
    return len(set(adj[j]) & set(adj[ell]))


def degree_stats(g: WeightedGraph) -> DegreeStats:
    """Exact degree statistics; dist2_pairs counts vertex pairs at distance two."""
    deg = degrees(g)
    adj = adjacency_lists(g)
    nbr = [set(row) for row in adj]
    q = 0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if v not in nbr[u] and nbr[u] & nbr[v]:
                q += 1
    return DegreeStats(
        deg=tuple(deg),
        avg_degree=Fraction(2 * g.edge_count, g.n),
        max_degree=max(deg) if deg else 0,
        edge_count=g.edge_count,
        dist2_pairs=q,
    )


# ---------------------------------------------------------------------------
# Connectivity, bipartition, cycles

def connected_components(g: WeightedGraph) -> list[list[int]]:
    adj = adjacency_lists(g)
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def is_connected(g: WeightedGraph) -> bool:
    return len(connected_components(g)) == 1


def is_tree(g: WeightedGraph) -> bool:
    return is_connected(g) and g.edge_count == g.n - 1


@dataclass(frozen=True)
class Bipartition:
    present: bool
    b1: tuple[int, ...] = ()
    b2: tuple[int, ...] = ()

    def part_of(self, u: int) -> int:
        """1 or 2 for the part containing u."""
        if not self.present:
            raise ValueError("graph is not bipartite")
        return 1 if u in self.b1 else 2


def bipartition(g: WeightedGraph) -> Bipartition:
    """BFS 2-coloring; part B1 is canonically the one containing vertex 0."""
    adj = adjacency_lists(g)
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return Bipartition(present=False)
    c0 = color[0]
    b1 = tuple(v for v in range(g.n) if color[v] == c0)
    b2 = tuple(v for v in range(g.n) if color[v] != c0)
    return Bipartition(present=True, b1=b1, b2=b2)


@dataclass(frozen=True)
class CycleFlags:
    has_triangle: bool
    has_c4: bool
    has_c5: bool


def cycle_flags(g: WeightedGraph) -> CycleFlags:
    """Exhaustive search for 3-, 4- and 5-cycles as subgraphs.

    A 4-cycle exists exactly when some vertex pair has two or more common
    neighbors, so C4-freeness matches the common-neighbor bound c(j,l) <= 1.
    """
    adj = adjacency_lists(g)
    nbr = [set(row) for row in adj]
    tri = any(nbr[u] & nbr[v] for u, v, _ in g.edges)
    c4 = False
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if len(nbr[u] & nbr[v]) >= 2:
                c4 = True
                break
        if c4:
            break
    return CycleFlags(has_triangle=tri, has_c4=c4, has_c5=_has_cycle5(adj, nbr))


def _has_cycle5(adj, nbr) -> bool:
    n = len(adj)
    for s in range(n):
        # paths s-a-b-c-d with all vertices > s, closed by an edge d-s
        for a in adj[s]:
            if a <= s:
                continue
            for b in adj[a]:
                if b <= s or b == a:
                    continue
                for c in adj[b]:
                    if c <= s or c in (a, b):
                        continue
                    for d in adj[c]:
                        if d <= s or d in (a, b, c):
                            continue
                        if d in nbr[s]:
                            return True
    return False


def cyclomatic_index(g: WeightedGraph) -> int:
    """k with |E| = (n - 1) + k; requires a connected graph."""
    if not is_connected(g):
        raise ValueError("cyclomatic index is defined for connected graphs only")
    return g.edge_count - g.n + 1


# ---------------------------------------------------------------------------
# Constructions

def subdivide(g: WeightedGraph) -> WeightedGraph:
    """Replace each edge {u, v} by a two-edge path through a new vertex."""
    if g.weight_class is not WeightClass.UNIT:
        raise ValueError("subdivision is defined for unit-weight graphs")
    edges = []
    for idx, (u, v, _) in enumerate(g.edges):
        mid = g.n + idx
        edges.append((u, mid, 1))
        edges.append((mid, v, 1))
    return WeightedGraph.build(g.n + g.edge_count, edges, WeightClass.UNIT)


def attach_pendants(g: WeightedGraph) -> WeightedGraph:
    """Attach one new weight-1 pendant vertex to every vertex of g."""
    edges = list(g.edges)
    for v in range(g.n):
        edges.append((v, g.n + v, 1))
    return WeightedGraph.build(2 * g.n, edges)


# ---------------------------------------------------------------------------
# Twins and twin subgraphs

def find_twin_pairs(g: WeightedGraph) -> list[tuple[int, int, TwinKind]]:
    """All unordered twin pairs: equal weighted neighborhoods off {u, v}."""
    wm = weight_map(g)
    rows = []
    for u in range(g.n):
        rows.append({v: wm[(u, v)] for v in range(g.n) if (u, v) in wm})
    out = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            ru = {x: w for x, w in rows[u].items() if x != v}
            rv = {x: w for x, w in rows[v].items() if x != u}
            if ru == rv:
                kind = TwinKind.TRUE if (u, v) in wm else TwinKind.FALSE
                out.append((u, v, kind))
    return out


@dataclass(frozen=True)
class TwinSubgraphWitness:
    kind: TwinKind
    g_vertices: tuple[int, ...]
    h_vertices: tuple[int, ...]
    bijection: tuple[tuple[int, int], ...] | None = None  # pairs (g_vertex, h_vertex)
    valency_in: Weight | None = None     # common valency inside each part (true kind)
    valency_cross: Weight | None = None  # valency of the cross bipartite subgraph (true kind)

    @property
    def size(self) -> int:
        return len(self.g_vertices)

    def contains(self, u: int) -> bool:
        return u in self.g_vertices or u in self.h_vertices

    def mapping(self) -> dict[int, int] | None:
        return dict(self.bijection) if self.bijection is not None else None


def _external_signature(row: dict[int, Weight], outside: list[int]) -> tuple:
    return tuple(row.get(w, 0) for w in outside)


def verify_twin_subgraphs(g: WeightedGraph, witness: TwinSubgraphWitness) -> bool:
    """Exact check of a claimed twin-subgraph pair.

    False kind: the bijection is a weight-preserving isomorphism, there are
    no edges between the parts, and external neighborhoods match under it.
    True kind: both parts are weighted-regular with one valency, the cross
    bipartite subgraph is weighted-regular, and external neighborhoods match
    under some (or the given) pairing.
    """
    gs, hs = witness.g_vertices, witness.h_vertices
    if set(gs) & set(hs):
        raise ValueError("twin subgraph vertex sets overlap")
    if len(gs) != len(hs) or len(set(gs)) != len(gs) or len(set(hs)) != len(hs):
        raise ValueError("twin subgraph vertex sets must be disjoint and equal-sized")
    if any(not 0 <= v < g.n for v in gs + hs):
        raise ValueError("twin subgraph vertex id out of range")
    wm = weight_map(g)
    rows = [{v: wm[(u, v)] for v in range(g.n) if (u, v) in wm} for u in range(g.n)]
    inside = set(gs) | set(hs)
    outside = [w for w in range(g.n) if w not in inside]

    if witness.kind is TwinKind.FALSE:
        f = witness.mapping()
        if f is None:
            raise ValueError("false twin witness requires its isomorphism")
        if sorted(f) != sorted(gs) or sorted(f.values()) != sorted(hs):
            raise ValueError("bijection does not map the first part onto the second")
        for x in gs:
            for y in hs:
                if (x, y) in wm:
                    return False
        for x1, x2 in combinations(gs, 2):
            if rows[x1].get(x2, 0) != rows[f[x1]].get(f[x2], 0):
                return False
        for x in gs:
            if _external_signature(rows[x], outside) != _external_signature(rows[f[x]], outside):
                return False
        return True

    in_deg = {}
    for part in (gs, hs):
        pset = set(part)
        for x in part:
            in_deg[x] = sum(w for v, w in rows[x].items() if v in pset)
    vals = {in_deg[x] for x in gs} | {in_deg[x] for x in hs}
    if len(vals) != 1:
        return False
    hset, gset = set(hs), set(gs)
    cross_g = [sum(w for v, w in rows[x].items() if v in hset) for x in gs]
    cross_h = [sum(w for v, w in rows[y].items() if v in gset) for y in hs]
    if len(set(cross_g) | set(cross_h)) != 1:
        return False
    f = witness.mapping()
    if f is not None:
        if sorted(f) != sorted(gs) or sorted(f.values()) != sorted(hs):
            raise ValueError("bijection does not map the first part onto the second")
        pairing_ok = all(
            _external_signature(rows[x], outside) == _external_signature(rows[f[x]], outside)
            for x in gs)
    else:
        pairing_ok = _signature_pairing(rows, gs, hs, outside) is not None
    if not pairing_ok:
        return False
    if witness.valency_in is not None and witness.valency_in != next(iter(vals)):
        return False
    if witness.valency_cross is not None and witness.valency_cross != cross_g[0]:
        return False
    return True


def _signature_pairing(rows, gs, hs, outside) -> dict[int, int] | None:
    """Pair vertices across the parts so external neighborhoods match."""
    by_sig: dict[tuple, list[int]] = {}
    for y in hs:
        by_sig.setdefault(_external_signature(rows[y], outside), []).append(y)
    for group in by_sig.values():
        group.sort()
    f = {}
    taken: dict[tuple, int] = {}
    for x in sorted(gs):
        sig = _external_signature(rows[x], outside)
        group = by_sig.get(sig, [])
        k = taken.get(sig, 0)
        if k >= len(group):
            return None
        f[x] = group[k]
        taken[sig] = k + 1
    return f


@dataclass(frozen=True)
class TwinSearchResult:
    witnesses: tuple[TwinSubgraphWitness, ...]
    truncated: bool


def search_twin_subgraphs(g: WeightedGraph, a_max: int = 4,
                          subset_budget: int = 1_000_000) -> TwinSearchResult:
    """Exhaustive twin-subgraph search over part sizes 1..a_max.

    On small graphs the enumeration is complete; when the number of candidate
    subset pairs exceeds the budget the result is flagged as truncated.
    Singleton pairs are reported with their twin kind (false when
    non-adjacent); larger pairs may satisfy both definitions and then one
    witness per kind is returned.  Weights compare exactly.

    Vertices x and y can be matched by a witness only if their adjacency rows
    agree outside the two parts, so the search precomputes where each row
    pair differs and rejects candidates by small set inclusions.
    """
    n = g.n
    a_cap = min(a_max, n // 2)
    if a_cap < 1:
        return TwinSearchResult(witnesses=(), truncated=False)
    mat = adjacency_matrix(g)
    limit = 2 * a_cap
    compat: list[dict[int, frozenset]] = [dict() for _ in range(n)]
    for x in range(n):
        row = mat[x]
        for y in range(n):
            if x == y:
                continue
            diff = np.nonzero(row != mat[y])[0]
            if diff.size <= limit:
                compat[x][y] = frozenset(int(i) for i in diff)
    witnesses: list[TwinSubgraphWitness] = []
    examined = 0
    truncated = False
    for a in range(1, a_cap + 1):
        if truncated:
            break
        for gs in combinations(range(n), a):
            if truncated:
                break
            gset = set(gs)
            rest = [v for v in range(n) if v not in gset]
            for hs in combinations(rest, a):
                if min(hs) < min(gs):
                    continue  # unordered pair: keep the lexicographically first part first
                examined += 1
                if examined > subset_budget:
                    truncated = True
                    break
                witnesses.extend(_classify_subset_pair(mat, compat, gs, hs))
    return TwinSearchResult(witnesses=tuple(witnesses), truncated=truncated)


def _classify_subset_pair(mat, compat, gs, hs) -> list[TwinSubgraphWitness]:
    inside = frozenset(gs) | frozenset(hs)
    partners = []
    for x in gs:
        options = {y for y in hs
                   if (d := compat[x].get(y)) is not None and d <= inside}
        if not options:
            return []
        partners.append(options)
    a = len(gs)

    if a == 1:
        x, y = gs[0], hs[0]
        w_cross = mat[x, y]
        kind = TwinKind.TRUE if w_cross != 0 else TwinKind.FALSE
        return [TwinSubgraphWitness(
            kind=kind, g_vertices=gs, h_vertices=hs, bijection=((x, y),),
            valency_in=0 if kind is TwinKind.TRUE else None,
            valency_cross=_as_weight(w_cross) if kind is TwinKind.TRUE else None)]

    out: list[TwinSubgraphWitness] = []
    sub_g = mat[np.ix_(gs, gs)]
    sub_h = mat[np.ix_(hs, hs)]
    cross = mat[np.ix_(gs, hs)]
    if not cross.any():
        f = _false_twin_bijection(sub_g, sub_h, partners, gs, hs)
        if f is not None:
            out.append(TwinSubgraphWitness(
                kind=TwinKind.FALSE, g_vertices=gs, h_vertices=hs,
                bijection=tuple(sorted(f.items()))))

    in_g = sub_g.sum(axis=1)
    in_h = sub_h.sum(axis=1)
    if in_g.max() == in_g.min() == in_h.max() == in_h.min():
        cross_g = cross.sum(axis=1)
        cross_h = cross.sum(axis=0)
        if cross_g.max() == cross_g.min() == cross_h.max() == cross_h.min():
            f = _first_pairing(partners, gs, hs)
            if f is not None:
                out.append(TwinSubgraphWitness(
                    kind=TwinKind.TRUE, g_vertices=gs, h_vertices=hs,
                    bijection=tuple(sorted(f.items())),
                    valency_in=_as_weight(in_g[0]), valency_cross=_as_weight(cross_g[0])))
    return out


def _as_weight(x) -> Weight:
    f = float(x)
    return int(f) if f.is_integer() else f


def _false_twin_bijection(sub_g, sub_h, partners, gs, hs) -> dict[int, int] | None:
    """Weight-preserving isomorphism between the parts whose pairs also agree
    externally; brute force over permutations (part sizes <= 4)."""
    a = len(gs)
    for perm in permutations(range(a)):
        if any(hs[perm[i]] not in partners[i] for i in range(a)):
            continue
        ok = True
        for i in range(a):
            for j in range(i + 1, a):
                if sub_g[i, j] != sub_h[perm[i], perm[j]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return {gs[i]: hs[perm[i]] for i in range(a)}
    return None


def _first_pairing(partners, gs, hs) -> dict[int, int] | None:
    for perm in permutations(range(len(gs))):
        if all(hs[perm[i]] in partners[i] for i in range(len(gs))):
            return {gs[i]: hs[perm[i]] for i in range(len(gs))}
    return None


# ---------------------------------------------------------------------------
# Pendant structure and caterpillars

@dataclass(frozen=True)
class PendantPair:
    u: int
    w: int
    v: int       # the common neighbor
    alpha: Weight  # weight of {u, v}
    beta: Weight   # weight of {w, v}


def pendant_pairs_with_common_neighbor(g: WeightedGraph) -> list[PendantPair]:
    """All pairs of degree-1 vertices hanging off the same vertex."""
    deg = degrees(g)
    wm = weight_map(g)
    adj = adjacency_lists(g)
    by_support: dict[int, list[int]] = {}
    for u in range(g.n):
        if deg[u] == 1:
            by_support.setdefault(adj[u][0], []).append(u)
    out = []
    for v, pend in sorted(by_support.items()):
        for u, w in combinations(sorted(pend), 2):
            out.append(PendantPair(u=u, w=w, v=v, alpha=wm[(u, v)], beta=wm[(w, v)]))
    return out


def is_caterpillar(g: WeightedGraph) -> bool:
    """True when deleting all pendant vertices of a tree leaves a path.

    An empty or single-vertex remainder counts as a path, so stars are
    caterpillars.
    """
    if not is_tree(g):
        raise ValueError("caterpillar test requires a tree")
    deg = degrees(g)
    keep = [v for v in range(g.n) if deg[v] > 1]
    if len(keep) <= 1:
        return True
    kset = set(keep)
    adj = adjacency_lists(g)
    inner_deg = [sum(1 for x in adj[v] if x in kset) for v in keep]
    return max(inner_deg) <= 2
