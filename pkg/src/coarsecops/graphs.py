"""Lazily generated locally finite graphs with ball/sphere/distance queries.

A graph is given by a neighbor oracle (vertex -> sorted tuple of vertices);
nothing is ever materialized beyond what breadth-first searches touch.
Vertices are opaque hashable encodings with a total order, so every search
in this module is deterministic: neighbor lists are expanded in the order
the generator returns them (ascending), queues are FIFO, and ties are
broken by least vertex.

End structure is never computed; each generator ships a RaySystem witness
(disjoint monotone ray families plus outward rays) that the evasion
strategy consumes as trusted data.
"""

from collections import OrderedDict
from dataclasses import dataclass
from typing import Any, Callable, Iterable

from .errors import (
    AnnulusGrowthError,
    DisconnectedAnnulusError,
    RayContractError,
    SearchBudgetExceeded,
    UnsupportedGeneratorError,
)

Vertex = Any

DEFAULT_EXPANSION_BUDGET = 10_000_000
DEFAULT_CACHE_CENTERS = 256


@dataclass(eq=False, frozen=True)
class Ray:
    """One-sided infinite path, given by its vertex-at-index function.

    ``step(0)`` is the source.  A monotone ray gains exactly one unit of
    distance to the generator's root per step, so it crosses each sphere
    around the root exactly once and never re-enters a ball it has left.
    """

    source: Vertex
    step: Callable[[int], Vertex]
    monotone: bool = True

    def prefix(self, length: int) -> list:
        """Vertices step(0..length) inclusive."""
        return [self.step(t) for t in range(length + 1)]

    def __repr__(self):
        return f"Ray(source={self.source!r}, monotone={self.monotone})"


@dataclass(eq=False, frozen=True)
class RaySystem:
    """Per-generator witness for one fixed end of the graph.

    ``disjoint_family(count)`` returns ``(R0, rays)`` with at least
    ``count`` pairwise vertex-disjoint monotone rays whose sources all lie
    in the ball of radius R0 around ``root``; it raises
    NoThickEndWitnessError when the witnessed end cannot supply that many.
    ``outward_ray(v)`` returns a monotone ray from v that stays in the
    witnessed end, or None where no such ray is known (partial function).
    Pairwise connectability of the produced rays outside any ball is a
    construction guarantee of the generator, not verified at runtime.
    """

    root: Vertex
    disjoint_family: Callable[[int], tuple]
    outward_ray: Callable[[Vertex], Ray | None]


class _LayeredBfs:
    """Breadth-first layers (spheres) around one center, grown on demand."""

    __slots__ = ("dist", "layers", "_frontier", "spent")

    def __init__(self, center: Vertex):
        self.dist: dict = {center: 0}
        self.layers: list[list] = [[center]]
        self._frontier: list = [center]
        self.spent = 0

    def grow(self, oracle: "GraphOracle") -> bool:
        """Expand one more layer; False once the component is exhausted."""
        if not self._frontier:
            return False
        self.spent += len(self._frontier)
        if self.spent > oracle.expansion_budget:
            raise SearchBudgetExceeded(
                f"{oracle.name}: search around {self.layers[0][0]!r} expanded more "
                f"than {oracle.expansion_budget} vertices; misconfigured generator "
                "or unbounded query"
            )
        depth = len(self.layers)
        nxt = []
        dist = self.dist
        for v in self._frontier:
            for u in oracle.neighbors(v):
                if u not in dist:
                    dist[u] = depth
                    nxt.append(u)
        self.layers.append(nxt)
        self._frontier = nxt
        return bool(nxt)


class GraphOracle:
    """A locally finite graph presented as a neighbor function.

    Immutable after construction apart from internal BFS memoization,
    which only caches results and never changes observable answers; an
    oracle may therefore be shared across sequential workers, or rebuilt
    per worker with identical behavior.  A per-search vertex-expansion
    budget turns any single runaway search into SearchBudgetExceeded.
    """

    def __init__(
        self,
        name: str,
        neighbors: Callable[[Vertex], tuple],
        degree_bound: int,
        origin: Vertex,
        transitive: bool,
        encode: Callable[[Vertex], str],
        decode: Callable[[str], Vertex],
        ball_size_bound: Callable[[int], int] | None = None,
        expansion_budget: int = DEFAULT_EXPANSION_BUDGET,
        cache_centers: int = DEFAULT_CACHE_CENTERS,
    ):
        self.name = name
        self.neighbors = neighbors
        self.degree_bound = degree_bound
        self.origin = origin
        self.transitive = transitive
        self.encode = encode
        self.decode = decode
        self.ball_size_bound = ball_size_bound
        self.expansion_budget = expansion_budget
        self._cache_centers = cache_centers
        self._bfs: OrderedDict = OrderedDict()

    # -- internals ---------------------------------------------------------

    def _layers(self, center: Vertex) -> _LayeredBfs:
        bfs = self._bfs.get(center)
        if bfs is None:
            bfs = _LayeredBfs(center)
            self._bfs[center] = bfs
            if len(self._bfs) > self._cache_centers:
                self._bfs.popitem(last=False)
        else:
            self._bfs.move_to_end(center)
        return bfs

    # -- queries -----------------------------------------------------------

    def distance(self, u: Vertex, v: Vertex) -> int:
        """Geodesic distance, by BFS from u until v is reached."""
        bfs = self._layers(u)
        while v not in bfs.dist:
            if not bfs.grow(self):
                raise UnsupportedGeneratorError(
                    f"{self.name}: {v!r} unreachable from {u!r}"
                )
        return bfs.dist[v]

    def distance_at_most(self, u: Vertex, v: Vertex, limit: int) -> int | None:
        """distance(u, v) if it is <= limit, else None."""
        bfs = self._layers(u)
        while v not in bfs.dist:
            if len(bfs.layers) > limit or not bfs.grow(self):
                return None
        d = bfs.dist[v]
        return d if d <= limit else None

    def ball(self, c: Vertex, r: int) -> frozenset:
        """All vertices at distance <= r from c."""
        if r < 0:
            raise ValueError("radius must be >= 0")
        bfs = self._layers(c)
        while len(bfs.layers) <= r and bfs.grow(self):
            pass
        out = []
        for layer in bfs.layers[: r + 1]:
            out.extend(layer)
        return frozenset(out)

    def sphere(self, c: Vertex, r: int) -> frozenset:
        """All vertices at distance exactly r from c."""
        if r < 0:
            raise ValueError("radius must be >= 0")
        bfs = self._layers(c)
        while len(bfs.layers) <= r and bfs.grow(self):
            pass
        return frozenset(bfs.layers[r]) if r < len(bfs.layers) else frozenset()

    def ball_size(self, r: int) -> int:
        """|B(r)| for transitive graphs, else the declared upper bound."""
        if self.transitive:
            return len(self.ball(self.origin, r))
        if self.ball_size_bound is not None:
            return self.ball_size_bound(r)
        raise UnsupportedGeneratorError(
            f"{self.name}: ball_size needs transitivity or a declared bound"
        )


def ray_cross(g: GraphOracle, ray: Ray, root: Vertex, r: int) -> Vertex:
    """The unique vertex where a monotone ray crosses the sphere S(r, root).

    For a monotone ray from a source at distance d0 <= r that vertex is
    step(r - d0).
    """
    if not ray.monotone:
        raise RayContractError("ray_cross requires a monotone ray")
    d0 = g.distance(root, ray.source)
    if d0 > r:
        raise ValueError(f"ray source at distance {d0} > sphere radius {r}")
    return ray.step(r - d0)


def annulus_connect_radius(
    g: GraphOracle,
    root: Vertex,
    X: Iterable,
    r_lo: int,
    max_radius: int | None = None,
) -> int:
    """Smallest R >= r_lo+1 putting all of X in one component of
    B(R, root) \\ B(r_lo, root).

    X must be a nonempty subset of S(r_lo+1, root).  R grows one unit at a
    time, re-testing connectivity by BFS restricted to the annulus; the
    growth cap (default r_lo + 64) turns a never-connecting X into an
    AnnulusGrowthError, which means the generator's end witness is broken.
    """
    targets = sorted(X)
    if not targets:
        raise ValueError("X must be nonempty")
    sphere = g.sphere(root, r_lo + 1)
    for v in targets:
        if v not in sphere:
            raise ValueError(f"{v!r} not on S({r_lo + 1}) around {root!r}")
    if max_radius is None:
        max_radius = r_lo + 64
    root_dist = g._layers(root).dist  # grows in place as ball() expands below
    for radius in range(r_lo + 1, max_radius + 1):
        g.ball(root, radius)
        if _annulus_connected(g, targets, root_dist, r_lo, radius):
            return radius
    raise AnnulusGrowthError(
        f"{g.name}: {len(targets)} vertices on S({r_lo + 1}) not connected "
        f"within B({max_radius}) \\ B({r_lo}); end witness broken"
    )


def _annulus_connected(g, targets, root_dist, r_lo, r_hi):
    """BFS from the least target inside the annulus; do we reach them all?

    Touches only vertices of B(r_hi), already materialized under the
    per-search budget, so it needs no accounting of its own.
    """
    start = targets[0]
    seen = {start}
    queue = [start]
    remaining = set(targets) - seen
    while queue and remaining:
        nxt = []
        for v in queue:
            for u in g.neighbors(v):
                if u in seen:
                    continue
                d = root_dist.get(u)
                if d is None or d <= r_lo or d > r_hi:
                    continue
                seen.add(u)
                remaining.discard(u)
                nxt.append(u)
        queue = nxt
    return not remaining


def annulus_path(
    g: GraphOracle,
    root: Vertex,
    p: Vertex,
    q: Vertex,
    r_lo: int,
    r_hi: int,
    allowed: Callable[[Vertex], bool],
) -> list:
    """Shortest p-q path through {v : r_lo < d(root, v) <= r_hi, allowed(v)}.

    Returns the full vertex list including both endpoints (so p == q gives
    the single-vertex, length-zero path).  Deterministic: sorted neighbor
    expansion, FIFO queue, first-discoverer parents.
    """
    g.ball(root, r_hi)
    root_dist = g._layers(root).dist

    def admissible(v):
        d = root_dist.get(v)
        return d is not None and r_lo < d <= r_hi and allowed(v)

    for name, v in (("p", p), ("q", q)):
        if not admissible(v):
            raise ValueError(f"{name}={v!r} not admissible in the annulus")
    if p == q:
        return [p]
    parent = {p: None}
    queue = [p]
    while queue:
        nxt = []
        for v in queue:
            for u in g.neighbors(v):
                if u in parent or not admissible(u):
                    continue
                parent[u] = v
                if u == q:
                    path = [u]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                nxt.append(u)
        queue = nxt
    raise DisconnectedAnnulusError(
        f"{g.name}: no allowed path {p!r} -> {q!r} in B({r_hi}) \\ B({r_lo})"
    )
