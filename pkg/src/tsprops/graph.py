"""Transformation graphs and reachability over tuples of points.

The transformation graph of a generator set has an edge ``p -> q`` whenever
some generator maps ``p`` to ``q``.  Reachability questions about the
semigroup's action are phrased as breadth-first searches over tuples of
points acted on componentwise; witnesses are words over 1-indexed generator
indices, canonicalised shortest-first and then lexicographically.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

from .core import GeneratorSet
from .errors import StateBudgetExceeded

STATE_BUDGET = 100_000_000

# Above this many states the visited structure becomes a hash set rather
# than a flat bytearray, to avoid allocating the whole space up front.
_BITMAP_LIMIT = 1 << 22


@dataclass(frozen=True)
class Digraph:
    """A directed graph on an explicit vertex set (vertices keep their labels)."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        vset = set(self.vertices)
        object.__setattr__(self, "vertices", tuple(sorted(vset)))
        for u, v in self.edges:
            if u not in vset or v not in vset:
                raise ValueError(f"edge ({u}, {v}) leaves the vertex set")
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))

    def successors(self) -> dict[int, list[int]]:
        succ: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            succ[u].append(v)
        return succ


def transformation_graph(gens: GeneratorSet,
                         restrict: Iterable[int] | None = None) -> Digraph:
    """Edges ``p -> q`` for generators mapping ``p`` to ``q``.

    With ``restrict``, the subgraph induced on those vertices: edges with
    either endpoint outside the set are dropped.
    """
    if restrict is None:
        verts = range(1, gens.degree + 1)
    else:
        verts = sorted(set(restrict))
        for v in verts:
            if not 1 <= v <= gens.degree:
                raise ValueError(f"vertex {v} outside 1..{gens.degree}")
    vset = set(verts)
    edges = set()
    for g in gens.generators:
        for p in verts:
            q = g.map[p - 1]
            if q in vset:
                edges.add((p, q))
    return Digraph(tuple(verts), tuple(edges))


def undirected_components(g: Digraph) -> list[tuple[int, ...]]:
    """Connected components ignoring edge direction, each ascending, ordered
    by smallest member."""
    succ: dict[int, set[int]] = {v: set() for v in g.vertices}
    for u, v in g.edges:
        succ[u].add(v)
        succ[v].add(u)
    seen: set[int] = set()
    comps = []
    for root in g.vertices:
        if root in seen:
            continue
        comp = []
        queue = deque([root])
        seen.add(root)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in sorted(succ[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def has_cycle(g: Digraph, ignore_self_loops: bool) -> tuple[bool, tuple[int, ...] | None]:
    """Detect a directed cycle; the witness lists its vertices ending where it began.

    Tolerant mode (``ignore_self_loops=True``) only reports cycles through at
    least two distinct vertices; strict mode counts self-loops as cycles.
    """
    if not ignore_self_loops:
        for u, v in g.edges:
            if u == v:
                return True, (u, u)
    succ = {v: sorted(ws) for v, ws in g.successors().items()}
    color = dict.fromkeys(g.vertices, 0)  # 0 new, 1 on path, 2 done
    for root in g.vertices:
        if color[root]:
            continue
        path = [root]
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                color[v] = 2
                path.pop()
                stack.pop()
                continue
            if w == v:
                continue  # self-loop; strict mode already returned above
            if color[w] == 1:
                i = path.index(w)
                return True, tuple(path[i:] + [w])
            if color[w] == 0:
                color[w] = 1
                path.append(w)
                stack.append((w, iter(succ[w])))
    return False, None


def _encode(t: Sequence[int], n: int) -> int:
    # Big-endian: integer order of encodings equals lexicographic tuple order.
    e = 0
    for q in t:
        e = e * n + (q - 1)
    return e


def _decode(e: int, n: int, d: int) -> tuple[int, ...]:
    out = [0] * d
    for i in range(d - 1, -1, -1):
        out[i] = e % n + 1
        e //= n
    return tuple(out)


class _Visited:
    """First-visit marker over an encoded state space."""

    def __init__(self, size: int):
        self._bits = bytearray(size) if size <= _BITMAP_LIMIT else None
        self._set: set[int] = set()

    def mark(self, e: int) -> bool:
        """Mark ``e``; return True if it was new."""
        if self._bits is not None:
            if self._bits[e]:
                return False
            self._bits[e] = 1
            return True
        if e in self._set:
            return False
        self._set.add(e)
        return True


def multi_tuple_reachability(
    gens: GeneratorSet,
    sources: Iterable[Sequence[int]],
    targets: Iterable[Sequence[int]] | Callable[[tuple[int, ...]], bool],
    min_length: int = 1,
    budget: int = STATE_BUDGET,
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Shortest word moving some source tuple into the target set, componentwise.

    Returns ``(source, word)`` or None.  Among shortest words the earliest
    source in lexicographic order wins, and the word itself is the
    lexicographically least by generator index.  ``min_length`` 0 permits the
    empty word; 1 demands at least one generator application.
    """
    if min_length not in (0, 1):
        raise ValueError("min_length must be 0 or 1")
    n = gens.degree
    srcs = sorted(set(tuple(s) for s in sources))
    if not srcs:
        return None
    d = len(srcs[0])
    if d < 1:
        raise ValueError("tuples must have at least one coordinate")
    for s in srcs:
        if len(s) != d:
            raise ValueError("all source tuples must share one dimension")
        for q in s:
            if not 1 <= q <= n:
                raise ValueError(f"point {q} outside 1..{n}")
    n_states = n ** d
    if n_states > budget:
        raise StateBudgetExceeded(n_states, budget)

    if callable(targets):
        is_target = targets
    else:
        tset = set(tuple(t) for t in targets)
        for t in tset:
            if len(t) != d:
                raise ValueError("target dimension differs from source dimension")
        is_target = tset.__contains__

    if min_length == 0:
        for s in srcs:
            if is_target(s):
                return s, ()

    maps = [g.map for g in gens.generators]
    k = len(maps)
    visited = _Visited(n_states)
    # encoded state -> (previous encoded state or None, generator, source index)
    back: dict[int, tuple[int | None, int, int]] = {}
    queue: deque[tuple[int, tuple[int, ...]]] = deque()

    def emit(e: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        word = []
        cur = e
        while True:
            prev, c, si = back[cur]
            word.append(c + 1)
            if prev is None:
                return srcs[si], tuple(reversed(word))
            cur = prev

    for si, s in enumerate(srcs):
        for c in range(k):
            t = tuple(maps[c][q - 1] for q in s)
            e = _encode(t, n)
            if visited.mark(e):
                back[e] = (None, c, si)
                if is_target(t):
                    return emit(e)
                queue.append((e, t))

    while queue:
        ecur, cur = queue.popleft()
        for c in range(k):
            t = tuple(maps[c][q - 1] for q in cur)
            e = _encode(t, n)
            if visited.mark(e):
                back[e] = (ecur, c, 0)
                if is_target(t):
                    return emit(e)
                queue.append((e, t))
    return None


def tuple_reachability(
    gens: GeneratorSet,
    start: Sequence[int],
    targets: Iterable[Sequence[int]] | Callable[[tuple[int, ...]], bool],
    min_length: int = 1,
    budget: int = STATE_BUDGET,
) -> tuple[int, ...] | None:
    """Canonical shortest word moving ``start`` into the target set, or None."""
    hit = multi_tuple_reachability(gens, [start], targets, min_length, budget)
    return None if hit is None else hit[1]
