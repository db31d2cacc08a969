"""Maximum-cardinality bipartite matching (Hopcroft-Karp)."""
from __future__ import annotations

from collections import deque
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field

_INF = float("inf")


@dataclass
class MatchingGraph:
    """Bipartite graph given by left-vertex adjacency lists.

    Right vertices that appear in no adjacency list may be listed in
    ``right`` so that saturation questions about them are well posed.
    """

    adj: dict[Hashable, list[Hashable]]
    right: list[Hashable] = field(default_factory=list)

    @property
    def left(self) -> list[Hashable]:
        return list(self.adj)

    def right_vertices(self) -> list[Hashable]:
        seen = dict.fromkeys(self.right)
        for nbrs in self.adj.values():
            seen.update(dict.fromkeys(nbrs))
        return list(seen)

    @classmethod
    def from_edges(cls, left: Iterable[Hashable], right: Iterable[Hashable], edges: Iterable[tuple]):
        adj: dict[Hashable, list[Hashable]] = {u: [] for u in left}
        for u, v in edges:
            adj[u].append(v)
        return cls(adj, list(right))


def max_bipartite_matching(graph: MatchingGraph | Mapping[Hashable, Iterable[Hashable]]) -> dict:
    """Return a maximum matching as a dict left -> right."""
    adj = graph.adj if isinstance(graph, MatchingGraph) else {u: list(v) for u, v in graph.items()}
    pair_l: dict = {}
    pair_r: dict = {}
    dist: dict = {}

    def bfs() -> bool:
        q = deque()
        for u in adj:
            if u in pair_l:
                dist[u] = _INF
            else:
                dist[u] = 0
                q.append(u)
        found = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = pair_r.get(v)
                if w is None:
                    found = True
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u) -> bool:
        # iterative augmenting-path search along the BFS layering
        stack = [(u, iter(adj[u]))]
        path = []
        while stack:
            x, it = stack[-1]
            advanced = False
            for v in it:
                w = pair_r.get(v)
                if w is None:
                    path.append((x, v))
                    for a, b in path:
                        pair_l[a] = b
                        pair_r[b] = a
                    return True
                if dist[w] == dist[x] + 1:
                    path.append((x, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[x] = _INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in adj:
            if u not in pair_l:
                dfs(u)
    return dict(pair_l)
