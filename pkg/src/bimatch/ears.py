"""Odd ear decompositions of elementary bipartite multigraphs.

Vertices are labelled ``("x", i)`` and ``("y", j)``.  An ear is a vertex
sequence whose ends lie in the graph built so far and whose interior vertices
are new.  Extra copies of a multiedge appear as length-1 ears.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import Bigraph
from .matching import maximum_matching
from .structure import is_elementary

Vertex = tuple[str, int]

__all__ = ["EarDecomposition", "odd_ear_decomposition", "validate_ear_decomposition"]


@dataclass
class EarDecomposition:
    base: tuple[int, int]
    ears: list[list[Vertex]] = field(default_factory=list)

    @property
    def items(self) -> int:
        return 1 + len(self.ears)

    def to_dict(self) -> dict:
        return {
            "base": list(self.base),
            "ears": [[[side, idx] for side, idx in ear] for ear in self.ears],
            "items": self.items,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EarDecomposition":
        return cls(tuple(d["base"]), [[(str(s), int(i)) for s, i in ear] for ear in d["ears"]])


def _edge_key(a: Vertex, b: Vertex) -> tuple[int, int]:
    return (a[1], b[1]) if a[0] == "x" else (b[1], a[1])


def odd_ear_decomposition(G: Bigraph) -> EarDecomposition:
    """Build an odd ear decomposition, starting from a matched edge.

    The growing subgraph is kept closed under a fixed perfect matching ``M``;
    each new long ear leaves it along an edge ``uv`` and follows
    ``v, M(v), w, M(w), ...`` until it re-enters.
    """
    if not is_elementary(G):
        raise ValueError("odd ear decomposition requires an elementary graph")
    arr = G.mult
    n = G.nx
    mate = maximum_matching(arr)
    mate_y = {j: i for i, j in mate.items()}

    def M(v: Vertex) -> Vertex:
        return ("y", mate[v[1]]) if v[0] == "x" else ("x", mate_y[v[1]])

    def nbrs(v: Vertex) -> list[Vertex]:
        if v[0] == "x":
            return [("y", int(j)) for j in np.flatnonzero(arr[v[1]])]
        return [("x", int(i)) for i in np.flatnonzero(arr[:, v[1]])]

    simple_edges = [(i, j) for i in range(n) for j in range(n) if arr[i, j]]
    base = (0, mate[0])
    in_H = {("x", 0), ("y", mate[0])}
    used = {base}
    ears: list[list[Vertex]] = []

    while len(used) < len(simple_edges):
        chord = next(
            ((i, j) for i, j in simple_edges if (i, j) not in used and ("x", i) in in_H and ("y", j) in in_H),
            None,
        )
        if chord is not None:
            ears.append([("x", chord[0]), ("y", chord[1])])
            used.add(chord)
            continue
        ear = None
        for i, j in simple_edges:
            if (i, j) in used:
                continue
            for u, v in ((("x", i), ("y", j)), (("y", j), ("x", i))):
                if u in in_H and v not in in_H:
                    ear = _alternating_ear(u, v, M, nbrs, in_H)
                    if ear is not None:
                        break
            if ear is not None:
                break
        if ear is None:
            raise RuntimeError("failed to extend ear decomposition (internal error)")
        ears.append(ear)
        in_H.update(ear)
        for a, b in zip(ear, ear[1:]):
            used.add(_edge_key(a, b))

    for i, j in simple_edges:
        for _ in range(int(arr[i, j]) - 1):
            ears.append([("x", i), ("y", j)])
    return EarDecomposition(base, ears)


def _alternating_ear(u: Vertex, v: Vertex, M, nbrs, in_H: set) -> list[Vertex] | None:
    parent: dict[Vertex, Vertex | None] = {v: None}
    queue = deque([v])
    while queue:
        w = queue.popleft()
        w2 = M(w)
        for z in nbrs(w2):
            if z == w:
                continue
            if z in in_H:
                chain = []
                cur: Vertex | None = w
                while cur is not None:
                    chain.append((cur, M(cur)))
                    cur = parent[cur]
                path = [u]
                for a, b in reversed(chain):
                    path.extend((a, b))
                path.append(z)
                return path
            if z not in parent:
                parent[z] = w
                queue.append(z)
    return None


def validate_ear_decomposition(G: Bigraph, D: EarDecomposition) -> tuple[bool, list[str]]:
    """Check a decomposition against ``G``; returns (ok, reasons)."""
    arr = G.mult
    nx, ny = arr.shape
    reasons: list[str] = []
    remaining = arr.astype(object).copy()

    def take(a: Vertex, b: Vertex, where: str) -> None:
        if a[0] == b[0]:
            reasons.append(f"{where}: {a} and {b} lie in the same part")
            return
        i, j = _edge_key(a, b)
        if not (0 <= i < nx and 0 <= j < ny):
            reasons.append(f"{where}: edge ({i}, {j}) out of range")
            return
        if remaining[i, j] <= 0:
            reasons.append(f"{where}: edge ({i}, {j}) used more often than its multiplicity")
            return
        remaining[i, j] -= 1

    bi, bj = D.base
    take(("x", bi), ("y", bj), "base")
    present = {("x", bi), ("y", bj)}
    for k, ear in enumerate(D.ears):
        where = f"ear {k}"
        if len(ear) < 2:
            reasons.append(f"{where}: fewer than two vertices")
            continue
        if (len(ear) - 1) % 2 == 0:
            reasons.append(f"{where}: even length {len(ear) - 1}")
        if ear[0] not in present or ear[-1] not in present:
            reasons.append(f"{where}: endpoints not in the current subgraph")
        if ear[0][0] == ear[-1][0]:
            reasons.append(f"{where}: endpoints in the same part")
        interior = ear[1:-1]
        if len(set(interior)) != len(interior) or any(v in present for v in interior):
            reasons.append(f"{where}: interior vertices are not new and distinct")
        for a, b in zip(ear, ear[1:]):
            take(a, b, where)
        present.update(interior)
    if (remaining != 0).any():
        reasons.append("decomposition does not use every edge copy")
    if len(present) != nx + ny:
        reasons.append("decomposition does not span the graph")
    if D.items != G.m - (nx + ny) + 2:
        reasons.append(f"item count {D.items} differs from m - v + 2 = {G.m - nx - ny + 2}")
    return not reasons, reasons
