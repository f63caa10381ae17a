"""Bipartite multigraphs stored as dense multiplicity matrices.

Rows index the part X, columns index the part Y.  Entry ``mult[i, j]`` is the
number of parallel copies of the edge ``x_i y_j``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Bigraph",
    "GraphParams",
    "build",
    "from_matrix",
    "neighborhood",
    "params",
    "add_universal_vertices",
    "induced_subgraph",
    "underlying_simple",
    "to_json",
    "from_json",
    "to_text",
    "from_text",
    "parse_graph",
]


class Bigraph:
    """Immutable X,Y-bigraph with integer edge multiplicities."""

    __slots__ = ("_mult",)

    def __init__(self, mult) -> None:
        arr = np.array(mult, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"multiplicity matrix must be 2-D, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"both parts must be nonempty, got shape {arr.shape}")
        if (arr < 0).any():
            raise ValueError("multiplicities must be non-negative")
        arr.setflags(write=False)
        self._mult = arr

    @property
    def mult(self) -> np.ndarray:
        return self._mult

    @property
    def nx(self) -> int:
        return self._mult.shape[0]

    @property
    def ny(self) -> int:
        return self._mult.shape[1]

    @property
    def m(self) -> int:
        return int(self._mult.sum())

    def degree_x(self) -> np.ndarray:
        return self._mult.sum(axis=1)

    def degree_y(self) -> np.ndarray:
        return self._mult.sum(axis=0)

    def neighbors_x(self, i: int) -> list[int]:
        return [int(j) for j in np.flatnonzero(self._mult[i])]

    def neighbors_y(self, j: int) -> list[int]:
        return [int(i) for i in np.flatnonzero(self._mult[:, j])]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(i, j, mult)`` for every positive entry, row-major."""
        for i, j in zip(*np.nonzero(self._mult)):
            yield int(i), int(j), int(self._mult[i, j])

    def transpose(self) -> "Bigraph":
        return Bigraph(self._mult.T)

    def with_mult(self, i: int, j: int, value: int) -> "Bigraph":
        arr = self._mult.copy()
        arr[i, j] = value
        return Bigraph(arr)

    def tolist(self) -> list[list[int]]:
        return self._mult.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bigraph):
            return NotImplemented
        return self._mult.shape == other._mult.shape and bool((self._mult == other._mult).all())

    def __hash__(self) -> int:
        return hash((self._mult.shape, self._mult.tobytes()))

    def __repr__(self) -> str:
        return f"Bigraph({self._mult.tolist()})"


@dataclass(frozen=True)
class GraphParams:
    n: int
    ny: int
    t: int
    m: int
    b: int
    k: int
    r: int
    deltaY: int
    rY: int

    def to_dict(self) -> dict:
        return asdict(self)


def build(nx: int, ny: int, edges: Iterable[Sequence[int]]) -> Bigraph:
    """Build a bigraph from ``(i, j, mult)`` triples; repeated pairs accumulate."""
    if nx < 1 or ny < 1:
        raise ValueError("nx and ny must be at least 1")
    arr = np.zeros((nx, ny), dtype=np.int64)
    for triple in edges:
        if len(triple) != 3:
            raise ValueError(f"edge must be (i, j, mult), got {triple!r}")
        i, j, mu = (int(v) for v in triple)
        if not (0 <= i < nx and 0 <= j < ny):
            raise IndexError(f"edge ({i}, {j}) out of range for {nx}x{ny} bigraph")
        if mu < 1:
            raise ValueError(f"edge ({i}, {j}) has non-positive multiplicity {mu}")
        arr[i, j] += mu
    return Bigraph(arr)


def from_matrix(rows: Sequence[Sequence[int]]) -> Bigraph:
    return Bigraph(rows)


def _check_x_indices(G: Bigraph, S: Iterable[int]) -> list[int]:
    S = sorted(set(int(i) for i in S))
    for i in S:
        if not 0 <= i < G.nx:
            raise IndexError(f"X-index {i} out of range (nx={G.nx})")
    return S


def neighborhood(G: Bigraph, S: Iterable[int]) -> set[int]:
    """Union of the neighborhoods of the X-vertices in ``S``."""
    S = _check_x_indices(G, S)
    if not S:
        return set()
    return {int(j) for j in np.flatnonzero(G.mult[S].sum(axis=0))}


def params(G: Bigraph) -> GraphParams:
    mult = G.mult
    support = mult > 0
    m = G.m
    return GraphParams(
        n=G.nx,
        ny=G.ny,
        t=G.ny - G.nx,
        m=m,
        b=m - 2 * G.ny,
        k=int(mult.sum(axis=1).min()),
        r=int(support.sum(axis=1).min()),
        deltaY=int(mult.sum(axis=0).min()),
        rY=int(support.sum(axis=0).min()),
    )


def add_universal_vertices(G: Bigraph, p: int) -> Bigraph:
    """Append ``p`` Y-vertices joined by single edges to every X-vertex."""
    if p < 0:
        raise ValueError("p must be non-negative")
    if p == 0:
        return G
    return Bigraph(np.hstack([G.mult, np.ones((G.nx, p), dtype=np.int64)]))


def induced_subgraph(
    G: Bigraph, S: Iterable[int], T: Iterable[int]
) -> tuple[Bigraph, list[int], list[int]]:
    """Restrict to X-vertices ``S`` and Y-vertices ``T``.

    Returns the subgraph together with the sorted index maps (new index ->
    old index) for both sides.
    """
    S = _check_x_indices(G, S)
    T = sorted(set(int(j) for j in T))
    if not S or not T:
        raise ValueError("induced subgraph needs nonempty S and T")
    for j in T:
        if not 0 <= j < G.ny:
            raise IndexError(f"Y-index {j} out of range (ny={G.ny})")
    return Bigraph(G.mult[np.ix_(S, T)]), S, T


def underlying_simple(G: Bigraph) -> Bigraph:
    return Bigraph((G.mult > 0).astype(np.int64))


# --- serialization ---------------------------------------------------------


def to_json(G: Bigraph) -> str:
    payload = {"nx": G.nx, "ny": G.ny, "edges": [list(e) for e in G.edges()]}
    return json.dumps(payload, sort_keys=True)


def _from_payload(payload: dict) -> Bigraph:
    try:
        nx, ny, edges = int(payload["nx"]), int(payload["ny"]), payload["edges"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from None
    return build(nx, ny, edges)


def from_json(text: str) -> Bigraph:
    return _from_payload(json.loads(text))


def to_text(G: Bigraph) -> str:
    lines = [f"{G.nx} {G.ny}"]
    lines.extend(f"{i} {j} {mu}" for i, j, mu in G.edges())
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Bigraph:
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("terse graph format must start with a line 'nx ny'")
    try:
        nx, ny = int(rows[0][0]), int(rows[0][1])
        edges = [tuple(int(v) for v in r) for r in rows[1:]]
    except ValueError:
        raise ValueError("terse graph format contains a non-integer token") from None
    return build(nx, ny, edges)


def parse_graph(text: str) -> Bigraph:
    """Parse either the JSON or the terse text format (auto-detected)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        payload = json.loads(stripped)
        if "graph" in payload and "nx" not in payload:
            payload = payload["graph"]
        return _from_payload(payload)
    return from_text(text)
