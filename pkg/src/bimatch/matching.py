"""Maximum matching size and exact counting of maximum matchings.

Parallel copies of an edge are distinct edges, so a matching using edges
``e_1..e_s`` contributes ``prod(mult[e_i])`` to the count.

Two scalar engines are provided and are kept deliberately independent:

* ``count_max_matchings`` reduces to X-matchings (universal Y-vertices for a
  deficient graph, all-ones padding rows for a rectangular one) and evaluates a
  Ryser permanent with Gray-code updates.
* ``count_max_matchings_oracle`` is a memoized recursion over
  ``(row, used-column set)``.

``batch_count`` is a vectorized counter for many graphs of one shape, used by
the exhaustive sweeps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .graph import Bigraph, add_universal_vertices

__all__ = [
    "MatchCount",
    "max_matching_size",
    "maximum_matching",
    "permanent",
    "count_x_matchings",
    "count_max_matchings",
    "count_max_matchings_oracle",
    "count_via_defect_reduction",
    "count_containing_edge",
    "batch_count",
    "RYSER_MAX",
    "ORACLE_MAX",
]

RYSER_MAX = 30
ORACLE_MAX = 8


@dataclass(frozen=True)
class MatchCount:
    size: int
    count: int

    def to_dict(self) -> dict:
        return {"alpha": self.size, "phi": str(self.count)}


def _as_array(G) -> np.ndarray:
    if isinstance(G, Bigraph):
        return G.mult
    arr = np.asarray(G, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("expected a 2-D multiplicity matrix")
    return arr


def _exact_div(a: int, b: int) -> int:
    q, rem = divmod(a, b)
    if rem:
        raise ArithmeticError(f"inexact division {a} / {b}")
    return q


# --- matching size ----------------------------------------------------------


def maximum_matching(G) -> dict[int, int]:
    """Return one maximum matching as a map X-index -> Y-index (Kuhn's algorithm)."""
    arr = _as_array(G)
    nx, ny = arr.shape
    adj = [list(np.flatnonzero(arr[i])) for i in range(nx)]
    mate_y = [-1] * ny

    def augment(i: int, seen: list[bool]) -> bool:
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if mate_y[j] < 0 or augment(mate_y[j], seen):
                mate_y[j] = i
                return True
        return False

    for i in range(nx):
        augment(i, [False] * ny)
    return {mate_y[j]: j for j in range(ny) if mate_y[j] >= 0}


def max_matching_size(G) -> int:
    return len(maximum_matching(G))


# --- permanent engine -------------------------------------------------------


def permanent(M) -> int:
    """Permanent of a square non-negative integer matrix (Ryser, Gray code)."""
    arr = np.asarray(M, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {arr.shape}")
    d = arr.shape[0]
    if d == 0:
        return 1
    if d > RYSER_MAX:
        raise ValueError(f"matrix dimension {d} exceeds Ryser limit {RYSER_MAX}")
    rows = [[int(v) for v in arr[i]] for i in range(d)]
    cols = [[rows[i][j] for i in range(d)] for j in range(d)]
    sums = [0] * d
    in_set = [False] * d
    total = 0
    sign = -1 if d % 2 else 1  # (-1)^(d-|S|) with |S| = 0
    for g in range(1, 1 << d):
        j = (g & -g).bit_length() - 1
        col = cols[j]
        if in_set[j]:
            in_set[j] = False
            for i in range(d):
                sums[i] -= col[i]
        else:
            in_set[j] = True
            for i in range(d):
                sums[i] += col[i]
        sign = -sign
        prod = 1
        for s in sums:
            if not s:
                prod = 0
                break
            prod *= s
        if prod:
            total += sign * prod
    return total


def count_x_matchings(G) -> int:
    """Number of matchings covering every X-vertex (multiplicity-weighted)."""
    arr = _as_array(G)
    nx, ny = arr.shape
    if ny < nx or max_matching_size(arr) != nx:
        raise ValueError("graph has no X-matching")
    t = ny - nx
    square = np.vstack([arr, np.ones((t, ny), dtype=np.int64)]) if t else arr
    if ny > RYSER_MAX:
        if nx <= ORACLE_MAX and ny <= ORACLE_MAX:
            return count_max_matchings_oracle(arr).count
        raise ValueError(f"{nx}x{ny} exceeds counting limits")
    return _exact_div(permanent(square), factorial(t))


def count_max_matchings(G) -> MatchCount:
    """Exact (alpha', Phi) via the defect reduction and the permanent engine."""
    arr = _as_array(G)
    if arr.shape[0] > arr.shape[1]:
        # counting is symmetric in the two parts; work on the wider orientation
        arr = arr.T
    nx, ny = arr.shape
    if nx == 0 or not arr.any():
        return MatchCount(0, 1)
    alpha = max_matching_size(arr)
    p = nx - alpha
    if p == 0:
        return MatchCount(alpha, count_x_matchings(arr))
    widened = np.hstack([arr, np.ones((nx, p), dtype=np.int64)])
    return MatchCount(alpha, _exact_div(count_x_matchings(widened), factorial(p)))


def count_via_defect_reduction(G: Bigraph) -> MatchCount:
    """Count through ``add_universal_vertices`` without reorienting the graph."""
    alpha = max_matching_size(G)
    p = G.nx - alpha
    if G.m == 0:
        return MatchCount(0, 1)
    Gp = add_universal_vertices(G, p)
    return MatchCount(alpha, _exact_div(count_x_matchings(Gp), factorial(p)))


# --- independent oracle -----------------------------------------------------


def count_max_matchings_oracle(G) -> MatchCount:
    """Exhaustive memoized recursion; independent of the permanent engine."""
    arr = _as_array(G)
    nx, ny = arr.shape
    table = tuple(tuple(int(v) for v in arr[i]) for i in range(nx))

    @lru_cache(maxsize=None)
    def best(i: int, used: int) -> tuple[int, int]:
        if i == nx:
            return 0, 1
        size, count = best(i + 1, used)
        for j in range(ny):
            mu = table[i][j]
            if mu and not (used >> j) & 1:
                s, c = best(i + 1, used | (1 << j))
                s += 1
                if s > size:
                    size, count = s, mu * c
                elif s == size:
                    count += mu * c
        return size, count

    size, count = best(0, 0)
    return MatchCount(size, count)


# --- per-edge counts --------------------------------------------------------


def count_containing_edge(G: Bigraph, i: int, j: int) -> int:
    """Number of maximum matchings of ``G`` that use some copy of ``x_i y_j``."""
    arr = _as_array(G)
    if not (0 <= i < arr.shape[0] and 0 <= j < arr.shape[1]):
        raise IndexError(f"({i}, {j}) out of range")
    mu = int(arr[i, j])
    if mu < 1:
        raise ValueError(f"({i}, {j}) is not an edge")
    alpha = max_matching_size(arr)
    rest = np.delete(np.delete(arr, i, axis=0), j, axis=1)
    sub = count_max_matchings(rest) if rest.size else MatchCount(0, 1)
    if sub.size != alpha - 1:
        return 0
    return mu * sub.count


# --- vectorized batch counter -----------------------------------------------


@lru_cache(maxsize=None)
def _partial_injections(nx: int, ny: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """For each size s >= 1, index arrays (rows, cols) of shape (#injections, s)."""
    out = []
    for s in range(1, min(nx, ny) + 1):
        rs, cs = [], []
        for rows in itertools.combinations(range(nx), s):
            for cols in itertools.permutations(range(ny), s):
                rs.append(rows)
                cs.append(cols)
        out.append((np.array(rs, dtype=np.intp).reshape(-1, s), np.array(cs, dtype=np.intp).reshape(-1, s)))
    return tuple(out)


def batch_count(mats: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (alpha', Phi) for a stack of same-shape matrices.

    ``mats`` has shape ``(N, nx, ny)``.  Counts are int64, so this is meant for
    small graphs (the sweeps); the scalar engines cross-check it in tests.
    """
    mats = np.asarray(mats, dtype=np.int64)
    N, nx, ny = mats.shape
    alpha = np.zeros(N, dtype=np.int64)
    phi = np.ones(N, dtype=np.int64)
    for s, (rs, cs) in enumerate(_partial_injections(nx, ny), start=1):
        prod = mats[:, rs[:, 0], cs[:, 0]]
        for q in range(1, s):
            prod = prod * mats[:, rs[:, q], cs[:, q]]
        total = prod.sum(axis=1)
        hit = total > 0
        alpha[hit] = s
        phi[hit] = total[hit]
    return alpha, phi
