"""Count-non-increasing transformations of bigraphs.

``normalize_lemma22`` brings a graph in which Hall's Condition holds, every
X-vertex has degree at least ``k`` and at least ``r`` distinct neighbors, into
the profile where every X-vertex has exactly ``r`` neighbors: one edge of
multiplicity ``k - r + 1`` and ``r - 1`` simple edges.  The number of
X-matchings never increases along the way.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import Bigraph
from .matching import count_x_matchings, maximum_matching
from .structure import hall_check, tight_sets

__all__ = ["ShiftStep", "normalize_lemma22", "in_profile", "apply_steps", "merge_y"]


@dataclass(frozen=True)
class ShiftStep:
    """One edit at X-vertex ``x``.

    ``shift`` moves ``copies`` copies of ``x from_y`` onto ``x to_y``;
    ``delete`` removes copies of ``x from_y``; ``add`` creates copies of
    ``x to_y``.  ``add`` only occurs when a tight set is found and the rows
    outside it are rewired.
    """

    x: int
    from_y: Optional[int]
    to_y: Optional[int]
    copies: int
    kind: str = "shift"

    def __post_init__(self) -> None:
        if self.copies < 1:
            raise ValueError("a step moves at least one copy")
        if self.kind == "shift" and (self.from_y is None or self.to_y is None or self.from_y == self.to_y):
            raise ValueError("a shift needs two distinct Y-endpoints")
        if self.kind not in ("shift", "delete", "add"):
            raise ValueError(f"unknown step kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {"x": self.x, "from_y": self.from_y, "to_y": self.to_y, "copies": self.copies, "kind": self.kind}


def _apply(a: np.ndarray, step: ShiftStep) -> None:
    if step.from_y is not None:
        if a[step.x, step.from_y] < step.copies:
            raise ValueError(f"step {step} takes more copies than present")
        a[step.x, step.from_y] -= step.copies
    if step.to_y is not None:
        a[step.x, step.to_y] += step.copies


def apply_steps(G: Bigraph, steps: list[ShiftStep]) -> Bigraph:
    """Replay a step log on ``G``."""
    a = G.mult.copy()
    for s in steps:
        _apply(a, s)
    return Bigraph(a)


def in_profile(G, k: int, r: int) -> bool:
    """Every X-row has exactly r positive entries, one equal to k-r+1, the rest 1."""
    a = G.mult if isinstance(G, Bigraph) else np.asarray(G)
    for row in a:
        vals = sorted(int(v) for v in row if v > 0)
        if vals != [1] * (r - 1) + [k - r + 1]:
            return False
    return True


def _x_count_without(a: np.ndarray, x: int, y: int) -> int:
    rows = [i for i in range(a.shape[0]) if i != x]
    cols = [j for j in range(a.shape[1]) if j != y]
    if not rows:
        return 1
    return count_x_matchings(a[np.ix_(rows, cols)])


def _trim(a: np.ndarray, k: int, steps: list, xmap, ymap) -> None:
    """Delete copies of the heaviest edge at rows of degree above k."""
    for x in range(a.shape[0]):
        while a[x].sum() > k:
            y = int(np.argmax(a[x]))
            if a[x, y] < 2:
                break
            take = int(min(a[x, y] - 1, a[x].sum() - k))
            a[x, y] -= take
            steps.append(ShiftStep(xmap[x], ymap[y], None, take, "delete"))


def _row_ok(row: np.ndarray, k: int, r: int) -> bool:
    vals = sorted(int(v) for v in row if v > 0)
    return vals == [1] * (r - 1) + [k - r + 1]


def _normalize(a: np.ndarray, k: int, r: int, steps: list, xmap, ymap) -> None:
    nx, ny = a.shape
    while True:
        _trim(a, k, steps, xmap, ymap)
        if all(_row_ok(row, k, r) for row in a):
            return
        S = None
        if nx >= 2:
            S, _ = tight_sets(a)
        if S is not None:
            _case1(a, sorted(S), k, r, steps, xmap, ymap)
            return
        _shift_once(a, k, r, steps, xmap, ymap)


def _case1(a: np.ndarray, S: list, k: int, r: int, steps: list, xmap, ymap) -> None:
    nx, ny = a.shape
    NS = sorted(int(j) for j in np.flatnonzero((a[S] > 0).any(axis=0)))
    block = a[np.ix_(S, NS)].copy()
    _normalize(block, k, r, steps, [xmap[i] for i in S], [ymap[j] for j in NS])
    a[np.ix_(S, NS)] = block
    # every X-matching saturates N(S) from S, so the edges from X-S into N(S)
    # are unused; keep one matched edge per remaining row
    mate = maximum_matching(a)
    for x in range(nx):
        if x in S:
            continue
        y = mate[x]
        target = np.zeros(ny, dtype=np.int64)
        target[y] = 1
        target[NS[0]] += k - r + 1
        for j in NS[1 : r - 1]:
            target[j] += 1
        for j in range(ny):
            d = int(target[j] - a[x, j])
            if d < 0:
                steps.append(ShiftStep(xmap[x], ymap[j], None, -d, "delete"))
            elif d > 0:
                steps.append(ShiftStep(xmap[x], None, ymap[j], d, "add"))
        a[x] = target


def _shift_once(a: np.ndarray, k: int, r: int, steps: list, xmap, ymap) -> None:
    for x in range(a.shape[0]):
        row = a[x]
        if _row_ok(row, k, r):
            continue
        nbrs = [int(j) for j in np.flatnonzero(row)]
        heavy = [j for j in nbrs if row[j] >= 2]
        light = [j for j in nbrs if row[j] == 1]
        pair = heavy[:2] if len(heavy) >= 2 else light[:2]
        if len(pair) < 2:
            raise AssertionError(f"row {x} has no shiftable pair: {row.tolist()}")
        y, y2 = pair
        s, s2 = _x_count_without(a, x, y), _x_count_without(a, x, y2)
        # move copies onto the endpoint whose removal leaves fewer matchings
        to, frm = (y, y2) if s <= s2 else (y2, y)
        copies = int(row[frm]) if len(nbrs) > r else int(row[frm]) - 1
        if copies < 1:
            raise AssertionError("shift would move no copies")
        a[x, frm] -= copies
        a[x, to] += copies
        steps.append(ShiftStep(xmap[x], ymap[frm], ymap[to], copies, "shift"))
        return
    raise AssertionError("no row to shift")


def normalize_lemma22(G: Bigraph, k: Optional[int] = None, r: Optional[int] = None) -> tuple[Bigraph, list[ShiftStep]]:
    """Return ``(G', steps)`` with ``G'`` in the target profile and at most as many X-matchings.

    ``k`` and ``r`` default to the minimum X-degree and the minimum number of
    distinct neighbors of an X-vertex.  With ``r = 1`` only one vertex can be
    brought into profile: a vertex with a single neighbor has its edge trimmed
    to multiplicity ``k``.
    """
    a = G.mult.copy()
    nx, ny = a.shape
    deg = a.sum(axis=1)
    distinct = (a > 0).sum(axis=1)
    k = int(deg.min()) if k is None else k
    r = int(distinct.min()) if r is None else r
    if r < 1 or k < r:
        raise ValueError(f"need k >= r >= 1, got k={k}, r={r}")
    if (deg < k).any() or (distinct < r).any():
        raise ValueError(f"graph is not in the class for k={k}, r={r}")
    if not hall_check(a)[0]:
        raise ValueError("Hall's Condition fails")
    steps: list[ShiftStep] = []
    if r == 1:
        single = np.flatnonzero(distinct == 1)
        if not len(single):
            raise ValueError("r = 1 needs an X-vertex with a single neighbor")
        x = int(single[0])
        y = int(np.flatnonzero(a[x])[0])
        if a[x, y] > k:
            steps.append(ShiftStep(x, y, None, int(a[x, y] - k), "delete"))
            a[x, y] = k
        return Bigraph(a), steps
    _normalize(a, k, r, steps, list(range(nx)), list(range(ny)))
    return Bigraph(a), steps


def merge_y(G: Bigraph, y1: int, y2: int) -> Bigraph:
    """Merge two Y-vertices; the sum column sits at the smaller index."""
    ny = G.ny
    if not (0 <= y1 < ny and 0 <= y2 < ny):
        raise IndexError(f"Y-index out of range for ny={ny}")
    if y1 == y2:
        raise ValueError("cannot merge a vertex with itself")
    lo, hi = sorted((y1, y2))
    a = G.mult.copy()
    a[:, lo] += a[:, hi]
    return Bigraph(np.delete(a, hi, axis=1))
