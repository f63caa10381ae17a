"""Structural classification: Hall's Condition, defect, tight sets, surplus.

A *tight set* is a nonempty proper ``S`` of X with ``|N(S)| = |S|``.  Given an
X-matching ``M``, ``S`` is tight exactly when every neighbor of ``S`` is
matched into ``S``.  Writing ``x -> M^{-1}(y)`` for each neighbor ``y`` of
``x`` gives a digraph on X whose closed sets avoiding "bad" vertices (those
adjacent to an unmatched Y-vertex, or reaching one) are precisely the tight
sets together with possibly X itself.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph import Bigraph, GraphParams, params
from .matching import maximum_matching

__all__ = [
    "StructureReport",
    "hall_check",
    "defect",
    "subset_defect",
    "is_x_surplus",
    "is_x_surplus_enumerated",
    "tight_sets",
    "tight_sets_enumerated",
    "is_elementary",
    "is_leafless",
    "has_pendant_4cycle",
    "slim_sets",
    "analyze",
    "diagnostics",
    "ENUM_LIMIT",
]

ENUM_LIMIT = 12


def _arr(G) -> np.ndarray:
    return G.mult if isinstance(G, Bigraph) else np.asarray(G, dtype=np.int64)


def _violator(arr: np.ndarray, mate: dict[int, int]) -> Optional[frozenset]:
    """Alternating reachability from an unmatched X-vertex, or None if none exists."""
    nx = arr.shape[0]
    free = [i for i in range(nx) if i not in mate]
    if not free:
        return None
    mate_y = {j: i for i, j in mate.items()}
    seen_x = {free[0]}
    seen_y: set[int] = set()
    queue = deque([free[0]])
    while queue:
        i = queue.popleft()
        for j in np.flatnonzero(arr[i]):
            j = int(j)
            if j in seen_y:
                continue
            seen_y.add(j)
            # a maximum matching leaves no augmenting path, so j is matched
            i2 = mate_y[j]
            if i2 not in seen_x:
                seen_x.add(i2)
                queue.append(i2)
    return frozenset(seen_x)


def hall_check(G) -> tuple[bool, Optional[frozenset]]:
    """Return ``(True, None)`` if Hall's Condition holds for X, else ``(False, S)``."""
    arr = _arr(G)
    mate = maximum_matching(arr)
    if len(mate) == arr.shape[0]:
        return True, None
    return False, _violator(arr, mate)


def defect(G) -> int:
    arr = _arr(G)
    return arr.shape[0] - len(maximum_matching(arr))


def _nbr_masks(arr: np.ndarray) -> list[int]:
    return [sum(1 << int(j) for j in np.flatnonzero(row)) for row in arr]


def _subset_neighborhood_sizes(arr: np.ndarray):
    """Yield ``(S_mask, |S|, |N(S)|)`` over all subsets of X (small nx only)."""
    nx = arr.shape[0]
    if nx > ENUM_LIMIT:
        raise ValueError(f"subset enumeration limited to nx <= {ENUM_LIMIT}")
    masks = _nbr_masks(arr)
    union = [0] * (1 << nx)
    for s in range(1, 1 << nx):
        low = (s & -s).bit_length() - 1
        union[s] = union[s & (s - 1)] | masks[low]
        yield s, bin(s).count("1"), bin(union[s]).count("1")


def _mask_to_set(s: int) -> frozenset:
    return frozenset(i for i in range(s.bit_length()) if (s >> i) & 1)


def subset_defect(G) -> int:
    """max(0, max_S |S| - |N(S)|) by direct enumeration."""
    best = 0
    for _, size, nsize in _subset_neighborhood_sizes(_arr(G)):
        best = max(best, size - nsize)
    return best


def tight_sets_enumerated(G) -> list[frozenset]:
    arr = _arr(G)
    full = (1 << arr.shape[0]) - 1
    return [_mask_to_set(s) for s, size, nsize in _subset_neighborhood_sizes(arr) if s != full and size == nsize]


def is_x_surplus_enumerated(G) -> bool:
    arr = _arr(G)
    full = (1 << arr.shape[0]) - 1
    return all(nsize > size for s, size, nsize in _subset_neighborhood_sizes(arr) if s != full)


def _surplus_witness(arr: np.ndarray) -> Optional[frozenset]:
    """Assuming an X-matching exists, return a tight set or None if X-surplus."""
    nx, ny = arr.shape
    for x in range(nx):
        rows = [i for i in range(nx) if i != x]
        for y in range(ny):
            cols = [j for j in range(ny) if j != y]
            sub = arr[np.ix_(rows, cols)]
            mate = maximum_matching(sub)
            if len(mate) < nx - 1:
                S = _violator(sub, mate)
                return frozenset(rows[i] for i in S)
    return None


def is_x_surplus(G) -> tuple[bool, Optional[frozenset]]:
    """X-surplus test; the witness is a Hall violator or a tight set."""
    arr = _arr(G)
    if arr.shape[0] < 2:
        raise ValueError("X-surplus test needs nx >= 2")
    ok, S = hall_check(arr)
    if not ok:
        return False, S
    W = _surplus_witness(arr)
    return W is None, W


def _closure_digraph(arr: np.ndarray):
    nx, ny = arr.shape
    mate = maximum_matching(arr)
    if len(mate) < nx:
        raise ValueError("tight sets are defined only when Hall's Condition holds")
    mate_y = {j: i for i, j in mate.items()}
    succ = [set() for _ in range(nx)]
    bad_seed = set()
    for i in range(nx):
        for j in np.flatnonzero(arr[i]):
            j = int(j)
            if j in mate_y:
                succ[i].add(mate_y[j])
            else:
                bad_seed.add(i)
    return succ, bad_seed


def _reach(succ: list[set], start: int) -> frozenset:
    seen = {start}
    stack = [start]
    while stack:
        for v in succ[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return frozenset(seen)


def tight_sets(G) -> tuple[Optional[frozenset], Optional[frozenset]]:
    """Return (a smallest tight set, a largest tight set), or (None, None).

    The smallest one is inclusion-minimal.  The largest one is the union of
    all tight sets when that union is proper; otherwise it is a tight set of
    maximum size.
    """
    arr = _arr(G)
    nx = arr.shape[0]
    if nx < 2:
        raise ValueError("tight sets need nx >= 2")
    succ, bad_seed = _closure_digraph(arr)
    reach = [_reach(succ, i) for i in range(nx)]
    good = [i for i in range(nx) if not (reach[i] & bad_seed)]
    proper = [reach[i] for i in good if len(reach[i]) < nx]
    if not proper:
        return None, None
    smallest = min(proper, key=lambda S: (len(S), sorted(S)))
    union = frozenset(good)
    if len(union) < nx:
        return smallest, union
    # every vertex is good: complements of closed sets are closed under
    # predecessors, so remove a smallest predecessor-closed set
    pred = [set() for _ in range(nx)]
    for i in range(nx):
        for v in succ[i]:
            pred[v].add(i)
    back = [_reach(pred, i) for i in range(nx)]
    cut = min((B for B in back if len(B) < nx), key=lambda B: (len(B), sorted(B)))
    return smallest, frozenset(range(nx)) - cut


def is_elementary(G) -> bool:
    """Square graph with a perfect matching such that every G-x-y has one too."""
    arr = _arr(G)
    nx, ny = arr.shape
    if nx != ny:
        raise ValueError("elementary test needs nx == ny")
    if len(maximum_matching(arr)) != nx:
        raise ValueError("elementary test needs a perfect matching")
    if nx == 1:
        return True
    return _surplus_witness(arr) is None


def is_leafless(G) -> bool:
    support = _arr(G) > 0
    return bool((support.sum(axis=1) >= 2).all() and (support.sum(axis=0) >= 2).all())


def has_pendant_4cycle(G) -> bool:
    """A 4-cycle with three vertices of degree 2 and one cut-vertex."""
    arr = _arr(G)
    nx, ny = arr.shape
    dx = arr.sum(axis=1)
    dy = arr.sum(axis=0)
    for x1, x2 in itertools.combinations(range(nx), 2):
        for y1, y2 in itertools.combinations(range(ny), 2):
            if not (arr[x1, y1] and arr[x1, y2] and arr[x2, y1] and arr[x2, y2]):
                continue
            degs = [dx[x1], dx[x2], dy[y1], dy[y2]]
            if sorted(degs)[:3] == [2, 2, 2] and max(degs) > 2:
                return True
    return False


def slim_sets(G) -> list[frozenset]:
    """Sets S with |N(S)| = |S|+1 where some y in N(S) having at least three
    neighbors has exactly one neighbor in S."""
    arr = _arr(G)
    support = arr > 0
    ydeg = support.sum(axis=0)
    out = []
    for s, size, nsize in _subset_neighborhood_sizes(arr):
        if nsize != size + 1:
            continue
        rows = [i for i in range(arr.shape[0]) if (s >> i) & 1]
        inside = support[rows].sum(axis=0)
        if ((ydeg >= 3) & (inside == 1)).any():
            out.append(_mask_to_set(s))
    return out


def _sorted(S) -> Optional[list[int]]:
    return None if S is None else sorted(S)


@dataclass
class StructureReport:
    hall: bool
    violator: Optional[frozenset]
    defect: int
    tight_min: Optional[frozenset]
    tight_max: Optional[frozenset]
    x_surplus: bool
    elementary: Optional[bool]
    leafless: bool
    params: GraphParams
    has_pendant_4cycle: Optional[bool] = None
    slim_sets: Optional[list] = None
    slim_checked: bool = False
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {
            "hall": self.hall,
            "violator": _sorted(self.violator),
            "defect": self.defect,
            "tight_min": _sorted(self.tight_min),
            "tight_max": _sorted(self.tight_max),
            "x_surplus": self.x_surplus,
            "elementary": self.elementary,
            "leafless": self.leafless,
            "params": self.params.to_dict(),
        }
        if self.has_pendant_4cycle is not None:
            d["has_pendant_4cycle"] = self.has_pendant_4cycle
            d["slim_checked"] = self.slim_checked
            d["slim_sets"] = None if self.slim_sets is None else [sorted(S) for S in self.slim_sets]
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def analyze(G: Bigraph, with_diagnostics: bool = False) -> StructureReport:
    arr = G.mult
    nx, ny = arr.shape
    mate = maximum_matching(arr)
    hall = len(mate) == nx
    violator = None if hall else _violator(arr, mate)
    tmin = tmax = None
    notes = []
    if nx == 1:
        # no nonempty proper subsets; surplus reduces to the Hall gate
        x_surplus = hall
        notes.append("nx=1: x_surplus reported as hall")
    elif hall:
        tmin, tmax = tight_sets(arr)
        x_surplus = tmin is None
    else:
        x_surplus = False
    if x_surplus and not hall:
        raise AssertionError("X-surplus without Hall's Condition")
    elementary = None
    if nx == ny and hall:
        elementary = x_surplus
    report = StructureReport(
        hall=hall,
        violator=violator,
        defect=nx - len(mate),
        tight_min=tmin,
        tight_max=tmax,
        x_surplus=x_surplus,
        elementary=elementary,
        leafless=is_leafless(arr),
        params=params(G),
        notes=notes,
    )
    if with_diagnostics:
        report.has_pendant_4cycle = has_pendant_4cycle(arr)
        if nx <= ENUM_LIMIT:
            report.slim_sets = slim_sets(arr)
            report.slim_checked = True
        else:
            report.notes.append(f"slim sets skipped (nx > {ENUM_LIMIT})")
    return report


def diagnostics(G: Bigraph) -> StructureReport:
    return analyze(G, with_diagnostics=True)
