"""Lower bounds on the number of maximum matchings, and their applicability.

Each ``bound_*`` function is a pure formula of integer parameters and raises
``ValueError`` outside its domain.  ``applicable_bounds`` recomputes every
hypothesis from a concrete graph and evaluates the matching bounds.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Optional, Union

import numpy as np

from .graph import Bigraph, params
from .matching import count_max_matchings, count_containing_edge
from .structure import (
    ENUM_LIMIT,
    analyze,
    is_leafless,
    is_x_surplus,
    _subset_neighborhood_sizes,
    _mask_to_set,
)

__all__ = [
    "THEOREMS",
    "BoundEntry",
    "BoundReport",
    "BoundViolation",
    "bound_main",
    "bound_main_best",
    "bound_mhall",
    "bound_defect",
    "bound_y2",
    "bound_4k",
    "bound_2kt",
    "covers_2kt",
    "bound_2kt_refined",
    "bound_nky1",
    "bound_leafmain",
    "bound_surplus",
    "bound_case1",
    "bound_t_plus_1",
    "bound_liu_liu",
    "bound_m_nrtb",
    "bound_composed",
    "bound_egorychev_falikman",
    "applicable_bounds",
    "check_edge_t_plus_1",
]

Number = Union[int, Fraction]

THEOREMS = {
    "main": "degree k and r distinct neighbors on X",
    "mhall": "M. Hall falling-factorial bound (k = r)",
    "defect": "deficient graphs via universal vertices",
    "y2": "Hall, degree k on X, Y-degree condition",
    "4k": "Hall, degree k on X, r >= 2, Y-degree >= 2",
    "2kt": "Hall with t = |Y|-|X| excess vertices",
    "2kt_refined": "excess-vertex bound with the single (3,3,1) exception",
    "nky1": "at least three X-vertices, excess t >= 1, Y-degree >= 1",
    "leafmain": "leafless X-surplus graphs",
    "surplus": "elementary graphs: m - v + 2",
    "t_plus_1": "Hall without isolated vertices: t + 1",
    "case1": "Hall with a tight set, r neighbors at every vertex",
    "liu_liu_1": "simple, positive surplus, connected: |X| + 1",
    "liu_liu_2": "simple, positive surplus, connected: m + (|X|-1)(t-2)",
    "liu_liu_3": "simple, positive surplus, t = 1, min degree >= 2: 2m - 2|Y|",
    "composed": "defect block times leafless remainder",
    "egorychev_falikman": "k-regular square graphs: n!(k/n)^n",
}


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _falling(a: int, length: int) -> int:
    return prod(a - i for i in range(length))


# --- formulas ---------------------------------------------------------------


def bound_main(n: int, k: int, r: int) -> int:
    _need(n >= 1 and k >= r >= 1, f"bound_main needs n >= 1 and k >= r >= 1, got {(n, k, r)}")
    hi = factorial(r) * (k - r + 1)
    lo = (r + n * (k - r)) * prod(r - i for i in range(1, n))
    if n == r:
        assert hi == lo, (n, k, r)
    return hi if n >= r else lo


def bound_main_best(n: int, k: int, r: int) -> int:
    """Strongest instance of ``bound_main`` over admissible ``r' <= r``."""
    return max(bound_main(n, k, rr) for rr in range(1, min(r, k) + 1))


def bound_mhall(n: int, k: int) -> int:
    _need(n >= 1 and k >= 1, "bound_mhall needs n, k >= 1")
    return _falling(k, min(n, k))


def bound_defect(k: int, r: int, p: int) -> int:
    _need(k >= r >= 1 and p >= 1, f"bound_defect needs k >= r >= 1 and p >= 1, got {(k, r, p)}")
    return (k - r + 1) * (factorial(r + p) // factorial(p))


def bound_y2(n: int, k: int) -> int:
    _need(n >= 2 and k >= 2, "bound_y2 needs n, k >= 2")
    if n == 2 or k == 2:
        return 2 * k - 2
    if k == 3:
        return 2 * k - 1
    return 2 * k


def bound_4k(n: int, k: int) -> int:
    _need(n >= 2 and k >= 2, "bound_4k needs n, k >= 2")
    return min(n * (k - 2) + 2, 4 * k - 4)


def bound_2kt(n: int, k: int, t: int, deltaY: int) -> int:
    """Maximum over the applicable lines of the excess-vertex bound.

    The ``k(t+1)`` line and the lines for ``k = 3`` and ``k >= 4`` are read
    with ``|X| >= 3``; at ``|X| = 2`` only the dedicated two-vertex line holds
    (``[[0,1,1],[1,0,1]]`` has ``Phi = 3 < k(t+1) = 4``).  With ``t = 0`` the
    ``k(t+1) = k`` line is kept for every ``n``; it follows from ``bound_main``.
    """
    _need(n >= 2 and t >= 0 and k >= 1 and deltaY >= 1, f"bound_2kt parameter violation {(n, k, t, deltaY)}")
    vals = []
    if n >= 3 or t == 0:
        vals.append(k * (t + 1))
    if deltaY >= 2:
        if n == 2:
            vals.append((2 * k - t - 2) * (t + 1))
        elif k == 3:
            vals.append(2 * k * (t + 1) - 1)
        elif k >= 4:
            vals.append(2 * k * (t + 1))
    _need(bool(vals), f"no line covers |X| = 2, t >= 1, deltaY = 1: {(n, k, t, deltaY)}")
    return max(vals)


def covers_2kt(n: int, t: int, deltaY: int) -> bool:
    """Whether some line of ``bound_2kt`` applies."""
    return n >= 3 or t == 0 or deltaY >= 2


def bound_2kt_refined(n: int, k: int, t: int, deltaY: int) -> int:
    """Like ``bound_2kt`` but with ``2k(t+1)`` for every ``k`` once ``n >= 3`` and
    ``t >= 1``, except ``(n, k, t) = (3, 3, 1)`` where the value is ``11``."""
    base = bound_2kt(n, k, t, deltaY)
    if n >= 3 and t >= 1 and deltaY >= 2:
        refined = 2 * k * (t + 1) - (1 if (n, k, t) == (3, 3, 1) else 0)
        return max(base, refined)
    return base


def bound_nky1(n: int, k: int, t: int) -> int:
    _need(n >= 3 and k >= 1 and t >= 1, "bound_nky1 needs n >= 3, k >= 1, t >= 1")
    return k * (t + 1)


def bound_leafmain(n: int, t: int, b: int) -> int:
    _need(n >= 2 and t >= 0 and b >= 0, f"bound_leafmain needs n >= 2, t >= 0, b >= 0, got {(n, t, b)}")
    return ((n - 1) * t + 2 + b) * (t + 1)


def bound_surplus(m: int, v: int) -> int:
    _need(m >= v - 1, "bound_surplus needs m >= v - 1")
    return m - v + 2


def bound_case1(k: int, r: int, t: int) -> int:
    _need(k >= r >= 1 and t >= 0, f"bound_case1 needs k >= r >= 1 and t >= 0, got {(k, r, t)}")
    return factorial(r) * (k - r + 1) * (factorial(r + t) // factorial(t))


def bound_t_plus_1(t: int) -> int:
    _need(t >= 0, "bound_t_plus_1 needs t >= 0")
    return t + 1


def bound_liu_liu(variant: int, n: int = 0, m: int = 0, ny: int = 0, t: int = 1) -> int:
    _need(t >= 1, "bound_liu_liu needs t >= 1")
    if variant == 1:
        return n + 1
    if variant == 2:
        return m + (n - 1) * (t - 2)
    if variant == 3:
        _need(t == 1, "the third line needs t = 1")
        return 2 * m - 2 * ny
    raise ValueError(f"unknown variant {variant}")


def bound_m_nrtb(n: int, r: int, t: int, b: int) -> int:
    _need(r >= 1 and n >= 2 * r and t >= 0, f"bound_m_nrtb needs n >= 2r, r >= 1, t >= 0, got {(n, r, t)}")
    _need(b >= (r - 1) * (n - 2 * r), "M_{n,r,t,b} does not exist when b < (r-1)(n-2r)")
    head = factorial(r - 1) * (factorial(r + t - 1) // factorial(t))
    return head * (b + r * (t + 1) + (r - 1) * (n - 2 * r + 1) * (r + t - 2))


def bound_composed(n: int, t: int, r: int, k: int, p: int, n_prime: int, b_prime: int) -> int:
    """``(k-r+1)(r+p)!/p! * [(n'-1)(t+p)+2+b'](t+p+1)``.

    Only the arithmetic domain is checked here; the graph-level hypotheses
    (n, t, r > 1, a leafless X-surplus remainder) are enforced by
    ``applicable_bounds``.
    """
    _need(k >= r >= 1 and p >= 0 and t >= 0 and n_prime >= 1 and b_prime >= 0,
          f"bound_composed parameter violation {(n, t, r, k, p, n_prime, b_prime)}")
    block = (k - r + 1) * (factorial(r + p) // factorial(p))
    return block * ((n_prime - 1) * (t + p) + 2 + b_prime) * (t + p + 1)


def bound_egorychev_falikman(n: int, k: int) -> Fraction:
    _need(n >= 1 and k >= 1, "bound_egorychev_falikman needs n, k >= 1")
    return Fraction(factorial(n) * k**n, n**n)


# --- per-graph dispatch -----------------------------------------------------


class BoundViolation(AssertionError):
    """A computed count fell below an applicable lower bound."""


@dataclass
class BoundEntry:
    theorem: str
    applicable: bool
    bound: Optional[Number] = None
    hypothesis_failures: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def to_dict(self, phi: Optional[int] = None) -> dict:
        d = {
            "theorem": self.theorem,
            "applicable": self.applicable,
            "bound": None if self.bound is None else str(self.bound),
            "hypothesis_failures": list(self.hypothesis_failures),
        }
        if self.flags:
            d["flags"] = list(self.flags)
        if phi is not None and self.applicable:
            d["gap"] = str(phi - self.bound)
            d["equality"] = phi == self.bound
        return d


@dataclass
class BoundReport:
    entries: list
    phi: Optional[int] = None
    alpha: Optional[int] = None

    def get(self, theorem: str) -> BoundEntry:
        for e in self.entries:
            if e.theorem == theorem:
                return e
        raise KeyError(theorem)

    @property
    def violations(self) -> list:
        if self.phi is None:
            return []
        return [e for e in self.entries if e.applicable and self.phi < e.bound]

    def to_dict(self) -> dict:
        return {
            "phi": None if self.phi is None else str(self.phi),
            "alpha": self.alpha,
            "entries": [e.to_dict(self.phi) for e in self.entries],
            "violations": [e.theorem for e in self.violations],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def _rows(self) -> list:
        rows = []
        for e in self.entries:
            applicable = e.applicable
            bound = "" if e.bound is None else str(e.bound)
            phi = "" if self.phi is None else str(self.phi)
            if applicable and self.phi is not None:
                gap, eq = str(self.phi - e.bound), "yes" if self.phi == e.bound else "no"
            else:
                gap, eq = "", ""
            rows.append([e.theorem, "yes" if applicable else "no", bound, phi, gap, eq])
        return rows

    HEADER = ["theorem", "applicable", "bound", "phi", "gap", "equality"]

    def to_markdown(self) -> str:
        lines = ["| " + " | ".join(self.HEADER) + " |", "|" + "---|" * len(self.HEADER)]
        lines += ["| " + " | ".join(r) + " |" for r in self._rows()]
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.HEADER)
        w.writerows(self._rows())
        return buf.getvalue()


def _connected(arr: np.ndarray) -> bool:
    nx, ny = arr.shape
    seen_x, seen_y = {0}, set()
    stack = [("x", 0)]
    while stack:
        side, v = stack.pop()
        if side == "x":
            for j in np.flatnonzero(arr[v]):
                if int(j) not in seen_y:
                    seen_y.add(int(j))
                    stack.append(("y", int(j)))
        else:
            for i in np.flatnonzero(arr[:, v]):
                if int(i) not in seen_x:
                    seen_x.add(int(i))
                    stack.append(("x", int(i)))
    return len(seen_x) == nx and len(seen_y) == ny


def _largest_max_defect_set(arr: np.ndarray, p: int) -> frozenset:
    best, best_size = 0, -1
    for s, size, nsize in _subset_neighborhood_sizes(arr):
        if size - nsize == p and size > best_size:
            best, best_size = s, size
    return _mask_to_set(best) if best_size > 0 else frozenset()


def _gate(entry: BoundEntry, cond: bool, why: str) -> None:
    if not cond:
        entry.applicable = False
        entry.hypothesis_failures.append(why)


def applicable_bounds(G: Bigraph, compute_phi: bool = True, check: bool = False) -> BoundReport:
    """Evaluate every bound whose hypotheses ``G`` satisfies.

    With ``check=True`` a ``BoundViolation`` is raised if the computed count
    is below an applicable bound.
    """
    arr = G.mult
    rep = analyze(G)
    P = params(G)
    n, t, k, r, dY = P.n, P.t, P.k, P.r, P.deltaY
    support = arr > 0
    r_all = int(min(support.sum(axis=1).min(), support.sum(axis=0).min()))
    isolated = r_all == 0
    entries = []

    def entry(tid: str) -> BoundEntry:
        e = BoundEntry(tid, True)
        entries.append(e)
        return e

    e = entry("main")
    _gate(e, k >= 1, "some X-vertex is isolated")
    if e.applicable:
        e.bound = bound_main_best(n, k, r)

    e = entry("mhall")
    _gate(e, r >= 1, "some X-vertex is isolated")
    if e.applicable:
        e.bound = bound_mhall(n, r)

    e = entry("defect")
    _gate(e, rep.defect > 0, "no defect (Hall's Condition holds)")
    _gate(e, k >= 1, "some X-vertex is isolated")
    if e.applicable:
        e.bound = max(bound_defect(k, rr, rep.defect) for rr in range(1, r + 1))

    e = entry("y2")
    _gate(e, n >= 2, "|X| < 2")
    _gate(e, rep.hall, "Hall's Condition fails")
    _gate(e, dY >= 1, "some Y-vertex is isolated")
    _gate(e, t > 0 or dY >= 2, "|Y| = |X| and min Y-degree < 2")
    _gate(e, k >= 2, "min X-degree < 2")
    if e.applicable:
        e.bound = bound_y2(n, k)

    e = entry("4k")
    _gate(e, n >= 2 and k >= 2, "needs |X| >= 2 and min X-degree >= 2")
    _gate(e, dY >= 2, "min Y-degree < 2")
    _gate(e, rep.hall, "Hall's Condition fails")
    _gate(e, r >= 2, "some X-vertex has fewer than 2 neighbors")
    if e.applicable:
        e.bound = bound_4k(n, k)

    for tid in ("2kt", "2kt_refined"):
        e = entry(tid)
        _gate(e, n >= 2, "|X| < 2")
        _gate(e, rep.hall, "Hall's Condition fails")
        _gate(e, dY >= 1, "some Y-vertex is isolated")
        _gate(e, k >= 1, "some X-vertex is isolated")
        _gate(e, n != 2 or t == 0 or dY >= 2, "no line covers |X| = 2, t >= 1, min Y-degree 1")
        if e.applicable:
            e.bound = (bound_2kt if tid == "2kt" else bound_2kt_refined)(n, k, t, dY)

    e = entry("nky1")
    _gate(e, n >= 3, "|X| < 3")
    _gate(e, rep.hall, "no X-matching")
    _gate(e, dY >= 1, "some Y-vertex is isolated")
    _gate(e, t >= 1, "t < 1")
    _gate(e, k >= 1, "some X-vertex is isolated")
    if e.applicable:
        e.bound = bound_nky1(n, k, t)

    e = entry("leafmain")
    _gate(e, n >= 2, "|X| < 2")
    _gate(e, rep.leafless, "not leafless")
    _gate(e, rep.x_surplus, "not X-surplus")
    _gate(e, t >= 0, "t < 0")
    if e.applicable:
        e.bound = bound_leafmain(n, t, P.b)

    e = entry("surplus")
    _gate(e, bool(rep.elementary), "not elementary")
    if e.applicable:
        e.bound = bound_surplus(P.m, n + P.ny)

    e = entry("t_plus_1")
    _gate(e, rep.hall, "Hall's Condition fails")
    _gate(e, not isolated, "isolated vertex present")
    if e.applicable:
        e.bound = bound_t_plus_1(t)

    e = entry("case1")
    _gate(e, rep.hall, "Hall's Condition fails")
    _gate(e, rep.tight_min is not None, "no tight set")
    _gate(e, r_all >= 1, "isolated vertex present")
    if e.applicable:
        e.bound = max(bound_case1(k, rr, t) for rr in range(1, r_all + 1))

    simple = bool((arr <= 1).all())
    positive = rep.x_surplus and int(support.any(axis=0).sum()) > n
    connected = _connected(arr)
    min_deg = int(min(arr.sum(axis=1).min(), arr.sum(axis=0).min()))
    for variant in (1, 2, 3):
        e = entry(f"liu_liu_{variant}")
        _gate(e, simple, "not simple")
        _gate(e, positive, "no positive surplus")
        _gate(e, t >= 1, "t < 1")
        if variant in (1, 2):
            _gate(e, connected, "not connected")
        else:
            _gate(e, t == 1, "t != 1")
            _gate(e, min_deg >= 2, "min degree < 2")
        if variant == 2:
            e.flags.append("suspect hypothesis: the source repeats the connectivity condition for this line")
        if e.applicable:
            e.bound = bound_liu_liu(variant, n=n, m=P.m, ny=P.ny, t=t)

    e = entry("composed")
    _gate(e, n >= 2 and t >= 2 and r >= 2, "needs n, t, r > 1")
    _gate(e, n <= ENUM_LIMIT, f"|X| > {ENUM_LIMIT}")
    if e.applicable:
        p = rep.defect
        S = _largest_max_defect_set(arr, p)
        rest_x = [i for i in range(n) if i not in S]
        NS = set(np.flatnonzero(support[sorted(S)].any(axis=0))) if S else set()
        rest_y = [j for j in range(P.ny) if j not in NS]
        _gate(e, bool(S), "the largest maximum-defect set is empty")
        _gate(e, len(rest_x) >= 2, "remainder has fewer than 2 X-vertices")
        if e.applicable:
            sub = arr[np.ix_(rest_x, rest_y)]
            _gate(e, is_leafless(sub), "remainder not leafless")
            _gate(e, is_x_surplus(sub)[0], "remainder not X-surplus")
            if e.applicable:
                b_prime = int(sub.sum()) - 2 * len(rest_y)
                e.bound = bound_composed(n, t, r, k, p, len(rest_x), b_prime)
                e.flags.append(f"S={sorted(S)}, n'={len(rest_x)}, b'={b_prime}")

    e = entry("egorychev_falikman")
    dx, dy = arr.sum(axis=1), arr.sum(axis=0)
    regular = P.n == P.ny and len(set(dx.tolist()) | set(dy.tolist())) == 1
    _gate(e, regular, "not a regular square graph")
    _gate(e, k >= 1, "no edges")
    if e.applicable:
        e.bound = bound_egorychev_falikman(n, int(dx[0]))

    report = BoundReport(entries)
    if compute_phi:
        mc = count_max_matchings(G)
        report.phi, report.alpha = mc.count, mc.size
        if check and report.violations:
            bad = ", ".join(f"{v.theorem} (bound {v.bound})" for v in report.violations)
            raise BoundViolation(f"Phi={report.phi} below {bad} for {G!r}")
    return report


def check_edge_t_plus_1(G: Bigraph) -> tuple[bool, Optional[tuple[int, int]]]:
    """In a leafless X-surplus graph each edge copy lies in >= t+1 X-matchings.

    Returns (holds, first failing edge).  Raises if the hypotheses fail.
    """
    rep = analyze(G)
    if not (rep.leafless and rep.x_surplus):
        raise ValueError("needs a leafless X-surplus graph")
    t = rep.params.t
    for i, j, mu in G.edges():
        if count_containing_edge(G, i, j) // mu < t + 1:
            return False, (i, j)
    return True, None
