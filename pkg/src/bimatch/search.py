"""Exhaustive enumeration of small bigraphs and verification of the bounds.

The space of ``nx x ny`` multiplicity matrices with entries in ``0..max_mult``
is split into partitions by the first matrix row.  Each partition is scanned
in vectorized chunks: cheap support and degree features first, then the
expensive ones (counts, canonical keys) only on the survivors.  Partitions are
independent, so they can be farmed out to worker processes and merged in
partition order.

Isomorphism classes are taken under independent row and column permutations
(the parts X and Y are never swapped).  The canonical form of a matrix is its
lexicographically smallest row/column permutation; every class has a
representative with non-decreasing rows, so with deduplication only such
matrices are examined.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from math import factorial
from typing import Iterator, Optional, Sequence

import numpy as np

from . import bounds as B
from .bounds import applicable_bounds
from .graph import Bigraph
from .matching import batch_count, count_max_matchings, count_max_matchings_oracle
from .structure import analyze, tight_sets_enumerated

__all__ = [
    "ClassConstraint",
    "VerifyReport",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "CRITERION_THEOREMS",
    "ALL_THEOREMS",
    "canonical_form",
    "canonical_keys",
    "batch_features",
    "theorem_arrays",
    "enumerate_class",
    "verify_theorem",
    "verify_all",
    "find_min_phi",
    "check_extremal_structure",
    "markdown_table",
    "extremal_structure_reasons",
]

DEFAULT_BUDGET = 10**8
CANON_MAX_NY = 6
CHUNK = 1 << 17

CRITERION_THEOREMS = ("main", "y2", "4k", "2kt", "2kt_refined", "leafmain", "surplus", "t_plus_1", "case1")
ALL_THEOREMS = tuple(B.THEOREMS)
_SCALAR_THEOREMS = {"composed", "egorychev_falikman"}


class BudgetExceeded(ValueError):
    pass


def _pair(v) -> tuple[int, int]:
    if isinstance(v, int):
        return (v, v)
    lo, hi = v
    return int(lo), int(hi)


@dataclass
class ClassConstraint:
    """A hypothesis class of small bigraphs; ``None`` flags are unconstrained."""

    nx: tuple = (1, 3)
    ny: tuple = (1, 4)
    max_mult: int = 3
    hall: Optional[bool] = None
    x_surplus: Optional[bool] = None
    leafless: Optional[bool] = None
    elementary: Optional[bool] = None
    k_min: int = 0
    deltaY_min: int = 0
    r_min: int = 0
    rY_min: int = 0
    t: Optional[int] = None
    b: Optional[int] = None
    budget: int = DEFAULT_BUDGET

    def __post_init__(self) -> None:
        self.nx = _pair(self.nx)
        self.ny = _pair(self.ny)
        if self.nx[0] < 1 or self.ny[0] < 1 or self.nx[0] > self.nx[1] or self.ny[0] > self.ny[1]:
            raise ValueError(f"empty or invalid size ranges nx={self.nx} ny={self.ny}")
        if self.max_mult < 1:
            raise ValueError("max_mult must be at least 1")

    def shapes(self) -> list[tuple[int, int]]:
        out = []
        for nx in range(self.nx[0], self.nx[1] + 1):
            for ny in range(self.ny[0], self.ny[1] + 1):
                if self.t is not None and ny - nx != self.t:
                    continue
                if self.k_min > self.max_mult * ny or self.deltaY_min > self.max_mult * nx:
                    continue
                if self.r_min > ny or self.rY_min > nx:
                    continue
                out.append((nx, ny))
        return out

    def size(self) -> int:
        return sum((self.max_mult + 1) ** (nx * ny) for nx, ny in self.shapes())

    def check_budget(self) -> None:
        if self.size() > self.budget:
            raise BudgetExceeded(f"class has {self.size()} labeled matrices, budget is {self.budget}")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["nx"], d["ny"] = list(self.nx), list(self.ny)
        return d


# --- canonical forms --------------------------------------------------------


def canonical_form(G) -> Bigraph:
    """Lexicographically smallest matrix under row and column permutations."""
    arr = G.mult if isinstance(G, Bigraph) else np.asarray(G, dtype=np.int64)
    nx, ny = arr.shape
    if ny > 8:
        raise ValueError("canonical form is brute force; ny <= 8 required")
    rows = arr.tolist()
    best = None
    for perm in itertools.permutations(range(ny)):
        cand = sorted(tuple(row[j] for j in perm) for row in rows)
        if best is None or cand < best:
            best = cand
    return Bigraph(best)


@lru_cache(maxsize=None)
def _col_perms(ny: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(ny))), dtype=np.intp)


def _keys_fit(nx: int, ny: int, base: int) -> bool:
    return ny <= CANON_MAX_NY and base ** (nx * ny) < 2**62


def canonical_keys(mats: np.ndarray, base: int) -> np.ndarray:
    """int64 canonical key of each matrix (digits in ``0..base-1``)."""
    N, nx, ny = mats.shape
    if not _keys_fit(nx, ny, base):
        raise ValueError("canonical keys do not fit in int64 for this shape")
    wcol = base ** np.arange(ny - 1, -1, -1, dtype=np.int64)
    wrow = (base**ny) ** np.arange(nx - 1, -1, -1, dtype=np.int64)
    best = None
    for perm in _col_perms(ny):
        codes = mats[:, :, perm] @ wcol
        codes.sort(axis=1)
        key = codes @ wrow
        best = key if best is None else np.minimum(best, key)
    return best


def decode_key(key: int, nx: int, ny: int, base: int) -> list[list[int]]:
    digits = []
    key = int(key)
    for _ in range(nx * ny):
        key, d = divmod(key, base)
        digits.append(d)
    digits.reverse()
    return [digits[i * ny : (i + 1) * ny] for i in range(nx)]


# --- vectorized features ----------------------------------------------------


@lru_cache(maxsize=None)
def _popcount_table(bits: int) -> np.ndarray:
    return np.array([bin(v).count("1") for v in range(1 << bits)], dtype=np.int64)


def _subset_sizes(nx: int) -> np.ndarray:
    return np.array([bin(s).count("1") for s in range(1 << nx)], dtype=np.int64)


def _stage1(mats: np.ndarray) -> dict:
    """Degree and support features (cheap)."""
    N, nx, ny = mats.shape
    supp = mats > 0
    dx = mats.sum(axis=2)
    dy = mats.sum(axis=1)
    rx = supp.sum(axis=2)
    ry = supp.sum(axis=1)
    F = {
        "nx": nx,
        "ny": ny,
        "t": ny - nx,
        "k": dx.min(axis=1),
        "deltaY": dy.min(axis=1),
        "r": rx.min(axis=1),
        "rY": ry.min(axis=1),
        "m": dx.sum(axis=1),
    }
    F["b"] = F["m"] - 2 * ny
    F["r_all"] = np.minimum(F["r"], F["rY"])
    F["min_deg"] = np.minimum(F["k"], F["deltaY"])
    F["simple"] = (mats <= 1).all(axis=(1, 2))
    F["leafless"] = (F["r"] >= 2) & (F["rY"] >= 2)
    F["regular"] = (dx.max(axis=1) == F["k"]) & (dy.max(axis=1) == F["k"]) & (dy.min(axis=1) == F["k"]) & (F["k"] >= 1) if nx == ny else np.zeros(N, bool)

    masks = (supp.astype(np.int64) << np.arange(ny, dtype=np.int64)).sum(axis=2)
    pop = _popcount_table(ny)
    sizes = _subset_sizes(nx)
    union = np.zeros((N, 1 << nx), dtype=np.int64)
    for s in range(1, 1 << nx):
        low = (s & -s).bit_length() - 1
        union[:, s] = union[:, s & (s - 1)] | masks[:, low]
    nsz = pop[union]
    surplus = nsz - sizes  # column 0 is the empty set
    full = (1 << nx) - 1
    F["hall"] = (surplus[:, 1:] >= 0).all(axis=1)
    F["defect"] = np.maximum(0, -surplus[:, 1:].min(axis=1))
    if nx >= 2:
        proper = surplus[:, 1:full]
        F["x_surplus"] = (proper > 0).all(axis=1)
        tight = (proper == 0) & F["hall"][:, None]
        F["tight_exists"] = tight.any(axis=1)
        big = nx + 1
        F["tight_min_size"] = np.where(tight, sizes[1:full][None, :], big).min(axis=1)
    else:
        F["x_surplus"] = F["hall"].copy()
        F["tight_exists"] = np.zeros(N, bool)
        F["tight_min_size"] = np.full(N, nx + 1)
    F["elementary"] = F["hall"] & F["x_surplus"] if nx == ny else np.zeros(N, bool)
    F["positive"] = F["x_surplus"] & (supp.any(axis=1).sum(axis=1) > nx)
    F["connected"] = _connected(supp)
    return F


def _connected(supp: np.ndarray) -> np.ndarray:
    N, nx, ny = supp.shape
    xr = np.zeros((N, nx), bool)
    xr[:, 0] = True
    yr = np.zeros((N, ny), bool)
    for _ in range(nx + ny):
        yr = (supp & xr[:, :, None]).any(axis=1)
        xr_new = (supp & yr[:, None, :]).any(axis=2) | xr
        if (xr_new == xr).all():
            break
        xr = xr_new
    yr = (supp & xr[:, :, None]).any(axis=1)
    return xr.all(axis=1) & yr.all(axis=1)


def batch_features(mats: np.ndarray) -> dict:
    """All features used by the sweeps, including ``alpha`` and ``phi``."""
    mats = np.asarray(mats, dtype=np.int64)
    F = _stage1(mats)
    F["alpha"], F["phi"] = batch_count(mats)
    return F


def _select(F: dict, idx) -> dict:
    return {k: (v[idx] if isinstance(v, np.ndarray) else v) for k, v in F.items()}


def _class_mask(F: dict, c: ClassConstraint) -> np.ndarray:
    mask = (F["k"] >= c.k_min) & (F["deltaY"] >= c.deltaY_min) & (F["r"] >= c.r_min) & (F["rY"] >= c.rY_min)
    for name in ("hall", "x_surplus", "leafless", "elementary"):
        want = getattr(c, name)
        if want is not None:
            mask &= F[name] == want
    if c.b is not None:
        mask &= F["b"] == c.b
    return mask


# --- theorem tables ---------------------------------------------------------


def _table(fn, *dims) -> np.ndarray:
    out = np.zeros(dims, dtype=np.int64)
    for idx in itertools.product(*(range(d) for d in dims)):
        v = fn(*idx)
        if v is not None:
            if abs(v) >= 2**62:
                raise OverflowError("bound table entry exceeds int64")
            out[idx] = v
    return out


@lru_cache(maxsize=None)
def _tables(nx: int, ny: int, max_mult: int) -> dict:
    n, t = nx, ny - nx
    K = max_mult * ny + 1
    R = ny + 1
    M = max_mult * nx * ny + 1
    T = {}
    T["main"] = _table(lambda k, r: B.bound_main_best(n, k, r) if 1 <= r <= k else None, K, R)
    T["mhall"] = _table(lambda r: B.bound_mhall(n, r) if r >= 1 else None, R)
    T["defect"] = _table(
        lambda k, r, p: max(B.bound_defect(k, rr, p) for rr in range(1, r + 1)) if (p >= 1 and 1 <= r <= k) else None,
        K, R, nx + 1,
    )
    T["y2"] = _table(lambda k: B.bound_y2(n, k) if (n >= 2 and k >= 2) else None, K)
    T["4k"] = _table(lambda k: B.bound_4k(n, k) if (n >= 2 and k >= 2) else None, K)
    if n >= 2 and t >= 0:
        T["2kt"] = _table(lambda k, d: B.bound_2kt(n, k, t, d) if (k >= 1 and d >= 1 and B.covers_2kt(n, t, d)) else None, K, 3)
        T["2kt_refined"] = _table(lambda k, d: B.bound_2kt_refined(n, k, t, d) if (k >= 1 and d >= 1 and B.covers_2kt(n, t, d)) else None, K, 3)
    if n >= 3 and t >= 1:
        T["nky1"] = _table(lambda k: B.bound_nky1(n, k, t) if k >= 1 else None, K)
    if n >= 2 and t >= 0:
        T["leafmain"] = _table(lambda b: B.bound_leafmain(n, t, b), M)
    T["surplus"] = _table(lambda m: B.bound_surplus(m, n + ny) if m >= n + ny - 1 else None, M)
    RA = min(nx, ny) + 1
    if t >= 0:
        T["case1"] = _table(
            lambda k, r: max(B.bound_case1(k, rr, t) for rr in range(1, r + 1)) if 1 <= r <= k else None, K, RA
        )
    if t >= 1:
        T["liu_liu_1"] = np.full(1, B.bound_liu_liu(1, n=n, t=t), dtype=np.int64)
        T["liu_liu_2"] = _table(lambda m: B.bound_liu_liu(2, n=n, m=m, t=t), M)
    if t == 1:
        T["liu_liu_3"] = _table(lambda m: B.bound_liu_liu(3, m=m, ny=ny, t=1), M)
    return T


def theorem_arrays(tid: str, F: dict, max_mult: int) -> tuple[np.ndarray, np.ndarray]:
    """(applicable mask, bound) for a vectorizable theorem; mirrors ``applicable_bounds``."""
    nx, ny, t = F["nx"], F["ny"], F["t"]
    n = nx
    N = len(F["k"])
    T = _tables(nx, ny, max_mult)
    k, r, dY, hall = F["k"], F["r"], F["deltaY"], F["hall"]
    zero = np.zeros(N, dtype=np.int64)
    no = np.zeros(N, bool)
    if tid == "main":
        return k >= 1, T["main"][k, r]
    if tid == "mhall":
        return r >= 1, T["mhall"][r]
    if tid == "defect":
        p = F["defect"]
        return (p > 0) & (k >= 1), T["defect"][k, r, p]
    if tid == "y2":
        app = (n >= 2) & hall & (dY >= 1) & ((t > 0) | (dY >= 2)) & (k >= 2)
        return app, T["y2"][k]
    if tid == "4k":
        app = (n >= 2) & (k >= 2) & (dY >= 2) & hall & (r >= 2)
        return app, T["4k"][k]
    if tid in ("2kt", "2kt_refined"):
        if tid not in T:
            return no, zero
        app = (n >= 2) & hall & (dY >= 1) & (k >= 1) & ((n != 2) | (t == 0) | (dY >= 2))
        return app, T[tid][k, np.minimum(dY, 2)]
    if tid == "nky1":
        if "nky1" not in T:
            return no, zero
        return hall & (dY >= 1) & (k >= 1), T["nky1"][k]
    if tid == "leafmain":
        if "leafmain" not in T:
            return no, zero
        app = F["leafless"] & F["x_surplus"]
        return app, T["leafmain"][np.where(app, F["b"], 0)]
    if tid == "surplus":
        app = F["elementary"]
        return app, T["surplus"][F["m"]]
    if tid == "t_plus_1":
        if t < 0:
            return no, zero
        return hall & (F["r_all"] >= 1), np.full(N, t + 1, dtype=np.int64)
    if tid == "case1":
        if "case1" not in T:
            return no, zero
        app = hall & F["tight_exists"] & (F["r_all"] >= 1)
        return app, T["case1"][k, F["r_all"]]
    if tid.startswith("liu_liu_"):
        variant = int(tid[-1])
        base = F["simple"] & F["positive"] & (t >= 1)
        if t < 1 or (variant == 3 and t != 1):
            return no, zero
        if variant == 1:
            return base & F["connected"], np.full(N, T["liu_liu_1"][0])
        if variant == 2:
            return base & F["connected"], T["liu_liu_2"][F["m"]]
        return base & (F["min_deg"] >= 2), T["liu_liu_3"][F["m"]]
    raise KeyError(f"theorem {tid!r} is not vectorized")


def _scalar_prefilter(tid: str, F: dict) -> np.ndarray:
    if tid == "composed":
        return (F["nx"] >= 2) & (F["t"] >= 2) & (F["r"] >= 2)
    if tid == "egorychev_falikman":
        return F["regular"]
    raise KeyError(tid)


# --- partition scanning -----------------------------------------------------


def _chunks(nx: int, ny: int, base: int, first: int, row_sorted: bool) -> Iterator[np.ndarray]:
    """All matrices whose first row has index ``first`` (base-``base`` digits)."""
    first_digits = np.array([(first // base**j) % base for j in range(ny - 1, -1, -1)], dtype=np.int64)
    rest = (nx - 1) * ny
    total = base**rest
    powers = base ** np.arange(rest - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % base
        mats = np.empty((len(idx), nx, ny), dtype=np.int64)
        mats[:, 0, :] = first_digits
        mats[:, 1:, :] = digits.reshape(len(idx), nx - 1, ny)
        if row_sorted and nx > 1:
            w = base ** np.arange(ny - 1, -1, -1, dtype=np.int64)
            codes = mats @ w
            keep = (np.diff(codes, axis=1) >= 0).all(axis=1)
            mats = mats[keep]
        if len(mats):
            yield mats


def _first_row_ok(first: int, ny: int, base: int, c: ClassConstraint) -> bool:
    digits = [(first // base**j) % base for j in range(ny)]
    return sum(digits) >= c.k_min and sum(1 for d in digits if d) >= c.r_min


def _scan_partition(task: tuple) -> dict:
    mode, c, nx, ny, first, theorems, dedup = task
    base = c.max_mult + 1
    out: dict = {"mode": mode, "shape": (nx, ny), "first": first}
    if not _first_row_ok(first, ny, base, c):
        return out
    if mode == "verify":
        out["theorems"] = {tid: {"count": 0, "keys": [], "violations": [], "extremal": [], "min_gap": None} for tid in theorems}
    else:
        out["keys"], out["mats"], out["phis"] = [], [], []
    for mats in _chunks(nx, ny, base, first, row_sorted=dedup):
        F = _stage1(mats)
        mask = _class_mask(F, c)
        if not mask.any():
            continue
        mats = mats[mask]
        F = _select(F, mask)
        F["alpha"], F["phi"] = batch_count(mats)
        keys = canonical_keys(mats, base) if dedup else None
        if mode == "verify":
            _verify_chunk(out["theorems"], theorems, mats, F, keys, c)
        else:
            out["phis"].append(F["phi"])
            if dedup:
                out["keys"].append(keys)
            else:
                out["mats"].append(mats)
    return out


def _verify_chunk(acc: dict, theorems, mats, F, keys, c: ClassConstraint) -> None:
    phi = F["phi"]
    for tid in theorems:
        a = acc[tid]
        if tid in _SCALAR_THEOREMS:
            pre = np.flatnonzero(_scalar_prefilter(tid, F))
            app = np.zeros(len(phi), bool)
            bound = np.zeros(len(phi), dtype=object)
            for i in pre:
                e = applicable_bounds(Bigraph(mats[i]), compute_phi=False).get(tid)
                if e.applicable:
                    app[i] = True
                    bound[i] = e.bound
        else:
            app, bound = theorem_arrays(tid, F, c.max_mult)
        if not app.any():
            continue
        idx = np.flatnonzero(app)
        gap = phi[idx] - bound[idx]
        if keys is not None:
            a["keys"].append(keys[idx])
        else:
            a["count"] += len(idx)
        g = int(min(gap)) if len(gap) else None
        if g is not None:
            a["min_gap"] = g if a["min_gap"] is None else min(a["min_gap"], g)
        for i in idx[gap < 0]:
            a["violations"].append({"matrix": mats[i].tolist(), "phi": int(phi[i]), "bound": str(bound[i])})
        eq = idx[gap == 0]
        if keys is not None:
            a["extremal"].append(keys[eq])
        else:
            a["extremal"].extend(m.tolist() for m in mats[eq])


def _tasks(mode: str, c: ClassConstraint, theorems, dedup: bool) -> list[tuple]:
    tasks = []
    base = c.max_mult + 1
    for nx, ny in c.shapes():
        d = dedup and _keys_fit(nx, ny, base)
        for first in range(base**ny):
            tasks.append((mode, c, nx, ny, first, tuple(theorems), d))
    return tasks


def _run(tasks: list, jobs: int) -> list[dict]:
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_scan_partition, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    return [_scan_partition(t) for t in tasks]


# --- public API -------------------------------------------------------------


def enumerate_class(c: ClassConstraint, dedup: bool = True, jobs: int = 1) -> Iterator[Bigraph]:
    """Yield every graph of the class, one per isomorphism class with ``dedup``.

    Deduplicated output is the canonical representative of each class, in
    increasing canonical order per shape.  Shapes too large for int64
    canonical keys fall back to labeled enumeration.
    """
    c.check_budget()
    results = _run(_tasks("enumerate", c, (), dedup), jobs)
    by_shape: dict = {}
    for res in results:
        by_shape.setdefault(res["shape"], []).append(res)
    base = c.max_mult + 1
    for shape in c.shapes():
        parts = by_shape.get(shape, [])
        nx, ny = shape
        if dedup and _keys_fit(nx, ny, base):
            keys = [k for p in parts for k in p.get("keys", [])]
            if not keys:
                continue
            for key in np.unique(np.concatenate(keys)):
                yield Bigraph(decode_key(key, nx, ny, base))
        else:
            for p in parts:
                for mats in p.get("mats", []):
                    for m in mats:
                        yield Bigraph(m)


@dataclass
class VerifyReport:
    theorem_id: str
    grid: dict
    instances_checked: int
    violations: list
    extremal: list
    runtime: float
    dedup: bool = True
    min_gap: Optional[int] = None
    structure_failures: list = field(default_factory=list)
    structure_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.structure_failures

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "grid": self.grid,
            "instances_checked": self.instances_checked,
            "counting": "isomorphism classes" if self.dedup else "with multiplicity of isomorphic copies",
            "violations": self.violations,
            "extremal_count": len(self.extremal),
            "extremal": self.extremal,
            "min_gap": self.min_gap,
            "structure_checked": self.structure_checked,
            "structure_failures": self.structure_failures,
            "runtime_s": round(self.runtime, 3),
        }

    def markdown_row(self, runtime: bool = True) -> str:
        cells = [
            self.theorem_id,
            self.instances_checked,
            len(self.violations),
            len(self.extremal),
            "" if self.min_gap is None else self.min_gap,
            self.structure_checked,
            len(self.structure_failures),
        ]
        if runtime:
            cells.append(f"{self.runtime:.1f}")
        return "| " + " | ".join(str(c) for c in cells) + " |"


_MD_COLUMNS = ["theorem", "instances", "violations", "extremal", "min gap", "structure checked", "structure failures"]


def markdown_table(reports: Sequence[VerifyReport], runtime: bool = True) -> str:
    cols = _MD_COLUMNS + (["seconds"] if runtime else [])
    lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    lines += [r.markdown_row(runtime) for r in reports]
    return "\n".join(lines)


def verify_all(
    theorems: Sequence[str],
    c: ClassConstraint,
    dedup: bool = True,
    jobs: int = 1,
    check_structure: bool = True,
) -> list[VerifyReport]:
    """Sweep the class once and check every listed theorem on every member.

    Each theorem is checked only on members meeting its own hypotheses.
    """
    for tid in theorems:
        if tid not in B.THEOREMS:
            raise KeyError(f"unknown theorem {tid!r}")
    c.check_budget()
    t0 = time.perf_counter()
    results = _run(_tasks("verify", c, theorems, dedup), jobs)
    elapsed = time.perf_counter() - t0
    base = c.max_mult + 1
    reports = []
    for tid in theorems:
        count, violations, extremal, min_gap = 0, [], [], None
        for nx, ny in c.shapes():
            parts = [res["theorems"][tid] for res in results if res["shape"] == (nx, ny) and "theorems" in res]
            for p in parts:
                violations.extend(p["violations"])
                if p["min_gap"] is not None:
                    min_gap = p["min_gap"] if min_gap is None else min(min_gap, p["min_gap"])
            if dedup and _keys_fit(nx, ny, base):
                keys = [k for p in parts for k in p["keys"]]
                if keys:
                    count += len(np.unique(np.concatenate(keys)))
                ext = [k for p in parts for k in p["extremal"]]
                if ext:
                    extremal.extend(decode_key(k, nx, ny, base) for k in np.unique(np.concatenate(ext)))
            else:
                count += sum(p["count"] for p in parts)
                for p in parts:
                    extremal.extend(p["extremal"])
        seen, uniq = set(), []
        for v in violations:
            key = canonical_form(v["matrix"]).tolist()
            if str(key) not in seen:
                seen.add(str(key))
                uniq.append(v)
        rep = VerifyReport(tid, c.to_dict(), count, uniq, extremal, elapsed, dedup=dedup, min_gap=min_gap)
        if check_structure and tid in ("main", "y2"):
            for mat in extremal:
                G = Bigraph(mat)
                try:
                    ok, reasons = extremal_structure_reasons(G, tid)
                except ValueError:
                    continue
                rep.structure_checked += 1
                if not ok:
                    rep.structure_failures.append({"matrix": mat, "reasons": reasons})
        reports.append(rep)
    return reports


def verify_theorem(theorem_id: str, c: ClassConstraint, dedup: bool = True, jobs: int = 1) -> VerifyReport:
    return verify_all([theorem_id], c, dedup=dedup, jobs=jobs)[0]


def find_min_phi(c: ClassConstraint, dedup: bool = True, jobs: int = 1) -> tuple[Optional[int], list[Bigraph]]:
    """Exact minimum of Phi over the class and every witness attaining it."""
    c.check_budget()
    results = _run(_tasks("min", c, (), dedup), jobs)
    base = c.max_mult + 1
    best = None
    for res in results:
        for phis in res.get("phis", []):
            if len(phis):
                v = int(phis.min())
                best = v if best is None else min(best, v)
    if best is None:
        return None, []
    witnesses = []
    for shape in c.shapes():
        nx, ny = shape
        keys = []
        for res in results:
            if res["shape"] != shape:
                continue
            if res.get("keys"):
                for phis, ks in zip(res["phis"], res["keys"]):
                    keys.append(ks[phis == best])
            else:
                for phis, mats in zip(res.get("phis", []), res.get("mats", [])):
                    witnesses.extend(Bigraph(m) for m in mats[phis == best])
        if keys:
            for key in np.unique(np.concatenate(keys)):
                witnesses.append(Bigraph(decode_key(key, nx, ny, base)))
    return best, witnesses


# --- equality characterizations ---------------------------------------------


def _multiedges_share_y(arr: np.ndarray) -> bool:
    return int((arr >= 2).any(axis=0).sum()) <= 1


def _is_even_cycle(arr: np.ndarray) -> bool:
    nx, ny = arr.shape
    if nx != ny or nx < 2 or (arr > 1).any():
        return False
    if not ((arr.sum(axis=1) == 2).all() and (arr.sum(axis=0) == 2).all()):
        return False
    from .bounds import _connected

    return _connected(arr)


def extremal_structure_reasons(G: Bigraph, theorem_id: str) -> tuple[bool, list[str]]:
    """Check the equality characterization for ``main`` or ``y2``.

    Raises ``ValueError`` when the theorem has no characterization for this
    graph (outside its hypotheses, or a case without one).
    """
    arr = G.mult
    rep = analyze(G)
    P = rep.params
    n, k, r = P.n, P.k, P.r
    phi = count_max_matchings(G).count
    if theorem_id == "main":
        if not (n > 1 and r > 1 and rep.hall and P.rY >= 1):
            raise ValueError("characterization needs n, r > 1, Hall's Condition and no isolated vertices")
        cands = [rr for rr in range(2, r + 1) if B.bound_main(n, k, rr) == phi]
        if not cands:
            return False, [f"Phi={phi} does not attain the bound for any r' in [2, {r}]"]
        reasons = []
        for rr in cands:
            reasons += [f"r'={rr}: {s}" for s in _main_reasons(arr, rep, n, rr)]
        return not reasons, reasons
    if theorem_id == "y2":
        if not (n >= 2 and rep.hall and P.deltaY >= 1 and (P.t > 0 or P.deltaY >= 2) and k >= 2):
            raise ValueError("graph is outside the hypotheses")
        if phi != B.bound_y2(n, k):
            return False, [f"Phi={phi} differs from the bound {B.bound_y2(n, k)}"]
        if n == 2 or k == 2:
            from .constructions import gen_F

            if canonical_form(G) == canonical_form(gen_F(k)[0]) or _is_even_cycle(arr):
                return True, []
            return False, ["equality graph is neither F_k nor an even cycle"]
        if k == 3:
            from .constructions import gen_G6

            if canonical_form(G) == canonical_form(gen_G6()[0]):
                return True, []
            return False, ["equality graph is not G_6"]
        raise ValueError("no characterization for |X| >= 3 and k >= 4")
    raise ValueError(f"no equality characterization for {theorem_id!r}")


def _main_reasons(arr: np.ndarray, rep, n: int, r: int) -> list[str]:
    nx, ny = arr.shape
    out = []
    if r >= n:
        if not rep.x_surplus:
            out.append("not X-surplus")
        if not _multiedges_share_y(arr):
            out.append("multiedges not incident to a single Y-vertex")
        if not (ny == r and (arr > 0).all()):
            out.append(f"underlying simple graph is not K_{{{n},{r}}}")
        return out
    if ny != nx:
        out.append("|Y| != |X|")
    if rep.x_surplus:
        out.append("graph is X-surplus")
        return out
    tight = tight_sets_enumerated(arr)
    smallest = min(len(S) for S in tight)
    if smallest != r:
        out.append(f"smallest tight set has size {smallest}, not {r}")
        return out
    for S in (S for S in tight if len(S) == smallest):
        rows = sorted(S)
        cols = sorted(int(j) for j in np.flatnonzero((arr[rows] > 0).any(axis=0)))
        block = arr[np.ix_(rows, cols)]
        tag = f"S={rows}"
        if not (block > 0).all() or len(cols) != r:
            out.append(f"{tag}: block is not K_{{{r},{r}}}")
        if not _multiedges_share_y(block):
            out.append(f"{tag}: block multiedges not incident to a single Y-vertex")
        rest_x = [i for i in range(nx) if i not in S]
        rest_y = [j for j in range(ny) if j not in cols]
        sub = arr[np.ix_(rest_x, rest_y)] if rest_x and rest_y else np.zeros((len(rest_x), len(rest_y)), np.int64)
        mc = count_max_matchings_oracle(sub) if sub.size else None
        if mc is None or mc.size != len(rest_x) or mc.count != 1:
            out.append(f"{tag}: remainder does not have exactly one (X-S)-matching")
    return out


def check_extremal_structure(G: Bigraph, theorem_id: str) -> bool:
    """True when ``G`` attains the bound and fits the equality characterization.

    Returns False for graphs that do not attain the bound or fall outside the
    characterization's hypotheses; raises ``ValueError`` for theorems without
    one.
    """
    if theorem_id not in ("main", "y2"):
        raise ValueError(f"no equality characterization for {theorem_id!r}")
    try:
        ok, _ = extremal_structure_reasons(G, theorem_id)
    except ValueError:
        return False
    return ok
