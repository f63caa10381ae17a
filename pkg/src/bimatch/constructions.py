"""Deterministic generators for the extremal families, with predicted counts.

Every ``gen_*`` returns ``(graph, predicted_phi)``.  ``construct`` looks a
family up in ``REGISTRY``, builds it, and checks that the theorem the family
witnesses is applicable to the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bounds import bound_case1, bound_leafmain, bound_m_nrtb, bound_main
from .graph import Bigraph

__all__ = [
    "ConstructionSpec",
    "REGISTRY",
    "construct",
    "gen_sharp1",
    "gen_F",
    "gen_G6",
    "gen_G7",
    "gen_H",
    "gen_Hp",
    "gen_Hpp",
    "gen_J",
    "gen_M",
    "gen_C",
    "gen_L",
    "gen_Gnkt",
    "gen_Gpnkt",
    "gen_case1_sharp",
    "gen_misc",
]


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def gen_sharp1(n: int, k: int, r: int) -> tuple[Bigraph, int]:
    _need(n >= 1 and k >= r >= 1, f"sharp1 needs n >= 1 and k >= r >= 1, got {(n, k, r)}")
    a = np.zeros((n, max(r, n)), dtype=np.int64)
    a[:, :r] = 1
    a[:, 0] += k - r
    for i in range(r, n):
        a[i, i] = 1
    return Bigraph(a), bound_main(n, k, r)


def gen_F(k: int) -> tuple[Bigraph, int]:
    _need(k >= 2, "F_k needs k >= 2")
    return Bigraph([[k - 1, 1], [k - 1, 1]]), 2 * k - 2


def _cycle(n: int) -> np.ndarray:
    """2n-cycle: x_i adjacent to y_i and y_{i+1 mod n}."""
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        a[i, i] += 1
        a[i, (i + 1) % n] += 1
    return a


def gen_G6() -> tuple[Bigraph, int]:
    a = _cycle(3)
    a[:, 0] += 1
    return Bigraph(a), 5


def gen_G7() -> tuple[Bigraph, int]:
    return Bigraph(np.hstack([_cycle(3), np.ones((3, 1), dtype=np.int64)])), 11


def _H(n: int, k: int) -> np.ndarray:
    a = np.eye(n, dtype=np.int64)
    a[:, 0] += k - 1
    return a


def gen_H(n: int, k: int) -> tuple[Bigraph, int]:
    _need(n >= 1 and k >= 1, "H_{n,k} needs n, k >= 1")
    return Bigraph(_H(n, k)), k


def gen_Hp(n: int, k: int) -> tuple[Bigraph, int]:
    _need(n >= 2 and k >= 2, "H'_{n,k} needs n, k >= 2")
    a = _H(n, k)
    a[n - 1, 1:] += 1
    return Bigraph(a), 2 * k


def gen_Hpp(n: int, k: int) -> tuple[Bigraph, int]:
    _need(n >= 2 and k >= n, "H''_{n,k} needs n >= 2 and k >= n")
    a = _H(n, k)
    a[0, 0] -= n - 1
    a[0, 1:] += 1
    return Bigraph(a), n * (k - 2) + 2


def gen_J(n: int, k: int) -> tuple[Bigraph, int]:
    _need(n >= 4 and k >= 2, "J_{n,k} needs n >= 4 and k >= 2")
    a = np.zeros((n, n), dtype=np.int64)
    a[:2, :2] = [[k - 1, 1], [k - 1, 1]]
    a[2:, 2:] = _cycle(n - 2)
    a[2:, 0] += k - 2
    return Bigraph(a), 4 * k - 4


def gen_M(n: int, r: int, t: int, b: int) -> tuple[Bigraph, int]:
    """Blocks X = R, S, T, u and Y = R', S', T', u' in that index order."""
    _need(r >= 2 and n >= 2 * r and t >= 0, f"M needs r >= 2, n >= 2r, t >= 0, got {(n, r, t)}")
    base = (r - 1) * (n - 2 * r)
    _need(b >= base, "M_{n,r,t,b} does not exist when b < (r-1)(n-2r)")
    nR = nS = nSp = r - 1
    nT = n - 2 * r + 1
    nRp = t + r - 1
    R = list(range(0, nR))
    S = list(range(nR, nR + nS))
    T = list(range(nR + nS, nR + nS + nT))
    u = n - 1
    Rp = list(range(0, nRp))
    Sp = list(range(nRp, nRp + nSp))
    Tp = list(range(nRp + nSp, nRp + nSp + nT))
    up = n + t - 1
    a = np.zeros((n, n + t), dtype=np.int64)
    a[u, Rp] = 1
    a[u, up] = 1
    a[R, up] = 1
    for s in S:
        a[s, Rp + Tp] = 1
    for s in Sp:
        a[R + T, s] = 1
    for x, y in zip(T, Tp):
        a[x, y] += 1
    pairs = [(s, sp) for s in S for sp in Sp]
    for e in range(b - base):
        x, y = pairs[e % len(pairs)]
        a[x, y] += 1
    return Bigraph(a), bound_m_nrtb(n, r, t, b)


def gen_C(n: int, t: int, b: int) -> tuple[Bigraph, int]:
    _need(n >= 2 and t >= 0 and b >= 0, f"C needs n >= 2, t >= 0, b >= 0, got {(n, t, b)}")
    a = _cycle(n)
    # y_0 is duplicated, so x_0 and x_{n-1} with y_0 and its copies form
    # K_{2,t+1}; the extra copies go on the cycle edge x_0 y_1 leaving it
    a = np.hstack([a, np.repeat(a[:, :1], t, axis=1)])
    a[0, 1] += b
    return Bigraph(a), bound_leafmain(n, t, b)


def gen_L(k: int, t: int) -> tuple[Bigraph, int]:
    _need(k - 1 > t >= 0, f"L_{{k,t}} needs k-1 > t >= 0, got {(k, t)}")
    a = np.ones((2, t + 2), dtype=np.int64)
    a[:, 0] = k - t - 1
    return Bigraph(a), (t + 1) * (2 * k - t - 2)


def _gnkt(n: int, k: int, t: int, mult: int) -> Bigraph:
    _need(n >= 3 and k >= 1 and t >= 1, f"G_{{n,k,t}} needs n >= 3, k, t >= 1, got {(n, k, t)}")
    ny = n + t
    a = np.zeros((n, ny), dtype=np.int64)
    a[: n - 1, : n - 1] = _H(n - 1, k)
    a[n - 1, :] = mult
    a[n - 1, 0] += max(0, k - mult * ny)
    return Bigraph(a)


def gen_Gnkt(n: int, k: int, t: int) -> tuple[Bigraph, int]:
    return _gnkt(n, k, t, 1), k * (t + 1)


def gen_Gpnkt(n: int, k: int, t: int) -> tuple[Bigraph, int]:
    return _gnkt(n, k, t, 2), 2 * k * (t + 1)


def gen_case1_sharp(k: int, r: int, t: int) -> tuple[Bigraph, int]:
    """Extremal block for the main bound on S, joined to K_{r, r+t} on the rest."""
    _need(k >= r >= 1 and t >= 0, f"case1_sharp needs k >= r >= 1, t >= 0, got {(k, r, t)}")
    n, ny = 2 * r, 2 * r + t
    a = np.zeros((n, ny), dtype=np.int64)
    a[:r, :r] = gen_sharp1(r, k, r)[0].mult
    a[r:, :] = 1
    deficit = k - (r + ny - r)
    if deficit > 0:
        a[r:, 0] += deficit
    return Bigraph(a), bound_case1(k, r, t)


# --- small named graphs -----------------------------------------------------


def _odd_path_bundle(lengths=(1, 3, 3, 5)) -> tuple[Bigraph, int]:
    lengths = [int(v) for v in lengths]
    _need(all(v >= 1 and v % 2 == 1 for v in lengths), "path lengths must be odd and positive")
    _need(len(lengths) >= 2 or lengths == [1], "need at least two paths, or a single edge")
    nx = ny = 1 + sum((v - 1) // 2 for v in lengths)
    a = np.zeros((nx, ny), dtype=np.int64)
    nxt = 1
    for v in lengths:
        s = (v - 1) // 2
        if s == 0:
            a[0, 0] += 1
            continue
        xs = list(range(nxt, nxt + s))
        ys = list(range(nxt, nxt + s))
        nxt += s
        a[0, ys[0]] += 1
        for q in range(s):
            a[xs[q], ys[q]] += 1
            a[xs[q], ys[q + 1] if q + 1 < s else 0] += 1
    return Bigraph(a), len(lengths)


def _k33_minus_edge(mults=(1, 1, 1, 1)) -> tuple[Bigraph, int]:
    mults = [int(v) for v in mults]
    _need(len(mults) == 4 and all(v >= 1 for v in mults), "need four positive multiplicities")
    a = np.ones((3, 3), dtype=np.int64)
    a[0, 0] = 0
    a[1:, 1:] = np.array(mults).reshape(2, 2)
    return Bigraph(a), int(a.sum()) - 4


def _t_plus_1_star(n: int = 2, t: int = 1) -> tuple[Bigraph, int]:
    _need(n >= 1 and t >= 0, "t_plus_1_star needs n >= 1, t >= 0")
    a = np.zeros((n, n + t), dtype=np.int64)
    a[:, :n] = np.eye(n, dtype=np.int64)
    a[0, n:] = 1
    return Bigraph(a), t + 1


def _cycles_at(pairs: list[tuple[int, int]], n: int) -> np.ndarray:
    """4-cycles, one per pair of X-vertices, each with two private Y-vertices."""
    a = np.zeros((n, 2 * len(pairs)), dtype=np.int64)
    for c, (x1, x2) in enumerate(pairs):
        a[[x1, x2], 2 * c] = 1
        a[[x1, x2], 2 * c + 1] = 1
    return a


def _three_4cycles() -> tuple[Bigraph, int]:
    return Bigraph(_cycles_at([(0, 1), (0, 2), (0, 3)], 4)), 24


def _chain_4cycles() -> tuple[Bigraph, int]:
    return Bigraph(_cycles_at([(0, 1), (1, 2), (2, 3)], 4)), 28


def _two_4cycles() -> tuple[Bigraph, int]:
    return Bigraph(_cycles_at([(0, 1), (1, 2)], 3)), 8


def _special_320() -> tuple[Bigraph, int]:
    # x0 with two neighbors, x1 with three others, x2 adjacent to all five
    return Bigraph([[1, 1, 0, 0, 0], [0, 0, 1, 1, 1], [1, 1, 1, 1, 1]]), 18


_MISC: dict[str, Callable] = {
    "odd_path_bundle": _odd_path_bundle,
    "k33_minus_edge": _k33_minus_edge,
    "t_plus_1_star": _t_plus_1_star,
    "three_4cycles": _three_4cycles,
    "chain_4cycles": _chain_4cycles,
    "two_4cycles": _two_4cycles,
    "special_320": _special_320,
}


def gen_misc(family: str, params: dict | None = None) -> tuple[Bigraph, int]:
    if family not in _MISC:
        raise ValueError(f"unknown misc family {family!r}")
    return _MISC[family](**(params or {}))


# --- registry ---------------------------------------------------------------


@dataclass
class ConstructionSpec:
    family: str
    params: dict
    predicted_phi: int
    graph: Bigraph = field(repr=False)
    witnesses: str = ""

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": dict(self.params),
            "predicted_phi": str(self.predicted_phi),
            "witnesses": self.witnesses,
        }


@dataclass(frozen=True)
class _Family:
    make: Callable
    witnesses: str
    defaults: tuple = ()


REGISTRY: dict[str, _Family] = {
    "sharp1": _Family(gen_sharp1, "main"),
    "F": _Family(gen_F, "y2"),
    "G6": _Family(gen_G6, "y2"),
    "G7": _Family(gen_G7, "2kt"),
    "H": _Family(gen_H, "main"),
    "Hp": _Family(gen_Hp, "y2"),
    "Hpp": _Family(gen_Hpp, "4k"),
    "J": _Family(gen_J, "4k"),
    "M": _Family(gen_M, "leafmain"),
    "C": _Family(gen_C, "leafmain"),
    "L": _Family(gen_L, "2kt"),
    "Gnkt": _Family(gen_Gnkt, "nky1"),
    "Gpnkt": _Family(gen_Gpnkt, "2kt_refined"),
    "case1_sharp": _Family(gen_case1_sharp, "case1"),
    "odd_path_bundle": _Family(_odd_path_bundle, "surplus"),
    "k33_minus_edge": _Family(_k33_minus_edge, "surplus"),
    "t_plus_1_star": _Family(_t_plus_1_star, "t_plus_1"),
    "three_4cycles": _Family(_three_4cycles, "leafmain"),
    "chain_4cycles": _Family(_chain_4cycles, "leafmain"),
    "two_4cycles": _Family(_two_4cycles, "leafmain"),
    "special_320": _Family(_special_320, "leafmain"),
}


def construct(family: str, check: bool = True, **params) -> ConstructionSpec:
    """Build a registered family; with ``check`` the witnessed theorem must apply."""
    if family not in REGISTRY:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(REGISTRY)}")
    fam = REGISTRY[family]
    G, phi = fam.make(**params)
    if check:
        from .bounds import applicable_bounds

        entry = applicable_bounds(G, compute_phi=False).get(fam.witnesses)
        if not entry.applicable:
            raise AssertionError(
                f"{family}{params} does not satisfy the hypotheses of {fam.witnesses}: {entry.hypothesis_failures}"
            )
    return ConstructionSpec(family, dict(params), phi, G, fam.witnesses)
