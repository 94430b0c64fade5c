"""Reflection spaces and symmetric reflection spaces of Z^n.

A reflection space satisfies 2x - y in E for all x, y in E; a symmetric one
satisfies x - 2y in E; pointed means 0 in E.  This module provides the
box-windowed predicates, the generated-space closure (least fixed point of
the rule inside a degree box), the closed two-generator formulas, and the
exact classification over Z.

Windowing contract: a closure restricted to a box can miss points whose
generation path leaves the box, so all oracle comparisons must happen on an
inner box with a margin (see oracle_boxes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import (
    Box,
    CosetUnion,
    DimensionMismatch,
    Point,
    Subgroup,
    as_point,
    coset_union_equal,
    hnf,
)

# ---------------------------------------------------------------------------
# windowed predicates
# ---------------------------------------------------------------------------


def _pair_check(E, box: Box, sym: bool):
    pts = sorted(as_point(p) for p in E)
    for p in pts:
        if not box.contains(p):
            raise ValueError(f"point {p} outside the box")
    members = set(pts)
    for x in pts:
        for y in pts:
            z = (
                tuple(a - 2 * b for a, b in zip(x, y))
                if sym
                else tuple(2 * a - b for a, b in zip(x, y))
            )
            if box.contains(z) and z not in members:
                return False, (x, y)
    return True, None


def is_reflection_space_in_box(E, box: Box):
    """True iff 2x - y stays in E whenever it stays in the box.

    Returns (ok, witness) with witness = (x, y) on failure.
    """
    return _pair_check(E, box, sym=False)


def is_symmetric_reflection_space_in_box(E, box: Box):
    """Same with the rule x - 2y."""
    return _pair_check(E, box, sym=True)


def coset_union_is_reflection_space(c: CosetUnion) -> bool:
    """For every pair of reps x_i, x_j there is a rep x_k with
    2*x_i - x_j = x_k modulo the subgroup."""
    reps = set(c.reps)
    for xi in c.reps:
        for xj in c.reps:
            z = c.subgroup.reduce(tuple(2 * a - b for a, b in zip(xi, xj)))
            if z not in reps:
                return False
    return True


# ---------------------------------------------------------------------------
# closure: least fixed point of the rule inside a box
# ---------------------------------------------------------------------------

RULES = ("reflection", "symmetric", "pointed")


def _step(a: Point, b: Point, sym: bool) -> Point:
    if sym:
        return tuple(u - 2 * v for u, v in zip(a, b))
    return tuple(2 * u - v for u, v in zip(a, b))


def _closure_worklist(pts: list[Point], box: Box, sym: bool) -> set[Point]:
    """Reference engine: full binary rule, lexicographic worklist."""
    import heapq

    members = set(pts)
    heap = sorted(members)
    done: list[Point] = []
    while heap:
        x = heapq.heappop(heap)
        done.append(x)
        for w in done:
            for a, b in ((x, w), (w, x)):
                z = _step(a, b, sym)
                if z not in members and box.contains(z):
                    members.add(z)
                    heapq.heappush(heap, z)
    return members


class _GridClosure:
    """Members as a flat boolean grid over the box; all candidate batches are
    filtered and deduplicated by scattering into the grid."""

    def __init__(self, box: Box):
        self.lo = np.array(box.lo, dtype=np.int64)
        self.hi = np.array(box.hi, dtype=np.int64)
        self.dims = self.hi - self.lo + 1
        self.ncells = int(np.prod(self.dims))
        self.strides = np.cumprod(np.concatenate([[1], self.dims[::-1][:-1]]))[::-1].copy()
        self.mem = np.zeros(self.ncells, dtype=bool)

    def absorb(self, cand: np.ndarray) -> np.ndarray:
        """Mark in-box candidate rows, returning the genuinely new points."""
        ok = np.all((cand >= self.lo) & (cand <= self.hi), axis=1)
        if not ok.any():
            return cand[:0]
        idx = (cand[ok] - self.lo) @ self.strides
        tmp = np.zeros(self.ncells, dtype=bool)
        tmp[idx] = True
        newflat = np.nonzero(tmp & ~self.mem)[0]
        if not newflat.size:
            return cand[:0]
        self.mem[newflat] = True
        return np.stack(np.unravel_index(newflat, self.dims), axis=1) + self.lo

    def grid(self) -> np.ndarray:
        return self.mem.reshape(tuple(int(d) for d in self.dims))

    def points(self) -> set[Point]:
        out = np.stack(np.unravel_index(np.nonzero(self.mem)[0], self.dims), axis=1) + self.lo
        return {tuple(int(v) for v in row) for row in out}


def _full_rule_new_mask(gc: _GridClosure, sym: bool) -> np.ndarray | None:
    """In-box values of the rule over members x members that are not members
    yet, as a flat-index array (None if there are none).  Moderate sets use
    pairwise column arithmetic; large ones one exact FFT convolution of
    indicator grids (pair counts per cell stay far below 2**52)."""
    count = int(gc.mem.sum())
    n = len(gc.dims)
    if count <= 1400:
        arr = np.stack(np.unravel_index(np.nonzero(gc.mem)[0], gc.dims), axis=1) + gc.lo
        idx = None
        okall = None
        cols = []
        for j in range(n):
            c = (
                arr[:, None, j] - 2 * arr[None, :, j]
                if sym
                else 2 * arr[:, None, j] - arr[None, :, j]
            )
            ok = (c >= gc.lo[j]) & (c <= gc.hi[j])
            okall = ok if okall is None else (okall & ok)
            cols.append(c)
        flat = np.zeros(okall.shape, dtype=np.int64)
        for j in range(n):
            flat += (cols[j] - gc.lo[j]) * gc.strides[j]
        idx = flat[okall]
        tmp = np.zeros(gc.ncells, dtype=bool)
        tmp[idx] = True
        new = np.nonzero(tmp & ~gc.mem)[0]
        return new if new.size else None

    from scipy.signal import fftconvolve

    grid = gc.grid().astype(np.float64)
    L = grid.shape
    flipped = grid[tuple(slice(None, None, -1) for _ in L)]
    dbl = np.zeros(tuple(2 * (d - 1) + 1 for d in L), dtype=np.float64)
    if sym:
        # x - 2y = E + (-2E); upsampled flip has coordinate offset -2*hi
        dbl[tuple(slice(None, None, 2) for _ in L)] = flipped
        conv = fftconvolve(grid, dbl)
        offset = gc.lo - 2 * gc.hi
    else:
        # 2x - y = 2E + (-E); upsampled grid has offset 2*lo, flip -hi
        dbl[tuple(slice(None, None, 2) for _ in L)] = grid
        conv = fftconvolve(dbl, flipped)
        offset = 2 * gc.lo - gc.hi
    shape = np.array(conv.shape, dtype=np.int64)
    a = np.maximum(gc.lo, offset)
    b = np.minimum(gc.hi, offset + shape - 1)
    if np.any(a > b):
        return None
    src = tuple(slice(int(x - o), int(y - o + 1)) for x, y, o in zip(a, b, offset))
    hitmask = np.zeros(tuple(int(d) for d in gc.dims), dtype=bool)
    dst = tuple(slice(int(x - l), int(y - l + 1)) for x, y, l in zip(a, b, gc.lo))
    hitmask[dst] = conv[src] > 0.5
    new = np.nonzero(hitmask.reshape(-1) & ~gc.mem)[0]
    return new if new.size else None


def _closure_fast(pts: list[Point], box: Box, sym: bool) -> set[Point]:
    """Same least fixed point as the worklist engine: expand cheaply by
    pairing against the generators only, then verify full-rule closedness in
    one pass and iterate on any stragglers."""
    gens = np.array(sorted(set(pts)), dtype=np.int64)
    gc = _GridClosure(box)
    F = gc.absorb(gens)
    while True:
        while F.shape[0]:
            batches = []
            for g in gens:
                if sym:
                    batches.append(g[None, :] - 2 * F)
                    batches.append(F - 2 * g[None, :])
                else:
                    batches.append(2 * g[None, :] - F)
                    batches.append(2 * F - g[None, :])
            F = gc.absorb(np.concatenate(batches))
        new = _full_rule_new_mask(gc, sym)
        if new is None:
            return gc.points()
        gc.mem[new] = True
        F = np.stack(np.unravel_index(new, gc.dims), axis=1) + gc.lo


def closure(gens, rule: str, box: Box, engine: str = "auto") -> set[Point]:
    """Least fixed point of the generator set under the rule, restricted to
    the box (rule values falling outside the box are discarded).

    rule: "reflection" (2x - y), "symmetric" (x - 2y), or "pointed"
    (reflection rule on the set with 0 adjoined).
    """
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}")
    pts = [as_point(g) for g in gens]
    if not pts:
        raise ValueError("empty generator set")
    n = len(pts[0])
    for p in pts:
        if len(p) != n:
            raise DimensionMismatch("generators of mixed ambient rank")
    if box.rank != n:
        raise DimensionMismatch("box rank != generator rank")
    for p in pts:
        if not box.contains(p):
            raise ValueError(f"generator {p} outside the box")
    if rule == "pointed":
        zero = (0,) * n
        if not box.contains(zero):
            raise ValueError("pointed closure needs 0 inside the box")
        pts = pts + [zero]
    sym = rule == "symmetric"
    if engine == "worklist":
        return _closure_worklist(pts, box, sym)
    if engine == "fast":
        return _closure_fast(pts, box, sym)
    if engine != "auto":
        raise ValueError(f"unknown engine {engine!r}")
    # grids with huge coordinate ranges stay on the exact python path
    if box.volume() > 80_000_000:
        return _closure_worklist(pts, box, sym)
    return _closure_fast(pts, box, sym)


def oracle_boxes(gens, inner_factor: int = 3, outer_factor: int = 4):
    """(outer, inner) comparison boxes: inner covers `inner_factor` times the
    generator bounding radius, outer is `outer_factor` times the inner box."""
    pts = [as_point(g) for g in gens]
    radius = max(1, max(abs(c) for p in pts for c in p))
    inner = Box.cube(len(pts[0]), inner_factor * radius)
    outer = Box.cube(len(pts[0]), inner_factor * outer_factor * radius)
    return outer, inner


# ---------------------------------------------------------------------------
# two-generator closed forms
# ---------------------------------------------------------------------------


def _pair(x, y):
    x, y = as_point(x), as_point(y)
    if len(x) != len(y):
        raise DimensionMismatch("points of different rank")
    return x, y


def two_gen_reflection(x, y) -> CosetUnion:
    """Reflection space generated by {x, y}: the single coset <y - x> + x."""
    x, y = _pair(x, y)
    s = hnf([tuple(b - a for a, b in zip(x, y))], ambient_rank=len(x))
    return CosetUnion.build(s, [x])


def two_gen_symmetric(x, y) -> CosetUnion:
    """Symmetric reflection space generated by {x, y}: <x-y, x+y> + x.

    Internally asserts agreement with the equivalent two-coset form
    (2<x,y> + x) u (2<x,y> + y).
    """
    x, y = _pair(x, y)
    n = len(x)
    s = hnf(
        [tuple(a - b for a, b in zip(x, y)), tuple(a + b for a, b in zip(x, y))],
        ambient_rank=n,
    )
    primary = CosetUnion.build(s, [x])
    two_coset = CosetUnion.build(
        hnf([tuple(2 * a for a in x), tuple(2 * a for a in y)], ambient_rank=n), [x, y]
    )
    if not coset_union_equal(primary, two_coset):
        raise AssertionError("the two closed forms disagree; arithmetic bug")
    return primary


def two_gen_pointed(x, y) -> CosetUnion:
    """Pointed reflection space generated by {x, y}: 2<x,y> u (symmetric),
    i.e. the cosets of 2<x,y> through 0, x and y."""
    x, y = _pair(x, y)
    s2 = hnf([tuple(2 * a for a in x), tuple(2 * a for a in y)], ambient_rank=len(x))
    return CosetUnion.build(s2, [(0,) * len(x), x, y])


# ---------------------------------------------------------------------------
# classification over Z
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZClassification:
    """Closed form of a generated space in Z: p*Z + e (reflection kind) or
    p*Z / p*(2Z+1) (symmetric kind, odd_flag picks the odd form)."""

    kind: str
    p: int
    e: int
    odd_flag: bool = False

    def __post_init__(self):
        if self.kind not in ("reflection", "symmetric"):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.kind == "symmetric" and self.e != 0:
            raise ValueError("symmetric classification has e = 0")
        if self.odd_flag and self.kind != "symmetric":
            raise ValueError("odd form only arises in the symmetric kind")
        if self.p < 0:
            raise ValueError("p is nonnegative")

    def as_coset_union(self) -> CosetUnion:
        if self.kind == "reflection" or not self.odd_flag:
            s = hnf([(self.p,)], ambient_rank=1) if self.p else hnf([], ambient_rank=1)
            return CosetUnion.build(s, [(self.e,)])
        # p(2Z+1) = coset p + 2pZ
        s = hnf([(2 * self.p,)], ambient_rank=1)
        return CosetUnion.build(s, [(self.p,)])

    def describe(self) -> str:
        if self.kind == "reflection":
            return f"{self.p}Z+{self.e}" if self.p else f"{{{self.e}}}"
        if self.odd_flag:
            return f"{self.p}(2Z+1)"
        return f"{self.p}Z" if self.p else "{0}"


def _as_ints(A) -> list[int]:
    out = []
    for a in A:
        if isinstance(a, (tuple, list)):
            if len(a) != 1:
                raise DimensionMismatch("rank-1 points expected")
            out.append(int(a[0]))
        else:
            out.append(int(a))
    return out


def classify_Z(A, kind: str) -> ZClassification:
    """Exact closed form of the space generated by A inside Z.

    reflection -> pZ + e with p = gcd of pairwise differences;
    pointed    -> the subgroup gcd(A)Z;
    symmetric  -> dZ or d(2Z+1) with d = gcd(A), odd form iff every
                  generator is an odd multiple of d.
    """
    if kind not in RULES:
        raise ValueError(f"unknown rule {kind!r}")
    vals = _as_ints(A)
    if not vals:
        raise ValueError("empty generator set")
    if kind == "reflection":
        a0 = vals[0]
        p = 0
        for a in vals[1:]:
            p = math.gcd(p, a - a0)
        e = a0 % p if p else a0
        return ZClassification("reflection", p, e)
    d = 0
    for a in vals:
        d = math.gcd(d, a)
    if kind == "pointed":
        return ZClassification("symmetric", d, 0, False)
    odd = d > 0 and all((a // d) % 2 != 0 for a in vals)
    return ZClassification("symmetric", d, 0, odd)
