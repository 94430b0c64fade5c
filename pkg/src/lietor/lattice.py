"""Exact integer-lattice arithmetic: points, subgroups of Z^n in Hermite
normal form, cosets, finite unions of cosets, and window enumeration.

Subgroups are stored as row-style HNF matrices (echelon shape, positive
pivots, entries above a pivot reduced into [0, pivot)).  That makes the
basis matrix a canonical form: two subgroups are equal iff their matrices
are identical.  Coset representatives are reduced modulo the subgroup the
moment a CosetUnion is built, so structural equality equals set equality
for a fixed subgroup.  All integers are Python ints (arbitrary precision).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

Point = tuple[int, ...]


class DimensionMismatch(ValueError):
    """Operands live in Z^n for different n."""


def as_point(coords) -> Point:
    return tuple(int(c) for c in coords)


def _check_rank(rank: int, x: Point):
    if len(x) != rank:
        raise DimensionMismatch(f"point of length {len(x)} in Z^{rank}")


def _hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the span of `rows` (in place on a copy)."""
    if not rows:
        return []
    n = len(rows[0])
    m = [list(r) for r in rows]
    pivot_row = 0
    for col in range(n):
        # gather nonzero entries in this column at or below pivot_row
        live = [i for i in range(pivot_row, len(m)) if m[i][col] != 0]
        if not live:
            continue
        # Euclidean elimination below the pivot
        while True:
            live = [i for i in range(pivot_row, len(m)) if m[i][col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(m[i][col]))
            i0 = live[0]
            for i in live[1:]:
                q = m[i][col] // m[i0][col]
                m[i] = [a - q * b for a, b in zip(m[i], m[i0])]
        live = [i for i in range(pivot_row, len(m)) if m[i][col] != 0]
        if not live:
            continue
        i0 = live[0]
        m[pivot_row], m[i0] = m[i0], m[pivot_row]
        if m[pivot_row][col] < 0:
            m[pivot_row] = [-a for a in m[pivot_row]]
        # reduce entries above the pivot into [0, pivot)
        p = m[pivot_row][col]
        for i in range(pivot_row):
            q = m[i][col] // p
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[pivot_row])]
        pivot_row += 1
    return [row for row in m[:pivot_row]]


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of Z^n held by its canonical HNF row basis.

    rank 0 (empty basis) encodes the trivial subgroup.
    """

    ambient_rank: int
    basis: tuple[Point, ...]

    def __post_init__(self):
        for row in self.basis:
            if len(row) != self.ambient_rank:
                raise DimensionMismatch("basis row length != ambient rank")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def _pivots(self) -> list[tuple[int, int]]:
        """(column, value) of each pivot, in row order."""
        out = []
        for row in self.basis:
            col = next(i for i, a in enumerate(row) if a != 0)
            out.append((col, row[col]))
        return out

    def reduce(self, x: Point) -> Point:
        """Canonical residue of x modulo this subgroup."""
        _check_rank(self.ambient_rank, x)
        v = list(x)
        for row, (col, p) in zip(self.basis, self._pivots()):
            q = v[col] // p
            if q:
                for i in range(col, self.ambient_rank):
                    v[i] -= q * row[i]
        return tuple(v)

    def contains(self, x: Point) -> bool:
        return all(c == 0 for c in self.reduce(x))

    def to_json(self) -> dict:
        return {"rank": self.ambient_rank, "basis": [list(r) for r in self.basis]}

    @staticmethod
    def from_json(obj: dict) -> "Subgroup":
        return hnf([as_point(r) for r in obj["basis"]], ambient_rank=obj["rank"])


def hnf(generators, ambient_rank: int | None = None) -> Subgroup:
    """Canonical subgroup spanned by the generators.

    The empty list yields the trivial subgroup (ambient_rank then required).
    """
    gens = [as_point(g) for g in generators]
    if not gens:
        if ambient_rank is None:
            raise ValueError("empty generator list needs an explicit ambient_rank")
        return Subgroup(ambient_rank, ())
    n = len(gens[0])
    for g in gens:
        if len(g) != n:
            raise DimensionMismatch("generators of mixed ambient rank")
    if ambient_rank is not None and ambient_rank != n:
        raise DimensionMismatch("ambient_rank disagrees with generators")
    rows = _hnf_rows([list(g) for g in gens])
    return Subgroup(n, tuple(tuple(r) for r in rows))


def subgroup_contains(s: Subgroup, x: Point) -> bool:
    return s.contains(as_point(x))


def subgroup_sum(a: Subgroup, b: Subgroup) -> Subgroup:
    if a.ambient_rank != b.ambient_rank:
        raise DimensionMismatch("subgroups of different ambient rank")
    return hnf(list(a.basis) + list(b.basis), ambient_rank=a.ambient_rank)


def subgroup_intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    """Intersection of two subgroups via the integer left kernel of the
    stacked basis (rows u with u*[A;B] = 0 give points (u_A)*A in both)."""
    if a.ambient_rank != b.ambient_rank:
        raise DimensionMismatch("subgroups of different ambient rank")
    n = a.ambient_rank
    ra, rb = a.rank, b.rank
    if ra == 0 or rb == 0:
        return Subgroup(n, ())
    stacked = [list(r) for r in a.basis] + [list(r) for r in b.basis]
    k = ra + rb
    # HNF with transformation tracking: U @ stacked == echelon
    m = [row[:] + [1 if i == j else 0 for j in range(k)] for i, row in enumerate(stacked)]
    pivot_row = 0
    for col in range(n):
        while True:
            live = [i for i in range(pivot_row, k) if m[i][col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(m[i][col]))
            i0 = live[0]
            for i in live[1:]:
                q = m[i][col] // m[i0][col]
                m[i] = [x - q * y for x, y in zip(m[i], m[i0])]
        live = [i for i in range(pivot_row, k) if m[i][col] != 0]
        if not live:
            continue
        m[pivot_row], m[live[0]] = m[live[0]], m[pivot_row]
        pivot_row += 1
    inter_rows = []
    for i in range(pivot_row, k):
        u = m[i][n:]
        pt = [0] * n
        for c, row in zip(u[:ra], a.basis):
            for j in range(n):
                pt[j] += c * row[j]
        inter_rows.append(pt)
    return hnf([tuple(r) for r in inter_rows], ambient_rank=n)


def quotient_residues(s: Subgroup, modulus: Subgroup, limit: int = 1_000_000) -> set[Point]:
    """Canonical residues (mod `modulus`) of the subgroup generated by the
    rows of `s` inside Z^n / modulus.  Requires the image to be finite,
    which the caller guarantees via a rank check."""
    if s.ambient_rank != modulus.ambient_rank:
        raise DimensionMismatch("subgroups of different ambient rank")
    zero = (0,) * s.ambient_rank
    seen = {modulus.reduce(zero)}
    frontier = [modulus.reduce(zero)]
    gens = [g for g in s.basis]
    while frontier:
        nxt = []
        for q in frontier:
            for g in gens:
                for sgn in (1, -1):
                    r = modulus.reduce(tuple(a + sgn * b for a, b in zip(q, g)))
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
                        if len(seen) > limit:
                            raise RuntimeError("quotient is unexpectedly large")
        frontier = nxt
    return seen


@dataclass(frozen=True)
class CosetUnion:
    """A finite union of cosets of one subgroup, reps canonical and sorted."""

    subgroup: Subgroup
    reps: tuple[Point, ...]

    @staticmethod
    def build(subgroup: Subgroup, reps) -> "CosetUnion":
        reduced = sorted({subgroup.reduce(as_point(r)) for r in reps})
        return CosetUnion(subgroup, tuple(reduced))

    @property
    def ambient_rank(self) -> int:
        return self.subgroup.ambient_rank

    def contains(self, x: Point) -> bool:
        return self.subgroup.reduce(as_point(x)) in self.reps

    def translate(self, g: Point) -> "CosetUnion":
        return CosetUnion.build(self.subgroup, [tuple(a + b for a, b in zip(r, g)) for r in self.reps])

    def to_json(self) -> dict:
        return {"subgroup": self.subgroup.to_json(), "reps": [list(r) for r in self.reps]}

    @staticmethod
    def from_json(obj: dict) -> "CosetUnion":
        return CosetUnion.build(Subgroup.from_json(obj["subgroup"]), [as_point(r) for r in obj["reps"]])


def coset_union_contains(c: CosetUnion, x: Point) -> bool:
    return c.contains(as_point(x))


def coset_union_equal(c1: CosetUnion, c2: CosetUnion) -> bool:
    """Set equality of two coset unions, possibly over different subgroups.

    Refines both to the common subgroup S1 /\\ S2 and compares residue sets.
    A rank mismatch of the sum lattice means one side's cosets cannot be
    covered by the other's finitely many cosets, so the sets differ.
    """
    if c1.ambient_rank != c2.ambient_rank:
        raise DimensionMismatch("coset unions of different ambient rank")
    if not c1.reps or not c2.reps:
        return c1.reps == c2.reps
    if c1.subgroup == c2.subgroup:
        return c1.reps == c2.reps
    total = subgroup_sum(c1.subgroup, c2.subgroup)
    if total.rank != c1.subgroup.rank or total.rank != c2.subgroup.rank:
        return False
    common = subgroup_intersection(c1.subgroup, c2.subgroup)

    def residues(c: CosetUnion) -> set[Point]:
        qs = quotient_residues(c.subgroup, common)
        out = set()
        for rep in c.reps:
            for q in qs:
                out.add(common.reduce(tuple(a + b for a, b in zip(rep, q))))
        return out

    return residues(c1) == residues(c2)


@dataclass(frozen=True)
class Box:
    """Finite integer box {x : lo <= x <= hi componentwise}."""

    lo: Point
    hi: Point

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise DimensionMismatch("box bounds of different length")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError("empty box")

    @staticmethod
    def cube(rank: int, radius: int, center: Point | None = None) -> "Box":
        c = center if center is not None else (0,) * rank
        return Box(tuple(a - radius for a in c), tuple(a + radius for a in c))

    @property
    def rank(self) -> int:
        return len(self.lo)

    def contains(self, x: Point) -> bool:
        return all(a <= v <= b for a, v, b in zip(self.lo, x, self.hi))

    def contains_box(self, other: "Box") -> bool:
        return self.contains(other.lo) and self.contains(other.hi)

    def shifted(self, g: Point) -> "Box":
        return Box(tuple(a - s for a, s in zip(self.lo, g)), tuple(b - s for b, s in zip(self.hi, g)))

    def volume(self) -> int:
        v = 1
        for a, b in zip(self.lo, self.hi):
            v *= b - a + 1
        return v

    def points(self):
        """All points, lexicographic.  Only for small boxes."""
        return (tuple(p) for p in product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi))))

    def to_json(self) -> dict:
        return {"lo": list(self.lo), "hi": list(self.hi)}


def enumerate_in_box(c: CosetUnion, box: Box) -> list[Point]:
    """Members of the coset union inside the box, sorted lexicographically.

    Walks integer coefficient ranges along the HNF rows (pivot columns bound
    each coefficient in turn) instead of scanning the box.
    """
    if c.ambient_rank != box.rank:
        raise DimensionMismatch("box rank != coset union rank")
    n = c.ambient_rank
    basis = c.subgroup.basis
    pivots = c.subgroup._pivots()
    out = []

    def rec(i: int, current: list[int]):
        if i == len(basis):
            pt = tuple(current)
            if box.contains(pt):
                out.append(pt)
            return
        col, p = pivots[i]
        row = basis[i]
        # lo <= current[col] + t*p <= hi
        lo_t = -((current[col] - box.lo[col]) // p)
        hi_t = (box.hi[col] - current[col]) // p
        for t in range(lo_t, hi_t + 1):
            rec(i + 1, [a + t * b for a, b in zip(current, row)])

    for rep in c.reps:
        rec(0, list(rep))
    return sorted(set(out))


def point_to_json(x: Point) -> list:
    return list(x)


def point_from_json(obj) -> Point:
    return as_point(obj)


def dumps(obj) -> str:
    """Stable JSON text for any lattice value (sorted keys, no spaces)."""
    if hasattr(obj, "to_json"):
        obj = obj.to_json()
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
