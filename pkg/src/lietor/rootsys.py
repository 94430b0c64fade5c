"""Classical finite irreducible root systems in epsilon-coordinates.

Roots are integer vectors with the standard dot product (the epsilon basis
is orthonormal), so Cartan integers, reflections and reflectable-base
checks are exact.  Type A_l lives in Z^(l+1); B/C/D/BC_l live in Z^l.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

Root = tuple[int, ...]

TYPES = ("A", "B", "C", "D", "BC")


def dot(u: Root, v: Root) -> int:
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    roots: frozenset[Root]

    @property
    def dim(self) -> int:
        return self.rank + 1 if self.type_label == "A" else self.rank

    def __contains__(self, v) -> bool:
        return tuple(v) in self.roots

    def sorted_roots(self) -> list[Root]:
        return sorted(self.roots)

    def to_json(self) -> dict:
        return {
            "type": self.type_label,
            "rank": self.rank,
            "roots": [list(r) for r in self.sorted_roots()],
        }


def _eps(dim: int, i: int, c: int = 1) -> Root:
    v = [0] * dim
    v[i] = c
    return tuple(v)


def _add(u: Root, v: Root) -> Root:
    return tuple(a + b for a, b in zip(u, v))


def _neg(u: Root) -> Root:
    return tuple(-a for a in u)


def build(type_label: str, rank: int) -> RootSystem:
    """The full root set of the classical type in epsilon-coordinates."""
    if type_label not in TYPES:
        raise ValueError(f"unknown type {type_label!r}")
    min_rank = 2 if type_label == "D" else 1
    if rank < min_rank:
        raise ValueError(f"type {type_label} needs rank >= {min_rank}")
    roots: set[Root] = set()
    if type_label == "A":
        d = rank + 1
        for i in range(d):
            for j in range(d):
                if i != j:
                    roots.add(_add(_eps(d, i), _eps(d, j, -1)))
        return RootSystem("A", rank, frozenset(roots))
    d = rank
    for i, j in combinations(range(d), 2):
        for si in (1, -1):
            for sj in (1, -1):
                roots.add(_add(_eps(d, i, si), _eps(d, j, sj)))
    if type_label in ("B", "BC"):
        for i in range(d):
            roots.add(_eps(d, i))
            roots.add(_eps(d, i, -1))
    if type_label in ("C", "BC"):
        for i in range(d):
            roots.add(_eps(d, i, 2))
            roots.add(_eps(d, i, -2))
    return RootSystem(type_label, rank, frozenset(roots))


def cartan_integer(mu, nu) -> int:
    """2(mu,nu)/(nu,nu), asserted to be an integer; <0,nu> = 0, nu != 0."""
    mu, nu = tuple(mu), tuple(nu)
    nn = dot(nu, nu)
    if nn == 0:
        raise ValueError("Cartan integer undefined against the zero vector")
    if all(c == 0 for c in mu):
        return 0
    num = 2 * dot(mu, nu)
    if num % nn:
        raise ValueError(f"non-integral Cartan pairing for {mu}, {nu}")
    return num // nn


def reflect(system: RootSystem, alpha, beta) -> Root:
    """sigma_alpha(beta) = beta - <beta, alpha> alpha, alpha a root."""
    alpha, beta = tuple(alpha), tuple(beta)
    if alpha not in system.roots:
        raise ValueError(f"{alpha} is not a root")
    c = cartan_integer(beta, alpha)
    return tuple(b - c * a for a, b in zip(alpha, beta))


def reduced(system: RootSystem) -> frozenset[Root]:
    """Roots whose half is not a root (everything except the doubled roots
    of type BC)."""
    out = set()
    for r in system.roots:
        if all(c % 2 == 0 for c in r) and tuple(c // 2 for c in r) in system.roots:
            continue
        out.add(r)
    return frozenset(out)


def _rank_of(vectors) -> int:
    rows = [[Fraction(c) for c in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def is_reflectable_base(system: RootSystem, pi) -> bool:
    """True iff pi is a vector-space basis of span(roots) and iterated
    pi-reflections of pi reach every reduced root (BFS to fixation)."""
    base = [tuple(p) for p in pi]
    if any(p not in system.roots for p in base):
        return False
    span_dim = _rank_of(system.sorted_roots())
    if len(base) != span_dim or _rank_of(base) != span_dim:
        return False
    orbit = set(base)
    frontier = list(base)
    while frontier:
        nxt = []
        for beta in frontier:
            for alpha in base:
                img = reflect(system, alpha, beta)
                if img not in orbit:
                    orbit.add(img)
                    nxt.append(img)
        frontier = nxt
    return reduced(system) <= orbit


def standard_reflectable_base(system: RootSystem) -> tuple[Root, ...]:
    """A fixed reflectable base per type: the simple roots, and for BC the
    simple roots of its B-subsystem.  Asserted via is_reflectable_base."""
    t, l, d = system.type_label, system.rank, system.dim
    chain = [_add(_eps(d, i), _eps(d, i + 1, -1)) for i in range(l - 1)]
    if t == "A":
        base = [_add(_eps(d, i), _eps(d, i + 1, -1)) for i in range(l)]
    elif t in ("B", "BC"):
        base = chain + [_eps(d, l - 1)]
    elif t == "C":
        base = chain + [_eps(d, l - 1, 2)]
    else:  # D
        base = chain + [_add(_eps(d, l - 2), _eps(d, l - 1))]
    base_t = tuple(base)
    if not is_reflectable_base(system, base_t):
        raise AssertionError(f"standard base failed for {t}_{l}")
    return base_t


def is_irreducible(system: RootSystem) -> bool:
    """Connectivity of the roots under non-orthogonality.  D_2 is the one
    reducible system the builders admit."""
    roots = system.sorted_roots()
    seen = {roots[0]}
    frontier = [roots[0]]
    while frontier:
        nxt = []
        for r in frontier:
            for q in roots:
                if q not in seen and dot(r, q) != 0:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen) == len(roots)


def base_coordinates(base, vector) -> tuple[int, ...]:
    """Integer coordinates of a root-lattice vector over a Z-basis `base`.

    Raises if the solution is not integral (vector outside the lattice)."""
    base = [tuple(b) for b in base]
    vector = tuple(vector)
    ncols = len(vector)
    # solve c * B = vector by Gaussian elimination on the transpose
    rows = [[Fraction(base[i][j]) for i in range(len(base))] + [Fraction(vector[j])] for j in range(ncols)]
    k = len(base)
    rank = 0
    for col in range(k):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    coords = [Fraction(0)] * k
    for r in range(rank):
        col = next(i for i in range(k) if rows[r][i] != 0)
        coords[col] = rows[r][k] / rows[r][col]
    for r in range(rank, len(rows)):
        if rows[r][k] != 0:
            raise ValueError(f"{vector} is outside the span of the base")
    out = []
    for c in coords:
        if c.denominator != 1:
            raise ValueError(f"{vector} is not an integer combination of the base")
        out.append(int(c))
    return tuple(out)
