"""Degree-windowed doubly graded Lie algebras, realized concretely inside
sl_N tensored with Laurent monomials in n variables.

An element is a finite sum of terms (matrix unit, Laurent exponent,
rational coefficient); brackets are exact matrix commutators with exponents
adding.  A GradedAlgebra stores, per (weight, degree) pair inside a finite
degree box, a canonical reduced row echelon basis of the homogeneous space,
so dimension counts and equality tests are deterministic.

Besides the full multi-loop algebra of sl_N this module builds generated
subalgebras (least bracket-closed homogeneous subspace of a generator set,
brackets leaving the window discarded) and the pair of twisted loop
algebras fixed by the two standard involutions of sl_{2l} lifted with a
sign twist per degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import Box, DimensionMismatch, Point, as_point
from .rootsys import RootSystem, build

Term = tuple[int, int, Point]  # (row, col, Laurent exponent)


class InhomogeneousGenerator(ValueError):
    """A generator mixes weights or degrees."""


@dataclass(frozen=True)
class AlgebraElement:
    """Sparse exact element of sl_N over Laurent monomials."""

    size: int
    group_rank: int
    terms: tuple[tuple[Term, Fraction], ...]  # sorted by term, coeffs nonzero

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._match(other)
        acc = dict(self.terms)
        for t, c in other.terms:
            acc[t] = acc.get(t, Fraction(0)) + c
        return _from_dict(self.size, self.group_rank, acc)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "AlgebraElement":
        c = Fraction(c)
        if c == 0:
            return AlgebraElement(self.size, self.group_rank, ())
        return AlgebraElement(
            self.size, self.group_rank, tuple((t, c * a) for t, a in self.terms)
        )

    def _match(self, other: "AlgebraElement"):
        if self.size != other.size or self.group_rank != other.group_rank:
            raise DimensionMismatch("elements from different algebra contexts")

    def degrees(self) -> set[Point]:
        return {t[2] for t, _ in self.terms}

    def to_json(self) -> list:
        return [[t[0], t[1], list(t[2]), str(c)] for t, c in self.terms]

    @staticmethod
    def from_json(size: int, group_rank: int, quads) -> "AlgebraElement":
        acc: dict[Term, Fraction] = {}
        for i, j, expo, c in quads:
            key = (int(i), int(j), as_point(expo))
            acc[key] = acc.get(key, Fraction(0)) + Fraction(c)
        return _from_dict(size, group_rank, acc)


def _from_dict(size: int, group_rank: int, acc: dict[Term, Fraction]) -> AlgebraElement:
    items = tuple(sorted((t, c) for t, c in acc.items() if c != 0))
    return AlgebraElement(size, group_rank, items)


def matrix_unit_element(size: int, group_rank: int, i: int, j: int, deg, coeff=1) -> AlgebraElement:
    """coeff * E_ij tensor t^deg; i == j is allowed only inside trace-zero
    combinations, so prefer cartan_element for diagonals."""
    d = as_point(deg)
    if len(d) != group_rank:
        raise DimensionMismatch("degree length != group rank")
    if not (0 <= i < size and 0 <= j < size):
        raise ValueError("matrix index out of range")
    return _from_dict(size, group_rank, {(i, j, d): Fraction(coeff)})


def cartan_element(size: int, group_rank: int, diag, deg) -> AlgebraElement:
    """A diagonal matrix (entries must sum to zero) tensor t^deg."""
    d = as_point(deg)
    entries = [Fraction(c) for c in diag]
    if len(entries) != size:
        raise DimensionMismatch("diagonal length != matrix size")
    if sum(entries) != 0:
        raise ValueError("diagonal is not trace-free")
    return _from_dict(size, group_rank, {(a, a, d): c for a, c in enumerate(entries) if c != 0})


def bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """[x ts^u, y ts^v] = (xy - yx) ts^(u+v), bilinear over all terms."""
    a._match(b)
    acc: dict[Term, Fraction] = {}
    for (i, j, u), ca in a.terms:
        for (k, l, v), cb in b.terms:
            c = ca * cb
            w = tuple(p + q for p, q in zip(u, v))
            if j == k:
                key = (i, l, w)
                acc[key] = acc.get(key, Fraction(0)) + c
            if l == i:
                key = (k, j, w)
                acc[key] = acc.get(key, Fraction(0)) - c
    return _from_dict(a.size, a.group_rank, acc)


def graded_form(x: AlgebraElement, y: AlgebraElement) -> Fraction:
    """Trace pairing: (x ts^u, y ts^v) = trace(xy) when u + v = 0, else 0."""
    x._match(y)
    total = Fraction(0)
    ydict = dict(y.terms)
    for (i, j, u), c in x.terms:
        key = (j, i, tuple(-q for q in u))
        if key in ydict:
            total += c * ydict[key]
    return total


# ---------------------------------------------------------------------------
# canonical bases per homogeneous space
# ---------------------------------------------------------------------------


def _leading(vec: dict[Term, Fraction]) -> Term:
    return min(vec)


def _vec_of(elem: AlgebraElement) -> dict[Term, Fraction]:
    return dict(elem.terms)


def _elem_of(size: int, group_rank: int, vec: dict[Term, Fraction]) -> AlgebraElement:
    return _from_dict(size, group_rank, vec)


class _Basis:
    """Reduced row echelon basis over Q, rows monic and lead-sorted."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: list[dict[Term, Fraction]] = []

    def reduce(self, vec: dict[Term, Fraction]) -> dict[Term, Fraction]:
        vec = dict(vec)
        for row in self.rows:
            lead = _leading(row)
            c = vec.get(lead)
            if c:
                for t, a in row.items():
                    r = vec.get(t, Fraction(0)) - c * a
                    if r:
                        vec[t] = r
                    else:
                        vec.pop(t, None)
        return vec

    def insert(self, vec: dict[Term, Fraction]) -> dict[Term, Fraction] | None:
        """Insert the reduction of vec; returns the new monic row or None."""
        vec = self.reduce(vec)
        if not vec:
            return None
        lead = _leading(vec)
        inv = vec[lead]
        vec = {t: c / inv for t, c in vec.items()}
        # keep the other rows reduced by the new one
        for row in self.rows:
            c = row.get(lead)
            if c:
                for t, a in vec.items():
                    r = row.get(t, Fraction(0)) - c * a
                    if r:
                        row[t] = r
                    else:
                        row.pop(t, None)
        self.rows.append(vec)
        self.rows.sort(key=_leading)
        return vec

    def contains(self, vec: dict[Term, Fraction]) -> bool:
        return not self.reduce(vec)

    def dim(self) -> int:
        return len(self.rows)


class GradedAlgebra:
    """Doubly graded window: spaces[(weight, degree)] -> canonical basis.

    weight_matrix assigns each matrix index its epsilon-coordinate vector;
    the weight of a unit E_ij is row_i - row_j.  degree_validity records,
    per weight, the degree box actually populated (isotopes shrink it)."""

    def __init__(self, size, group_rank, window: Box, root_system: RootSystem,
                 weight_matrix, spaces, degree_validity=None):
        self.size = size
        self.group_rank = group_rank
        self.window = window
        self.root_system = root_system
        self.weight_matrix = tuple(tuple(r) for r in weight_matrix)
        self.spaces: dict[tuple[Point, Point], tuple[AlgebraElement, ...]] = spaces
        self.degree_validity: dict[Point, Box] = degree_validity or {}

    # -- weights ------------------------------------------------------------

    @property
    def weight_dim(self) -> int:
        return len(self.weight_matrix[0])

    def zero_weight(self) -> Point:
        return (0,) * self.weight_dim

    def weights(self) -> list[Point]:
        return sorted(self.root_system.roots) + [self.zero_weight()]

    def term_weight(self, term: Term) -> Point:
        i, j, _ = term
        wi, wj = self.weight_matrix[i], self.weight_matrix[j]
        return tuple(a - b for a, b in zip(wi, wj))

    def weight_of(self, elem: AlgebraElement) -> Point:
        ws = {self.term_weight(t) for t, _ in elem.terms}
        if len(ws) != 1:
            raise InhomogeneousGenerator(f"element mixes weights {sorted(ws)}")
        return ws.pop()

    def degree_of(self, elem: AlgebraElement) -> Point:
        ds = elem.degrees()
        if len(ds) != 1:
            raise InhomogeneousGenerator("element mixes degrees")
        return ds.pop()

    # -- spaces ---------------------------------------------------------------

    def validity(self, mu: Point) -> Box:
        return self.degree_validity.get(mu, self.window)

    def space(self, mu, g) -> tuple[AlgebraElement, ...]:
        return self.spaces.get((as_point(mu), as_point(g)), ())

    def dim(self, mu, g) -> int:
        return len(self.space(mu, g))

    def in_span(self, elem: AlgebraElement, mu, g) -> bool:
        basis = _Basis()
        for b in self.space(mu, g):
            basis.insert(_vec_of(b))
        return basis.contains(_vec_of(elem))

    def support_of(self, mu) -> list[Point]:
        mu = as_point(mu)
        if mu != self.zero_weight() and mu not in self.root_system.roots:
            raise ValueError(f"{mu} is not a weight of this algebra")
        return sorted(g for (m, g), basis in self.spaces.items() if m == mu and basis)

    def observed_support(self) -> list[Point]:
        return sorted({g for (_, g), basis in self.spaces.items() if basis})

    def basis_items(self, inside: Box | None = None):
        """(key, element) pairs, optionally restricted to a degree box."""
        for key in sorted(self.spaces):
            mu, g = key
            if inside is not None and not inside.contains(g):
                continue
            for elem in self.spaces[key]:
                yield key, elem

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "group_rank": self.group_rank,
            "window": self.window.to_json(),
            "root_system": self.root_system.to_json(),
            "spaces": {
                f"{list(mu)}|{list(g)}": [e.to_json() for e in basis]
                for (mu, g), basis in sorted(self.spaces.items())
                if basis
            },
        }


def support(L: GradedAlgebra, mu) -> list[Point]:
    """Degrees in the window carrying a nonzero weight-mu space, sorted."""
    return L.support_of(mu)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def multiloop(size: int, group_rank: int, window: Box) -> GradedAlgebra:
    """Full sl_N over Laurent polynomials in n variables, degrees in window.

    Root spaces are the units E_ij ts^g (weight eps_i - eps_j); the weight-0
    space at each degree is the trace-free diagonal."""
    if size < 2:
        raise ValueError("matrix size must be at least 2")
    if group_rank < 1:
        raise ValueError("group rank must be at least 1")
    if window.rank != group_rank:
        raise DimensionMismatch("window rank != group rank")
    system = build("A", size - 1)
    weight_matrix = tuple(tuple(1 if a == b else 0 for b in range(size)) for a in range(size))
    spaces: dict[tuple[Point, Point], tuple[AlgebraElement, ...]] = {}
    zero_w = (0,) * size
    for g in window.points():
        for i in range(size):
            for j in range(size):
                if i == j:
                    continue
                w = tuple(a - b for a, b in zip(weight_matrix[i], weight_matrix[j]))
                spaces[(w, g)] = (matrix_unit_element(size, group_rank, i, j, g),)
        cartans = tuple(
            cartan_element(size, group_rank, [1 if b == a else (-1 if b == a + 1 else 0) for b in range(size)], g)
            for a in range(size - 1)
        )
        spaces[(zero_w, g)] = cartans
    return GradedAlgebra(size, group_rank, window, system, weight_matrix, spaces)


def generate_subalgebra(L: GradedAlgebra, gens, window: Box) -> GradedAlgebra:
    """Least bracket-closed homogeneous subspace containing the generators,
    with brackets whose degree leaves the window discarded.

    The worklist is processed in lexicographic (weight, degree) order; the
    resulting per-space bases are canonical regardless of schedule."""
    import heapq

    if window.rank != L.group_rank:
        raise DimensionMismatch("window rank != group rank")
    bases: dict[tuple[Point, Point], _Basis] = {}
    heap: list = []
    counter = 0
    processed: list[tuple[Point, AlgebraElement]] = []
    wlo, whi = window.lo, window.hi

    def insert(elem: AlgebraElement, key) -> None:
        nonlocal counter
        basis = bases.get(key)
        if basis is None:
            basis = bases[key] = _Basis()
        row = basis.insert(_vec_of(elem))
        if row is not None:
            counter += 1
            heapq.heappush(heap, (key, counter, tuple(sorted(row.items()))))

    for gen in gens:
        mu = L.weight_of(gen)
        g = L.degree_of(gen)
        if not window.contains(g):
            raise ValueError(f"generator degree {g} outside the window")
        insert(gen, (mu, g))

    while heap:
        key, _, items = heapq.heappop(heap)
        elem = AlgebraElement(L.size, L.group_rank, items)
        deg = key[1]
        processed.append((deg, elem))
        for other_deg, other in processed:
            target_deg = tuple(a + b for a, b in zip(deg, other_deg))
            if any(t < lo or t > hi for t, lo, hi in zip(target_deg, wlo, whi)):
                continue
            z = bracket(elem, other)
            if z.is_zero():
                continue
            insert(z, (L.weight_of(z), target_deg))

    spaces = {
        key: tuple(_elem_of(L.size, L.group_rank, row) for row in basis.rows)
        for key, basis in bases.items()
        if basis.rows
    }
    return GradedAlgebra(L.size, L.group_rank, window, L.root_system, L.weight_matrix, spaces)


# ---------------------------------------------------------------------------
# twisted loop pair
# ---------------------------------------------------------------------------


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _transpose_sparse(vec: dict[Term, Fraction]) -> dict[Term, Fraction]:
    return {(j, i, d): c for (i, j, d), c in vec.items()}


def _conjugate_term(s_inv, s, i, j):
    """s_inv E_ij s as a dense-coefficient dict over units (tiny sizes)."""
    out = {}
    n = len(s)
    for a in range(n):
        ca = s_inv[a][i]
        if ca == 0:
            continue
        for b in range(n):
            cb = s[j][b]
            if cb == 0:
                continue
            out[(a, b)] = out.get((a, b), Fraction(0)) + ca * cb
    return out


def make_involution(s, s_inv):
    """x -> -s^{-1} x^T s as a map on sparse elements."""

    def apply(elem: AlgebraElement) -> AlgebraElement:
        acc: dict[Term, Fraction] = {}
        for (i, j, d), c in elem.terms:
            # transpose swaps the unit indices
            for (a, b), f in _conjugate_term(s_inv, s, j, i).items():
                key = (a, b, d)
                acc[key] = acc.get(key, Fraction(0)) - c * f
        return _from_dict(elem.size, elem.group_rank, acc)

    return apply


@dataclass
class TwistedLoopPair:
    """The two twisted loop algebras of sl_{2l} (orthogonal- and
    symplectic-type involutions) on a common degree window, with the
    involutions kept around as matrix maps."""

    ell: int
    TD: GradedAlgebra
    TC: GradedAlgebra
    sigma1: object
    sigma2: object

    def sigma_hat(self, which: int, elem: AlgebraElement) -> AlgebraElement:
        """Lift with the per-degree sign twist: x ts^m -> (-1)^m sigma(x) ts^m."""
        sigma = self.sigma1 if which == 1 else self.sigma2
        acc: dict[Term, Fraction] = {}
        for (i, j, d), c in elem.terms:
            single = AlgebraElement(elem.size, elem.group_rank, (((i, j, d), c),))
            sign = -1 if d[0] % 2 else 1
            for t, a in sigma(single).terms:
                acc[t] = acc.get(t, Fraction(0)) + sign * a
        return _from_dict(elem.size, elem.group_rank, acc)


def _weight_space_units(size, weight_matrix, xi):
    units = []
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            w = tuple(a - b for a, b in zip(weight_matrix[i], weight_matrix[j]))
            if w == xi:
                units.append((i, j))
    return units


def _eigen_basis_units(size, group_rank, units, sigma, sign, deg):
    """Basis of the `sign` eigenspace of sigma inside span of the given
    units, as elements at Laurent exponent deg."""
    basis = _Basis()
    out = []
    for i, j in units:
        e = matrix_unit_element(size, group_rank, i, j, deg)
        # x + sign*sigma(x) spans the sign eigenspace (sigma involutive)
        proj = e + sigma(e).scale(sign)
        if proj.is_zero():
            continue
        row = basis.insert(_vec_of(proj.scale(Fraction(1, 2))))
        if row is not None:
            out.append(_elem_of(size, group_rank, row))
    return out


def _eigen_basis_diag(size, group_rank, sigma, sign, deg):
    basis = _Basis()
    out = []
    for a in range(size - 1):
        h = cartan_element(size, group_rank, [1 if b == a else (-1 if b == a + 1 else 0) for b in range(size)], deg)
        proj = h + sigma(h).scale(sign)
        if proj.is_zero():
            continue
        row = basis.insert(_vec_of(proj.scale(Fraction(1, 2))))
        if row is not None:
            out.append(_elem_of(size, group_rank, row))
    return out


def build_twisted_pair(ell: int, window: Box) -> TwistedLoopPair:
    """sl_{2l} with the two standard involutions x -> -s_i^{-1} x^T s_i
    (s_1 the swap form, s_2 the symplectic form), lifted to the loop algebra
    with a sign per degree; returns the two fixed algebras on the window.

    Even degrees carry the fixed subalgebra of the involution, odd degrees
    its -1 eigenspace; both algebras are graded by the C_l root system."""
    if ell < 2:
        raise ValueError("the twisted pair needs ell >= 2")
    if window.rank != 1:
        raise DimensionMismatch("the twisted pair is graded by Z (rank-1 window)")
    size = 2 * ell
    system = build("C", ell)
    # index a < ell carries +eps_a, index ell + a carries -eps_a
    weight_matrix = tuple(
        tuple((1 if b == a else 0) for b in range(ell)) if a < ell
        else tuple((-1 if b == a - ell else 0) for b in range(ell))
        for a in range(size)
    )
    iden = [[Fraction(1 if i == j else 0) for j in range(ell)] for i in range(ell)]
    zero = [[Fraction(0)] * ell for _ in range(ell)]

    def blockmat(tl, tr, bl, br):
        top = [tl[i] + tr[i] for i in range(ell)]
        bot = [bl[i] + br[i] for i in range(ell)]
        return top + bot

    s1 = blockmat(zero, iden, iden, zero)
    s2 = blockmat(zero, [[-c for c in row] for row in iden], iden, zero)
    s2_inv = blockmat(zero, iden, [[-c for c in row] for row in iden], zero)
    sigma1 = make_involution(s1, s1)  # s1 is its own inverse
    sigma2 = make_involution(s2, s2_inv)

    zero_w = (0,) * ell

    def build_algebra(sigma) -> GradedAlgebra:
        cache: dict[tuple[Point, int], list] = {}
        spaces: dict[tuple[Point, Point], tuple[AlgebraElement, ...]] = {}
        for m in range(window.lo[0], window.hi[0] + 1):
            sign = -1 if m % 2 else 1
            for xi in list(system.roots) + [zero_w]:
                ck = (xi, sign)
                if ck not in cache:
                    deg0 = (0,)
                    if xi == zero_w:
                        cache[ck] = _eigen_basis_diag(size, 1, sigma, sign, deg0)
                    else:
                        units = _weight_space_units(size, weight_matrix, xi)
                        cache[ck] = _eigen_basis_units(size, 1, units, sigma, sign, deg0)
                if cache[ck]:
                    shifted = tuple(
                        _elem_of(size, 1, {(i, j, (m,)): c for (i, j, _), c in e.terms})
                        for e in cache[ck]
                    )
                    spaces[(xi, (m,))] = shifted
        return GradedAlgebra(size, 1, window, system, weight_matrix, spaces)

    return TwistedLoopPair(ell, build_algebra(sigma1), build_algebra(sigma2), sigma1, sigma2)
