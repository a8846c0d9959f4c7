"""Exact integer-lattice algebra for closed subgroups of a torus.

A closed subgroup K of the rank-r torus T^r is encoded by its annihilator
lattice: the sublattice of the character lattice Z^r consisting of all
characters vanishing on K.  The encoding is order-reversing, and it turns
the cotoral condition (K normal in H with H/K a torus) into a
torsion-freeness test on lattice quotients.

All arithmetic is arbitrary-precision integer arithmetic; there is no
floating point anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence


class DimensionError(ValueError):
    """Shape of an input matrix disagrees with the declared ambient rank."""


class ContainmentError(ValueError):
    """A lattice or subgroup containment precondition failed."""


class AmbientMismatchError(ValueError):
    """Two values live in tori of different ranks."""


Row = tuple[int, ...]
Matrix = tuple[Row, ...]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b and g >= 0.

    When a divides b the result is (|a|, ±1, 0): eliminations with an
    exactly-dividing pivot must leave the pivot row untouched, otherwise
    the reduction loops can cycle.
    """
    if a != 0 and b % a == 0:
        return (a, 1, 0) if a > 0 else (-a, -1, 0)
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def _freeze(rows: Iterable[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _hnf_rows(rows: Sequence[Sequence[int]], ncols: int,
              transform: bool = False):
    """Row-style Hermite normal form of the row span of ``rows``.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot), zero rows are dropped.  With ``transform`` a unimodular
    matrix U is tracked so that U @ rows equals the echelon matrix before
    zero rows are dropped; the rows of U opposite zero rows span the left
    kernel {x : x @ rows == 0}.
    """
    m = [[int(x) for x in row] for row in rows]
    for row in m:
        if len(row) != ncols:
            raise DimensionError(
                f"row of length {len(row)} in a rank-{ncols} ambient")
    n = len(m)
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)] \
        if transform else None
    top = 0
    for col in range(ncols):
        piv = None
        for i in range(top, n):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        if u is not None:
            u[top], u[piv] = u[piv], u[top]
        for i in range(top + 1, n):
            b = m[i][col]
            if b == 0:
                continue
            a = m[top][col]
            g, x, y = _xgcd(a, b)
            aa, bb = a // g, b // g
            r_top, r_i = m[top], m[i]
            m[top] = [x * p + y * q for p, q in zip(r_top, r_i)]
            m[i] = [-bb * p + aa * q for p, q in zip(r_top, r_i)]
            if u is not None:
                s_top, s_i = u[top], u[i]
                u[top] = [x * p + y * q for p, q in zip(s_top, s_i)]
                u[i] = [-bb * p + aa * q for p, q in zip(s_top, s_i)]
        top += 1
    # normalise signs and reduce entries above each pivot
    for i in range(top):
        pj = next(j for j, x in enumerate(m[i]) if x != 0)
        if m[i][pj] < 0:
            m[i] = [-x for x in m[i]]
            if u is not None:
                u[i] = [-x for x in u[i]]
        for i2 in range(i):
            q = m[i2][pj] // m[i][pj]
            if q:
                m[i2] = [p - q * r for p, r in zip(m[i2], m[i])]
                if u is not None:
                    u[i2] = [p - q * r for p, r in zip(u[i2], u[i])]
    basis = _freeze(m[:top])
    if transform:
        kernel = _freeze(u[top:])
        return basis, kernel
    return basis


def _smith_diagonal(rows: Sequence[Sequence[int]], ncols: int,
                    transform: bool = False):
    """Smith normal form diagonal d_1 | d_2 | ... (non-negative).

    With ``transform``, also returns Vinv with U @ rows @ V diagonal, so
    that rowspan(rows) = rowspan(diag @ Vinv): the i-th diagonal entry
    scales the i-th row of Vinv.
    """
    m = [[int(x) for x in row] for row in rows]
    nrows = len(m)
    vinv = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)] \
        if transform else None

    def col_op(j1: int, j2: int, a: int, b: int, c: int, d: int) -> None:
        # columns (j1, j2) <- (a*j1 + c*j2, b*j1 + d*j2); det(a d - b c) = ±1
        for row in m:
            p, q = row[j1], row[j2]
            row[j1], row[j2] = a * p + c * q, b * p + d * q
        if vinv is not None:
            # inverse operation applied to rows of Vinv keeps Vinv = V^-1
            det = a * d - b * c
            ai, bi, ci, di = d * det, -b * det, -c * det, a * det
            r1, r2 = vinv[j1], vinv[j2]
            vinv[j1] = [ai * p + bi * q for p, q in zip(r1, r2)]
            vinv[j2] = [ci * p + di * q for p, q in zip(r1, r2)]

    k = min(nrows, ncols)
    for t in range(k):
        while True:
            piv = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    if m[i][j] != 0:
                        piv = (i, j)
                        break
                if piv:
                    break
            if piv is None:
                break
            i0, j0 = piv
            m[t], m[i0] = m[i0], m[t]
            if j0 != t:
                col_op(t, j0, 0, 1, 1, 0)
            # clear column t below the pivot with row ops
            for i in range(t + 1, nrows):
                b = m[i][t]
                if b == 0:
                    continue
                a = m[t][t]
                g, x, y = _xgcd(a, b)
                aa, bb = a // g, b // g
                r_t, r_i = m[t], m[i]
                m[t] = [x * p + y * q for p, q in zip(r_t, r_i)]
                m[i] = [-bb * p + aa * q for p, q in zip(r_t, r_i)]
            # clear row t to the right of the pivot with column ops
            dirty = False
            for j in range(t + 1, ncols):
                b = m[t][j]
                if b == 0:
                    continue
                a = m[t][t]
                g, x, y = _xgcd(a, b)
                col_op(t, j, x, -(b // g), y, a // g)
                dirty = True
            if not dirty and all(m[i][t] == 0 for i in range(t + 1, nrows)):
                break
    # normalise signs (negating a column negates the matching Vinv row)
    for t in range(k):
        if m[t][t] < 0:
            for row in m:
                row[t] = -row[t]
            if vinv is not None:
                vinv[t] = [-x for x in vinv[t]]
    # enforce the divisibility chain d_t | d_{t+1} by gcd/lcm folds
    for t in range(k):
        for s in range(t + 1, k):
            a, b = m[t][t], m[s][s]
            if a == 0 or b == 0 or b % a == 0:
                continue
            m[t] = [p + q for p, q in zip(m[t], m[s])]
            g, x, y = _xgcd(a, b)
            col_op(t, s, x, -(b // g), y, a // g)
            q = (y * b) // g
            m[s] = [p - q * r for p, r in zip(m[s], m[t])]
    diag = tuple(m[t][t] for t in range(k))
    if transform:
        return diag, _freeze(vinv)
    return diag


@dataclass(frozen=True)
class AmbientTorus:
    """The torus T^r; rank 0 denotes the trivial group."""

    rank: int

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise DimensionError("torus rank must be non-negative")


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of Z^r held in canonical row-style Hermite normal form.

    Two lattices with equal row span are bit-identical, so dataclass
    equality is value equality.
    """

    ambient_rank: int
    basis: Matrix

    @staticmethod
    def from_rows(ambient_rank: int, rows: Iterable[Sequence[int]]
                  ) -> "IntegerLattice":
        return IntegerLattice(ambient_rank, _hnf_rows(list(rows), ambient_rank))

    @staticmethod
    def zero(ambient_rank: int) -> "IntegerLattice":
        return IntegerLattice(ambient_rank, ())

    @staticmethod
    def full(ambient_rank: int) -> "IntegerLattice":
        eye = tuple(tuple(1 if i == j else 0 for j in range(ambient_rank))
                    for i in range(ambient_rank))
        return IntegerLattice(ambient_rank, eye)

    def __post_init__(self) -> None:
        if _hnf_rows(self.basis, self.ambient_rank) != self.basis:
            raise ValueError("basis rows are not in Hermite normal form; "
                             "use IntegerLattice.from_rows")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def _pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x != 0)
                     for row in self.basis)

    def solve(self, vector: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Integer coordinates of ``vector`` in this basis, or None."""
        if len(vector) != self.ambient_rank:
            raise DimensionError("vector length differs from ambient rank")
        v = [int(x) for x in vector]
        coeffs = []
        for row, pj in zip(self.basis, self._pivots):
            q, r = divmod(v[pj], row[pj])
            if r != 0:
                return None
            if q:
                v = [a - q * b for a, b in zip(v, row)]
            coeffs.append(q)
        if any(v):
            return None
        return tuple(coeffs)

    def contains_vector(self, vector: Sequence[int]) -> bool:
        return self.solve(vector) is not None

    def contains_lattice(self, other: "IntegerLattice") -> bool:
        if other.ambient_rank != self.ambient_rank:
            raise DimensionError("ambient ranks differ")
        return all(self.contains_vector(row) for row in other.basis)

    def sum(self, other: "IntegerLattice") -> "IntegerLattice":
        if other.ambient_rank != self.ambient_rank:
            raise DimensionError("ambient ranks differ")
        return IntegerLattice.from_rows(self.ambient_rank,
                                        self.basis + other.basis)

    def intersection(self, other: "IntegerLattice") -> "IntegerLattice":
        if other.ambient_rank != self.ambient_rank:
            raise DimensionError("ambient ranks differ")
        stacked = self.basis + tuple(tuple(-x for x in row)
                                     for row in other.basis)
        _, kernel = _hnf_rows(stacked, self.ambient_rank, transform=True)
        k = self.rank
        rows = []
        for z in kernel:
            v = [0] * self.ambient_rank
            for c, row in zip(z[:k], self.basis):
                if c:
                    v = [a + c * b for a, b in zip(v, row)]
            rows.append(v)
        return IntegerLattice.from_rows(self.ambient_rank, rows)

    @cached_property
    def _smith_diag(self) -> tuple[int, ...]:
        return _smith_diagonal(self.basis, self.ambient_rank)

    def saturation(self) -> "IntegerLattice":
        """Smallest lattice containing this one with torsion-free quotient."""
        if not self.basis:
            return self
        _, vinv = _smith_diagonal(self.basis, self.ambient_rank,
                                  transform=True)
        return IntegerLattice.from_rows(self.ambient_rank, vinv[:self.rank])

    def index_in_saturation(self) -> int:
        idx = 1
        for d in self._smith_diag:
            idx *= d
        return idx

    def is_saturated(self) -> bool:
        return all(d == 1 for d in self._smith_diag)


@dataclass(frozen=True)
class ComponentGroup:
    """Invariant factors d_1 | d_2 | ... of a finite abelian group, each > 1."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        fs = self.invariant_factors
        if any(d < 2 for d in fs):
            raise ValueError("invariant factors must be at least 2")
        if any(fs[i + 1] % fs[i] != 0 for i in range(len(fs) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n


@dataclass(frozen=True)
class ClosedSubgroup:
    """A closed subgroup of T^r, encoded by its annihilator character lattice."""

    ambient: AmbientTorus
    annihilator: IntegerLattice

    def __post_init__(self) -> None:
        if self.annihilator.ambient_rank != self.ambient.rank:
            raise DimensionError("annihilator lives in the wrong character "
                                 "lattice")

    @property
    def dim(self) -> int:
        return self.ambient.rank - self.annihilator.rank

    @property
    def is_connected(self) -> bool:
        return self.annihilator.is_saturated()

    @property
    def is_full_torus(self) -> bool:
        return self.annihilator.rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.dim == 0 and self.component_group().is_trivial

    def component_group(self) -> ComponentGroup:
        diag = _smith_diagonal(self.annihilator.basis, self.ambient.rank)
        return ComponentGroup(tuple(d for d in diag if d > 1))

    def sort_key(self) -> tuple:
        """Deterministic total order: dimension descending, then basis rows."""
        return (-self.dim, self.annihilator.basis)

    def describe(self) -> str:
        """Human label, e.g. 'C2xC4' for a finite group or 'T^1' for a circle."""
        parts = [f"C{d}" for d in self.component_group().invariant_factors]
        if self.dim > 0:
            parts.append(f"T^{self.dim}")
        return "x".join(parts) if parts else "1"


def hermite_normal_form(generators: Iterable[Sequence[int]],
                        ambient_rank: int) -> IntegerLattice:
    """Canonical HNF lattice spanned by the given generator rows."""
    return IntegerLattice.from_rows(ambient_rank, generators)


def smith_invariants(sub: IntegerLattice, sup: IntegerLattice
                     ) -> ComponentGroup:
    """Invariant factors > 1 of the torsion part of sup/sub.

    Requires sub to be contained in sup; the free rank of the quotient is
    available via quotient_free_rank.
    """
    factors, _free = _quotient_structure(sub, sup)
    return ComponentGroup(factors)


def quotient_free_rank(sub: IntegerLattice, sup: IntegerLattice) -> int:
    """Rank of the free part of sup/sub."""
    _factors, free = _quotient_structure(sub, sup)
    return free


def _quotient_structure(sub: IntegerLattice, sup: IntegerLattice
                        ) -> tuple[tuple[int, ...], int]:
    if sub.ambient_rank != sup.ambient_rank:
        raise DimensionError("ambient ranks differ")
    coords = []
    for row in sub.basis:
        c = sup.solve(row)
        if c is None:
            raise ContainmentError("sub is not contained in sup")
        coords.append(c)
    diag = _smith_diagonal(coords, sup.rank)
    factors = tuple(d for d in diag if d > 1)
    free = sup.rank - sum(1 for d in diag if d != 0)
    return factors, free


def canonicalize_subgroup(ambient: AmbientTorus,
                          generators: Iterable[Sequence[int]]
                          ) -> ClosedSubgroup:
    """Closed subgroup with annihilator spanned by the given character rows."""
    return ClosedSubgroup(ambient,
                          IntegerLattice.from_rows(ambient.rank, generators))


def full_torus(rank: int) -> ClosedSubgroup:
    return ClosedSubgroup(AmbientTorus(rank), IntegerLattice.zero(rank))


def trivial_subgroup(rank: int) -> ClosedSubgroup:
    return ClosedSubgroup(AmbientTorus(rank), IntegerLattice.full(rank))


def cyclic_subgroup(order: int) -> ClosedSubgroup:
    """The subgroup C_n of the circle T^1."""
    if order < 1:
        raise ValueError("order must be positive")
    return canonicalize_subgroup(AmbientTorus(1), [(order,)])


def _check_same_ambient(a: ClosedSubgroup, b: ClosedSubgroup) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatchError(
            f"subgroups live in T^{a.ambient.rank} and T^{b.ambient.rank}")


def is_subgroup(small: ClosedSubgroup, big: ClosedSubgroup) -> bool:
    """Containment small <= big, via the order-reversing annihilator duality."""
    _check_same_ambient(small, big)
    return small.annihilator.contains_lattice(big.annihilator)


def is_cotoral(small: ClosedSubgroup, big: ClosedSubgroup) -> bool:
    """True when small is normal in big with torus quotient.

    Equivalently the annihilator of big sits inside that of small with
    torsion-free quotient.  Reflexive by convention.
    """
    _check_same_ambient(small, big)
    if not small.annihilator.contains_lattice(big.annihilator):
        return False
    factors, _ = _quotient_structure(big.annihilator, small.annihilator)
    return not factors


def subgroup_meet(a: ClosedSubgroup, b: ClosedSubgroup) -> ClosedSubgroup:
    """The intersection subgroup; annihilators add."""
    _check_same_ambient(a, b)
    return ClosedSubgroup(a.ambient, a.annihilator.sum(b.annihilator))


def subgroup_sum(a: ClosedSubgroup, b: ClosedSubgroup) -> ClosedSubgroup:
    """The closed subgroup generated by the union; annihilators intersect."""
    _check_same_ambient(a, b)
    return ClosedSubgroup(a.ambient, a.annihilator.intersection(b.annihilator))


def quotient_subgroup(k: ClosedSubgroup, h: ClosedSubgroup) -> ClosedSubgroup:
    """The subgroup H/K of the quotient torus T/K, for K <= H.

    T/K is again a torus; its character lattice is the annihilator of K,
    so the result lives in an ambient of rank equal to that lattice's rank,
    with annihilator given by the characters of H rewritten in the HNF
    basis of the characters of K.
    """
    _check_same_ambient(k, h)
    if not is_subgroup(k, h):
        raise ContainmentError("the quotient K\\H needs K <= H")
    lam_k = k.annihilator
    rows = []
    for row in h.annihilator.basis:
        c = lam_k.solve(row)
        if c is None:  # unreachable given K <= H
            raise ContainmentError("annihilator of H escapes that of K")
        rows.append(c)
    new_rank = lam_k.rank
    return ClosedSubgroup(AmbientTorus(new_rank),
                          IntegerLattice.from_rows(new_rank, rows))


def lattices_between(lower: IntegerLattice, upper: IntegerLattice
                     ) -> list[IntegerLattice]:
    """All lattices L with lower <= L <= upper (finitely many).

    Requires lower <= upper of equal rank, so upper/lower is finite; the
    intermediate lattices correspond to subgroups of that quotient.
    """
    if lower.ambient_rank != upper.ambient_rank:
        raise DimensionError("ambient ranks differ")
    if not upper.contains_lattice(lower):
        raise ContainmentError("lower is not contained in upper")
    if lower.rank != upper.rank:
        raise ContainmentError("quotient upper/lower is infinite")
    s = upper.rank
    if s == 0:
        return [lower]
    coords = tuple(upper.solve(row) for row in lower.basis)
    diag, vinv = _smith_diagonal(coords, s, transform=True)
    # adapted basis of upper in which lower is diagonal
    adapted = []
    for i in range(s):
        v = [0] * lower.ambient_rank
        for c, row in zip(vinv[i], upper.basis):
            if c:
                v = [a + c * b for a, b in zip(v, row)]
        adapted.append(tuple(v))
    moduli = [d for d in diag]
    # subgroups of prod Z/d_i by closure under addition of one more generator
    def close(elems: frozenset, gen: tuple) -> frozenset:
        out = set(elems)
        frontier = list(elems)
        while frontier:
            e = frontier.pop()
            ne = tuple((a + b) % d for a, b, d in zip(e, gen, moduli))
            if ne not in out:
                out.add(ne)
                frontier.append(ne)
        return frozenset(out)

    zero = tuple(0 for _ in moduli)
    all_elems = [zero]
    for i, d in enumerate(moduli):
        all_elems = [e[:i] + (x,) + e[i + 1:] for e in all_elems
                     for x in range(d)]
    subgroups = {frozenset([zero])}
    frontier = [frozenset([zero])]
    while frontier:
        sg = frontier.pop()
        for g in all_elems:
            if g in sg:
                continue
            bigger = close(sg, g)
            if bigger not in subgroups:
                subgroups.add(bigger)
                frontier.append(bigger)
    out = {}
    for sg in subgroups:
        rows = list(lower.basis)
        for elem in sg:
            v = [0] * lower.ambient_rank
            for c, row in zip(elem, adapted):
                if c:
                    v = [a + c * b for a, b in zip(v, row)]
            rows.append(v)
        lat = IntegerLattice.from_rows(lower.ambient_rank, rows)
        out[lat.basis] = lat
    return sorted(out.values(), key=lambda l: l.basis)


def subgroup_to_json(k: ClosedSubgroup) -> dict:
    return {
        "schema": 1,
        "ambient_rank": k.ambient.rank,
        "annihilator_rows": [list(row) for row in k.annihilator.basis],
    }


def subgroup_from_json(doc: dict) -> ClosedSubgroup:
    if not isinstance(doc, dict):
        raise ValueError("subgroup document must be an object")
    rank = doc.get("ambient_rank")
    rows = doc.get("annihilator_rows")
    if not isinstance(rank, int) or rank < 0:
        raise ValueError("ambient_rank must be a non-negative integer")
    if not isinstance(rows, list):
        raise ValueError("annihilator_rows must be a list of integer rows")
    return canonicalize_subgroup(AmbientTorus(rank), rows)
