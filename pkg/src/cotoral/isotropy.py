"""Geometric-isotropy calculus on cotorally closed subgroup families.

A family of closed subgroups that is closed under passage to cotoral
subgroups and has finitely many cotoral-maximal members is represented by
the canonical antichain of those maximal members.  Finite objects are
formal wedges of basic cells; their isotropy is the union of the cotoral
cones of the cells' subgroups, and thick-tensor-ideal containment is
decided by comparing isotropy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import (
    AmbientMismatchError,
    AmbientTorus,
    ClosedSubgroup,
    IntegerLattice,
    is_cotoral,
    lattices_between,
    _quotient_structure,
)


@dataclass(frozen=True)
class IsotropySet:
    """A cotorally downward-closed family, stored as its maximal antichain.

    The antichain is sorted by (dimension descending, lexicographic
    annihilator basis), so value-equal families are structurally equal.
    """

    ambient: AmbientTorus
    maximal: tuple[ClosedSubgroup, ...]

    @staticmethod
    def from_members(ambient: AmbientTorus,
                     members: Iterable[ClosedSubgroup]) -> "IsotropySet":
        """Canonical antichain of the cotoral-maximal members."""
        pool = []
        for k in members:
            if k.ambient != ambient:
                raise AmbientMismatchError(
                    f"member of T^{k.ambient.rank} in an isotropy set over "
                    f"T^{ambient.rank}")
            if k not in pool:
                pool.append(k)
        keep = [k for k in pool
                if not any(k != other and is_cotoral(k, other)
                           for other in pool)]
        keep.sort(key=lambda k: k.sort_key())
        return IsotropySet(ambient, tuple(keep))

    @staticmethod
    def empty(ambient: AmbientTorus) -> "IsotropySet":
        return IsotropySet(ambient, ())

    @property
    def is_empty(self) -> bool:
        return not self.maximal

    def member(self, subgroup: ClosedSubgroup) -> bool:
        if subgroup.ambient != self.ambient:
            raise AmbientMismatchError("membership across different tori")
        return any(is_cotoral(subgroup, m) for m in self.maximal)

    def contains(self, other: "IsotropySet") -> bool:
        self._check(other)
        return all(self.member(m) for m in other.maximal)

    def union(self, other: "IsotropySet") -> "IsotropySet":
        self._check(other)
        return IsotropySet.from_members(self.ambient,
                                        self.maximal + other.maximal)

    def intersection(self, other: "IsotropySet") -> "IsotropySet":
        self._check(other)
        out = IsotropySet.empty(self.ambient)
        for h in self.maximal:
            for k in other.maximal:
                out = out.union(intersect_cones(h, k))
        return out

    def equals(self, other: "IsotropySet") -> bool:
        self._check(other)
        return self == other

    def _check(self, other: "IsotropySet") -> None:
        if other.ambient != self.ambient:
            raise AmbientMismatchError("isotropy sets over different tori")


def cone(subgroup: ClosedSubgroup) -> IsotropySet:
    """The family of all subgroups cotoral in the given one."""
    return IsotropySet(subgroup.ambient, (subgroup,))


def member(subgroup: ClosedSubgroup, family: IsotropySet) -> bool:
    return family.member(subgroup)


def intersect_cones(h: ClosedSubgroup, k: ClosedSubgroup) -> IsotropySet:
    """The intersection of two cotoral cones, as a canonical antichain.

    Every maximal member of the intersection contains the identity
    component of h meet k and is contained in h meet k, so its annihilator
    sits between the sum of the two annihilators and that sum's
    saturation.  The finitely many intermediate lattices are enumerated
    and filtered by the two torsion-freeness tests.
    """
    if h.ambient != k.ambient:
        raise AmbientMismatchError("cones over different tori")
    sigma = h.annihilator.sum(k.annihilator)
    sat = sigma.saturation()
    survivors = []
    for lam in lattices_between(sigma, sat):
        ok = True
        for upper in (h.annihilator, k.annihilator):
            factors, _ = _quotient_structure(upper, lam)
            if factors:
                ok = False
                break
        if ok:
            survivors.append(ClosedSubgroup(h.ambient, lam))
    return IsotropySet.from_members(h.ambient, survivors)


@dataclass(frozen=True)
class BasicCell:
    """A suspension of the basic cell attached to a closed subgroup."""

    subgroup: ClosedSubgroup
    degree: int = 0


@dataclass(frozen=True)
class FiniteObjectExpr:
    """A formal wedge of basic cells; the empty wedge is the zero object."""

    ambient: AmbientTorus
    cells: tuple[BasicCell, ...]

    @staticmethod
    def wedge_of(ambient: AmbientTorus,
                 cells: Iterable[BasicCell]) -> "FiniteObjectExpr":
        cells = list(cells)
        for cell in cells:
            if cell.subgroup.ambient != ambient:
                raise AmbientMismatchError(
                    f"cell over T^{cell.subgroup.ambient.rank} in a wedge "
                    f"over T^{ambient.rank}")
        cells.sort(key=lambda c: (c.degree,) + c.subgroup.sort_key())
        return FiniteObjectExpr(ambient, tuple(cells))

    @staticmethod
    def zero(ambient: AmbientTorus) -> "FiniteObjectExpr":
        return FiniteObjectExpr(ambient, ())

    def wedge(self, other: "FiniteObjectExpr") -> "FiniteObjectExpr":
        if other.ambient != self.ambient:
            raise AmbientMismatchError("wedge across different tori")
        return FiniteObjectExpr.wedge_of(self.ambient,
                                         self.cells + other.cells)

    def suspend(self, n: int) -> "FiniteObjectExpr":
        return FiniteObjectExpr.wedge_of(
            self.ambient,
            (BasicCell(c.subgroup, c.degree + n) for c in self.cells))


def sigma(subgroup: ClosedSubgroup, degree: int = 0) -> FiniteObjectExpr:
    """The wedge consisting of a single (suspended) basic cell."""
    return FiniteObjectExpr.wedge_of(subgroup.ambient,
                                     [BasicCell(subgroup, degree)])


def isotropy_of(expr: FiniteObjectExpr) -> IsotropySet:
    """Geometric isotropy of a wedge of basic cells; suspensions are ignored."""
    return IsotropySet.from_members(expr.ambient,
                                    (c.subgroup for c in expr.cells))


def ideal_contains(x: FiniteObjectExpr, y: FiniteObjectExpr) -> bool:
    """Does the thick tensor ideal generated by x contain y?

    Finite objects generate the same ideals as their isotropy families,
    so this reduces to containment of isotropy.
    """
    if x.ambient != y.ambient:
        raise AmbientMismatchError("ideal comparison across different tori")
    return isotropy_of(x).contains(isotropy_of(y))


def ideal_equal(x: FiniteObjectExpr, y: FiniteObjectExpr) -> bool:
    if x.ambient != y.ambient:
        raise AmbientMismatchError("ideal comparison across different tori")
    return isotropy_of(x).equals(isotropy_of(y))


def isotropy_to_json(family: IsotropySet) -> dict:
    return {
        "schema": 1,
        "ambient_rank": family.ambient.rank,
        "maximal": [[list(row) for row in m.annihilator.basis]
                    for m in family.maximal],
    }


def isotropy_from_json(doc: dict) -> IsotropySet:
    rank = doc.get("ambient_rank")
    rows_list = doc.get("maximal")
    if not isinstance(rank, int) or rank < 0:
        raise ValueError("ambient_rank must be a non-negative integer")
    if not isinstance(rows_list, list):
        raise ValueError("maximal must be a list of annihilator matrices")
    ambient = AmbientTorus(rank)
    members = [ClosedSubgroup(ambient, IntegerLattice.from_rows(rank, rows))
               for rows in rows_list]
    return IsotropySet.from_members(ambient, members)
