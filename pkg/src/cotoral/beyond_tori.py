"""Spectra for groups close to tori: finite groups, O(2), SO(3), toral parts.

Finite groups give discrete spectra.  For O(2) the spectrum splits into a
cyclic part (the circle's spectrum, fixed by conjugation) and a dihedral
part carried by the convergent-sequence space with limit point the whole
group; for SO(3) the same pieces appear after identifying the order-2
dihedral class with the cyclic class of order 2, plus three exceptional
points.  For a toral part of a general compact Lie group the spectrum is
the torus spectrum modulo the Weyl action.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from .lattice import (
    AmbientMismatchError,
    AmbientTorus,
    ClosedSubgroup,
    DimensionError,
    IntegerLattice,
    cyclic_subgroup,
    is_cotoral,
    subgroup_to_json,
)
from .isotropy import IsotropySet
from .balmer import (
    SliceBound,
    _node_label,
    enumerate_slice,
    is_realizable_support,
)


@dataclass(frozen=True)
class DiscretePoset:
    """Finitely many points, no specialisations."""

    labels: tuple[str, ...]


def finite_group_spectrum(labels: Iterable[str]) -> DiscretePoset:
    """The discrete spectrum on caller-supplied conjugacy-class labels."""
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError("class labels must be distinct")
    return DiscretePoset(labels)


# ---------------------------------------------------------------------------
# O(2) and SO(3)

@dataclass(frozen=True)
class O2Cyclic:
    """A prime in the cyclic part, carried by a closed subgroup of SO(2)."""

    subgroup: ClosedSubgroup

    def __post_init__(self) -> None:
        if self.subgroup.ambient.rank != 1:
            raise DimensionError("cyclic-part subgroups live in the circle")


@dataclass(frozen=True)
class O2Dihedral:
    """The prime of the dihedral class of order 2n."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("dihedral index must be at least 1")


@dataclass(frozen=True)
class O2Whole:
    """The prime of the full orthogonal group, the limit of the dihedrals."""


O2Prime = Union[O2Cyclic, O2Dihedral, O2Whole]


def o2_prime_leq(p: O2Prime, q: O2Prime) -> bool:
    """Specialisation order on the O(2) spectrum.

    The cyclic part is ordered by cotoral inclusion; distinct points of
    the dihedral part are unrelated (their interaction is topological,
    carried by realizable supports, not order-theoretic).
    """
    if isinstance(p, O2Cyclic) and isinstance(q, O2Cyclic):
        return is_cotoral(p.subgroup, q.subgroup)
    return p == q


@dataclass(frozen=True)
class DihedralFamily:
    """A finite or cofinite set of dihedral classes D_{2n}, n >= 1.

    ``members`` is the set itself, or its complement when ``cofinite``.
    """

    cofinite: bool
    members: frozenset[int]

    @staticmethod
    def finite(ns: Iterable[int]) -> "DihedralFamily":
        return DihedralFamily(False, frozenset(int(n) for n in ns))

    @staticmethod
    def all_but(ns: Iterable[int]) -> "DihedralFamily":
        return DihedralFamily(True, frozenset(int(n) for n in ns))

    def __post_init__(self) -> None:
        if any(n < 1 for n in self.members):
            raise ValueError("dihedral indices must be at least 1")

    def __contains__(self, n: int) -> bool:
        return (n in self.members) != self.cofinite

    def union(self, other: "DihedralFamily") -> "DihedralFamily":
        if not self.cofinite and not other.cofinite:
            return DihedralFamily(False, self.members | other.members)
        if self.cofinite and other.cofinite:
            return DihedralFamily(True, self.members & other.members)
        fin, cof = (self, other) if other.cofinite else (other, self)
        return DihedralFamily(True, cof.members - fin.members)

    def intersection(self, other: "DihedralFamily") -> "DihedralFamily":
        if self.cofinite and other.cofinite:
            return DihedralFamily(True, self.members | other.members)
        if not self.cofinite and not other.cofinite:
            return DihedralFamily(False, self.members & other.members)
        fin, cof = (self, other) if other.cofinite else (other, self)
        return DihedralFamily(False, fin.members - cof.members)


def o2_is_realizable_support(cyclic_part: IsotropySet,
                             dihedral: DihedralFamily,
                             whole_group: bool) -> bool:
    """Can a finite O(2)-object have exactly this geometric isotropy?

    Whenever the whole group is in the isotropy, all but finitely many
    dihedral classes must be too, and conversely a support avoiding the
    whole group contains only finitely many dihedral classes.  The cyclic
    part is unconstrained beyond its own encoding.
    """
    if cyclic_part.ambient.rank != 1:
        raise DimensionError("the cyclic part lives over the circle")
    if not is_realizable_support(cyclic_part):
        return False
    return dihedral.cofinite == whole_group


@dataclass(frozen=True)
class SO3Cyclic:
    subgroup: ClosedSubgroup

    def __post_init__(self) -> None:
        if self.subgroup.ambient.rank != 1:
            raise DimensionError("cyclic-part subgroups live in the circle")


@dataclass(frozen=True)
class SO3Dihedral:
    n: int

    def __post_init__(self) -> None:
        # the order-2 dihedral class is cyclic inside the rotation group
        if self.n < 2:
            raise ValueError("rotation-group dihedral classes need n >= 2")


@dataclass(frozen=True)
class SO3NormalizerClass:
    """The class of maximal-torus normalizers (the image of the whole O(2))."""


@dataclass(frozen=True)
class SO3Exceptional:
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in ("tetrahedral", "octahedral", "icosahedral"):
            raise ValueError("unknown exceptional class")


SO3Prime = Union[SO3Cyclic, SO3Dihedral, SO3NormalizerClass, SO3Exceptional]


def so3_restrict(p: O2Prime) -> SO3Prime:
    """Pull back an O(2) prime along the inclusion into the rotation group.

    Cyclic primes and dihedral classes of order at least 4 map to their
    namesakes; the order-2 dihedral class becomes the cyclic class of
    order 2, and the whole group maps to the normalizer class.
    """
    if isinstance(p, O2Cyclic):
        return SO3Cyclic(p.subgroup)
    if isinstance(p, O2Dihedral):
        if p.n == 1:
            return SO3Cyclic(cyclic_subgroup(2))
        return SO3Dihedral(p.n)
    return SO3NormalizerClass()


# ---------------------------------------------------------------------------
# Weyl actions and quotient spectra

class InfiniteWeylGroupError(ValueError):
    """The generated matrix group exceeded the closure bound."""


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n))
                       for j in range(n)) for i in range(n))


def _det_int(m) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    sign = 1
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += sign * m[0][j] * _det_int(minor)
        sign = -sign
    return total


@dataclass(frozen=True)
class WeylAction:
    """A finite group of integer matrices acting on the character lattice.

    Characters transform by right multiplication of row vectors; the
    closure of the generators is computed eagerly and must stay within
    ``element_bound``.
    """

    rank: int
    generators: tuple[tuple[tuple[int, ...], ...], ...]
    element_bound: int = 10000

    @staticmethod
    def from_generators(rank: int, generators: Iterable[Sequence[Sequence[int]]],
                        element_bound: int = 10000) -> "WeylAction":
        gens = tuple(tuple(tuple(int(x) for x in row) for row in g)
                     for g in generators)
        return WeylAction(rank, gens, element_bound)

    def __post_init__(self) -> None:
        for g in self.generators:
            if len(g) != self.rank or any(len(row) != self.rank for row in g):
                raise DimensionError("generator has the wrong shape")
            if _det_int([list(r) for r in g]) not in (1, -1):
                raise ValueError("generators must be invertible over the "
                                 "integers")
        self.elements  # force the finiteness check at construction

    @cached_property
    def elements(self) -> frozenset:
        identity = tuple(tuple(1 if i == j else 0 for j in range(self.rank))
                         for i in range(self.rank))
        seen = {identity}
        frontier = [identity]
        while frontier:
            w = frontier.pop()
            for g in self.generators:
                nxt = _mat_mul(w, g)
                if nxt not in seen:
                    if len(seen) >= self.element_bound:
                        raise InfiniteWeylGroupError(
                            f"closure exceeded {self.element_bound} elements")
                    seen.add(nxt)
                    frontier.append(nxt)
        return frozenset(seen)

    def apply(self, subgroup: ClosedSubgroup, w) -> ClosedSubgroup:
        if subgroup.ambient.rank != self.rank:
            raise AmbientMismatchError("action rank differs from ambient")
        rows = [[sum(row[k] * w[k][j] for k in range(self.rank))
                 for j in range(self.rank)]
                for row in subgroup.annihilator.basis]
        return ClosedSubgroup(subgroup.ambient,
                              IntegerLattice.from_rows(self.rank, rows))


def trivial_action(rank: int) -> WeylAction:
    return WeylAction.from_generators(rank, [])


def sign_action() -> WeylAction:
    """The rank-1 Weyl group of O(2): negation of characters."""
    return WeylAction.from_generators(1, [[[-1]]])


@dataclass(frozen=True)
class SubgroupOrbit:
    """A Weyl orbit of closed subgroups, held by its lexicographic minimum."""

    canonical: ClosedSubgroup
    size: int


def weyl_orbit(subgroup: ClosedSubgroup, action: WeylAction) -> SubgroupOrbit:
    orbit = {action.apply(subgroup, w) for w in action.elements}
    rep = min(orbit, key=lambda k: k.annihilator.basis)
    return SubgroupOrbit(rep, len(orbit))


def quotient_order(o1: SubgroupOrbit, o2: SubgroupOrbit,
                   action: WeylAction) -> bool:
    """Specialisation order on orbits: some translate is cotoral in the rep."""
    if o1.canonical.ambient != o2.canonical.ambient:
        raise AmbientMismatchError("orbits over different tori")
    return any(is_cotoral(action.apply(o1.canonical, w), o2.canonical)
               for w in action.elements)


@dataclass(frozen=True)
class QuotientSlice:
    """A bounded window of the orbit poset with its covering relations."""

    ambient: AmbientTorus
    action: WeylAction
    orbits: tuple[SubgroupOrbit, ...]
    hasse_edges: tuple[tuple[int, int], ...]
    bound: SliceBound

    def index_of(self, orbit: SubgroupOrbit) -> int:
        for i, o in enumerate(self.orbits):
            if o.canonical == orbit.canonical:
                return i
        raise KeyError("orbit not in slice")


def toral_quotient_slice(ambient: AmbientTorus, action: WeylAction,
                         max_index: int,
                         include_dims: Optional[Iterable[int]] = None,
                         max_entry: Optional[int] = None) -> QuotientSlice:
    """The enumerated torus slice folded along the Weyl action."""
    if ambient.rank != action.rank:
        raise AmbientMismatchError("action rank differs from torus rank")
    sl = enumerate_slice(ambient, max_index, include_dims, max_entry)
    by_rep = {}
    for p in sl.primes:
        orb = weyl_orbit(p.subgroup, action)
        by_rep.setdefault(orb.canonical, orb)
    orbits = sorted(by_rep.values(), key=lambda o: o.canonical.sort_key())
    n = len(orbits)
    strict = [[i != j and quotient_order(orbits[i], orbits[j], action)
               for j in range(n)] for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if not strict[i][j]:
                continue
            if any(strict[i][m] and strict[m][j] for m in range(n)):
                continue
            edges.append((i, j))
    return QuotientSlice(ambient, action, tuple(orbits), tuple(edges),
                         sl.bound)


def weyl_action_to_json(action: WeylAction) -> dict:
    return {
        "schema": 1,
        "rank": action.rank,
        "generators": [[list(row) for row in g] for g in action.generators],
    }


def weyl_action_from_json(doc: dict) -> WeylAction:
    if not isinstance(doc, dict):
        raise ValueError("weyl action document must be an object")
    rank = doc.get("rank")
    gens = doc.get("generators")
    if not isinstance(rank, int) or rank < 0:
        raise ValueError("rank must be a non-negative integer")
    if not isinstance(gens, list):
        raise ValueError("generators must be a list of square matrices")
    return WeylAction.from_generators(rank, gens)


def quotient_slice_to_json(qs: QuotientSlice) -> dict:
    return {
        "schema": 1,
        "ambient_rank": qs.ambient.rank,
        "bound": {
            "max_index": qs.bound.max_index,
            "dims": list(qs.bound.dims),
            "max_entry": qs.bound.max_entry,
        },
        "orbits": [{"canonical": subgroup_to_json(o.canonical),
                    "size": o.size} for o in qs.orbits],
        "hasse_edges": [list(e) for e in qs.hasse_edges],
    }


_DIM_COLORS = ("lightgoldenrod", "lightblue", "palegreen", "lightpink",
               "lightsalmon", "plum")


def quotient_slice_to_dot(qs: QuotientSlice, color: bool = False) -> str:
    lines = ["digraph quotient_slice {", "  rankdir=BT;",
             "  node [shape=box];"]
    for i, o in enumerate(qs.orbits):
        label = _node_label(o.canonical)
        if o.size > 1:
            label += f" (orbit of {o.size})"
        style = ""
        if color:
            fill = _DIM_COLORS[o.canonical.dim % len(_DIM_COLORS)]
            style = f", style=filled, fillcolor=\"{fill}\""
        lines.append(f"  n{i} [label=\"{label}\"{style}];")
    for lo, hi in qs.hasse_edges:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
