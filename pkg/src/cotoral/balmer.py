"""The prime spectrum of finite objects over a torus, as a subgroup poset.

Primes are encoded one-per-closed-subgroup; inclusion of primes is the
cotoral order, the support of a finite object is its geometric isotropy,
and the closed sets of the topology are the finite unions of cotoral
cones.  Since every dimension stratum of the subgroup space is infinite,
slices are materialised through explicit enumeration bounds.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .lattice import (
    AmbientMismatchError,
    AmbientTorus,
    ClosedSubgroup,
    IntegerLattice,
    is_cotoral,
    subgroup_to_json,
)
from .isotropy import FiniteObjectExpr, IsotropySet, cone, isotropy_of

# a Thomason closed set is exactly a cotorally closed family with finitely
# many maximal members, so the isotropy encoding is reused wholesale
ClosedSupport = IsotropySet


@dataclass(frozen=True)
class BalmerPrime:
    """The prime of finite objects whose fixed points at the subgroup vanish."""

    subgroup: ClosedSubgroup


def prime_leq(p: BalmerPrime, q: BalmerPrime) -> bool:
    """Containment of primes; holds exactly for cotoral inclusion."""
    return is_cotoral(p.subgroup, q.subgroup)


def support(expr: FiniteObjectExpr) -> ClosedSupport:
    """The support of a finite object: its geometric isotropy as a closed set."""
    return isotropy_of(expr)


def is_realizable_support(family: IsotropySet) -> bool:
    """Is the family the support of some finite object?

    The antichain encoding enforces both requirements (finitely many
    maximal members, downward closure), so encoded families are always
    realizable; families with infinitely many maximal members are not
    expressible as an IsotropySet in the first place.
    """
    return isinstance(family, IsotropySet)


def closure(primes: Iterable[BalmerPrime],
            ambient: AmbientTorus) -> ClosedSupport:
    """Topological closure of a finite prime set: the union of their cones."""
    out = IsotropySet.empty(ambient)
    for p in primes:
        if p.subgroup.ambient != ambient:
            raise AmbientMismatchError("prime over a different torus")
        out = out.union(cone(p.subgroup))
    return out


def closed_intersection(a: ClosedSupport, b: ClosedSupport) -> ClosedSupport:
    """Intersection of two closed sets, again a finite union of cones."""
    return a.intersection(b)


def unique_minimal_check(family: IsotropySet) -> Optional[ClosedSubgroup]:
    """The apex when the family is a single cone, otherwise None.

    An intersection of subgroup primes is itself prime exactly when the
    complementary family is one cone; a multi-member antichain witnesses
    failure of primality.
    """
    if family.is_empty:
        raise ValueError("the empty family has no minimal prime datum")
    if len(family.maximal) == 1:
        return family.maximal[0]
    return None


@dataclass(frozen=True)
class SliceBound:
    """Enumeration window: max component-group order, dimensions, entry size."""

    max_index: int
    dims: tuple[int, ...]
    max_entry: int


@dataclass(frozen=True)
class SpectrumSlice:
    """A bounded window of the prime poset with its covering relations.

    hasse_edges hold (lower, upper) index pairs into ``primes``; they are
    the transitive reduction of the cotoral order restricted to the slice.
    """

    ambient: AmbientTorus
    primes: tuple[BalmerPrime, ...]
    hasse_edges: tuple[tuple[int, int], ...]
    bound: SliceBound

    def index_of(self, subgroup: ClosedSubgroup) -> int:
        for i, p in enumerate(self.primes):
            if p.subgroup == subgroup:
                return i
        raise KeyError("subgroup not in slice")


def _hnf_shape_rows(rank: int, nrows: int, max_entry: int):
    """Yield all matrices in canonical Hermite shape with bounded entries."""
    if nrows == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(rank), nrows):
        # iterate over pivot values first; above-pivot entries depend on them
        for pivot_vals in itertools.product(range(1, max_entry + 1),
                                            repeat=nrows):
            # columns classified per row: zero left of pivot, pivot value,
            # reduced in later pivot columns, free elsewhere
            row_choices = []
            for i in range(nrows):
                cells = []
                for j in range(rank):
                    if j < pivots[i]:
                        cells.append((0,))
                    elif j == pivots[i]:
                        cells.append((pivot_vals[i],))
                    elif j in pivots:
                        owner = pivots.index(j)
                        cells.append(tuple(range(pivot_vals[owner])))
                    else:
                        cells.append(tuple(range(-max_entry, max_entry + 1)))
                row_choices.append(cells)
            all_cells = [c for row in row_choices for c in row]
            for flat in itertools.product(*all_cells):
                yield tuple(flat[i * rank:(i + 1) * rank]
                            for i in range(nrows))


def enumerate_slice(ambient: AmbientTorus, max_index: int,
                    include_dims: Optional[Iterable[int]] = None,
                    max_entry: Optional[int] = None,
                    threads: int = 1) -> SpectrumSlice:
    """All primes with bounded annihilator entries and component-group order.

    Keeps the subgroups whose annihilator basis has entries of absolute
    value at most ``max_entry`` (defaulting to ``max_index``), whose index
    in its saturation is at most ``max_index``, and whose dimension lies
    in ``include_dims``; the full torus is always included.  Edges are the
    covering pairs of the cotoral order.
    """
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    r = ambient.rank
    dims = set(range(r + 1)) if include_dims is None else set(include_dims)
    entry_bound = max_index if max_entry is None else max_entry
    found = {ClosedSubgroup(ambient, IntegerLattice.zero(r))}
    for dim in sorted(dims):
        nrows = r - dim
        if nrows <= 0 or nrows > r:
            continue
        for rows in _hnf_shape_rows(r, nrows, entry_bound):
            lat = IntegerLattice(r, rows)
            if lat.index_in_saturation() <= max_index:
                found.add(ClosedSubgroup(ambient, lat))
    subs = sorted(found, key=lambda k: k.sort_key())
    n = len(subs)

    def leq_row(i: int) -> tuple[bool, ...]:
        return tuple(i != j and is_cotoral(subs[i], subs[j])
                     for j in range(n))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            strict = list(pool.map(leq_row, range(n)))
    else:
        strict = [leq_row(i) for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if not strict[i][j]:
                continue
            if any(strict[i][m] and strict[m][j] for m in range(n)):
                continue
            edges.append((i, j))
    bound = SliceBound(max_index, tuple(sorted(dims)), entry_bound)
    return SpectrumSlice(ambient, tuple(BalmerPrime(k) for k in subs),
                         tuple(edges), bound)


def slice_to_json(sl: SpectrumSlice) -> dict:
    return {
        "schema": 1,
        "ambient_rank": sl.ambient.rank,
        "bound": {
            "max_index": sl.bound.max_index,
            "dims": list(sl.bound.dims),
            "max_entry": sl.bound.max_entry,
        },
        "primes": [subgroup_to_json(p.subgroup) for p in sl.primes],
        "hasse_edges": [list(e) for e in sl.hasse_edges],
    }


_DIM_COLORS = ("lightgoldenrod", "lightblue", "palegreen", "lightpink",
               "lightsalmon", "plum")


def _node_label(k: ClosedSubgroup) -> str:
    return f"{k.describe()} ⊂ T^{k.ambient.rank}, dim {k.dim}"


def slice_to_dot(sl: SpectrumSlice, color: bool = False) -> str:
    """Graphviz rendering of the Hasse diagram, edges pointing up the order."""
    lines = ["digraph spectrum_slice {", "  rankdir=BT;",
             "  node [shape=box];"]
    for i, p in enumerate(sl.primes):
        label = _node_label(p.subgroup)
        style = ""
        if color:
            fill = _DIM_COLORS[p.subgroup.dim % len(_DIM_COLORS)]
            style = f", style=filled, fillcolor=\"{fill}\""
        lines.append(f"  n{i} [label=\"{label}\"{style}];")
    for lo, hi in sl.hasse_edges:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
