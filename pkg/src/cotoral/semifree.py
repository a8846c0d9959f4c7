"""Semifree wide spheres and the thick subcategories of representation spheres.

A wide sphere is determined, one parity at a time, by the dimensions of a
graded vector space V and a decreasing finite filtration of the total
space |V| recording how the module N sits inside Q[c, c^-1] (x) V after
each graded piece is slid into a fixed reference degree.  Multiplication
by the Bott-type class c lowers degrees by two, so smashing with the k-th
representation sphere shifts the filtration up by 2k while fixing V.

Membership in the thick subcategory generated by the k-th representation
sphere is decided by two exact conditions: the jump polynomial of the
filtration must be t^{2k} times the fixed-point polynomial, and the
degree-d block of V must meet the filtration level d + 2(k+1) trivially.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .qlinalg import (
    QRows,
    QVec,
    identity_rows,
    in_span,
    qvec,
    reduce_against,
    rref,
    solve_combination,
    span_intersection,
    span_sum,
    spans_intersect_trivially,
)


class MalformedAttachmentError(ValueError):
    """Attachment data that no cofibre construction accepts."""


@dataclass(frozen=True)
class LaurentPoly:
    """A Laurent polynomial with non-negative integer coefficients."""

    coeffs: tuple[tuple[int, int], ...]  # (exponent, coefficient), ascending

    @staticmethod
    def from_dict(d: Mapping[int, int]) -> "LaurentPoly":
        items = tuple(sorted((e, c) for e, c in d.items() if c != 0))
        if any(c < 0 for _, c in items):
            raise ValueError("coefficients must be non-negative")
        return LaurentPoly(items)

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly(())

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.coeffs))

    def coefficient(self, e: int) -> int:
        for exp, c in self.coeffs:
            if exp == e:
                return c
        return 0

    def total(self) -> int:
        return sum(c for _, c in self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e, c in self.coeffs:
            if e == 0:
                terms.append(str(c))
            else:
                base = "t" if e == 1 else f"t^{e}"
                terms.append(base if c == 1 else f"{c}*{base}")
        return " + ".join(terms)


def _first_difference(a: LaurentPoly, b: LaurentPoly) -> int:
    exps = sorted({e for e, _ in a.coeffs} | {e for e, _ in b.coeffs})
    for e in exps:
        if a.coefficient(e) != b.coefficient(e):
            return e
    raise ValueError("polynomials are equal")


@dataclass(frozen=True)
class ParityPart:
    """One parity of a wide sphere: block dimensions plus the filtration.

    ``levels`` stores the filtration on the contiguous degree range from
    the highest degree where it is everything down to the lowest where it
    is still full; below the range it is implicitly full, above it zero.
    All bases are canonical reduced echelon rows, so equal parts are
    structurally equal.
    """

    v_dims: tuple[tuple[int, int], ...]
    levels: tuple[tuple[int, QRows], ...]

    @staticmethod
    def empty() -> "ParityPart":
        return ParityPart((), ())

    @staticmethod
    def from_data(v_dims: Mapping[int, int],
                  filtration: Mapping[int, Iterable[Sequence]]
                  ) -> "ParityPart":
        dims = {int(d): int(m) for d, m in v_dims.items() if int(m) != 0}
        if any(m < 0 for m in dims.values()):
            raise ValueError("block dimensions must be non-negative")
        n = sum(dims.values())
        if n == 0:
            for rows in filtration.values():
                if any(any(Fraction(x) for x in vec) for vec in rows):
                    raise ValueError("filtration of an empty part must vanish")
            return ParityPart.empty()
        parities = {d % 2 for d in dims}
        if len(parities) > 1:
            raise ValueError("mixed parities inside one part")
        parity = parities.pop()
        listed = {int(i): rref(rows, n) for i, rows in filtration.items()}
        if not listed:
            raise ValueError("a non-empty part needs filtration data")
        if any(i % 2 != parity for i in listed):
            raise ValueError("filtration degrees must match block parity")
        degrees = sorted(listed)

        def value(i: int) -> QRows:
            if i > degrees[-1]:
                return ()
            nxt = next(j for j in degrees if j >= i)
            return listed[nxt]

        if len(listed[degrees[0]]) != n:
            raise ValueError("the filtration must be everything at its "
                             "lowest listed degree")
        for lo, hi in zip(degrees, degrees[1:]):
            if not all(in_span(listed[lo], vec) for vec in listed[hi]):
                raise ValueError("filtration levels must decrease")
        top = max(i for i in degrees if listed[i])
        bottom = top
        while len(value(bottom)) < n:
            bottom -= 2
        levels = tuple((i, value(i)) for i in range(bottom, top + 1, 2))
        return ParityPart(tuple(sorted(dims.items())), levels)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.v_dims)

    @property
    def is_empty(self) -> bool:
        return not self.v_dims

    @property
    def parity(self) -> Optional[int]:
        return self.v_dims[0][0] % 2 if self.v_dims else None

    @property
    def bottom(self) -> int:
        return self.levels[0][0]

    @property
    def top(self) -> int:
        return self.levels[-1][0]

    def dims_dict(self) -> dict[int, int]:
        return dict(self.v_dims)

    def dim_at(self, degree: int) -> int:
        return self.dims_dict().get(degree, 0)

    def offset(self, degree: int) -> int:
        out = 0
        for d, m in self.v_dims:
            if d == degree:
                return out
            out += m
        raise KeyError(f"no block in degree {degree}")

    def block_rows(self, degree: int) -> QRows:
        off = self.offset(degree)
        m = self.dim_at(degree)
        eye = identity_rows(self.total)
        return eye[off:off + m]

    def level_at(self, i: int) -> QRows:
        """The filtration at any degree, using the implied values outside
        the stored range."""
        if self.is_empty or i > self.top:
            return ()
        if i < self.bottom:
            return identity_rows(self.total)
        return self.levels[(i - self.bottom) // 2][1]

    def jump_poly(self) -> LaurentPoly:
        jumps = {}
        for i, rows in self.levels:
            j = len(rows) - len(self.level_at(i + 2))
            if j:
                jumps[i] = j
        return LaurentPoly.from_dict(jumps)

    def dims_poly(self) -> LaurentPoly:
        return LaurentPoly.from_dict(dict(self.v_dims))

    def shifted(self, n: int) -> "ParityPart":
        if self.is_empty:
            return self
        return ParityPart(tuple((d + n, m) for d, m in self.v_dims),
                          tuple((i + n, rows) for i, rows in self.levels))

    def filtration_shifted(self, by: int) -> "ParityPart":
        if self.is_empty:
            return self
        return ParityPart(self.v_dims,
                          tuple((i + by, rows) for i, rows in self.levels))


def _merge_embeddings(a: ParityPart, b: ParityPart):
    """Coordinate embeddings of two parts into their blockwise direct sum."""
    degrees = sorted(set(dict(a.v_dims)) | set(dict(b.v_dims)))
    total = a.total + b.total
    place_a, place_b = [], []
    pos = 0
    for d in degrees:
        for _ in range(a.dim_at(d)):
            place_a.append(pos)
            pos += 1
        for _ in range(b.dim_at(d)):
            place_b.append(pos)
            pos += 1

    def embed(places):
        def go(vec: Sequence) -> QVec:
            out = [Fraction(0)] * total
            for p, x in zip(places, vec):
                out[p] = Fraction(x)
            return tuple(out)
        return go

    dims = {d: a.dim_at(d) + b.dim_at(d) for d in degrees}
    return dims, embed(place_a), embed(place_b)


def _wedge_parts(a: ParityPart, b: ParityPart) -> ParityPart:
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    dims, emb_a, emb_b = _merge_embeddings(a, b)
    lo = min(a.bottom, b.bottom)
    hi = max(a.top, b.top)
    filt = {}
    for i in range(lo, hi + 1, 2):
        rows = [emb_a(v) for v in a.level_at(i)] + \
               [emb_b(v) for v in b.level_at(i)]
        filt[i] = rows
    return ParityPart.from_data(dims, filt)


@dataclass(frozen=True)
class WideSphere:
    """A semifree model object with injective basing map, split by parity."""

    even: ParityPart = field(default_factory=ParityPart.empty)
    odd: ParityPart = field(default_factory=ParityPart.empty)

    def __post_init__(self) -> None:
        if self.even.parity not in (None, 0):
            raise ValueError("even part carries odd degrees")
        if self.odd.parity not in (None, 1):
            raise ValueError("odd part carries even degrees")

    @property
    def is_zero(self) -> bool:
        return self.even.is_empty and self.odd.is_empty

    @property
    def total_dim(self) -> int:
        return self.even.total + self.odd.total

    def part(self, parity: int) -> ParityPart:
        return self.even if parity % 2 == 0 else self.odd

    def with_part(self, parity: int, part: ParityPart) -> "WideSphere":
        if parity % 2 == 0:
            return WideSphere(part, self.odd)
        return WideSphere(self.even, part)


def zero_object() -> WideSphere:
    return WideSphere()


def sphere(n: int) -> WideSphere:
    """The fixed sphere S^n: one generator, filtration jumping at n."""
    part = ParityPart.from_data({n: 1}, {n: identity_rows(1)})
    return WideSphere(part, ParityPart.empty()) if n % 2 == 0 \
        else WideSphere(ParityPart.empty(), part)


def rep_sphere(k: int) -> WideSphere:
    """The k-th representation sphere: S^0 with the filtration shifted."""
    return twist(sphere(0), k)


def wedge(x: WideSphere, y: WideSphere) -> WideSphere:
    return WideSphere(_wedge_parts(x.even, y.even),
                      _wedge_parts(x.odd, y.odd))


def suspend(x: WideSphere, n: int) -> WideSphere:
    """Shift all degrees by n; odd shifts swap the parity roles."""
    if n % 2 == 0:
        return WideSphere(x.even.shifted(n), x.odd.shifted(n))
    return WideSphere(x.odd.shifted(n), x.even.shifted(n))


def twist(x: WideSphere, k: int) -> WideSphere:
    """Smash with the k-th representation sphere: filtration up by 2k."""
    return WideSphere(x.even.filtration_shifted(2 * k),
                      x.odd.filtration_shifted(2 * k))


def fixed_point_poly(x: WideSphere) -> LaurentPoly:
    dims = dict(x.even.v_dims)
    dims.update(dict(x.odd.v_dims))
    return LaurentPoly.from_dict(dims)


def borel_jump_poly(x: WideSphere) -> LaurentPoly:
    jumps = {e: c for e, c in x.even.jump_poly().coeffs}
    jumps.update({e: c for e, c in x.odd.jump_poly().coeffs})
    return LaurentPoly.from_dict(jumps)


@dataclass(frozen=True)
class ConditionFailure:
    """Which membership condition failed, and at which degree."""

    condition: int
    degree: int


def divisibility_failure_degree(x: WideSphere, k: int) -> Optional[int]:
    """First degree whose generators are divisible k+1 times, if any.

    This is the second membership condition on its own: the degree-d
    block of V must meet filtration level d + 2(k+1) trivially.
    """
    blocks = [(d, parity) for parity in (0, 1)
              for d, _ in x.part(parity).v_dims]
    for d, parity in sorted(blocks):
        part = x.part(parity)
        if not spans_intersect_trivially(part.block_rows(d),
                                         part.level_at(d + 2 * (k + 1)),
                                         part.total):
            return d
    return None


def twisted_witness(x: WideSphere, k: int) -> Optional[ConditionFailure]:
    """None when x lies in the thick subcategory of the k-th representation
    sphere; otherwise the first failing condition."""
    p_t = fixed_point_poly(x)
    p_1 = borel_jump_poly(x)
    want = p_t.shift(2 * k)
    if p_1 != want:
        return ConditionFailure(1, _first_difference(p_1, want))
    bad = divisibility_failure_degree(x, k)
    if bad is not None:
        return ConditionFailure(2, bad)
    return None


def untwisted_witness(x: WideSphere) -> Optional[ConditionFailure]:
    return twisted_witness(x, 0)


def is_untwisted(x: WideSphere) -> bool:
    return untwisted_witness(x) is None


def is_k_twisted(x: WideSphere, k: int) -> bool:
    return twisted_witness(x, k) is None


def in_thick_of_sphere(x: WideSphere, k: int) -> bool:
    """Membership in thick(S^{kz}).

    This is the plain thick subcategory, not the thick tensor ideal: over
    the circle all non-free finite objects generate the same ideal, while
    the subcategories generated by distinct representation spheres differ.
    """
    return is_k_twisted(x, k)


@dataclass(frozen=True)
class AttachMap:
    """Attaching data for a fixed-sphere cofibre.

    ``split`` is a vector in the degree-n block (the even-style case: a
    genuine map out of the sphere, which must be split); ``extend`` is a
    correction vector in the opposite-parity total space describing the
    extension created by an odd-style attachment.  Leaving both unset is
    the zero map.
    """

    split: Optional[QVec] = None
    extend: Optional[QVec] = None

    @staticmethod
    def splitting(vec: Iterable) -> "AttachMap":
        return AttachMap(split=qvec(vec))

    @staticmethod
    def extension(vec: Iterable) -> "AttachMap":
        return AttachMap(extend=qvec(vec))


def attach_fixed_sphere(x: WideSphere, n: int,
                        f: Optional[AttachMap] = None) -> WideSphere:
    """Cofibre of a map from the fixed sphere S^n into x.

    A nonzero split vector quotients off a free summand (the map is then
    split and the cofibre a retract of x); otherwise the cofibre extends
    the opposite parity by a generator in degree n + 1, glued along the
    extend vector.  The zero map gives the wedge with S^{n+1}.
    """
    f = f or AttachMap()
    if f.split is not None and any(f.split):
        if f.extend is not None and any(f.extend):
            raise MalformedAttachmentError(
                "split and extension data cannot both be nonzero")
        return _attach_split(x, n, qvec(f.split))
    w = f.extend
    return _attach_extension(x, n, None if w is None else qvec(w))


def _attach_split(x: WideSphere, n: int, vec: QVec) -> WideSphere:
    part = x.part(n)
    if part.dim_at(n) == 0:
        raise MalformedAttachmentError(
            f"no generators in degree {n} to map onto")
    if len(vec) != part.dim_at(n):
        raise MalformedAttachmentError(
            f"split vector has length {len(vec)}, block has dimension "
            f"{part.dim_at(n)}")
    off = part.offset(n)
    total = part.total
    vbar = tuple(Fraction(0) if i < off or i >= off + len(vec)
                 else vec[i - off] for i in range(total))
    if not in_span(part.level_at(n), vbar):
        raise MalformedAttachmentError(
            "the map does not land in the module: not a split attachment")
    if in_span(part.level_at(n + 2), vbar):
        raise MalformedAttachmentError(
            "the generator is infinitely divisible: not a split attachment")
    piv = next(i for i in range(total) if vbar[i] != 0)

    def quot(w: Sequence) -> QVec:
        w = [Fraction(c) for c in w]
        if w[piv] != 0:
            fct = w[piv] / vbar[piv]
            w = [a - fct * b for a, b in zip(w, vbar)]
        return tuple(w[:piv] + w[piv + 1:])

    dims = part.dims_dict()
    dims[n] -= 1
    if sum(dims.values()) == 0:
        return x.with_part(n, ParityPart.empty())
    filt = {i: [quot(v) for v in rows] for i, rows in part.levels}
    return x.with_part(n, ParityPart.from_data(dims, filt))


def _attach_extension(x: WideSphere, n: int,
                      w: Optional[QVec]) -> WideSphere:
    m = n + 1
    part = x.part(m)
    old_total = part.total
    if w is None:
        w = tuple(Fraction(0) for _ in range(old_total))
    if len(w) != old_total:
        raise MalformedAttachmentError(
            f"extension vector has length {len(w)}, total space has "
            f"dimension {old_total}")
    dims = part.dims_dict()
    new_pos = sum(mm for d, mm in dims.items() if d < m) + dims.get(m, 0)
    dims[m] = dims.get(m, 0) + 1

    def embed(vec: Sequence) -> list:
        out = [Fraction(c) for c in vec]
        return out[:new_pos] + [Fraction(0)] + out[new_pos:]

    eta = embed(w)
    eta[new_pos] = Fraction(1)
    if part.is_empty:
        lo = hi = m
    else:
        lo, hi = min(part.bottom, m), max(part.top, m)
    filt = {}
    for i in range(lo, hi + 1, 2):
        rows = [embed(v) for v in part.level_at(i)]
        if i <= m:
            rows.append(eta)
        filt[i] = rows
    return x.with_part(m, ParityPart.from_data(dims, filt))


@dataclass(frozen=True)
class BuildStep:
    """One sphere attachment in a build certificate.

    ``vector`` is the leading slot vector of the free summand split off at
    this step, written in the coordinates of the original total space; at
    the time of the step its class is a block vector of degree ``degree``
    outside the next filtration level.
    """

    degree: int
    twist: int
    vector: QVec


def decompose_untwisted(x: WideSphere
                        ) -> Union[list[BuildStep], ConditionFailure]:
    """Constructive membership certificate for thick(S^0).

    Splits off a free summand at the lowest remaining fixed-point degree,
    one dimension at a time; the certificate replays to an object equal to
    x.  Returns the failing condition when x is not untwisted.
    """
    witness = untwisted_witness(x)
    if witness is not None:
        return witness
    agenda = sorted((d, parity) for parity in (0, 1)
                    for d, mm in x.part(parity).v_dims for _ in range(mm))
    chosen: dict[int, QRows] = {0: (), 1: ()}
    steps = []
    for d, parity in agenda:
        part = x.part(parity)
        used = chosen[parity]
        vbar = next(e for e in part.block_rows(d)
                    if any(reduce_against(used, e)))
        sol = solve_combination(part.level_at(d) + used, vbar)
        if sol is None:  # impossible for untwisted objects
            raise AssertionError("lift of a split vector must exist")
        nrows = part.level_at(d)
        u = [Fraction(0)] * part.total
        for c, row in zip(sol[:len(nrows)], nrows):
            if c:
                u = [a + c * b for a, b in zip(u, row)]
        u = tuple(u)
        steps.append(BuildStep(d, 0, u))
        chosen[parity] = rref(used + (u,), part.total)
    return steps


def replay_certificate(steps: Sequence[BuildStep]) -> WideSphere:
    """Rebuild the wide sphere a certificate describes.

    The filtration at each degree is the span of the recorded vectors
    whose step degree is at least that degree.
    """
    parts = {}
    for parity in (0, 1):
        mine = [s for s in steps if s.degree % 2 == parity]
        if not mine:
            parts[parity] = ParityPart.empty()
            continue
        n = len(mine)
        if any(len(s.vector) != n for s in mine):
            raise ValueError("certificate vectors have inconsistent length")
        if any(s.twist != 0 for s in mine):
            raise ValueError("only untwisted certificates replay directly")
        dims: dict[int, int] = {}
        for s in mine:
            dims[s.degree] = dims.get(s.degree, 0) + 1
        lo = min(dims)
        hi = max(dims)
        filt = {i: [s.vector for s in mine if s.degree >= i]
                for i in range(lo, hi + 1, 2)}
        parts[parity] = ParityPart.from_data(dims, filt)
    return WideSphere(parts[0], parts[1])


def change_basis(x: WideSphere,
                 maps: Mapping[int, Sequence[Sequence]]) -> WideSphere:
    """Apply an invertible degree-preserving change of basis.

    ``maps`` sends a degree to a square matrix acting on that block;
    missing degrees act by the identity.
    """
    out = x
    for parity in (0, 1):
        part = x.part(parity)
        if part.is_empty:
            continue
        total = part.total
        cols = []
        for d, mm in part.v_dims:
            mat = [[Fraction(v) for v in row] for row in maps[d]] \
                if d in maps else \
                [[Fraction(1 if i == j else 0) for j in range(mm)]
                 for i in range(mm)]
            if len(mat) != mm or any(len(r) != mm for r in mat):
                raise ValueError(f"block map in degree {d} has wrong shape")
            if len(rref(mat, mm)) != mm:
                raise ValueError(f"block map in degree {d} is singular")
            cols.append((part.offset(d), mm, mat))

        def apply(vec: Sequence) -> QVec:
            v = [Fraction(c) for c in vec]
            out_v = [Fraction(0)] * total
            for off, mm, mat in cols:
                for i in range(mm):
                    out_v[off + i] = sum(
                        (mat[i][j] * v[off + j] for j in range(mm)),
                        Fraction(0))
            return tuple(out_v)

        filt = {i: [apply(v) for v in rows] for i, rows in part.levels}
        out = out.with_part(parity,
                            ParityPart.from_data(part.dims_dict(), filt))
    return out


def split_summand(x: WideSphere,
                  chosen: Mapping[int, Iterable[Sequence]]
                  ) -> Optional[tuple[WideSphere, WideSphere]]:
    """Split x along a graded subspace selection, when the filtration allows.

    ``chosen`` gives, per degree, spanning vectors (in block-local
    coordinates) of the first summand's piece; the complement is completed
    on the leftover coordinates.  Returns None when some filtration level
    does not decompose.
    """
    parts_a, parts_b = {}, {}
    for parity in (0, 1):
        part = x.part(parity)
        if part.is_empty:
            parts_a[parity] = parts_b[parity] = ParityPart.empty()
            continue
        total = part.total
        basis_a, basis_b = [], []   # (degree, embedded vector)
        for d, mm in part.v_dims:
            off = part.offset(d)
            local = rref(list(chosen.get(d, ())), mm)
            pivots = {next(j for j, c in enumerate(row) if c != 0)
                      for row in local}
            for row in local:
                vec = [Fraction(0)] * total
                for j, c in enumerate(row):
                    vec[off + j] = c
                basis_a.append((d, tuple(vec)))
            for j in range(mm):
                if j not in pivots:
                    vec = [Fraction(0)] * total
                    vec[off + j] = Fraction(1)
                    basis_b.append((d, tuple(vec)))

        def build(basis):
            span = rref([v for _, v in basis], total)
            dims: dict[int, int] = {}
            for d, _ in basis:
                dims[d] = dims.get(d, 0) + 1
            rows_basis = tuple(v for _, v in basis)
            filt = {}
            for i, rows in part.levels:
                inter = span_intersection(rows, span, total)
                coords = []
                for v in inter:
                    c = solve_combination(rows_basis, v)
                    if c is None:
                        raise AssertionError("intersection escaped the span")
                    coords.append(c)
                filt[i] = coords
            return dims, filt, span, rows_basis

        dims_a, filt_a, span_a, _ = build(basis_a)
        dims_b, filt_b, span_b, _ = build(basis_b)
        for i, rows in part.levels:
            if len(span_intersection(rows, span_a, total)) + \
               len(span_intersection(rows, span_b, total)) != len(rows):
                return None
        parts_a[parity] = ParityPart.from_data(dims_a, filt_a) \
            if sum(dims_a.values()) else ParityPart.empty()
        parts_b[parity] = ParityPart.from_data(dims_b, filt_b) \
            if sum(dims_b.values()) else ParityPart.empty()
    return (WideSphere(parts_a[0], parts_a[1]),
            WideSphere(parts_b[0], parts_b[1]))


def _part_to_json(part: ParityPart) -> dict:
    return {
        "v_dims": {str(d): m for d, m in part.v_dims},
        "filtration": {str(i): [[str(c) for c in vec] for vec in rows]
                       for i, rows in part.levels},
    }


def _part_from_json(doc: dict) -> ParityPart:
    if not isinstance(doc, dict):
        raise ValueError("parity part must be an object")
    v_dims = {int(d): int(m) for d, m in doc.get("v_dims", {}).items()}
    filtration = {int(i): [qvec(vec) for vec in rows]
                  for i, rows in doc.get("filtration", {}).items()}
    return ParityPart.from_data(v_dims, filtration)


def wide_sphere_to_json(x: WideSphere) -> dict:
    return {"schema": 1, "even": _part_to_json(x.even),
            "odd": _part_to_json(x.odd)}


def wide_sphere_from_json(doc: dict) -> WideSphere:
    if not isinstance(doc, dict):
        raise ValueError("wide sphere document must be an object")
    even = _part_from_json(doc.get("even", {}))
    odd = _part_from_json(doc.get("odd", {}))
    return WideSphere(even, odd)
