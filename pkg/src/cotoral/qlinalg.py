"""Exact linear algebra over Q for subspaces given by spanning rows.

Subspaces of Q^n are canonicalised to reduced row echelon bases, so a
subspace has exactly one representation and tuple equality is subspace
equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

QVec = tuple[Fraction, ...]
QRows = tuple[QVec, ...]


def qvec(values: Iterable) -> QVec:
    return tuple(Fraction(v) for v in values)


def rref(rows: Iterable[Sequence], width: int) -> QRows:
    """Canonical reduced-row-echelon basis of the span of the given rows."""
    m = [[Fraction(x) for x in row] for row in rows]
    for row in m:
        if len(row) != width:
            raise ValueError(f"row of width {len(row)}, expected {width}")
    rank = 0
    for col in range(width):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return tuple(tuple(row) for row in m[:rank])


def reduce_against(basis: QRows, vector: Sequence) -> QVec:
    """Residue of the vector after eliminating with an rref basis."""
    v = [Fraction(x) for x in vector]
    for row in basis:
        piv = next(j for j, x in enumerate(row) if x != 0)
        if v[piv] != 0:
            f = v[piv]
            v = [a - f * b for a, b in zip(v, row)]
    return tuple(v)


def in_span(basis: QRows, vector: Sequence) -> bool:
    return not any(reduce_against(basis, vector))


def span_sum(a: QRows, b: QRows, width: int) -> QRows:
    return rref(list(a) + list(b), width)


def spans_intersect_trivially(a: QRows, b: QRows, width: int) -> bool:
    return len(span_sum(a, b, width)) == len(a) + len(b)


def span_intersection(a: QRows, b: QRows, width: int) -> QRows:
    """Basis of the intersection of two spans."""
    if not a or not b:
        return ()
    # left kernel of the stacked matrix [a; -b]: combos with x@a == y@b
    stacked = [list(row) for row in a] + [[-x for x in row] for row in b]
    n = len(stacked)
    aug = [list(map(Fraction, stacked[i])) +
           [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    rank = 0
    for col in range(width):
        piv = next((i for i in range(rank, n) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [x * inv for x in aug[rank]]
        for i in range(n):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[rank])]
        rank += 1
    vectors = []
    for i in range(rank, n):
        coeffs = aug[i][width:]
        vec = [Fraction(0)] * width
        for c, row in zip(coeffs[:len(a)], a):
            if c:
                vec = [p + c * q for p, q in zip(vec, row)]
        vectors.append(vec)
    return rref(vectors, width)


def solve_combination(rows: QRows, target: Sequence) -> Optional[QVec]:
    """One solution x with x @ rows == target, or None; rows may be dependent."""
    nrows = len(rows)
    if nrows == 0:
        return () if not any(Fraction(t) for t in target) else None
    width = len(rows[0])
    aug = [[Fraction(rows[i][j]) for i in range(nrows)] +
           [Fraction(target[j])] for j in range(width)]
    piv_of = []
    rank = 0
    for col in range(nrows):
        piv = next((i for i in range(rank, width) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [x * inv for x in aug[rank]]
        for i in range(width):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[rank])]
        piv_of.append(col)
        rank += 1
    for i in range(rank, width):
        if aug[i][nrows] != 0:
            return None
    sol = [Fraction(0)] * nrows
    for i, col in enumerate(piv_of):
        sol[col] = aug[i][nrows]
    return tuple(sol)


def identity_rows(width: int) -> QRows:
    one = Fraction(1)
    zero = Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(width))
                 for i in range(width))
