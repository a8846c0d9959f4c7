"""Random generators for wide-sphere tests."""

from __future__ import annotations

from fractions import Fraction

from cotoral.semifree import (
    AttachMap,
    MalformedAttachmentError,
    ParityPart,
    WideSphere,
    attach_fixed_sphere,
    sphere,
    suspend,
    twist,
    wedge,
    zero_object,
)
from cotoral.qlinalg import rref, identity_rows


def random_fraction(rng, scale=2):
    num = rng.randint(-scale, scale)
    den = rng.choice((1, 1, 2))
    return Fraction(num, den)


def random_untwisted(rng, max_dim=6, degree_lo=-4, degree_hi=6):
    """A random member of thick(S^0), built by random sphere attachments.

    Attachments preserve membership, so the result is untwisted by
    construction; the zero object is a legal outcome.
    """
    x = zero_object()
    target = rng.randint(0, max_dim)
    while x.total_dim < target:
        n = rng.randrange(degree_lo, degree_hi)
        part = x.part(n + 1)
        w = tuple(random_fraction(rng) for _ in range(part.total))
        x = attach_fixed_sphere(x, n, AttachMap(extend=w))
        if rng.random() < 0.2 and x.total_dim < target:
            x = wedge(x, sphere(rng.randrange(degree_lo, degree_hi + 1)))
    return x


def random_valid_split_vector(rng, x, tries=20):
    """A degree and block vector usable as a split attachment, or None."""
    degrees = [(d, p) for p in (0, 1) for d, _ in x.part(p).v_dims]
    rng.shuffle(degrees)
    for d, p in degrees:
        part = x.part(p)
        m = part.dim_at(d)
        for _ in range(tries):
            vec = tuple(random_fraction(rng) for _ in range(m))
            if not any(vec):
                continue
            try:
                attach_fixed_sphere(x, d, AttachMap(split=vec))
                return d, vec
            except MalformedAttachmentError:
                continue
    return None


def random_invertible(rng, size):
    while True:
        mat = [[random_fraction(rng) for _ in range(size)]
               for _ in range(size)]
        if len(rref(mat, size)) == size:
            return mat


def random_block_maps(rng, x):
    maps = {}
    for p in (0, 1):
        for d, m in x.part(p).v_dims:
            maps[d] = random_invertible(rng, m)
    return maps


def random_part(rng, parity, max_dim=4, window=3):
    """An arbitrary valid parity part (not usually untwisted)."""
    import random as _r
    n = rng.randint(0, max_dim)
    if n == 0:
        return ParityPart.empty()
    base = rng.randrange(-2, 3) * 2 + parity
    degrees = [base + 2 * rng.randrange(0, window) for _ in range(n)]
    dims = {}
    for d in degrees:
        dims[d] = dims.get(d, 0) + 1
    lo = base - 2 * rng.randrange(0, 2)
    hi = lo + 2 * rng.randrange(0, window + 1)
    filt = {lo: identity_rows(n)}
    current = list(identity_rows(n))
    for i in range(lo + 2, hi + 1, 2):
        if current:
            keep = rng.randint(0, len(current))
            rng.shuffle(current)
            kept = current[:keep]
            # throw in one random combination now and then
            if kept and rng.random() < 0.4:
                combo = [sum((random_fraction(rng) * Fraction(v[j])
                              for v in kept), Fraction(0))
                         for j in range(n)]
                kept = kept[:-1] + [tuple(combo)]
            current = list(rref(kept, n))
        filt[i] = tuple(current)
    return ParityPart.from_data(dims, filt)


def random_wide_sphere(rng, max_dim=4):
    return WideSphere(random_part(rng, 0, max_dim),
                      random_part(rng, 1, max_dim))
