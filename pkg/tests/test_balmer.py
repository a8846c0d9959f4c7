import random

import pytest

from cotoral.lattice import (
    AmbientTorus,
    canonicalize_subgroup,
    cyclic_subgroup,
    full_torus,
    is_cotoral,
    trivial_subgroup,
)
from cotoral.isotropy import FiniteObjectExpr, IsotropySet, cone, sigma
from cotoral.balmer import (
    BalmerPrime,
    closed_intersection,
    closure,
    enumerate_slice,
    is_realizable_support,
    prime_leq,
    slice_to_dot,
    slice_to_json,
    support,
    unique_minimal_check,
)

T1 = AmbientTorus(1)
T2 = AmbientTorus(2)


def rank2(rows):
    return canonicalize_subgroup(T2, rows)


class TestPrimeOrder:
    def test_finite_primes_below_circle_prime(self):
        top = BalmerPrime(full_torus(1))
        for n in (1, 2, 3, 11):
            assert prime_leq(BalmerPrime(cyclic_subgroup(n)), top)

    def test_no_order_between_nested_finite_subgroups(self):
        assert not prime_leq(BalmerPrime(cyclic_subgroup(2)),
                             BalmerPrime(cyclic_subgroup(4)))

    def test_reflexive(self):
        p = BalmerPrime(rank2([(1, 2)]))
        assert prime_leq(p, p)

    def test_matches_cotoral_order(self):
        rng = random.Random(41)
        for _ in range(80):
            a = canonicalize_subgroup(
                T2, [[rng.randint(-3, 3) for _ in range(2)]
                     for _ in range(rng.randint(0, 2))])
            b = canonicalize_subgroup(
                T2, [[rng.randint(-3, 3) for _ in range(2)]
                     for _ in range(rng.randint(0, 2))])
            assert prime_leq(BalmerPrime(a), BalmerPrime(b)) == \
                is_cotoral(a, b)


class TestSupport:
    def test_support_of_circle_cell(self):
        assert support(sigma(full_torus(1))) == cone(full_torus(1))

    def test_zero_object(self):
        assert support(FiniteObjectExpr.zero(T1)).is_empty

    def test_two_isolated_points(self):
        expr = sigma(cyclic_subgroup(2)).wedge(sigma(cyclic_subgroup(3)))
        assert support(expr).maximal == (cyclic_subgroup(2),
                                         cyclic_subgroup(3))

    def test_support_equals_closure_of_point(self):
        rng = random.Random(43)
        for _ in range(30):
            k = canonicalize_subgroup(
                T2, [[rng.randint(-3, 3) for _ in range(2)]
                     for _ in range(rng.randint(0, 2))])
            assert support(sigma(k)) == closure([BalmerPrime(k)], T2)

    def test_realizability_of_antichain_encoding(self):
        assert is_realizable_support(
            IsotropySet.from_members(T1, [cyclic_subgroup(2),
                                          cyclic_subgroup(3)]))
        assert is_realizable_support(cone(full_torus(1)))


class TestClosure:
    def test_circle_prime_closure_is_whole_rank1_spectrum(self):
        got = closure([BalmerPrime(full_torus(1))], T1)
        assert got == cone(full_torus(1))
        for n in range(1, 6):
            assert got.member(cyclic_subgroup(n))

    def test_empty(self):
        assert closure([], T1).is_empty

    def test_isolated_finite_points(self):
        got = closure([BalmerPrime(cyclic_subgroup(4)),
                       BalmerPrime(cyclic_subgroup(2))], T1)
        assert got.maximal == (cyclic_subgroup(2), cyclic_subgroup(4))

    def test_closed_under_specialization(self):
        rng = random.Random(47)
        for _ in range(60):
            ks = [canonicalize_subgroup(
                T2, [[rng.randint(-3, 3) for _ in range(2)]
                     for _ in range(rng.randint(0, 2))])
                for _ in range(rng.randint(1, 3))]
            closed = closure([BalmerPrime(k) for k in ks], T2)
            probe = canonicalize_subgroup(
                T2, [[rng.randint(-3, 3) for _ in range(2)]
                     for _ in range(rng.randint(0, 2))])
            for k in ks:
                if is_cotoral(probe, k):
                    assert closed.member(probe)


class TestClosedIntersection:
    def test_idempotent(self):
        c = cone(full_torus(1))
        assert closed_intersection(c, c) == c

    def test_transverse_circles(self):
        got = closed_intersection(cone(rank2([(0, 1)])),
                                  cone(rank2([(1, -1)])))
        assert got == cone(trivial_subgroup(2))

    def test_disjoint_finite_cones(self):
        got = closed_intersection(cone(cyclic_subgroup(4)),
                                  cone(cyclic_subgroup(6)))
        assert got.is_empty

    def test_lattice_laws_with_union(self):
        rng = random.Random(53)
        supports = []
        for _ in range(6):
            ks = [canonicalize_subgroup(
                T2, [[rng.randint(-3, 3) for _ in range(2)]
                     for _ in range(rng.randint(0, 2))])
                for _ in range(rng.randint(0, 2))]
            supports.append(IsotropySet.from_members(T2, ks))
        for a in supports:
            assert closed_intersection(a, a) == a
            for b in supports:
                ab = closed_intersection(a, b)
                assert ab == closed_intersection(b, a)
                assert a.union(ab) == a
                assert closed_intersection(a, a.union(b)) == a
                for c in supports:
                    assert closed_intersection(ab, c) == \
                        closed_intersection(a, closed_intersection(b, c))


class TestUniqueMinimal:
    def test_single_cone(self):
        assert unique_minimal_check(cone(full_torus(1))) == full_torus(1)

    def test_two_cones_not_prime(self):
        fam = IsotropySet.from_members(T1, [cyclic_subgroup(2),
                                            cyclic_subgroup(3)])
        assert unique_minimal_check(fam) is None

    def test_diagonal_circle(self):
        diag = rank2([(1, -1)])
        assert unique_minimal_check(cone(diag)) == diag

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            unique_minimal_check(IsotropySet.empty(T1))


class TestEnumerateSlice:
    def test_rank1_small(self):
        sl = enumerate_slice(T1, 3)
        subs = [p.subgroup for p in sl.primes]
        assert set(subs) == {full_torus(1), cyclic_subgroup(1),
                             cyclic_subgroup(2), cyclic_subgroup(3)}
        top = sl.index_of(full_torus(1))
        assert set(sl.hasse_edges) == {
            (sl.index_of(cyclic_subgroup(n)), top) for n in (1, 2, 3)}

    def test_rank0(self):
        sl = enumerate_slice(AmbientTorus(0), 5)
        assert len(sl.primes) == 1 and sl.hasse_edges == ()

    def test_rank2_subtori(self):
        sl = enumerate_slice(T2, 1, include_dims={1, 2})
        subs = [p.subgroup for p in sl.primes]
        assert full_torus(2) in subs
        others = [k for k in subs if k != full_torus(2)]
        assert others and all(k.dim == 1 and k.is_connected for k in others)
        top = sl.index_of(full_torus(2))
        assert set(sl.hasse_edges) == {(sl.index_of(k), top) for k in others}

    def test_hasse_is_transitive_reduction(self):
        sl = enumerate_slice(T2, 2, max_entry=2)
        n = len(sl.primes)
        reach = [[False] * n for _ in range(n)]
        for lo, hi in sl.hasse_edges:
            reach[lo][hi] = True
        for m in range(n):
            for i in range(n):
                if reach[i][m]:
                    for j in range(n):
                        if reach[m][j]:
                            reach[i][j] = True
        for i in range(n):
            for j in range(n):
                expected = i != j and prime_leq(sl.primes[i], sl.primes[j])
                assert (reach[i][j] or i == j) == (expected or i == j)
        # no redundant edges
        for lo, hi in sl.hasse_edges:
            for m in range(n):
                if m in (lo, hi):
                    continue
                assert not (prime_leq(sl.primes[lo], sl.primes[m])
                            and prime_leq(sl.primes[m], sl.primes[hi]))

    def test_threads_do_not_change_result(self):
        assert enumerate_slice(T2, 2, threads=4) == enumerate_slice(T2, 2)

    def test_bad_bound(self):
        with pytest.raises(ValueError):
            enumerate_slice(T1, 0)


class TestEmission:
    def test_json_shape(self):
        doc = slice_to_json(enumerate_slice(T1, 2))
        assert doc["schema"] == 1
        assert len(doc["primes"]) == 3
        assert all(p["schema"] == 1 for p in doc["primes"])
        assert sorted(e[1] for e in doc["hasse_edges"]) == [0, 0]

    def test_dot_output(self):
        sl = enumerate_slice(T1, 2)
        dot = slice_to_dot(sl)
        assert dot.startswith("digraph")
        assert dot.count("->") == len(sl.hasse_edges)
        assert "T^1, dim 1" in dot and "C2" in dot
        assert "fillcolor" not in dot
        assert "fillcolor" in slice_to_dot(sl, color=True)
