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
from cotoral.isotropy import IsotropySet, cone
from cotoral.balmer import enumerate_slice
from cotoral.beyond_tori import (
    DihedralFamily,
    InfiniteWeylGroupError,
    O2Cyclic,
    O2Dihedral,
    O2Whole,
    SO3Cyclic,
    SO3Dihedral,
    SO3NormalizerClass,
    WeylAction,
    finite_group_spectrum,
    o2_is_realizable_support,
    o2_prime_leq,
    quotient_order,
    quotient_slice_to_dot,
    quotient_slice_to_json,
    sign_action,
    so3_restrict,
    toral_quotient_slice,
    trivial_action,
    weyl_action_from_json,
    weyl_action_to_json,
    weyl_orbit,
)

T1 = AmbientTorus(1)
T2 = AmbientTorus(2)

SWAP = WeylAction.from_generators(2, [[[0, 1], [1, 0]]])


def rank2(rows):
    return canonicalize_subgroup(T2, rows)


class TestFiniteGroups:
    def test_three_isolated_points(self):
        got = finite_group_spectrum(["1", "C2", "S3"])
        assert got.labels == ("1", "C2", "S3")

    def test_empty(self):
        assert finite_group_spectrum([]).labels == ()

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            finite_group_spectrum(["a", "a"])


class TestO2:
    def test_cyclic_part_order(self):
        assert o2_prime_leq(O2Cyclic(cyclic_subgroup(5)),
                            O2Cyclic(full_torus(1)))
        assert not o2_prime_leq(O2Cyclic(full_torus(1)),
                                O2Cyclic(cyclic_subgroup(5)))

    def test_dihedral_points_are_unrelated(self):
        assert not o2_prime_leq(O2Dihedral(3), O2Whole())
        assert not o2_prime_leq(O2Whole(), O2Dihedral(3))
        assert not o2_prime_leq(O2Dihedral(2), O2Dihedral(4))
        assert not o2_prime_leq(O2Dihedral(1), O2Cyclic(cyclic_subgroup(2)))

    def test_reflexive(self):
        for p in (O2Cyclic(cyclic_subgroup(3)), O2Dihedral(2), O2Whole()):
            assert o2_prime_leq(p, p)

    def test_realizable_supports(self):
        cyc = cone(full_torus(1))
        assert o2_is_realizable_support(cyc, DihedralFamily.finite({2, 4}),
                                        whole_group=False)
        assert not o2_is_realizable_support(cyc, DihedralFamily.finite({2}),
                                            whole_group=True)
        assert o2_is_realizable_support(cyc, DihedralFamily.all_but(set()),
                                        whole_group=True)
        assert not o2_is_realizable_support(cyc, DihedralFamily.all_but({1}),
                                            whole_group=False)

    def test_realizable_supports_all_sixteen_families(self):
        # four structured shapes x four (dihedral kind, whole-group) flags
        cycs = [IsotropySet.empty(T1), cone(cyclic_subgroup(2)),
                cone(full_torus(1)),
                IsotropySet.from_members(T1, [cyclic_subgroup(2),
                                              cyclic_subgroup(3)])]
        for cyc in cycs:
            for dih in (DihedralFamily.finite(set()),
                        DihedralFamily.finite({1, 3})):
                assert o2_is_realizable_support(cyc, dih, False)
                assert not o2_is_realizable_support(cyc, dih, True)
            for dih in (DihedralFamily.all_but(set()),
                        DihedralFamily.all_but({2})):
                assert o2_is_realizable_support(cyc, dih, True)
                assert not o2_is_realizable_support(cyc, dih, False)

    def test_family_algebra_preserves_realizability(self):
        rng = random.Random(3)
        for _ in range(60):
            def rand_family():
                ns = frozenset(rng.randint(1, 6)
                               for _ in range(rng.randint(0, 3)))
                return DihedralFamily(rng.random() < 0.5, ns)
            a, b = rand_family(), rand_family()
            cyc = cone(full_torus(1))
            if o2_is_realizable_support(cyc, a, a.cofinite) and \
               o2_is_realizable_support(cyc, b, b.cofinite):
                u = a.union(b)
                i = a.intersection(b)
                assert o2_is_realizable_support(cyc, u,
                                                a.cofinite or b.cofinite)
                assert o2_is_realizable_support(cyc, i,
                                                a.cofinite and b.cofinite)
            # membership sanity for the set algebra
            for n in range(1, 8):
                assert (n in a.union(b)) == ((n in a) or (n in b))
                assert (n in a.intersection(b)) == ((n in a) and (n in b))


class TestSO3Restriction:
    def test_small_dihedral_becomes_cyclic(self):
        assert so3_restrict(O2Dihedral(1)) == SO3Cyclic(cyclic_subgroup(2))

    def test_larger_dihedrals_persist(self):
        assert so3_restrict(O2Dihedral(3)) == SO3Dihedral(3)

    def test_cyclic_part_unchanged(self):
        assert so3_restrict(O2Cyclic(cyclic_subgroup(7))) == \
            SO3Cyclic(cyclic_subgroup(7))
        assert so3_restrict(O2Whole()) == SO3NormalizerClass()

    def test_injective_away_from_the_small_dihedral(self):
        primes = [O2Cyclic(cyclic_subgroup(n)) for n in range(1, 6)] + \
            [O2Cyclic(full_torus(1))] + \
            [O2Dihedral(n) for n in range(2, 6)] + [O2Whole()]
        images = [so3_restrict(p) for p in primes]
        assert len(set(images)) == len(images)
        assert so3_restrict(O2Dihedral(1)) in \
            {so3_restrict(O2Cyclic(cyclic_subgroup(2)))}


class TestWeylActions:
    def test_sign_action_elements(self):
        assert len(sign_action().elements) == 2

    def test_swap_action_elements(self):
        assert len(SWAP.elements) == 2

    def test_infinite_group_guard(self):
        with pytest.raises(InfiniteWeylGroupError):
            WeylAction.from_generators(2, [[[1, 1], [0, 1]]],
                                       element_bound=64)

    def test_non_unimodular_rejected(self):
        with pytest.raises(ValueError):
            WeylAction.from_generators(1, [[[2]]])

    def test_json_round_trip(self):
        doc = weyl_action_to_json(SWAP)
        assert doc["schema"] == 1
        assert weyl_action_from_json(doc) == SWAP


class TestOrbits:
    def test_circle_subgroups_are_fixed_by_negation(self):
        w = sign_action()
        for n in (1, 2, 5, 12):
            assert weyl_orbit(cyclic_subgroup(n), w).size == 1

    def test_swap_exchanges_axes(self):
        axis1 = rank2([(0, 1)])   # the subgroup {(x, 0)}
        orb = weyl_orbit(axis1, SWAP)
        assert orb.size == 2
        assert orb.canonical == axis1  # (0,1) is lexicographically least

    def test_trivial_action(self):
        w = trivial_action(2)
        k = rank2([(1, 2)])
        assert weyl_orbit(k, w) == weyl_orbit(k, w)
        assert weyl_orbit(k, w).size == 1 and weyl_orbit(k, w).canonical == k

    def test_quotient_order_examples(self):
        w1 = sign_action()
        assert quotient_order(weyl_orbit(cyclic_subgroup(3), w1),
                              weyl_orbit(full_torus(1), w1), w1)
        assert quotient_order(weyl_orbit(rank2([(0, 1)]), SWAP),
                              weyl_orbit(full_torus(2), SWAP), SWAP)
        # a point in one axis sits under the other axis after swapping
        c2_axis1 = rank2([(2, 0), (0, 1)])
        axis2 = rank2([(1, 0)])
        assert quotient_order(weyl_orbit(c2_axis1, SWAP),
                              weyl_orbit(axis2, SWAP), SWAP)

    def test_quotient_order_against_brute_force(self):
        rng = random.Random(7)
        subs = [canonicalize_subgroup(
            T2, [[rng.randint(-3, 3) for _ in range(2)]
                 for _ in range(rng.randint(0, 2))]) for _ in range(25)]
        for a in subs:
            for b in subs:
                oa, ob = weyl_orbit(a, SWAP), weyl_orbit(b, SWAP)
                brute = any(
                    is_cotoral(SWAP.apply(a, w1), SWAP.apply(b, w2))
                    for w1 in SWAP.elements for w2 in SWAP.elements)
                assert quotient_order(oa, ob, SWAP) == brute


class TestQuotientSlices:
    def test_rank1_looks_like_the_cyclic_part(self):
        qs = toral_quotient_slice(T1, sign_action(), 3)
        assert len(qs.orbits) == 4
        assert all(o.size == 1 for o in qs.orbits)
        top = qs.index_of(weyl_orbit(full_torus(1), sign_action()))
        assert len(qs.hasse_edges) == 3
        assert all(e[1] == top for e in qs.hasse_edges)

    def test_trivial_action_matches_plain_slice(self):
        w = trivial_action(2)
        qs = toral_quotient_slice(T2, w, 2)
        sl = enumerate_slice(T2, 2)
        assert len(qs.orbits) == len(sl.primes)
        assert set(qs.hasse_edges) == set(sl.hasse_edges)

    def test_swap_fuses_axis_circles(self):
        qs = toral_quotient_slice(T2, SWAP, 2)
        axis_orbits = [o for o in qs.orbits
                       if o.canonical in (rank2([(0, 1)]), rank2([(1, 0)]))]
        assert len(axis_orbits) == 1 and axis_orbits[0].size == 2
        sl = enumerate_slice(T2, 2)
        assert sum(weyl_orbit(p.subgroup, SWAP).size
                   for p in sl.primes) >= len(sl.primes)
        reps = {weyl_orbit(p.subgroup, SWAP).canonical for p in sl.primes}
        assert len(reps) == len(qs.orbits)

    def test_quotient_is_a_poset(self):
        qs = toral_quotient_slice(T2, SWAP, 2)
        n = len(qs.orbits)
        leq = [[i == j or quotient_order(qs.orbits[i], qs.orbits[j], SWAP)
                for j in range(n)] for i in range(n)]
        for i in range(n):
            assert leq[i][i]
            for j in range(n):
                if i != j and leq[i][j]:
                    assert not leq[j][i]  # antisymmetry after orbit fusion
                for k in range(n):
                    if leq[i][j] and leq[j][k]:
                        assert leq[i][k]

    def test_emission(self):
        qs = toral_quotient_slice(T2, SWAP, 1, include_dims={1, 2})
        doc = quotient_slice_to_json(qs)
        assert doc["schema"] == 1
        assert all(o["canonical"]["schema"] == 1 for o in doc["orbits"])
        dot = quotient_slice_to_dot(qs)
        assert dot.startswith("digraph")
        assert "(orbit of 2)" in dot
