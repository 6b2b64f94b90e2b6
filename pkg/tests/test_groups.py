"""Finite group substrate: validation, subgroups, automorphisms, holomorphs."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braceforge.catalog import (
    alternating_5,
    alternating_group,
    cyclic,
    dicyclic,
    dihedral,
    direct_product_group,
    symmetric_group,
)
from braceforge.errors import (
    BoundExceeded,
    GroupValidationError,
    NoIdentityAtZero,
    NotAssociative,
    NotClosed,
    NotSimple,
)
from braceforge.groups import (
    assert_simple_nonabelian,
    automorphism_group,
    compose,
    group_isomorphism,
    holomorph,
    identity_perm,
    inner_automorphisms,
    invert,
    is_automorphism,
    is_simple,
    regular_subgroups,
    subgroups,
    validate_group,
)


def klein_four():
    return direct_product_group(cyclic(2), cyclic(2))


class TestValidateGroup:
    def test_order_one(self):
        G = validate_group([[0]])
        assert G.order == 1 and G.inverse == (0,)

    def test_cyclic_three(self):
        G = validate_group([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
        assert G.mul(1, 2) == 0 and G.inv(1) == 2

    def test_identity_failure(self):
        with pytest.raises(NoIdentityAtZero):
            validate_group([[1, 0], [0, 1]])

    def test_out_of_range_entry(self):
        with pytest.raises(NotClosed):
            validate_group([[0, 1], [1, 5]])

    def test_associativity_witness(self):
        # Latin square with identity row/column but a broken triple
        table = [[0, 1, 2, 3, 4],
                 [1, 0, 3, 4, 2],
                 [2, 3, 4, 0, 1],
                 [3, 4, 1, 2, 0],
                 [4, 2, 0, 1, 3]]
        with pytest.raises(NotAssociative) as info:
            validate_group(table)
        a, b, c = info.value.witness
        assert table[table[a][b]][c] != table[a][table[b][c]]

    @given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
    @settings(max_examples=30, deadline=None)
    def test_single_cell_mutations_rejected(self, a, b, delta):
        # changing one cell of a valid table always breaks the Latin property
        table = [list(r) for r in cyclic(4).table]
        new = (table[a][b] + 1 + delta % 3) % 4
        if new == table[a][b]:
            new = (new + 1) % 4
        table[a][b] = new
        with pytest.raises(GroupValidationError):
            validate_group(table)

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            validate_group(cyclic(20).table, assoc_bound=10)


def brute_force_subgroups(G):
    """All subsets that are subgroups, by scanning the whole power set."""
    out = []
    elems = list(G.elements())
    for size in range(1, G.order + 1):
        for sub in itertools.combinations(elems, size):
            s = frozenset(sub)
            if 0 not in s:
                continue
            if all(G.mul(a, b) in s for a in s for b in s) \
                    and all(G.inv(a) in s for a in s):
                out.append(s)
    return sorted(out, key=lambda s: (len(s), tuple(sorted(s))))


class TestSubgroups:
    def test_cyclic_four(self):
        assert subgroups(cyclic(4)) == [frozenset({0}), frozenset({0, 2}),
                                        frozenset(range(4))]

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_prime_order(self, p):
        assert len(subgroups(cyclic(p))) == 2

    def test_symmetric_three(self):
        assert len(subgroups(symmetric_group(3))) == 6

    @pytest.mark.parametrize("G", [cyclic(8), klein_four(), symmetric_group(3),
                                   dihedral(4), dicyclic(2), alternating_group(4),
                                   dihedral(6), cyclic(16),
                                   direct_product_group(cyclic(4), cyclic(4))])
    def test_against_brute_force(self, G):
        assert subgroups(G) == brute_force_subgroups(G)

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            subgroups(cyclic(5), bound=4)

    def test_environment_bound_override(self, monkeypatch):
        monkeypatch.setenv("BRACEFORGE_BOUND", "4")
        fresh = validate_group(cyclic(4).table)  # at the bound, still fine
        assert fresh.order == 4
        with pytest.raises(BoundExceeded):
            validate_group(cyclic(5).table)
        with pytest.raises(BoundExceeded):
            subgroups(fresh, bound=3)


def brute_force_automorphisms(G):
    """All bijections fixing 0 that preserve the table; feasible for n <= 6."""
    out = []
    for rest in itertools.permutations(range(1, G.order)):
        perm = (0,) + rest
        if all(perm[G.mul(a, b)] == G.mul(perm[a], perm[b])
               for a in G.elements() for b in G.elements()):
            out.append(perm)
    return sorted(out)


class TestAutomorphisms:
    def test_counts(self):
        assert len(automorphism_group(cyclic(4))) == 2
        assert len(automorphism_group(klein_four())) == 6
        assert len(automorphism_group(cyclic(1))) == 1

    @pytest.mark.parametrize("G", [cyclic(4), cyclic(6), klein_four(),
                                   symmetric_group(3), cyclic(5)])
    def test_against_brute_force(self, G):
        assert automorphism_group(G) == brute_force_automorphisms(G)

    @pytest.mark.parametrize("G", [cyclic(8), symmetric_group(3), dihedral(4),
                                   dicyclic(2)])
    def test_group_closure(self, G):
        auts = automorphism_group(G)
        assert identity_perm(G.order) in auts
        index = set(auts)
        for p in auts:
            assert invert(p) in index
            for q in auts:
                assert compose(p, q) in index
            assert is_automorphism(G, p)

    def test_inner_abelian_is_trivial(self):
        assert inner_automorphisms(cyclic(4)) == [identity_perm(4)]

    def test_inner_s3(self):
        s3 = symmetric_group(3)
        inner = inner_automorphisms(s3)
        assert len(inner) == 6
        # conjugations compose like the group: alpha_g o alpha_h = alpha_{gh}
        for g in s3.elements():
            ag = tuple(s3.conjugate(g, x) for x in s3.elements())
            for h in s3.elements():
                ah = tuple(s3.conjugate(h, x) for x in s3.elements())
                agh = tuple(s3.conjugate(s3.mul(g, h), x) for x in s3.elements())
                assert compose(ag, ah) == agh

    def test_conjugation_transport(self):
        # f alpha_x f^-1 = alpha_{f(x)} for every automorphism f
        G = symmetric_group(3)
        for f in automorphism_group(G):
            for x in G.elements():
                ax = tuple(G.conjugate(x, y) for y in G.elements())
                lhs = compose(compose(f, ax), invert(f))
                rhs = tuple(G.conjugate(f[x], y) for y in G.elements())
                assert lhs == rhs


class TestHolomorph:
    def test_orders(self):
        assert holomorph(cyclic(3)).order == 6
        assert holomorph(cyclic(1)).order == 1
        assert holomorph(klein_four()).order == 24

    def test_holomorph_is_a_group(self):
        H = holomorph(cyclic(4))
        validate_group(H.table)  # full axiom scan

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            holomorph(klein_four(), bound=20)


def brute_force_regular_subgroups(G):
    """Scan all |G|-subsets of Hol(G) for regular subgroups; tiny G only."""
    H = holomorph(G)
    k = len(automorphism_group(G))
    n = G.order
    found = []
    for sub in itertools.combinations(range(1, H.order), n - 1):
        s = frozenset(sub) | {0}
        if not all(H.mul(a, b) in s for a in s for b in s):
            continue
        firsts = sorted(x // k for x in s)
        if firsts == list(range(n)):
            found.append(tuple(x % k for x in sorted(s, key=lambda x: x // k)))
    return sorted(found)


class TestRegularSubgroups:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_prime_cyclic_unique(self, p):
        subs = regular_subgroups(cyclic(p))
        assert len(subs) == 1
        assert subs[0].assignment == tuple(0 for _ in range(p))

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_against_subset_scan(self, p):
        got = sorted(s.assignment for s in regular_subgroups(cyclic(p)))
        assert got == brute_force_regular_subgroups(cyclic(p))

    def test_subset_scan_klein(self):
        got = sorted(s.assignment for s in regular_subgroups(klein_four()))
        assert got == brute_force_regular_subgroups(klein_four())

    def test_subset_scan_s3(self):
        # non-abelian ambient: Hol(S3) has 36 elements and 8 regular subgroups
        got = sorted(s.assignment for s in regular_subgroups(symmetric_group(3)))
        assert len(got) == 8
        assert got == brute_force_regular_subgroups(symmetric_group(3))

    def test_trivial_group(self):
        assert len(regular_subgroups(cyclic(1))) == 1

    def test_first_coordinates_cover(self):
        for sub in regular_subgroups(symmetric_group(3)):
            assert len(sub.assignment) == 6
            table = sub.multiplication_table()
            assert sorted(table[0]) == list(range(6))

    def test_deterministic(self):
        a = [s.assignment for s in regular_subgroups(dihedral(4))]
        b = [s.assignment for s in regular_subgroups(dihedral(4))]
        assert a == b == sorted(a)

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            regular_subgroups(klein_four(), bound=10)


class TestIsomorphism:
    def test_same_group(self):
        assert group_isomorphism(cyclic(6), cyclic(6)) == identity_perm(6)

    def test_distinct_order_four(self):
        assert group_isomorphism(cyclic(4), klein_four()) is None

    def test_s3_is_dihedral_3(self):
        assert group_isomorphism(symmetric_group(3), dihedral(3)) is not None

    def test_c6_is_c2_x_c3(self):
        assert group_isomorphism(cyclic(6),
                                 direct_product_group(cyclic(2), cyclic(3))) is not None


class TestSimplicity:
    def test_a5_simple(self):
        assert is_simple(alternating_5())
        assert_simple_nonabelian(alternating_5())

    def test_not_simple(self):
        assert not is_simple(alternating_group(4))
        with pytest.raises(NotSimple):
            assert_simple_nonabelian(alternating_group(4))
        with pytest.raises(NotSimple):
            assert_simple_nonabelian(cyclic(5))  # abelian
