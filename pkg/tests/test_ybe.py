"""Yang-Baxter solutions, decomposability, and multidecomposition witnesses."""

import pytest

from braceforge.braces import quotient, trivial_brace
from braceforge.catalog import alternating_5, cyclic, symmetric_group
from braceforge.construct import enumerate_braces
from braceforge.errors import (
    BraidFailed,
    Degenerate,
    EmbeddingIncompatible,
    HypothesisFailed,
    QuotientNotAbelian,
    SeriesInvalid,
)
from braceforge.structure import (
    ZERO,
    SeriesWitness,
    all_ideals,
    derived_series,
    is_soluble,
)
from braceforge.ybe import (
    MultidecompositionWitness,
    coset_partition,
    embedded_multidecomposition,
    find_decomposition,
    flip_solution,
    ideal_coset_decomposition,
    is_partition_decomposable,
    make_partition,
    multidecomposition_from_series,
    r_closed_subsets,
    singletons_partition,
    solution_from_brace,
    validate_solution,
    verify_multidecomposition,
)

S3 = symmetric_group(3)
A3 = frozenset({0, 3, 4})


def z4_two_step_series():
    B = trivial_brace(cyclic(4))
    chain = (frozenset(range(4)), frozenset({0, 2}), ZERO)
    return B, SeriesWitness("abelian", chain, ({}, {}))


class TestValidateSolution:
    def test_flip(self):
        s = flip_solution(3)
        assert validate_solution(s.lambda_tab, s.rho_tab).is_flip

    def test_constant_row_degenerate(self):
        bad = ((0, 0, 0), (0, 1, 2), (0, 1, 2))
        good = tuple(tuple(range(3)) for _ in range(3))
        with pytest.raises(Degenerate):
            validate_solution(bad, good)
        with pytest.raises(Degenerate):
            validate_solution(good, bad)

    def test_braid_failure_witnessed(self):
        # bijective rows that break the braid relation (found by search)
        lam = ((0, 1, 2), (0, 1, 2), (0, 1, 2))
        rho = ((0, 1, 2), (0, 1, 2), (0, 2, 1))
        with pytest.raises(BraidFailed) as info:
            validate_solution(lam, rho)
        assert info.value.witness == (1, 1, 2)


class TestSolutionFromBrace:
    def test_trivial_abelian_is_flip(self):
        assert solution_from_brace(trivial_brace(cyclic(5))).is_flip

    def test_trivial_s3_is_conjugation(self):
        s = solution_from_brace(trivial_brace(S3))
        for a in range(6):
            assert s.lambda_tab[a] == tuple(range(6))
            for b in range(6):
                assert s.rho_tab[b][a] == S3.mul(S3.mul(S3.inv(b), a), b)

    def test_zero_brace(self):
        assert solution_from_brace(trivial_brace(cyclic(1))).size == 1

    def test_census_solutions_validate(self):
        for n in range(1, 7):
            for entry in enumerate_braces(n):
                s = solution_from_brace(entry.brace)
                validate_solution(s.lambda_tab, s.rho_tab)


class TestPartitionDecomposable:
    def test_flip_any_partition(self):
        s = flip_solution(4)
        ok, _ = is_partition_decomposable(s, make_partition([{0, 1}, {2, 3}]))
        assert ok
        ok, _ = is_partition_decomposable(s, singletons_partition(range(4)))
        assert ok

    def test_conjugation_coset_partition(self):
        s = solution_from_brace(trivial_brace(S3))
        ok, _ = is_partition_decomposable(s, make_partition([A3, {1, 2, 5}]))
        assert ok

    def test_failure_witness(self):
        s = solution_from_brace(trivial_brace(S3))
        ok, witness = is_partition_decomposable(
            s, make_partition([{0, 1}, {2, 3, 4, 5}]))
        assert not ok and witness is not None
        bi, bj, x, y = witness
        u, v = s.r(x, y)
        assert u not in frozenset(bj) or v not in frozenset(bi)

    def test_ground_mismatch(self):
        with pytest.raises(ValueError):
            is_partition_decomposable(flip_solution(3), make_partition([{0, 1}]))


class TestCosetPartition:
    def test_whole_ideal_single_block(self):
        B = trivial_brace(cyclic(4))
        p = coset_partition(B, frozenset({0, 2}), within=frozenset({0, 2}))
        assert p.blocks == (frozenset({0, 2}),)

    def test_zero_ideal_singletons(self):
        B = trivial_brace(cyclic(4))
        p = coset_partition(B, ZERO)
        assert p == singletons_partition(range(4))

    def test_z4_two_blocks(self):
        p = coset_partition(trivial_brace(cyclic(4)), frozenset({0, 2}))
        assert p.blocks == (frozenset({0, 2}), frozenset({1, 3})) and p.uniform


class TestMultidecomposition:
    def test_abelian_one_level(self):
        B = trivial_brace(cyclic(3))
        w = multidecomposition_from_series(B, derived_series(B))
        assert w.chain == (frozenset(range(3)), ZERO)
        assert w.partitions[0] == singletons_partition(range(3))

    def test_trivial_s3_two_levels(self):
        B = trivial_brace(S3)
        w = multidecomposition_from_series(B, derived_series(B))
        assert w.chain == (frozenset(range(6)), A3, ZERO)
        assert w.uniform
        assert verify_multidecomposition(solution_from_brace(B), w)["ok"]

    def test_z4_supplied_series(self):
        B, series = z4_two_step_series()
        w = multidecomposition_from_series(B, series)
        assert [len(p.blocks) for p in w.partitions] == [2, 2]
        assert w.uniform

    def test_series_validation(self):
        B = trivial_brace(cyclic(4))
        bad_kind = SeriesWitness("chief", (B.carrier(), ZERO), ({},))
        with pytest.raises(SeriesInvalid):
            multidecomposition_from_series(B, bad_kind)
        not_terminated = SeriesWitness("abelian", (B.carrier(),), ())
        with pytest.raises(SeriesInvalid):
            multidecomposition_from_series(B, not_terminated)
        not_ideal = SeriesWitness(
            "abelian", (B.carrier(), frozenset({0, 1}), ZERO), ({}, {}))
        with pytest.raises(SeriesInvalid):
            multidecomposition_from_series(B, not_ideal)

    def test_tampered_witness_fails_verification(self):
        B = trivial_brace(S3)
        w = multidecomposition_from_series(B, derived_series(B))
        tampered = MultidecompositionWitness(
            w.ground, (w.chain[0], frozenset({0, 1}), w.chain[2]), w.partitions)
        checks = verify_multidecomposition(solution_from_brace(B), tampered)
        assert not checks["ok"]


class TestIdealCosetDecomposition:
    def test_c6_index_two(self):
        p = ideal_coset_decomposition(trivial_brace(cyclic(6)), frozenset({0, 2, 4}))
        assert len(p.blocks) == 2 and p.uniform

    def test_z4(self):
        p = ideal_coset_decomposition(trivial_brace(cyclic(4)), frozenset({0, 2}))
        assert len(p.blocks) == 2

    def test_whole_brace_rejected(self):
        B = trivial_brace(cyclic(6))
        with pytest.raises(ValueError):
            ideal_coset_decomposition(B, B.carrier())

    def test_non_abelian_quotient_rejected(self):
        with pytest.raises(QuotientNotAbelian):
            ideal_coset_decomposition(trivial_brace(S3), ZERO)


class TestEmbedded:
    def test_identity_embedding_matches_series_route(self):
        B = trivial_brace(S3)
        series = derived_series(B)
        s = solution_from_brace(B)
        w = embedded_multidecomposition(s, range(6), B, list(range(6)), series)
        assert w.chain == multidecomposition_from_series(B, series).chain

    def test_z4_subset(self):
        B, series = z4_two_step_series()
        s = solution_from_brace(B)
        w = embedded_multidecomposition(s, {0, 2}, B, list(range(4)), series)
        assert w.chain == (frozenset({0, 2}), frozenset({0, 2}), ZERO)
        assert [len(p.blocks) for p in w.partitions] == [1, 2]

    def test_final_point_is_least(self):
        B, series = z4_two_step_series()
        s = solution_from_brace(B)
        w = embedded_multidecomposition(s, {1, 2, 3, 0}, B, list(range(4)), series)
        assert w.chain[-1] == ZERO  # 0 is the least point of X meeting {0,2}

    def test_hypothesis_failure(self):
        B, series = z4_two_step_series()
        s = solution_from_brace(B)
        with pytest.raises(HypothesisFailed):
            embedded_multidecomposition(s, {1, 3}, B, list(range(4)), series)

    def test_non_injective_embedding(self):
        B = trivial_brace(cyclic(4))
        s = solution_from_brace(B)
        with pytest.raises(EmbeddingIncompatible):
            embedded_multidecomposition(s, {0, 1}, B, [0, 0, 2, 3],
                                        derived_series(B))

    def test_incompatible_images(self):
        # points 1,2 of the flip on C4 sent to non-commuting points of S3
        B = trivial_brace(S3)
        s = flip_solution(3)
        with pytest.raises(EmbeddingIncompatible):
            embedded_multidecomposition(s, {0, 1, 2}, B, [0, 1, 2],
                                        derived_series(B))

    def test_zero_brace(self):
        B = trivial_brace(cyclic(1))
        s = solution_from_brace(B)
        w = embedded_multidecomposition(s, {0}, B, [0], derived_series(B))
        assert w.chain == (ZERO,) and w.partitions == ()


class TestExhaustiveCrossChecks:
    def test_r_closed_subsets_flip(self):
        # every non-empty subset is r-closed for the flip
        assert len(r_closed_subsets(flip_solution(3))) == 7

    def test_r_closed_subsets_conjugation(self):
        s = solution_from_brace(trivial_brace(S3))
        for X in r_closed_subsets(s):
            assert all(s.lambda_tab[x][y] in X and s.rho_tab[y][x] in X
                       for x in X for y in X)

    def test_find_decomposition_matches_corollary(self):
        # braces of order <= 5 with a proper abelian-quotient ideal are
        # decomposable, and the exhaustive search must agree
        for n in range(2, 6):
            for entry in enumerate_braces(n):
                B = entry.brace
                if not is_soluble(B):
                    continue
                s = solution_from_brace(B)
                witnessed = any(
                    ideal_coset_decomposition(B, I) is not None
                    for I in all_ideals(B)
                    if I != B.carrier() and quotient(B, I).brace.is_abelian)
                if witnessed:
                    assert find_decomposition(s) is not None

    def test_non_soluble_input_not_required(self):
        # the A5 brace is not soluble; its derived series never terminates
        B = trivial_brace(alternating_5())
        assert not derived_series(B).terminated
