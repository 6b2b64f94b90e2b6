"""Finite set-theoretic Yang-Baxter solutions and their decompositions.

A solution on m points is the pair of index tables of
r(x, y) = (lambda_x(y), rho_y(x)); the braid relation and non-degeneracy are
checked exhaustively.  Decomposition witnesses are nested chains of subsets
with coset partitions, re-verified block by block before they are returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .braces import SkewBrace, classify_subset, quotient, sub_brace
from .errors import (
    BraidFailed,
    Degenerate,
    EmbeddingIncompatible,
    HypothesisFailed,
    InternalInvariant,
    NotAnIdeal,
    QuotientNotAbelian,
    SeriesInvalid,
)
from .structure import SeriesWitness, ZERO
from .groups import subset_key


@dataclass(frozen=True)
class Solution:
    """Non-degenerate solution given by its two component tables.

    lambda_tab[x][y] is the first output of r(x, y) and rho_tab[y][x] the
    second, so rows of both tables are bijections of the ground set.
    """

    size: int
    lambda_tab: tuple[tuple[int, ...], ...]
    rho_tab: tuple[tuple[int, ...], ...]

    def r(self, x: int, y: int) -> tuple[int, int]:
        return (self.lambda_tab[x][y], self.rho_tab[y][x])

    def ground(self) -> frozenset[int]:
        return frozenset(range(self.size))

    @property
    def is_flip(self) -> bool:
        return all(self.r(x, y) == (y, x)
                   for x in range(self.size) for y in range(self.size))

    def to_json(self) -> dict:
        return {"size": self.size,
                "lambda": [list(r) for r in self.lambda_tab],
                "rho": [list(r) for r in self.rho_tab]}


def validate_solution(lambda_tab: Sequence[Sequence[int]],
                      rho_tab: Sequence[Sequence[int]]) -> Solution:
    """Check bijectivity of every component map and the braid relation.

    The braid scan covers all m^3 triples and reports the first failure.
    """
    m = len(lambda_tab)
    if len(rho_tab) != m or any(len(r) != m for r in lambda_tab) \
            or any(len(r) != m for r in rho_tab):
        raise Degenerate("table shape", m)
    full = set(range(m))
    for x, row in enumerate(lambda_tab):
        if set(row) != full:
            raise Degenerate("lambda", x)
    for y, row in enumerate(rho_tab):
        if set(row) != full:
            raise Degenerate("rho", y)
    lam = tuple(tuple(r) for r in lambda_tab)
    rho = tuple(tuple(r) for r in rho_tab)

    def r(x, y):
        return lam[x][y], rho[y][x]

    for x in range(m):
        for y in range(m):
            for z in range(m):
                # r12 r23 r12 applied to (x, y, z), innermost first
                a, b = r(x, y)
                b, c = r(b, z)
                a, b = r(a, b)
                lhs = (a, b, c)
                d, e = r(y, z)
                x2, d = r(x, d)
                d, e2 = r(d, e)
                rhs = (x2, d, e2)
                if lhs != rhs:
                    raise BraidFailed(x, y, z)
    return Solution(m, lam, rho)


def flip_solution(m: int) -> Solution:
    """r(x, y) = (y, x)."""
    lam = tuple(tuple(range(m)) for _ in range(m))
    return Solution(m, lam, lam)


def solution_from_brace(B: SkewBrace) -> Solution:
    """The solution r(a, b) = (lambda_a(b), lambda_a(b)^{-1} a b) on B."""
    rho = tuple(tuple(B.times(B.times(B.tinv(B.lam[a][b]), a), b)
                      for a in B.elements())
                for b in B.elements())
    try:
        return validate_solution(B.lam, rho)
    except (Degenerate, BraidFailed) as exc:
        raise InternalInvariant(f"brace solution failed validation: {exc}") from exc


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty blocks covering the ground set."""

    ground: frozenset[int]
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        union: set[int] = set()
        for b in self.blocks:
            if not b or (union & b):
                raise ValueError("blocks must be non-empty and disjoint")
            union |= b
        if union != set(self.ground):
            raise ValueError("blocks must cover the ground set")

    @property
    def uniform(self) -> bool:
        sizes = {len(b) for b in self.blocks}
        return len(sizes) <= 1

    def block_of(self, x: int) -> frozenset[int]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def to_json(self) -> dict:
        return {"blocks": [sorted(b) for b in self.blocks], "uniform": self.uniform}


def make_partition(blocks: Iterable[Iterable[int]]) -> Partition:
    bs = tuple(sorted((frozenset(b) for b in blocks), key=subset_key))
    ground = frozenset(x for b in bs for x in b)
    return Partition(ground, bs)


def singletons_partition(ground: Iterable[int]) -> Partition:
    return make_partition([{x} for x in ground])


def _blocks_swap_ok(solution: Solution, blocks: Sequence[frozenset[int]]) -> tuple[bool, tuple | None]:
    """r(Xi x Xj) lands in Xj x Xi for every ordered block pair."""
    for bi in blocks:
        for bj in blocks:
            for x in bi:
                for y in bj:
                    u, v = solution.r(x, y)
                    if u not in bj or v not in bi:
                        return False, (sorted(bi), sorted(bj), x, y)
    return True, None


def is_partition_decomposable(solution: Solution, partition: Partition) -> tuple[bool, tuple | None]:
    """Block-swap check of the whole solution against the partition.

    Images have the right cardinality automatically because r is bijective, so
    containment of every r(Xi x Xj) in Xj x Xi is equivalent to equality.
    """
    if partition.ground != solution.ground():
        raise ValueError("partition does not cover the solution's ground set")
    return _blocks_swap_ok(solution, partition.blocks)


def r_closed_subsets(solution: Solution) -> list[frozenset[int]]:
    """All non-empty subsets X with r(X x X) inside X x X."""
    out = []
    for bits in range(1, 1 << solution.size):
        X = frozenset(i for i in range(solution.size) if bits >> i & 1)
        if all(solution.lambda_tab[x][y] in X and solution.rho_tab[y][x] in X
               for x in X for y in X):
            out.append(X)
    return sorted(out, key=subset_key)


def find_decomposition(solution: Solution) -> Partition | None:
    """Exhaustive search for a decomposing partition with >= 2 blocks.

    Super-exponential in the ground size; callers keep it to <= 5 points.
    """
    points = sorted(solution.ground())

    def set_partitions(items):
        if not items:
            yield []
            return
        head, rest = items[0], items[1:]
        for tail in set_partitions(rest):
            for i in range(len(tail)):
                yield tail[:i] + [[head] + tail[i]] + tail[i + 1:]
            yield [[head]] + tail

    for raw in set_partitions(points):
        if len(raw) < 2:
            continue
        partition = make_partition(raw)
        ok, _ = is_partition_decomposable(solution, partition)
        if ok:
            return partition
    return None


def coset_partition(B: SkewBrace, I: Iterable[int], within: Iterable[int] | None = None) -> Partition:
    """Left multiplicative cosets of the ideal I inside the subbrace `within`.

    For an ideal these agree with the additive cosets; the equality is
    asserted rather than assumed.  Uniform by Lagrange.
    """
    scope = frozenset(within) if within is not None else B.carrier()
    ideal = frozenset(I)
    sb = sub_brace(B, scope)
    if not classify_subset(sb.brace, sb.to_local(ideal)).ideal:
        raise NotAnIdeal(f"{sorted(ideal)} is not an ideal of the given subbrace")
    blocks = {}
    for b in scope:
        left = frozenset(B.times(b, i) for i in ideal)
        added = frozenset(B.plus(b, i) for i in ideal)
        if left != added:
            raise InternalInvariant("multiplicative and additive cosets differ")
        blocks[min(left)] = left
    partition = make_partition(blocks.values())
    if not partition.uniform:
        raise InternalInvariant("coset partition is not uniform")
    return partition


@dataclass(frozen=True)
class MultidecompositionWitness:
    """Chain X = X0 >= X1 >= ... >= Xn with |Xn| = 1 and per-level partitions.

    Level i certifies that (Xi, r restricted) is decomposable along
    partitions[i], with X_{i+1} one of the blocks.
    """

    ground: frozenset[int]
    chain: tuple[frozenset[int], ...]
    partitions: tuple[Partition, ...]

    @property
    def uniform(self) -> bool:
        return all(p.uniform for p in self.partitions)

    def to_json(self) -> dict:
        return {"ground": sorted(self.ground),
                "chain": [sorted(s) for s in self.chain],
                "partitions": [p.to_json() for p in self.partitions],
                "uniform": self.uniform}


def verify_multidecomposition(solution: Solution,
                              witness: MultidecompositionWitness) -> dict:
    """Re-check every clause of the witness; returns per-check booleans."""
    chain, partitions = witness.chain, witness.partitions
    checks = {
        "starts_at_ground": bool(chain) and chain[0] == witness.ground,
        "ends_in_singleton": bool(chain) and len(chain[-1]) == 1,
        "levels_match": len(partitions) == len(chain) - 1,
        "descending": all(chain[i + 1] <= chain[i] for i in range(len(chain) - 1)),
        "r_closed": True, "partitions_cover": True,
        "next_is_block": True, "block_swap": True,
    }
    for i, part in enumerate(partitions):
        X = chain[i]
        if any(solution.lambda_tab[x][y] not in X or solution.rho_tab[y][x] not in X
               for x in X for y in X):
            checks["r_closed"] = False
        if part.ground != X:
            checks["partitions_cover"] = False
            continue
        if chain[i + 1] not in part.blocks:
            checks["next_is_block"] = False
        ok, _ = _blocks_swap_ok(solution, part.blocks)
        if not ok:
            checks["block_swap"] = False
    checks["ok"] = all(checks.values())
    return checks


def _validate_abelian_series(B: SkewBrace, series: SeriesWitness) -> None:
    if series.kind != "abelian":
        raise SeriesInvalid(f"expected an abelian series, got {series.kind!r}")
    chain = series.chain
    if not chain or chain[0] != B.carrier() or chain[-1] != ZERO:
        raise SeriesInvalid("series must descend from the whole brace to 0")
    for i in range(len(chain) - 1):
        if not chain[i + 1] < chain[i]:
            raise SeriesInvalid(f"chain is not strictly descending at step {i}")
        sb = sub_brace(B, chain[i])
        local = sb.to_local(chain[i + 1])
        if not classify_subset(sb.brace, local).ideal:
            raise SeriesInvalid(f"member {i + 1} is not an ideal of member {i}")
        if not quotient(sb.brace, local).brace.is_abelian:
            raise SeriesInvalid(f"factor {i}/{i + 1} is not abelian")


def multidecomposition_from_series(B: SkewBrace, series: SeriesWitness) -> MultidecompositionWitness:
    """Uniform multidecomposition of the brace solution along an abelian series.

    Level k partitions the series member I_k into the multiplicative cosets of
    I_{k+1}; the witness is fully re-verified before it is returned.
    """
    _validate_abelian_series(B, series)
    solution = solution_from_brace(B)
    chain = series.chain
    partitions = tuple(coset_partition(B, chain[k + 1], within=chain[k])
                       for k in range(len(chain) - 1))
    witness = MultidecompositionWitness(B.carrier(), chain, partitions)
    checks = verify_multidecomposition(solution, witness)
    if not checks["ok"] or not witness.uniform:
        raise InternalInvariant(f"series witness failed verification: {checks}")
    return witness


def ideal_coset_decomposition(B: SkewBrace, I: Iterable[int]) -> Partition:
    """Uniform decomposition of the brace solution into cosets of a proper
    ideal with abelian quotient; the block count is the index of the ideal."""
    ideal = frozenset(I)
    if ideal == B.carrier():
        raise ValueError("the ideal must be proper")
    if not classify_subset(B, ideal).ideal:
        raise NotAnIdeal(f"{sorted(ideal)} is not an ideal")
    if not quotient(B, ideal).brace.is_abelian:
        raise QuotientNotAbelian(f"quotient by {sorted(ideal)} is not abelian")
    partition = coset_partition(B, ideal)
    solution = solution_from_brace(B)
    ok, witness = is_partition_decomposable(solution, partition)
    if not ok or not partition.uniform:
        raise InternalInvariant(f"coset partition not decomposable: {witness}")
    if len(partition.blocks) != B.order // len(ideal):
        raise InternalInvariant("block count differs from the ideal's index")
    return partition


def embedded_multidecomposition(solution: Solution, X: Iterable[int], B: SkewBrace,
                                embed: Mapping[int, int] | Sequence[int],
                                series: SeriesWitness) -> MultidecompositionWitness:
    """Multidecomposition of an r-closed subset X embedded in a soluble brace.

    The embedding must be injective and intertwine r with the brace solution
    on images, and X must meet the last non-zero series member.  Levels follow
    the series through the embedding: X_j collects the points landing in I_j,
    partitioned by coset intersections with empty blocks dropped.  The result
    need not be uniform.
    """
    points = frozenset(X)
    if not points or not points <= solution.ground():
        raise EmbeddingIncompatible("X must be a non-empty subset of the ground set")
    emap = {x: embed[x] for x in points}
    if len(set(emap.values())) != len(points):
        raise EmbeddingIncompatible("embedding is not injective")
    if not set(emap.values()) <= set(B.elements()):
        raise EmbeddingIncompatible("embedding leaves the brace carrier")
    brace_solution = solution_from_brace(B)
    for x in points:
        for y in points:
            u, v = solution.r(x, y)
            if u not in points or v not in points:
                raise EmbeddingIncompatible("X is not r-closed", (x, y))
            if brace_solution.r(emap[x], emap[y]) != (emap[u], emap[v]):
                raise EmbeddingIncompatible(
                    "solution and brace solution disagree on images", (x, y))
    _validate_abelian_series(B, series)
    chain = series.chain
    n = len(chain) - 1
    if n == 0:
        # zero brace: injectivity already forces X to be a single point
        return MultidecompositionWitness(points, (points,), ())
    last_nonzero = chain[n - 1]
    meet = sorted(x for x in points if emap[x] in last_nonzero)
    if not meet:
        raise HypothesisFailed("X misses the last non-zero series member")
    levels = [points]
    for j in range(1, n):
        levels.append(frozenset(x for x in points if emap[x] in chain[j]))
    levels.append(frozenset({meet[0]}))
    partitions = []
    for j in range(n):
        cosets = coset_partition(B, chain[j + 1], within=chain[j])
        blocks = []
        for block in cosets.blocks:
            pulled = frozenset(x for x in levels[j] if emap[x] in block)
            if pulled:
                blocks.append(pulled)
        partitions.append(make_partition(blocks))
    witness = MultidecompositionWitness(points, tuple(levels), tuple(partitions))
    checks = verify_multidecomposition(solution, witness)
    if not checks["ok"]:
        raise InternalInvariant(f"embedded witness failed verification: {checks}")
    return witness
