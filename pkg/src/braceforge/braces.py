"""Skew left braces: one carrier, two compatible group operations.

A brace is stored as two Cayley tables sharing identity 0, together with the
materialized lambda table lam[a][b] = -a + a*b.  All higher-level notions
(ideals, socle, quotients, series) read that table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    BoundExceeded,
    BraceAxiomFailed,
    GroupInvalid,
    GroupValidationError,
    InternalInvariant,
    NotAnIdeal,
)
from .groups import (
    FiniteGroup,
    Perm,
    enumeration_bound,
    identity_perm,
    subgroups,
    subset_key,
    validate_group,
)


class SubsetFlags(NamedTuple):
    subbrace: bool
    left_ideal: bool
    ideal: bool


class SkewBrace:
    """Immutable skew left brace on the carrier 0..order-1."""

    __slots__ = ("order", "add", "mul", "lam", "_cache")

    def __init__(self, add: FiniteGroup, mul: FiniteGroup,
                 lam: tuple[tuple[int, ...], ...]):
        self.order = add.order
        self.add = add
        self.mul = mul
        self.lam = lam
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"SkewBrace(order={self.order})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, SkewBrace)
                and self.add.table == other.add.table
                and self.mul.table == other.mul.table)

    def __hash__(self) -> int:
        return hash((self.add.table, self.mul.table))

    def elements(self) -> range:
        return range(self.order)

    def plus(self, a: int, b: int) -> int:
        return self.add.table[a][b]

    def neg(self, a: int) -> int:
        return self.add.inverse[a]

    def times(self, a: int, b: int) -> int:
        return self.mul.table[a][b]

    def tinv(self, a: int) -> int:
        return self.mul.inverse[a]

    def carrier(self) -> frozenset[int]:
        return frozenset(self.elements())

    @property
    def is_trivial(self) -> bool:
        """Both operations coincide."""
        flag = self._cache.get("trivial")
        if flag is None:
            flag = self.add.table == self.mul.table
            self._cache["trivial"] = flag
        return flag

    @property
    def is_almost_trivial(self) -> bool:
        """a*b = b+a for all a, b."""
        flag = self._cache.get("almost_trivial")
        if flag is None:
            flag = all(self.mul.table[a][b] == self.add.table[b][a]
                       for a in self.elements() for b in self.elements())
            self._cache["almost_trivial"] = flag
        return flag

    @property
    def is_abelian(self) -> bool:
        """Trivial with abelian group structure; the commutator of B with B is 0."""
        return self.is_trivial and self.add.is_abelian


class NoOrderMatch(GroupValidationError):
    def __init__(self, n1: int, n2: int):
        super().__init__(f"orders differ: {n1} vs {n2}")


def _lambda_table(add: FiniteGroup, mul: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(add.table[add.inverse[a]][mul.table[a][b]]
                       for b in add.elements())
                 for a in add.elements())


def validate_brace(add_table: Sequence[Sequence[int]],
                   mul_table: Sequence[Sequence[int]], *,
                   assoc_bound: int | None = None) -> SkewBrace:
    """Validate both groups and the compatibility law a(b+c) = ab - a + ac.

    The scan is lexicographic, so a failure reports the first witness triple.
    """
    try:
        add = validate_group(add_table, assoc_bound=assoc_bound)
    except GroupValidationError as exc:
        raise GroupInvalid("add", exc) from exc
    try:
        mul = validate_group(mul_table, assoc_bound=assoc_bound)
    except GroupValidationError as exc:
        raise GroupInvalid("mul", exc) from exc
    if add.order != mul.order:
        raise GroupInvalid("mul", NoOrderMatch(add.order, mul.order))
    n = add.order
    at, mt, ai = add.table, mul.table, add.inverse
    for a in range(n):
        ma = mt[a]
        neg_a = ai[a]
        for b in range(n):
            rb = at[b]
            rhs_row = at[at[ma[b]][neg_a]]  # (ab - a) + _
            for c in range(n):
                if ma[rb[c]] != rhs_row[ma[c]]:
                    raise BraceAxiomFailed(a, b, c)
    return SkewBrace(add, mul, _lambda_table(add, mul))


def trivial_brace(G: FiniteGroup) -> SkewBrace:
    """Both operations equal to G's."""
    return SkewBrace(G, G, tuple(identity_perm(G.order) for _ in G.elements()))


def almost_trivial_brace(G: FiniteGroup) -> SkewBrace:
    """Additive group G, multiplication a*b = b+a."""
    mul_table = [[G.table[b][a] for b in G.elements()] for a in G.elements()]
    mul = FiniteGroup(tuple(tuple(r) for r in mul_table), G.inverse,
                      f"{G.name}-op" if G.name else None)
    return SkewBrace(G, mul, _lambda_table(G, mul))


def lambda_map(B: SkewBrace, a: int) -> Perm:
    """The additive automorphism b -> -a + a*b."""
    return B.lam[a]


def star(B: SkewBrace, a: int, b: int) -> int:
    """a * b = lambda_a(b) - b, the ring-multiplication analogue."""
    return B.plus(B.lam[a][b], B.neg(b))


def additive_closure(B: SkewBrace, seed: Iterable[int]) -> frozenset[int]:
    return B.add.closure(seed)


def star_span(B: SkewBrace, X: Iterable[int], Y: Iterable[int]) -> frozenset[int]:
    """Additive subgroup generated by all x*y with x in X, y in Y."""
    gens = {star(B, x, y) for x in X for y in Y}
    return additive_closure(B, gens)


def kernel_lambda(B: SkewBrace) -> frozenset[int]:
    """Elements with a*b = a+b for all b; a subbrace."""
    n = B.order
    ident = identity_perm(n)
    out = frozenset(a for a in B.elements() if B.lam[a] == ident)
    if not classify_subset(B, out).subbrace:
        raise InternalInvariant("kernel of lambda is not a subbrace")
    return out


def fix_set(B: SkewBrace) -> frozenset[int]:
    """Common fixed points of every lambda_b; a left ideal."""
    out = frozenset(a for a in B.elements()
                    if all(B.lam[b][a] == a for b in B.elements()))
    if not classify_subset(B, out).left_ideal:
        raise InternalInvariant("fixed-point set is not a left ideal")
    return out


def socle(B: SkewBrace) -> frozenset[int]:
    """Kernel of lambda intersected with the additive centre; an ideal."""
    out = kernel_lambda(B) & B.add.center()
    if not classify_subset(B, out).ideal:
        raise InternalInvariant("socle is not an ideal")
    return out


def annihilator(B: SkewBrace) -> frozenset[int]:
    """Elements a with a+b = b+a = ab = ba for all b; an ideal."""
    out = socle(B) & fix_set(B)
    if not classify_subset(B, out).ideal:
        raise InternalInvariant("annihilator is not an ideal")
    return out


def _is_additive_subgroup(B: SkewBrace, S: frozenset[int]) -> bool:
    if 0 not in S:
        return False
    return all(B.plus(a, b) in S for a in S for b in S) \
        and all(B.neg(a) in S for a in S)


def classify_subset(B: SkewBrace, S: Iterable[int]) -> SubsetFlags:
    """Decide subbrace / left ideal / ideal by definition-level scans."""
    key = frozenset(S)
    cached = B._cache.setdefault("subset_flags", {}).get(key)
    if cached is not None:
        return cached
    additive = _is_additive_subgroup(B, key)
    subbrace = additive and all(B.times(a, b) in key for a in key for b in key) \
        and all(B.tinv(a) in key for a in key)
    left_ideal = additive and all(B.lam[b][a] in key
                                  for b in B.elements() for a in key)
    ideal = left_ideal \
        and all(B.plus(B.plus(b, a), B.neg(b)) in key
                for b in B.elements() for a in key) \
        and all(star(B, a, b) in key for a in key for b in B.elements())
    flags = SubsetFlags(subbrace, left_ideal, ideal)
    B._cache["subset_flags"][key] = flags
    return flags


def is_subbrace(B: SkewBrace, S: Iterable[int]) -> bool:
    return classify_subset(B, S).subbrace


def is_left_ideal(B: SkewBrace, S: Iterable[int]) -> bool:
    return classify_subset(B, S).left_ideal


def is_ideal(B: SkewBrace, S: Iterable[int]) -> bool:
    return classify_subset(B, S).ideal


def subbraces(B: SkewBrace, *, bound: int | None = None) -> list[frozenset[int]]:
    """All subbraces: additive subgroups also closed under the product."""
    cached = B._cache.get("subbraces")
    if cached is None:
        cached = [S for S in subgroups(B.add, bound=bound)
                  if all(B.times(a, b) in S for a in S for b in S)
                  and all(B.tinv(a) in S for a in S)]
        B._cache["subbraces"] = cached
    return list(cached)


@dataclass(frozen=True)
class SubBrace:
    """A subbrace extracted as a standalone brace, with its embedding."""

    brace: SkewBrace
    elements: tuple[int, ...]  # elements[local] = global index

    def to_local(self, s: Iterable[int]) -> frozenset[int]:
        pos = {g: i for i, g in enumerate(self.elements)}
        return frozenset(pos[g] for g in s)

    def to_global(self, s: Iterable[int]) -> frozenset[int]:
        return frozenset(self.elements[i] for i in s)


def sub_brace(B: SkewBrace, S: Iterable[int]) -> SubBrace:
    """Re-index a subbrace as a brace in its own right (0 stays at 0)."""
    members = sorted(frozenset(S))
    if not classify_subset(B, members).subbrace:
        raise ValueError(f"{members} is not a subbrace")
    pos = {g: i for i, g in enumerate(members)}
    add = [[pos[B.plus(a, b)] for b in members] for a in members]
    mul = [[pos[B.times(a, b)] for b in members] for a in members]
    return SubBrace(validate_brace(add, mul), tuple(members))


@dataclass(frozen=True)
class Quotient:
    """Quotient brace with the projection of the parent carrier onto it."""

    brace: SkewBrace
    projection: tuple[int, ...]      # parent element -> coset index
    representatives: tuple[int, ...]  # coset index -> least parent element

    def image(self, s: Iterable[int]) -> frozenset[int]:
        return frozenset(self.projection[a] for a in s)

    def preimage(self, s: Iterable[int]) -> frozenset[int]:
        wanted = frozenset(s)
        return frozenset(a for a in range(len(self.projection))
                         if self.projection[a] in wanted)


def quotient(B: SkewBrace, I: Iterable[int]) -> Quotient:
    """B modulo an ideal, on least-element coset representatives."""
    ideal = frozenset(I)
    if not classify_subset(B, ideal).ideal:
        raise NotAnIdeal(f"{sorted(ideal)} is not an ideal")
    coset_of: dict[int, frozenset[int]] = {}
    for a in B.elements():
        if a not in coset_of:
            coset = frozenset(B.plus(a, i) for i in ideal)
            for x in coset:
                coset_of[x] = coset
    reps = sorted({min(c) for c in coset_of.values()})
    index = {r: k for k, r in enumerate(reps)}
    projection = tuple(index[min(coset_of[a])] for a in B.elements())
    add = [[projection[B.plus(a, b)] for b in reps] for a in reps]
    mul = [[projection[B.times(a, b)] for b in reps] for a in reps]
    return Quotient(validate_brace(add, mul), projection, tuple(reps))


def subbrace_product(B: SkewBrace, S: Iterable[int], I: Iterable[int]) -> frozenset[int]:
    """SI for a subbrace S and ideal I; equals S+I and is a subbrace."""
    s, ideal = frozenset(S), frozenset(I)
    if not classify_subset(B, s).subbrace:
        raise NotAnIdeal(f"{sorted(s)} is not a subbrace")
    if not classify_subset(B, ideal).ideal:
        raise NotAnIdeal(f"{sorted(ideal)} is not an ideal")
    product = frozenset(B.times(a, y) for a in s for y in ideal)
    additive = frozenset(B.plus(a, y) for a in s for y in ideal)
    if product != additive or not classify_subset(B, product).subbrace:
        raise InternalInvariant("SI != S+I or SI is not a subbrace")
    return product


def direct_product(B1: SkewBrace, B2: SkewBrace, *,
                   bound: int | None = None) -> SkewBrace:
    """Componentwise operations on pairs (a1, a2) -> a1*|B2| + a2."""
    limit = bound if bound is not None else enumeration_bound()
    size = B1.order * B2.order
    if size > limit:
        raise BoundExceeded("product order", size, limit)
    n2 = B2.order
    pairs = list(itertools.product(B1.elements(), B2.elements()))
    add = [[B1.plus(a1, b1) * n2 + B2.plus(a2, b2) for b1, b2 in pairs]
           for a1, a2 in pairs]
    mul = [[B1.times(a1, b1) * n2 + B2.times(a2, b2) for b1, b2 in pairs]
           for a1, a2 in pairs]
    return validate_brace(add, mul)


def lambda_orbit_sizes(B: SkewBrace) -> tuple[int, ...]:
    """Size of the orbit of each element under all lambda maps."""
    sizes = B._cache.get("lambda_orbits")
    if sizes is None:
        sizes = [0] * B.order
        seen = [False] * B.order
        for a in B.elements():
            if seen[a]:
                continue
            orbit = {a}
            work = [a]
            while work:
                x = work.pop()
                for b in B.elements():
                    y = B.lam[b][x]
                    if y not in orbit:
                        orbit.add(y)
                        work.append(y)
            for x in orbit:
                sizes[x] = len(orbit)
                seen[x] = True
        sizes = tuple(sizes)
        B._cache["lambda_orbits"] = sizes
    return sizes


def _brace_signature(B: SkewBrace, a: int) -> tuple[int, int, int]:
    return (B.add.element_order(a), B.mul.element_order(a), lambda_orbit_sizes(B)[a])


def is_isomorphic(B1: SkewBrace, B2: SkewBrace, *,
                  bound: int | None = None) -> Perm | None:
    """A bijection preserving both operations, or None.

    Backtracks on images of an additive generating set, pruning candidates by
    the (additive order, multiplicative order, lambda-orbit size) signature.
    """
    limit = bound if bound is not None else enumeration_bound()
    if B1.order > limit:
        raise BoundExceeded("brace order", B1.order, limit)
    if B1.order != B2.order:
        return None
    n = B1.order
    sig1 = [_brace_signature(B1, a) for a in B1.elements()]
    sig2 = [_brace_signature(B2, a) for a in B2.elements()]
    if sorted(sig1) != sorted(sig2):
        return None
    gens = []
    have = frozenset({0})
    for g in B1.elements():
        if g not in have:
            gens.append(g)
            have = B1.add.closure(have | {g})
            if len(have) == n:
                break
    if not gens:
        return identity_perm(1)
    candidates = [[h for h in B2.elements() if sig2[h] == sig1[g]] for g in gens]

    def build(images: Sequence[int]) -> Perm | None:
        mapping: list[int | None] = [None] * n
        mapping[0] = 0
        queue = [0]
        while queue:
            x = queue.pop()
            fx = mapping[x]
            for g, h in zip(gens, images):
                y = B1.plus(x, g)
                fy = B2.plus(fx, h)
                if mapping[y] is None:
                    mapping[y] = fy
                    queue.append(y)
        if any(v is None for v in mapping) or len(set(mapping)) != n:
            return None
        for a in range(n):
            ma = mapping[a]
            for b in range(n):
                mb = mapping[b]
                if mapping[B1.plus(a, b)] != B2.plus(ma, mb):
                    return None
                if mapping[B1.times(a, b)] != B2.times(ma, mb):
                    return None
        return tuple(mapping)  # type: ignore[arg-type]

    def descend(k: int, images: list[int]) -> Perm | None:
        if k == len(gens):
            return build(images)
        for h in candidates[k]:
            images.append(h)
            got = descend(k + 1, images)
            images.pop()
            if got is not None:
                return got
        return None

    return descend(0, [])


def canonical_subsets(sets: Iterable[Iterable[int]]) -> list[frozenset[int]]:
    return sorted((frozenset(s) for s in sets), key=subset_key)
