"""Fixed-structure lemmas for automorphisms of symmetric designs, evaluated on instances.

Each check reports whether its hypotheses hold (``applicable``) separately
from the outcome (``holds``), so a vacuous pass is visible in the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from .errors import DegreeMismatch, NotAutomorphism, NotPrime, NotPrimeOrder, ParamViolation
from .incidence import Design, DesignParams, points_of
from .permgroup import Perm, perm_order

# lemma ids, in report order
FIX_EQUALS_FIXB = "fixed_points_equal_fixed_blocks"
FIXED_POINT_BOUND = "fixed_point_bound"
PAIR_FIXES_BLOCK = "two_fixed_points_fix_block"
FIXED_BLOCKS_MEET_IN_F = "fixed_blocks_meet_in_fixed_points"
PACKING = "packing_inequality"
NO_BLOCK_INSIDE_F = "no_block_inside_fixed_points"

LEMMA_IDS = (FIX_EQUALS_FIXB, FIXED_POINT_BOUND, PAIR_FIXES_BLOCK,
             FIXED_BLOCKS_MEET_IN_F, PACKING, NO_BLOCK_INSIDE_F)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def is_automorphism(d: Design, p: Perm) -> bool:
    if p.degree != d.v:
        raise DegreeMismatch(f"permutation degree {p.degree} != v = {d.v}")
    blocks = set(d.blocks)
    return all(p.map_mask(b) in blocks for b in d.blocks)


@dataclass(frozen=True)
class FixedData:
    """Fixed points (bit-vector) and fixed block indices of an automorphism."""

    point_mask: int
    fixed_blocks: frozenset[int]

    @property
    def fixed_points(self) -> frozenset[int]:
        return frozenset(points_of(self.point_mask))

    @property
    def f(self) -> int:
        return self.point_mask.bit_count()

    def block_sets(self, d: Design) -> list[tuple[int, ...]]:
        return [points_of(d.blocks[i]) for i in sorted(self.fixed_blocks)]


def fixed_structure(d: Design, p: Perm) -> FixedData:
    if not is_automorphism(d, p):
        raise NotAutomorphism(f"{p} does not map the block set to itself")
    mask = 0
    for i, y in enumerate(p.images):
        if i == y:
            mask |= 1 << i
    fixed_blocks = frozenset(i for i, b in enumerate(d.blocks) if p.map_mask(b) == b)
    return FixedData(mask, fixed_blocks)


def fixed_bound_max(params: DesignParams) -> int:
    """Largest integer not exceeding ``k + sqrt(k - lambda)``."""
    if params.k <= params.lam:
        raise ParamViolation("need k > lambda")
    return params.k + math.isqrt(params.k - params.lam)


class PrimeVerdict(str, Enum):
    ADMISSIBLE = "admissible"
    EXCLUDED = "excluded"
    RULE_INAPPLICABLE = "rule_inapplicable"


def prime_admissible(params: DesignParams, p: int) -> PrimeVerdict:
    """Prime bound: a prime p with gcd(p, v) = 1 and 1 < lambda < p dividing
    |Aut| must satisfy p <= k.

    The argument: fixed points are congruent to v mod p, hence nonzero, so
    some block is fixed; that block has a non-fixed point whose p-orbit lies
    inside it.
    """
    _require_prime(p)
    if math.gcd(p, params.v) != 1 or params.lam <= 1 or params.lam >= p:
        return PrimeVerdict.RULE_INAPPLICABLE
    return PrimeVerdict.EXCLUDED if p > params.k else PrimeVerdict.ADMISSIBLE


@dataclass
class LemmaEntry:
    id: str
    applicable: bool
    holds: bool | None
    witness: dict | None = None

    def as_dict(self) -> dict:
        return {"id": self.id, "applicable": self.applicable, "holds": self.holds, "witness": self.witness}


@dataclass
class LemmaReport:
    prime: int
    f: int
    fb: int
    entries: list[LemmaEntry] = field(default_factory=list)

    def __getitem__(self, lemma_id: str) -> LemmaEntry:
        for e in self.entries:
            if e.id == lemma_id:
                return e
        raise KeyError(lemma_id)

    @property
    def all_hold(self) -> bool:
        return all(e.holds for e in self.entries if e.applicable)

    def violations(self) -> list[LemmaEntry]:
        return [e for e in self.entries if e.applicable and not e.holds]

    def as_dict(self) -> dict:
        return {"prime": self.prime, "fixed_points": self.f, "fixed_blocks": self.fb,
                "all_hold": self.all_hold, "lemmas": [e.as_dict() for e in self.entries]}


def lemma_suite(d: Design, p: Perm, prime: int) -> LemmaReport:
    """Evaluate the fixed-structure lemmas for an automorphism of prime order."""
    _require_prime(prime)
    if p.degree != d.v:
        raise DegreeMismatch(f"permutation degree {p.degree} != v = {d.v}")
    if perm_order(p) != prime:
        raise NotPrimeOrder(f"{p} has order {perm_order(p)}, not {prime}")
    fx = fixed_structure(d, p)
    params = d.params
    lam, k, v = params.lam, params.k, params.v
    F = fx.point_mask
    fixed = sorted(fx.fixed_blocks)
    blocks = d.blocks
    nontrivial = params.nontrivial
    small_lam = lam < prime
    rep = LemmaReport(prime, fx.f, len(fixed))

    ok = fx.f == len(fixed)
    rep.entries.append(LemmaEntry(FIX_EQUALS_FIXB, nontrivial, ok,
                                  None if ok else {"fixed_points": fx.f, "fixed_blocks": len(fixed)}))

    bound = fixed_bound_max(params)
    ok = fx.f <= bound
    rep.entries.append(LemmaEntry(FIXED_POINT_BOUND, nontrivial, ok,
                                  None if ok else {"fixed_points": fx.f, "bound": bound}))

    witness = None
    if small_lam:
        fixed_set = set(fixed)
        for i, b in enumerate(blocks):
            if (b & F).bit_count() >= 2 and i not in fixed_set:
                witness = {"block": list(points_of(b)), "fixed_points_on_block": (b & F).bit_count()}
                break
    rep.entries.append(LemmaEntry(PAIR_FIXES_BLOCK, small_lam, witness is None if small_lam else None, witness))

    witness = None
    if small_lam:
        for i, j in combinations(fixed, 2):
            outside = (blocks[i] & blocks[j]) & ~F
            if outside:
                witness = {"blocks": [list(points_of(blocks[i])), list(points_of(blocks[j]))],
                           "non_fixed_common_points": list(points_of(outside))}
                break
    rep.entries.append(LemmaEntry(FIXED_BLOCKS_MEET_IN_F, small_lam,
                                  witness is None if small_lam else None, witness))

    witness = None
    if small_lam:
        total = fx.f + sum(k - (blocks[i] & F).bit_count() for i in fixed)
        if total > v:
            witness = {"packing_sum": total, "v": v}
    rep.entries.append(LemmaEntry(PACKING, small_lam, witness is None if small_lam else None, witness))

    app = 1 < lam < prime
    witness = None
    if app:
        for b in blocks:
            if b & F == b:
                witness = {"block": list(points_of(b))}
                break
    rep.entries.append(LemmaEntry(NO_BLOCK_INSIDE_F, app, witness is None if app else None, witness))
    return rep
