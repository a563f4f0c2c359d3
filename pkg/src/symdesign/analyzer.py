"""Case analysis of hypothetical prime-order automorphisms of a symmetric design.

For a prime ``p`` the analysis starts from the candidate fixed-point counts
``f`` allowed by the congruence ``f = v (mod p)`` and the fixed-point bound,
then removes candidates with the rules below, recording every application
in a trace that :func:`replay_trace` can re-check.

=====  ====================================================================
R1     ``0 <= f <= k + isqrt(k - lambda)`` and ``f = v (mod p)``
R2     per-block fixed counts ``g``: ``lambda <= g <= k - 1``, ``g = k (mod p)``
       (upper bound ``k`` when ``lambda <= 1``); only for ``f >= 2``
R3     ``f >= min(g)``; no admissible ``g`` eliminates ``f``
R5     three-block union bound ``f >= 3 min(g) - 3 lambda + 2`` (``lambda >= 3``)
R6     drop ``g`` when ``g + min(g) - lambda > f``
R4     packing ``f + f (k - max(g)) <= v``
=====  ====================================================================

Rules R2-R6 need ``lambda < p`` and ``gcd(p, v) = 1``.  They are applied
in the order R3, R5, R6, R4 for every live ``f`` and iterated to a fixpoint.
All arithmetic is on integers and :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Collection, Iterable, Mapping

from .errors import EqualPrimes, HypothesisViolation, MissingFact, UnsupportedExponent
from .incidence import DesignParams
from .lemmas import PrimeVerdict, _require_prime, fixed_bound_max, prime_admissible, primes_upto
from .permgroup import BurnsideResult, burnside_from_counts

CITATIONS = {
    "R1": "congruence of fixed points mod p with the fixed-point bound k + sqrt(k - lambda)",
    "R2": "fixed block is invariant (g = k mod p); fixed blocks meet only in fixed points "
          "(g >= lambda); no block inside the fixed set (g <= k - 1)",
    "R3": "a fixed block carries at most f fixed points",
    "R5": "third block through two common fixed points is fixed; inclusion-exclusion on three fixed blocks",
    "R6": "two fixed blocks share exactly lambda points, all fixed",
    "R4": "packing: non-fixed parts of distinct fixed blocks are disjoint",
}


@dataclass(frozen=True)
class KnownFact:
    """A fixed-point count for elements of a given order, taken as an axiom.

    ``params`` optionally restricts the fact to one parameter triple.
    """

    element_order: int
    fixed_count: int
    source: str
    external: bool = True
    params: tuple[int, int, int] | None = None

    def __post_init__(self):
        if self.fixed_count < 0:
            raise ValueError("fixed_count must be non-negative")

    def applies_to(self, params: DesignParams) -> bool:
        return self.params is None or tuple(self.params) == params.as_tuple()

    def as_dict(self) -> dict:
        return {"element_order": self.element_order, "fixed_count": self.fixed_count,
                "source": self.source, "external": self.external,
                "params": list(self.params) if self.params else None}


INVOLUTION_FACT_81 = KnownFact(
    element_order=2,
    fixed_count=9,
    source="external result (literature, not derived here): an involution of a "
           "symmetric (81,16,3) design fixes exactly 9 points",
    external=True,
    params=(81, 16, 3),
)


def default_facts(params: DesignParams) -> list[KnownFact]:
    return [INVOLUTION_FACT_81] if INVOLUTION_FACT_81.applies_to(params) else []


# --- single-prime rules -------------------------------------------------------

def _rules_apply(params: DesignParams, p: int) -> bool:
    return params.lam < p and math.gcd(p, params.v) == 1


def feasible_fixed_counts(params: DesignParams, p: int) -> set[int]:
    """Rule R1."""
    _require_prime(p)
    bound = fixed_bound_max(params)
    return {f for f in range(bound + 1) if (f - params.v) % p == 0}


def feasible_block_fixed_counts(params: DesignParams, p: int) -> set[int]:
    """Rule R2: fixed points on a fixed block when at least two blocks are fixed."""
    _require_prime(p)
    if params.lam >= p:
        raise HypothesisViolation(f"rule needs lambda < p, got lambda={params.lam}, p={p}")
    upper = params.k - 1 if params.lam > 1 else params.k
    return {g for g in range(params.lam, upper + 1) if (g - params.k) % p == 0}


def rule_r3(params, p, f, gset):
    if not gset:
        return gset, True, None
    m = min(gset)
    return gset, f < m, m


def rule_r5(params, p, f, gset):
    if params.lam < 3 or not gset:
        return gset, False, None
    need = 3 * min(gset) - 3 * params.lam + 2
    return gset, f < need, need


def rule_r6(params, p, f, gset):
    if not gset:
        return gset, True, None
    m = min(gset)
    kept = frozenset(g for g in gset if g + m - params.lam <= f)
    return kept, not kept, m


def rule_r4(params, p, f, gset):
    if not gset:
        return gset, True, None
    value = f + f * (params.k - max(gset))
    return gset, value > params.v, value


_RULES = {"R3": rule_r3, "R5": rule_r5, "R6": rule_r6, "R4": rule_r4}
_PASS_ORDER = ("R3", "R5", "R6", "R4")


@dataclass(frozen=True)
class TraceStep:
    rule: str
    f: int | None
    input: tuple[int, ...]
    output: tuple[int, ...]
    eliminated: bool
    value: int | None
    citation: str

    def as_dict(self) -> dict:
        return {"rule": self.rule, "f": self.f, "input": list(self.input), "output": list(self.output),
                "eliminated": self.eliminated, "value": self.value, "citation": self.citation}


@dataclass
class PrimeReport:
    params: DesignParams
    prime: int
    bound_max: int
    candidate_f: tuple[int, ...]
    block_fixed_counts: tuple[int, ...] | None
    gsets: dict[int, tuple[int, ...]]
    surviving_gsets: dict[int, tuple[int, ...]]
    feasible: tuple[int, ...]
    trace: list[TraceStep]
    rules_apply: bool
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "feasible" if self.feasible else "contradiction"

    def eliminated(self) -> dict[int, TraceStep]:
        """Step that removed each eliminated candidate."""
        return {s.f: s for s in self.trace if s.eliminated}

    def as_dict(self) -> dict:
        return {
            "record": "prime_report",
            "params": list(self.params.as_tuple()),
            "prime": self.prime,
            "verdict": self.verdict,
            "bound_max": self.bound_max,
            "candidate_f": list(self.candidate_f),
            "block_fixed_counts": None if self.block_fixed_counts is None else list(self.block_fixed_counts),
            "gsets": {str(f): list(g) for f, g in self.gsets.items()},
            "surviving_gsets": {str(f): list(g) for f, g in self.surviving_gsets.items()},
            "feasible": list(self.feasible),
            "rules_apply": self.rules_apply,
            "trace": [s.as_dict() for s in self.trace],
            "notes": self.notes,
        }


def analyze_prime(params: DesignParams, p: int) -> PrimeReport:
    _require_prime(p)
    bound = fixed_bound_max(params)
    fset = sorted(feasible_fixed_counts(params, p))
    trace = [TraceStep("R1", None, tuple(range(bound + 1)), tuple(fset), False, bound, CITATIONS["R1"])]
    notes = []
    rules_apply = _rules_apply(params, p)
    if not rules_apply:
        if params.lam >= p:
            notes.append(f"lambda = {params.lam} >= p = {p}: only R1 applies")
        else:
            notes.append(f"p = {p} divides v = {params.v}: only R1 applies")
        return PrimeReport(params, p, bound, tuple(fset), None, {}, {}, tuple(fset), trace, False, notes)

    base_g = feasible_block_fixed_counts(params, p)
    alive = set(fset)
    gsets: dict[int, frozenset[int]] = {}
    initial: dict[int, tuple[int, ...]] = {}
    for f in fset:
        if f < 2:
            continue
        gsets[f] = frozenset(base_g)
        initial[f] = tuple(sorted(base_g))
        trace.append(TraceStep("R2", f, (), initial[f], False, None, CITATIONS["R2"]))
    if params.lam < 3:
        notes.append("R5 needs lambda >= 3 and is skipped")

    first = True
    changed = True
    while changed:
        changed = False
        for f in fset:
            if f < 2 or f not in alive:
                continue
            for rule in _PASS_ORDER:
                if rule == "R5" and params.lam < 3:
                    continue
                before = gsets[f]
                after, killed, value = _RULES[rule](params, p, f, before)
                if after != before or killed:
                    changed = True
                if first or after != before or killed:
                    trace.append(TraceStep(rule, f, tuple(sorted(before)), tuple(sorted(after)),
                                           killed, value, CITATIONS[rule]))
                gsets[f] = after
                if killed:
                    alive.discard(f)
                    break
        first = False

    feasible = tuple(sorted(alive))
    surviving = {f: tuple(sorted(gsets[f])) for f in feasible if f in gsets}
    return PrimeReport(params, p, bound, tuple(fset), tuple(sorted(base_g)), initial, surviving,
                       feasible, trace, True, notes)


def replay_trace(report: PrimeReport) -> bool:
    """Re-apply each trace step and confirm it reproduces the recorded verdict."""
    params, p = report.params, report.prime
    steps = report.trace
    if not steps or steps[0].rule != "R1":
        return False
    if set(steps[0].output) != feasible_fixed_counts(params, p):
        return False
    alive = set(steps[0].output)
    current: dict[int, frozenset[int]] = {}
    for s in steps[1:]:
        if s.f not in alive:
            return False
        if s.rule == "R2":
            if set(s.output) != feasible_block_fixed_counts(params, p):
                return False
            current[s.f] = frozenset(s.output)
            continue
        if current.get(s.f) != frozenset(s.input):
            return False
        after, killed, value = _RULES[s.rule](params, p, s.f, frozenset(s.input))
        if after != frozenset(s.output) or killed != s.eliminated or value != s.value:
            return False
        current[s.f] = after
        if killed:
            alive.discard(s.f)
    return tuple(sorted(alive)) == report.feasible


# --- prime powers, p-groups, commuting pairs ----------------------------------

@dataclass(frozen=True)
class PrimePowerReport:
    v: int
    p: int
    e: int
    possible: bool
    candidates: tuple[int, ...]
    reason: str

    @property
    def order(self) -> int:
        return self.p ** self.e

    def as_dict(self) -> dict:
        return {"record": "prime_power", "v": self.v, "order": self.order, "possible": self.possible,
                "candidates": list(self.candidates), "reason": self.reason}


def _counts_of(fact) -> list[int]:
    if isinstance(fact, KnownFact):
        return [fact.fixed_count]
    return sorted(set(fact))


def analyze_prime_power_element(v: int, p: int, e: int,
                                fact: KnownFact | Collection[int] | None = None) -> PrimePowerReport:
    """Fixed-point counts of an element of order ``p**e`` (only ``e = 2``).

    Uses ``F(a) subset of F(a**p)`` and cycle lengths in ``{1, p, p**2}``.
    ``fact`` is the known fixed count (or set of counts) for order ``p``.
    """
    _require_prime(p)
    if e != 2:
        raise UnsupportedExponent(f"only exponent 2 is handled, got {e}")
    order = p ** e
    if order > v:
        return PrimePowerReport(v, p, e, False, (),
                                f"an element of order {order} needs a {order}-cycle but v = {v}")
    if fact is None:
        raise MissingFact(f"no fixed-point count known for order {p}")
    known = _counts_of(fact)
    if not known:
        raise MissingFact(f"empty fixed-point set for order {p}")
    top = max(known)
    cands = tuple(f for f in range(top + 1) if (f - v) % p == 0)
    return PrimePowerReport(v, p, e, bool(cands), cands,
                            f"F(a) within F(a^{p}) with |F(a^{p})| in {known}; f = v (mod {p})")


@dataclass(frozen=True)
class PGroupVerdict:
    v: int
    p: int
    n: int
    kind: str
    burnside: BurnsideResult

    @property
    def r(self) -> Fraction:
        return self.burnside.orbit_count

    @property
    def possible(self) -> bool:
        return self.burnside.is_integral

    @property
    def verdict(self) -> str:
        return "possible" if self.possible else "impossible"

    def as_dict(self) -> dict:
        return {"record": "pgroup", "v": self.v, "p": self.p, "n": self.n, "kind": self.kind,
                "verdict": self.verdict, **self.burnside.as_dict()}


def pgroup_integrality(v: int, p: int, n: int, fix_counts: Mapping[int, int],
                       kind: str = "elementary") -> PGroupVerdict:
    """Orbit-count integrality for a group of order ``p**n`` acting on ``v`` points.

    ``fix_counts`` maps an element order to the fixed-point count shared by
    all elements of that order.  ``kind`` is ``"elementary"`` (every
    nonidentity element has order p) or ``"cyclic"``.
    """
    _require_prime(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    classes = [(1, v)]
    try:
        if kind == "elementary":
            classes.append((p ** n - 1, fix_counts[p]))
        elif kind == "cyclic":
            for j in range(1, n + 1):
                classes.append((p ** j - p ** (j - 1), fix_counts[p ** j]))
        else:
            raise ValueError(f"unknown group kind {kind!r}")
    except KeyError as exc:
        raise MissingFact(f"no fixed-point count for elements of order {exc.args[0]}") from None
    return PGroupVerdict(v, p, n, kind, burnside_from_counts(classes))


@dataclass(frozen=True)
class PairVerdict:
    v: int
    p: int
    q: int
    f_p: int
    f_q: int
    p_on_fixed_q: tuple[int, ...]
    q_on_fixed_p: tuple[int, ...]
    cset: tuple[int, ...]

    @property
    def possible(self) -> bool:
        return bool(self.cset)

    @property
    def order(self) -> int:
        return self.p * self.q

    def as_dict(self) -> dict:
        return {"record": "commuting_pair", "order": self.order, "p": self.p, "q": self.q,
                "f_p": self.f_p, "f_q": self.f_q, "p_on_fixed_q": list(self.p_on_fixed_q),
                "q_on_fixed_p": list(self.q_on_fixed_p), "cset": list(self.cset),
                "verdict": "possible" if self.possible else "impossible"}


def commuting_pair(v: int, p: int, q: int, f_p: int, f_q: int) -> PairVerdict:
    """Common fixed points of commuting elements of prime orders p and q.

    Each element permutes the other's fixed set, so the common fixed count
    ``c`` satisfies ``c = f_q (mod p)``, ``c = f_p (mod q)`` and
    ``c <= min(f_p, f_q)``.  An empty set refutes an element of order ``p*q``.
    """
    _require_prime(p)
    _require_prime(q)
    if p == q:
        raise EqualPrimes(f"primes must differ, got {p} twice")
    a = tuple(c for c in range(f_q + 1) if (c - f_q) % p == 0)
    b = tuple(c for c in range(f_p + 1) if (c - f_p) % q == 0)
    cset = tuple(sorted(set(a) & set(b)))
    return PairVerdict(v, p, q, f_p, f_q, a, b, cset)


# --- assembled report ---------------------------------------------------------

@dataclass
class TheoremReport:
    params: DesignParams
    facts: list[KnownFact]
    allowed_primes: list[int]
    excluded_primes: dict[int, str]
    prime_reports: dict[int, PrimeReport]
    fixed_counts: dict[int, tuple[int, ...]]
    exponent_caps: dict[int, int | str]
    elementary_abelian_rank_caps: dict[int, int | str]
    forbidden_element_orders: list[int]
    forbidden_subgroup_orders: list[int]
    checks: list[dict]
    dependencies: dict[str, list[str]]
    notes: list[str]

    def check_consistency(self) -> None:
        bad = set(self.allowed_primes) & (set(self.excluded_primes) | set(self.forbidden_element_orders))
        if bad:
            raise AssertionError(f"primes both allowed and forbidden: {sorted(bad)}")

    def as_dict(self) -> dict:
        return {
            "record": "theorem_report",
            "params": list(self.params.as_tuple()),
            "facts": [f.as_dict() for f in self.facts],
            "allowed_primes": self.allowed_primes,
            "excluded_primes": {str(p): r for p, r in self.excluded_primes.items()},
            "fixed_counts": {str(p): list(s) for p, s in self.fixed_counts.items()},
            "exponent_caps": {str(p): c for p, c in self.exponent_caps.items()},
            "elementary_abelian_rank_caps": {str(p): c for p, c in self.elementary_abelian_rank_caps.items()},
            "forbidden_element_orders": self.forbidden_element_orders,
            "forbidden_subgroup_orders": self.forbidden_subgroup_orders,
            "checks": self.checks,
            "dependencies": self.dependencies,
            "notes": self.notes,
        }

    def order_shape(self) -> str:
        parts = []
        for p in self.allowed_primes:
            cap = self.exponent_caps[p]
            parts.append(f"{p}^{cap}" if cap == 1 else f"{p}^*")
        return " * ".join(parts)


def _elementary_rank_cap(v: int, p: int, f: int, checks: list[dict]) -> int:
    n = 1
    last_ok = None
    while True:
        res = pgroup_integrality(v, p, n, {p: f})
        if not res.possible:
            if last_ok is not None:
                checks.append(last_ok.as_dict())
            checks.append(res.as_dict())
            return n - 1
        last_ok = res
        n += 1


def _cyclic_square_possible(v: int, p: int, fp_set: Iterable[int], checks: list[dict]) -> bool:
    fp_set = sorted(fp_set)
    pp = analyze_prime_power_element(v, p, 2, fp_set)
    checks.append(pp.as_dict())
    if not pp.possible:
        return False
    for f1 in fp_set:
        for f2 in pp.candidates:
            if f2 > f1 or (f1 - f2) % p:
                continue
            res = pgroup_integrality(v, p, 2, {p: f1, p * p: f2}, kind="cyclic")
            if res.possible:
                return True
            if len(fp_set) == 1 and len(pp.candidates) == 1:
                checks.append(res.as_dict())
    return False


def full_report(params: DesignParams, facts: Iterable[KnownFact] | None = None) -> TheoremReport:
    """Assemble prime, exponent and element-order restrictions on Aut(D).

    ``facts`` defaults to :func:`default_facts`; pass ``[]`` to drop them.
    """
    facts = default_facts(params) if facts is None else list(facts)
    v = params.v
    notes: list[str] = []
    used_facts = [f for f in facts if f.applies_to(params)]
    for f in facts:
        if f not in used_facts:
            notes.append(f"fact for order {f.element_order} is scoped to {f.params} and ignored")
    by_order = {f.element_order: f for f in used_facts}

    allowed: list[int] = []
    excluded: dict[int, str] = {}
    reports: dict[int, PrimeReport] = {}
    fixed_counts: dict[int, tuple[int, ...]] = {}
    deps_of: dict[int, list[str]] = {}
    forbidden: set[int] = set()
    dependencies: dict[str, list[str]] = {}

    if params.lam <= 1:
        notes.append(f"lambda = {params.lam} <= 1: the prime bound p <= k and the "
                     "no-block-inside-fixed-set rule do not apply")
    notes.append(f"primes above v = {v} cannot divide |Aut| (a subgroup of Sym({v}))")

    for p in primes_upto(v):
        if prime_admissible(params, p) is PrimeVerdict.EXCLUDED:
            excluded[p] = f"prime bound: gcd(p, v) = 1, 1 < lambda < p and p > k = {params.k}"
            continue
        rep = analyze_prime(params, p)
        reports[p] = rep
        counts = set(rep.feasible)
        deps: list[str] = []
        fact = by_order.get(p)
        if fact is not None:
            if fact.external:
                deps.append(fact.source)
            counts &= {fact.fixed_count}
        if not counts:
            why = "fixed-point analysis leaves no candidate" if rep.feasible == () else \
                "known fact contradicts the fixed-point analysis"
            excluded[p] = why
            forbidden.add(p)
            if deps:
                dependencies[f"forbidden_order[{p}]"] = deps
            continue
        allowed.append(p)
        fixed_counts[p] = tuple(sorted(counts))
        deps_of[p] = deps

    checks: list[dict] = []
    caps: dict[int, int | str] = {}
    ranks: dict[int, int | str] = {}
    for p in allowed:
        s = fixed_counts[p]
        if len(s) == 1:
            ranks[p] = _elementary_rank_cap(v, p, s[0], checks)
            if deps_of[p]:
                dependencies[f"elementary_abelian_rank[{p}]"] = deps_of[p]
        else:
            ranks[p] = "unknown"
        if ranks[p] == 1 and not _cyclic_square_possible(v, p, s, checks):
            caps[p] = 1
            if deps_of[p]:
                dependencies[f"exponent_cap[{p}]"] = deps_of[p]
            if p * p > v:
                notes.append(f"no element of order {p * p}: it would need a {p * p}-cycle on {v} points")
            # every group of order p^2 is cyclic or elementary abelian
            notes.append(f"{p}-part of |Aut| is at most {p}: both groups of order {p * p} are refuted")
        else:
            caps[p] = "unbounded"
            notes.append(f"exponent of {p} is not bounded by these methods")
        if isinstance(ranks[p], int) and ranks[p] > 1:
            notes.append(f"abelian {p}-subgroups have rank <= {ranks[p]}: a larger rank would contain an "
                         f"elementary abelian subgroup of order {p ** (ranks[p] + 1)}")
        if ranks[p] == 1:
            f = s[0]
            full = Fraction(v + (p * p - 1) * f, p * p)
            short = Fraction(v + (p - 1) * f, p * p)
            notes.append(f"elementary abelian order {p * p}: all {p * p - 1} nonidentity elements counted, "
                         f"r = ({v} + {p * p - 1}*{f})/{p * p} = {full}; counting only {p - 1} would give "
                         f"{short}")

    subgroup_forbidden: set[int] = set()
    for i, p in enumerate(allowed):
        for q in allowed[i + 1:]:
            results = [commuting_pair(v, q, p, fq, fp)
                       for fp in fixed_counts[p] for fq in fixed_counts[q]]
            if any(r.possible for r in results):
                continue
            forbidden.add(p * q)
            checks.extend(r.as_dict() for r in results)
            deps = sorted(set(deps_of[p]) | set(deps_of[q]))
            if deps:
                dependencies[f"forbidden_order[{p * q}]"] = deps
            if q % p != 1:
                subgroup_forbidden.add(p * q)
                notes.append(f"no subgroup of order {p * q}: every group of order {p * q} is cyclic "
                             f"since {q} != 1 (mod {p})")

    rep = TheoremReport(params, used_facts, allowed, excluded, reports, fixed_counts, caps, ranks,
                        sorted(forbidden), sorted(subgroup_forbidden), checks, dependencies, notes)
    rep.check_consistency()
    return rep


def feasible_with_facts(params: DesignParams, p: int, facts: Iterable[KnownFact]) -> set[int]:
    """Feasible fixed counts for order ``p`` after intersecting with facts."""
    counts = set(analyze_prime(params, p).feasible)
    for f in facts:
        if f.element_order == p and f.applies_to(params):
            counts &= {f.fixed_count}
    return counts

