"""Constructive searches: difference sets, designs with a prescribed group, Aut(D)."""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import AxiomViolation, BudgetExceeded, NotDifferenceSet, ParamViolation
from .incidence import Design, DesignParams, design_from_masks, points_of
from .permgroup import DEFAULT_CAP, GroupSpec, Perm, format_cycles, group_closure

NODE_BUDGET_ENV = "SYMDESIGN_MAX_NODES"


def _default_nodes() -> int:
    return int(os.environ.get(NODE_BUDGET_ENV, 5_000_000))


@dataclass(frozen=True)
class SearchLimits:
    max_nodes: int = field(default_factory=_default_nodes)
    max_results: int = 1_000_000
    time_budget: float = 600.0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_results <= 0 or self.time_budget <= 0:
            raise ValueError("search limits must be positive")


class _Abort(Exception):
    def __init__(self, reason: str):
        self.reason = reason


class _Budget:
    def __init__(self, limits: SearchLimits):
        self.limits = limits
        self.nodes = 0
        self.start = time.monotonic()

    def tick(self, n: int = 1) -> None:
        self.nodes += n
        if self.nodes > self.limits.max_nodes:
            raise _Abort("max_nodes")
        if self.nodes & 0x3FF == 0 and time.monotonic() - self.start > self.limits.time_budget:
            raise _Abort("time_budget")

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.start


# --- difference sets ----------------------------------------------------------

def _check_counting(v: int, k: int, lam: int) -> None:
    if k * (k - 1) != lam * (v - 1):
        raise ParamViolation(f"k(k-1) = {k * (k - 1)} != lambda(v-1) = {lam * (v - 1)}")


def is_difference_set(subset: Iterable[int], v: int, lam: int) -> bool:
    """True when every nonzero residue mod v is a difference ``a - b`` exactly lam times."""
    elems = sorted({x % v for x in subset})
    _check_counting(v, len(elems), lam)
    counts = [0] * v
    for a in elems:
        for b in elems:
            if a != b:
                counts[(a - b) % v] += 1
    return all(c == lam for c in counts[1:])


def search_difference_sets(v: int, k: int, lam: int, limits: SearchLimits | None = None) -> list[tuple[int, ...]]:
    """All (v, k, lambda) difference sets in Z_v, in lexicographic order."""
    _check_counting(v, k, lam)
    limits = limits or SearchLimits()
    total = math.comb(v, k)
    if total > limits.max_nodes:
        raise BudgetExceeded("max_nodes", 0)
    return [s for s in combinations(range(v), k) if is_difference_set(s, v, lam)]


def develop(subset: Iterable[int], v: int) -> Design:
    """Design whose blocks are the translates ``subset + i``; residue r is point r + 1."""
    elems = sorted({x % v for x in subset})
    k = len(elems)
    if k < 2 or (k * (k - 1)) % (v - 1):
        raise NotDifferenceSet(f"{elems} cannot be a difference set in Z_{v}")
    lam = k * (k - 1) // (v - 1)
    if not is_difference_set(elems, v, lam):
        raise NotDifferenceSet(f"{elems} is not a difference set in Z_{v}")
    base = sum(1 << x for x in elems)
    full = (1 << v) - 1
    masks = [((base << i) | (base >> (v - i))) & full for i in range(v)]
    return design_from_masks(DesignParams(v, k, lam), masks)


def cyclic_shift(v: int) -> Perm:
    """The v-cycle ``(1 2 ... v)``, i.e. translation by one on Z_v."""
    return Perm(tuple((i + 1) % v for i in range(v)))


# --- designs with a prescribed automorphism group -----------------------------

@dataclass
class SearchRun:
    params: DesignParams
    group: GroupSpec
    designs: list[Design]
    nodes: int
    status: str
    reason: str | None
    elapsed: float

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def summary(self) -> dict:
        return {
            "record": "run_summary",
            "params": list(self.params.as_tuple()),
            "group": [format_cycles(g) for g in self.group.generators],
            "nodes": self.nodes,
            "results": len(self.designs),
            "status": self.status,
            "reason": self.reason,
            "elapsed": round(self.elapsed, 6),
        }


class _InvariantSearch:
    """Depth-first selection of whole block orbits.

    At each node the lexicographically first point pair covered fewer than
    lambda times is chosen, and the branches are the admissible orbits
    containing a block through that pair.  In branch i the orbits of the
    earlier branches are excluded below it, so every design is reached along
    exactly one path.
    """

    def __init__(self, params: DesignParams, elements: Sequence[Perm], limits: SearchLimits):
        self.params = params
        self.v, self.k, self.lam = params.v, params.k, params.lam
        self.perms = [e for e in elements if not e.is_identity()]
        self.limits = limits
        self.budget = _Budget(limits)
        self.cov = [[0] * self.v for _ in range(self.v)]
        self.chosen: list[int] = []
        self.excluded: set[int] = set()
        self.results: list[Design] = []

    def orbit(self, mask: int) -> frozenset[int]:
        return frozenset([mask] + [p.map_mask(mask) for p in self.perms])

    def first_deficit(self) -> tuple[int, int] | None:
        lam = self.lam
        for a in range(self.v):
            row = self.cov[a]
            for b in range(a + 1, self.v):
                if row[b] < lam:
                    return a, b
        return None

    def _blocks_through(self, a: int, b: int):
        """k-subsets through a and b compatible with the current partial design."""
        v, k, lam, cov, chosen = self.v, self.k, self.lam, self.cov, self.chosen
        others = [c for c in range(v) if c != a and c != b]
        start = (1 << a) | (1 << b)
        if any((start & c).bit_count() > lam for c in chosen):
            return
        pts = [a, b]

        def rec(i: int, mask: int):
            if len(pts) == k:
                if all((mask & c).bit_count() == lam for c in chosen):
                    yield mask
                return
            need = k - len(pts)
            for j in range(i, len(others) - need + 1):
                c = others[j]
                self.budget.tick()
                row = cov[c]
                if any(row[x] >= lam for x in pts):
                    continue
                m2 = mask | (1 << c)
                if any((m2 & blk).bit_count() > lam for blk in chosen):
                    continue
                pts.append(c)
                yield from rec(j + 1, m2)
                pts.pop()

        yield from rec(0, start)

    def _orbit_ok(self, orb: frozenset[int]) -> list[tuple[int, int]] | None:
        """Pair increments of the orbit if it can join the partial design."""
        lam = self.lam
        if len(orb) + len(self.chosen) > self.v:
            return None
        members = list(orb)
        for i, x in enumerate(members):
            for y in members[i + 1:]:
                if (x & y).bit_count() != lam:
                    return None
            for c in self.chosen:
                if (x & c).bit_count() != lam:
                    return None
        inc: dict[tuple[int, int], int] = {}
        for m in members:
            pts = [p - 1 for p in points_of(m)]
            for i, x in enumerate(pts):
                for y in pts[i + 1:]:
                    inc[(x, y)] = inc.get((x, y), 0) + 1
        cov = self.cov
        pairs = []
        for (x, y), n in inc.items():
            if cov[x][y] + n > lam:
                return None
            pairs.extend([(x, y)] * n)
        return pairs

    def candidates(self, a: int, b: int) -> list[tuple[int, frozenset[int], list]]:
        seen: set[frozenset[int]] = set()
        out = []
        for mask in self._blocks_through(a, b):
            orb = self.orbit(mask)
            if orb in seen:
                continue
            seen.add(orb)
            key = min(orb, key=points_of)
            if key in self.excluded:
                continue
            pairs = self._orbit_ok(orb)
            if pairs is not None:
                out.append((key, orb, pairs))
        out.sort(key=lambda t: points_of(t[0]))
        return out

    def _apply(self, orb, pairs, sign: int):
        cov = self.cov
        for x, y in pairs:
            cov[x][y] += sign
            cov[y][x] += sign
        if sign > 0:
            self.chosen.extend(sorted(orb))
        else:
            del self.chosen[len(self.chosen) - len(orb):]

    def dfs(self):
        if len(self.chosen) == self.v:
            if self.first_deficit() is None:
                try:
                    self.results.append(design_from_masks(self.params, self.chosen))
                except AxiomViolation:
                    pass
                if len(self.results) >= self.limits.max_results:
                    raise _Abort("max_results")
            return
        pair = self.first_deficit()
        if pair is None:
            return
        added = []
        for key, orb, pairs in self.candidates(*pair):
            self.budget.tick()
            self._apply(orb, pairs, +1)
            self.dfs()
            self._apply(orb, pairs, -1)
            self.excluded.add(key)
            added.append(key)
        for key in added:
            self.excluded.discard(key)

    def run(self, group: GroupSpec) -> SearchRun:
        status, reason = "complete", None
        try:
            self.dfs()
        except _Abort as exc:
            status, reason = "budget-exceeded", exc.reason
        designs = sorted(set(self.results), key=lambda d: d.block_sets())
        return SearchRun(self.params, group, designs, self.budget.nodes, status, reason, self.budget.elapsed)


def run_invariant_search(params: DesignParams, group: GroupSpec, limits: SearchLimits | None = None,
                         cap: int = DEFAULT_CAP) -> SearchRun:
    if group.degree != params.v:
        raise ParamViolation(f"group degree {group.degree} != v = {params.v}")
    elements = group_closure(group, cap)
    return _InvariantSearch(params, elements, limits or SearchLimits()).run(group)


def search_invariant_designs(params: DesignParams, group: GroupSpec,
                             limits: SearchLimits | None = None) -> list[Design]:
    """All designs with these parameters whose block set is invariant under ``group``.

    Raises :class:`BudgetExceeded` (carrying the partial results) when a
    limit is hit.
    """
    run = run_invariant_search(params, group, limits)
    if not run.complete:
        raise BudgetExceeded(run.reason, run.nodes, run.designs)
    return run.designs


# --- automorphism group -------------------------------------------------------

@dataclass
class AutGroupResult:
    order: int
    generators: list[Perm]
    node_count: int
    orbit_sizes: list[int] = field(default_factory=list)

    def group(self, degree: int) -> GroupSpec:
        return GroupSpec(degree, tuple(self.generators))


class _AutSearch:
    """Backtracking over point images, points assigned in order 1..v.

    After each assignment the blocks restricted to the assigned points,
    pushed through the partial map, must equal (as a multiset) the blocks
    restricted to the image points.  At full assignment this is exactly the
    automorphism condition.
    """

    def __init__(self, d: Design, budget: _Budget):
        self.d = d
        self.v = d.v
        self.budget = budget
        self.point_index = d.point_index

    def find(self, prefix: Sequence[int]) -> list[int] | None:
        v = self.v
        src = [0] * v
        tgt = [0] * v
        images = [-1] * v
        used = [False] * v

        def assign(x, y):
            images[x] = y
            used[y] = True
            bit = 1 << y
            for j in self.point_index[x]:
                src[j] |= bit
            for j in self.point_index[y]:
                tgt[j] |= bit

        def unassign(x, y):
            images[x] = -1
            used[y] = False
            bit = ~(1 << y)
            for j in self.point_index[x]:
                src[j] &= bit
            for j in self.point_index[y]:
                tgt[j] &= bit

        for x, y in enumerate(prefix):
            if used[y]:
                return None
            assign(x, y)
        if sorted(src) != sorted(tgt):
            return None

        def rec(x):
            if x == v:
                return list(images)
            for y in range(v):
                if used[y]:
                    continue
                self.budget.tick()
                assign(x, y)
                if sorted(src) == sorted(tgt):
                    r = rec(x + 1)
                    if r is not None:
                        return r
                unassign(x, y)
            return None

        return rec(len(prefix))


def _orbit_of(point: int, gens: list[Perm]) -> set[int]:
    orbit = {point}
    frontier = [point]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g.images[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def automorphism_group(d: Design, limits: SearchLimits | None = None) -> AutGroupResult:
    """Order and generators of Aut(d) via a pointwise-stabilizer chain.

    For base point i (with 1..i-1 fixed) every target not yet in the orbit
    of i under the representatives found so far is tried; the group order
    is the product of the orbit sizes.
    """
    budget = _Budget(limits or SearchLimits())
    search = _AutSearch(d, budget)
    gens: list[Perm] = []
    sizes = []
    order = 1
    try:
        for i in range(d.v):
            level: list[Perm] = []
            orbit = {i}
            for t in range(i + 1, d.v):
                if t in orbit:
                    continue
                found = search.find(list(range(i)) + [t])
                if found is not None:
                    level.append(Perm(tuple(found)))
                    orbit = _orbit_of(i, level)
            sizes.append(len(orbit))
            order *= len(orbit)
            gens.extend(level)
    except _Abort as exc:
        raise BudgetExceeded(exc.reason, budget.nodes) from None
    return AutGroupResult(order, gens, budget.nodes, sizes)
