"""Permutations of points, small group closures, orbits and orbit counting."""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import CapExceeded, DegreeMismatch, MissingFixCount, ParseError, RangeError, RepeatError

DEFAULT_CAP = 20_000


@dataclass(frozen=True)
class Perm:
    """Permutation of ``{1..degree}``.

    ``images`` is stored 0-based: ``images[i]`` is the image of point
    ``i + 1`` minus one.  Calling the permutation works on 1-based points.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images do not form a bijection")

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(degree)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Perm":
        """Build from 1-based images, e.g. ``[2, 3, 1, 5, 4]``."""
        return cls(tuple(int(x) - 1 for x in images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1] + 1

    def one_based(self) -> list[int]:
        return [y + 1 for y in self.images]

    def is_identity(self) -> bool:
        return all(i == y for i, y in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, in canonical order."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> list[int]:
        seen = [False] * self.degree
        lengths = []
        for start in range(self.degree):
            n = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
                n += 1
            if n:
                lengths.append(n)
        return sorted(lengths)

    def fixed_points(self) -> list[int]:
        return [i + 1 for i, y in enumerate(self.images) if i == y]

    def map_mask(self, mask: int) -> int:
        """Image of a bit-vector point set."""
        out = 0
        imgs = self.images
        i = 0
        while mask:
            if mask & 1:
                out |= 1 << imgs[i]
            mask >>= 1
            i += 1
        return out

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __str__(self):
        return format_cycles(self)


def compose(p: Perm, q: Perm) -> Perm:
    """Apply ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    qi = q.images
    return Perm(tuple(qi[y] for y in p.images))


def inverse(p: Perm) -> Perm:
    inv = [0] * p.degree
    for i, y in enumerate(p.images):
        inv[y] = i
    return Perm(tuple(inv))


def perm_order(p: Perm) -> int:
    return math.lcm(*p.cycle_type()) if p.degree else 1


def power(p: Perm, m: int) -> Perm:
    if m < 0:
        p, m = inverse(p), -m
    result = Perm.identity(p.degree)
    base = p
    while m:
        if m & 1:
            result = compose(result, base)
        base = compose(base, base)
        m >>= 1
    return result


_CYCLE_TEXT = re.compile(r"\s*\(([^()]*)\)\s*")


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse disjoint-cycle notation such as ``"(1 2 3)(4 5)"``.

    Commas are accepted as separators inside a cycle.  The empty string is
    the identity.
    """
    images = list(range(degree))
    seen: set[int] = set()
    pos = 0
    stripped = text.strip()
    if stripped in ("", "()"):
        return Perm(tuple(images))
    while pos < len(text):
        m = _CYCLE_TEXT.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"malformed cycle text near {text[pos:]!r}", position=pos + 1)
        body = m.group(1).replace(",", " ").split()
        cyc = []
        for tok in body:
            try:
                x = int(tok)
            except ValueError:
                raise ParseError(f"not a point label: {tok!r}", position=pos + 1) from None
            if not 1 <= x <= degree:
                raise RangeError(f"point {x} exceeds degree {degree}", position=pos + 1)
            if x in seen:
                raise RepeatError(f"point {x} appears twice", position=pos + 1)
            seen.add(x)
            cyc.append(x - 1)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
        pos = m.end()
    return Perm(tuple(images))


def format_cycles(p: Perm) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in p.cycles())


@dataclass(frozen=True)
class GroupSpec:
    degree: int
    generators: tuple[Perm, ...] = ()

    def __post_init__(self):
        for g in self.generators:
            if g.degree != self.degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {self.degree}")

    @classmethod
    def of(cls, degree: int, *cycle_texts: str) -> "GroupSpec":
        return cls(degree, tuple(parse_cycles(t, degree) for t in cycle_texts))


def parse_group(text: str, degree: int) -> GroupSpec:
    """Group file: one cycle-notation permutation per line, ``#`` comments."""
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            gens.append(parse_cycles(line, degree))
        except ParseError as exc:
            raise type(exc)(str(exc), lineno, exc.position) from None
    return GroupSpec(degree, tuple(gens))


def orbits(g: GroupSpec, domain_size: int | None = None) -> list[list[int]]:
    """Orbits of the group on ``{1..domain_size}``, sorted by least element."""
    n = g.degree if domain_size is None else domain_size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gen in g.generators:
        for x, y in enumerate(gen.images[:n]):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x + 1)
    return sorted(groups.values(), key=lambda o: o[0])


def group_closure(g: GroupSpec, cap: int = DEFAULT_CAP) -> list[Perm]:
    """All elements of the generated group, breadth-first from the identity."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    ident = tuple(range(g.degree))
    gens = [gen.images for gen in g.generators]
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for gi in gens:
            y = tuple(gi[i] for i in x)
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(order) > cap:
                    raise CapExceeded(cap)
                queue.append(y)
    return [Perm(t) for t in order]


@dataclass(frozen=True)
class BurnsideResult:
    group_order: int
    fixed_sum: int
    orbit_count: Fraction

    @property
    def is_integral(self) -> bool:
        return self.orbit_count.denominator == 1

    @property
    def orbit_count_rational(self) -> tuple[int, int]:
        return (self.orbit_count.numerator, self.orbit_count.denominator)

    def as_dict(self) -> dict:
        return {
            "group_order": self.group_order,
            "fixed_sum": self.fixed_sum,
            "orbit_count": str(self.orbit_count),
            "numerator": self.orbit_count.numerator,
            "denominator": self.orbit_count.denominator,
            "is_integral": self.is_integral,
        }


def burnside(elements: Sequence, fix_count: Mapping | None = None) -> BurnsideResult:
    """Average number of fixed points over ``elements``, as an exact fraction.

    ``fix_count`` maps each element to its number of fixed points.  When it
    is omitted the elements must be :class:`Perm` and their point action is
    used.
    """
    total = 0
    for e in elements:
        if fix_count is None:
            total += len(e.fixed_points())
        else:
            try:
                total += fix_count[e]
            except KeyError:
                raise MissingFixCount(f"no fixed-point count for {e}") from None
    if not elements:
        raise ValueError("empty element list")
    return BurnsideResult(len(elements), total, Fraction(total, len(elements)))


def burnside_from_counts(counts: Iterable[tuple[int, int]]) -> BurnsideResult:
    """Orbit count from ``(multiplicity, fixed_count)`` classes of elements."""
    order = 0
    total = 0
    for mult, f in counts:
        order += mult
        total += mult * f
    return BurnsideResult(order, total, Fraction(total, order))


def is_group(elements: Sequence[Perm]) -> bool:
    """Closure check for a finite set of permutations."""
    s = {e.images for e in elements}
    return all(compose(a, b).images in s for a in elements for b in elements)
