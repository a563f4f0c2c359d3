"""Symmetric (v, k, lambda) designs stored as bit-vector incidence rows.

Points are labelled ``1..v`` in every public signature and ``0..v-1``
internally.  A block is a Python ``int`` whose bit ``i`` is set when point
``i + 1`` lies on it, so block intersections are ``(a & b).bit_count()``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import AxiomViolation, ParamViolation, ParseError, RangeError


@dataclass(frozen=True, order=True)
class DesignParams:
    v: int
    k: int
    lam: int
    check_counting: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        for name in ("v", "k", "lam"):
            if not isinstance(getattr(self, name), int):
                raise ParamViolation(f"{name} must be an integer")
        if not (self.v > self.k > self.lam >= 0):
            raise ParamViolation(f"need v > k > lambda >= 0, got {self.as_tuple()}")
        if self.check_counting and self.k * (self.k - 1) != self.lam * (self.v - 1):
            raise ParamViolation(
                f"counting identity k(k-1) = lambda(v-1) fails for {self.as_tuple()}: "
                f"{self.k * (self.k - 1)} != {self.lam * (self.v - 1)}"
            )

    @property
    def n(self) -> int:
        """Order of the design, ``k - lambda``."""
        return self.k - self.lam

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.v, self.k, self.lam)

    def complement(self) -> "DesignParams":
        return DesignParams(self.v, self.v - self.k, self.v - 2 * self.k + self.lam,
                            check_counting=self.check_counting)

    @property
    def nontrivial(self) -> bool:
        return 1 < self.k < self.v - 1

    def __str__(self):
        return f"({self.v},{self.k},{self.lam})"


def mask_of(points: Iterable[int]) -> int:
    """Bit-vector of a collection of 1-based points."""
    m = 0
    for x in points:
        m |= 1 << (x - 1)
    return m


def points_of(mask: int) -> tuple[int, ...]:
    """Sorted 1-based points of a bit-vector."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _block_key(mask: int) -> tuple[int, ...]:
    return points_of(mask)


@dataclass(frozen=True, eq=False)
class Design:
    """A verified symmetric design.

    Build through :func:`make_design`; the constructor itself does no
    checking.  ``blocks`` is in canonical (lexicographic) order and
    ``point_index[x]`` lists the indices of the blocks through point
    ``x + 1``.
    """

    params: DesignParams
    blocks: tuple[int, ...]
    point_index: tuple[tuple[int, ...], ...]

    @property
    def v(self) -> int:
        return self.params.v

    def block_sets(self) -> list[tuple[int, ...]]:
        return [points_of(b) for b in self.blocks]

    def block_lookup(self) -> dict[int, int]:
        return {b: i for i, b in enumerate(self.blocks)}

    def incidence_matrix(self) -> np.ndarray:
        """``v x v`` 0/1 matrix, rows are blocks and columns points."""
        v = self.params.v
        mat = np.zeros((v, v), dtype=np.int64)
        for i, b in enumerate(self.blocks):
            mat[i, [x - 1 for x in points_of(b)]] = 1
        return mat

    def __eq__(self, other):
        if not isinstance(other, Design):
            return NotImplemented
        return self.params == other.params and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.params.as_tuple(), self.blocks))

    def __repr__(self):
        return f"Design{self.params}[{len(self.blocks)} blocks]"


def build_point_index(v: int, blocks: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    index: list[list[int]] = [[] for _ in range(v)]
    for j, b in enumerate(blocks):
        for x in points_of(b):
            index[x - 1].append(j)
    return tuple(tuple(row) for row in index)


def check_axioms(params: DesignParams, blocks: Sequence[int]) -> None:
    """Raise :class:`AxiomViolation` for the first failing axiom.

    Block-level conditions (count, size, intersections) are checked before
    point-level ones (replication, pair balance).
    """
    v, k, lam = params.v, params.k, params.lam
    for j, b in enumerate(blocks):
        if b.bit_count() != k:
            raise AxiomViolation(0, {"block": j + 1, "points": list(points_of(b)), "size": b.bit_count()})
    if len(blocks) != v:
        raise AxiomViolation(1, {"blocks": len(blocks), "expected": v})
    for i, j in combinations(range(v), 2):
        meet = (blocks[i] & blocks[j]).bit_count()
        if meet != lam:
            raise AxiomViolation(3, {"blocks": [i + 1, j + 1],
                                     "points": [list(points_of(blocks[i])), list(points_of(blocks[j]))],
                                     "meet": meet})
    # dual rows: bit j of columns[x] set when point x is on block j
    columns = [0] * v
    for j, b in enumerate(blocks):
        for x in points_of(b):
            columns[x - 1] |= 1 << j
    for x in range(v):
        r = columns[x].bit_count()
        if r != k:
            raise AxiomViolation(2, {"point": x + 1, "replication": r})
    for x, y in combinations(range(v), 2):
        c = (columns[x] & columns[y]).bit_count()
        if c != lam:
            raise AxiomViolation(4, {"points": [x + 1, y + 1], "common_blocks": c})


def make_design(params: DesignParams | tuple, blocks: Iterable[Iterable[int]]) -> Design:
    """Validate ``blocks`` (1-based point collections) and return a Design."""
    if not isinstance(params, DesignParams):
        params = DesignParams(*params)
    masks = []
    for j, blk in enumerate(blocks):
        pts = list(blk)
        for x in pts:
            if not isinstance(x, (int, np.integer)) or not 1 <= x <= params.v:
                raise AxiomViolation(0, {"block": j + 1, "point": x, "reason": "out of range"})
        if len(set(pts)) != len(pts):
            raise AxiomViolation(0, {"block": j + 1, "points": sorted(pts), "reason": "repeated point"})
        masks.append(mask_of(int(x) for x in pts))
    return design_from_masks(params, masks)


def design_from_masks(params: DesignParams, masks: Sequence[int]) -> Design:
    masks = sorted(masks, key=_block_key)
    check_axioms(params, masks)
    blocks = tuple(masks)
    return Design(params, blocks, build_point_index(params.v, blocks))


def complement(d: Design) -> Design:
    cparams = d.params.complement()
    full = (1 << d.v) - 1
    return design_from_masks(cparams, [full ^ b for b in d.blocks])


def parse_design(text: str, check_counting: bool = True) -> Design:
    """Read the text design format: ``v k lambda`` then one block per line."""
    header = None
    rows: list[tuple[int, list[int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        values = []
        for tok_start, tok in _tokens(line):
            try:
                values.append(int(tok))
            except ValueError:
                raise ParseError(f"not an integer: {tok!r}", lineno, tok_start + 1) from None
        if header is None:
            if len(values) != 3:
                raise ParseError("header must be 'v k lambda'", lineno)
            header = values
            try:
                params = DesignParams(*values, check_counting=check_counting)
            except ParamViolation as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        for (pos, _), x in zip(_tokens(line), values):
            if not 1 <= x <= params.v:
                raise RangeError(f"point {x} outside 1..{params.v}", lineno, pos + 1)
        rows.append((lineno, values))
    if header is None:
        raise ParseError("empty design file")
    return make_design(params, [vals for _, vals in rows])


def _tokens(line: str):
    pos = 0
    for tok in line.split():
        pos = line.index(tok, pos)
        yield pos, tok
        pos += len(tok)


def serialize_design(d: Design) -> str:
    lines = [f"{d.params.v} {d.params.k} {d.params.lam}"]
    lines += [" ".join(map(str, pts)) for pts in d.block_sets()]
    return "\n".join(lines) + "\n"
