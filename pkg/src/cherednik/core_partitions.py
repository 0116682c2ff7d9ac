"""Partitions, multipartitions, boxes and skew shapes with exact coordinates.

A box lives at ``(x, y)`` in the plane, ``x`` the column and ``y`` the row
(rows grow downward), and carries a species in ``range(ell)``.  Coordinates
are :class:`fractions.Fraction` so that shapes produced by parameter-dependent
shifts stay exact; integrality is checked where it matters, never assumed.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# boxes


@dataclass(frozen=True, order=True)
class Box:
    x: Fraction
    y: Fraction
    species: int = 0

    def __post_init__(self):
        object.__setattr__(self, "x", as_fraction(self.x))
        object.__setattr__(self, "y", as_fraction(self.y))
        if self.species < 0:
            raise ValueError("species must be non-negative")

    @property
    def content(self) -> Fraction:
        return self.x - self.y

    def shifted(self, dx, dy) -> "Box":
        return Box(self.x + dx, self.y + dy, self.species)

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def __repr__(self):
        return f"Box({format_rational(self.x)}, {format_rational(self.y)}, {self.species})"


def content(b: Box) -> Fraction:
    return b.x - b.y


def box_leq(b: Box, other: Box) -> bool:
    """Box order: same species and both coordinate gaps non-negative integers."""
    if b.species != other.species:
        return False
    dx, dy = other.x - b.x, other.y - b.y
    return dx.denominator == 1 and dy.denominator == 1 and dx >= 0 and dy >= 0


def _adjacent(a: Box, b: Box) -> bool:
    if a.species != b.species:
        return False
    dx, dy = abs(a.x - b.x), abs(a.y - b.y)
    return (dx == 1 and dy == 0) or (dx == 0 and dy == 1)


# ---------------------------------------------------------------------------
# partitions


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition([2, 1, 0])``
    equals ``Partition([2, 1])``.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-increasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def first(self) -> int:
        return self[0] if self else 0

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def cells(self) -> Iterator[tuple[int, int]]:
        """(row, column) pairs, 1-indexed, in row-reading order."""
        for r, length in enumerate(self, start=1):
            for c in range(1, length + 1):
                yield r, c

    def boxes(self, species: int = 0) -> list[Box]:
        return [Box(c, r, species) for r, c in self.cells()]

    def contains(self, other: "Partition") -> bool:
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def hook_lengths(self) -> list[int]:
        conj = self.conjugate()
        return [self[r - 1] - c + conj[c - 1] - r + 1 for r, c in self.cells()]

    def __repr__(self):
        return f"Partition({format_partition(self) or '∅'})"


def format_partition(p: Sequence[int]) -> str:
    """``(4,4,2,2,1,1,1)`` -> ``"4^2,2^2,1^3"``; the empty partition is ``""``."""
    out = []
    for part, run in _runs(p):
        out.append(f"{part}^{run}" if run > 1 else str(part))
    return ",".join(out)


def _runs(p: Sequence[int]):
    i = 0
    while i < len(p):
        j = i
        while j < len(p) and p[j] == p[i]:
            j += 1
        yield p[i], j - i
        i = j


def parse_partition(text: str) -> Partition:
    """Read the exponent syntax ``"4^2,2^2,1^3"``; empty text or ``"0"`` is ∅."""
    text = text.strip().strip("()[]")
    if text in ("", "0", "∅", "-"):
        return Partition()
    parts: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "^" in token:
            base, exp = token.split("^")
            parts.extend([int(base)] * int(exp))
        else:
            parts.append(int(token))
    return Partition(parts)


def num_syt(p: Partition) -> int:
    """Number of standard Young tableaux of straight shape, by hook lengths."""
    p = Partition(p)
    return math.factorial(p.size) // math.prod(p.hook_lengths())


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return (Partition(),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


# ---------------------------------------------------------------------------
# ell-partitions


class EllPartition(tuple):
    """A tuple of ``ell`` partitions ``(λ^0, ..., λ^{ell-1})``."""

    def __new__(cls, components: Iterable[Iterable[int]]):
        comps = tuple(Partition(c) for c in components)
        if not comps:
            raise ValueError("an ell-partition needs at least one component")
        return super().__new__(cls, comps)

    @property
    def ell(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return sum(c.size for c in self)

    def boxes(self) -> list[Box]:
        return [b for j, comp in enumerate(self) for b in comp.boxes(j)]

    def shape(self) -> "SkewShape":
        return SkewShape(self.boxes(), self.ell)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self]

    def __repr__(self):
        inner = " | ".join(format_partition(c) or "∅" for c in self)
        return f"EllPartition({inner})"


def parse_ell_partition(text: str) -> EllPartition:
    """JSON array of arrays, e.g. ``[[1,1],[1,1]]``."""
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(c, list) for c in data):
        raise ValueError(f"expected a JSON array of arrays, got {text!r}")
    return EllPartition(data)


def transpose(lam: EllPartition) -> EllPartition:
    """Cycle components one step left and conjugate each."""
    lam = EllPartition(lam)
    comps = list(lam[1:]) + [lam[0]]
    return EllPartition(c.conjugate() for c in comps)


@lru_cache(maxsize=None)
def ell_partitions_of(ell: int, n: int) -> tuple[EllPartition, ...]:
    """All ell-partitions of n, deterministic order."""
    out = []
    for sizes in _compositions(n, ell):
        pools = [partitions_of(s) for s in sizes]
        for combo in _product(pools):
            out.append(EllPartition(combo))
    return tuple(out)


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def _product(pools):
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for tail in _product(pools[1:]):
            yield (head,) + tail


def dim_irrep(lam: EllPartition) -> int:
    """Dimension of the irreducible G(ell,1,n)-module indexed by ``lam``."""
    lam = EllPartition(lam)
    multinomial = math.factorial(lam.size)
    for comp in lam:
        multinomial //= math.factorial(comp.size)
    return multinomial * math.prod(num_syt(c) for c in lam)


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class Params:
    """Deformation parameter ``(c0, d_0, ..., d_{ell-1})`` with ``sum(d) == 0``."""

    c0: Fraction
    d: tuple[Fraction, ...] = field(default=(Fraction(0),))

    def __post_init__(self):
        object.__setattr__(self, "c0", as_fraction(self.c0))
        d = tuple(as_fraction(v) for v in self.d)
        if not d:
            raise ValueError("need at least one d value")
        if sum(d) != 0:
            raise ValueError(f"d values must sum to zero, got {format_rational(sum(d))}")
        object.__setattr__(self, "d", d)

    @property
    def ell(self) -> int:
        return len(self.d)

    def d_at(self, i: int) -> Fraction:
        return self.d[i % self.ell]

    def to_json(self) -> dict:
        return {"c0": format_rational(self.c0), "d": [format_rational(v) for v in self.d]}


def charged_content(b: Box, p: Params) -> Fraction:
    return p.d_at(b.species) + p.ell * b.content * p.c0


def charged_content_sum(lam: EllPartition, p: Params) -> Fraction:
    return sum((charged_content(b, p) for b in EllPartition(lam).boxes()), Fraction(0))


# ---------------------------------------------------------------------------
# skew shapes


@dataclass(frozen=True)
class SkewShape:
    boxes: frozenset[Box]
    ell: int = 1

    def __init__(self, boxes: Iterable[Box] = (), ell: int = 1):
        object.__setattr__(self, "boxes", frozenset(boxes))
        object.__setattr__(self, "ell", int(ell))
        if self.ell < 1:
            raise ValueError("ell must be positive")
        for b in self.boxes:
            if b.species >= self.ell:
                raise ValueError(f"{b} has species outside range({self.ell})")

    def __len__(self):
        return len(self.boxes)

    def __iter__(self):
        return iter(sorted(self.boxes, key=_reading_key))

    @property
    def size(self) -> int:
        return len(self.boxes)

    def species_part(self, j: int) -> "SkewShape":
        return SkewShape((b for b in self.boxes if b.species == j), self.ell)

    def species_sizes(self) -> tuple[int, ...]:
        counts = Counter(b.species for b in self.boxes)
        return tuple(counts.get(j, 0) for j in range(self.ell))

    def is_integral(self) -> bool:
        return all(b.is_integral() and b.x >= 1 and b.y >= 1 for b in self.boxes)

    def satisfies_interval_axiom(self) -> bool:
        for a in self.boxes:
            for b in self.boxes:
                if box_leq(a, b):
                    for dx in range(int(b.x - a.x) + 1):
                        for dy in range(int(b.y - a.y) + 1):
                            if a.shifted(dx, dy) not in self.boxes:
                                return False
        return True

    def rows(self, species: int = 0) -> list[list[int]]:
        """Row profile of an integral single species part: sorted column lists per row."""
        part = [b for b in self.boxes if b.species == species]
        if not part:
            return []
        top = min(b.y for b in part)
        bottom = max(b.y for b in part)
        out = []
        y = top
        while y <= bottom:
            out.append(sorted(int(b.x) for b in part if b.y == y))
            y += 1
        return out

    @classmethod
    def from_partitions(cls, outer, inner=(), species: int = 0, ell: int = 1) -> "SkewShape":
        outer, inner = Partition(outer), Partition(inner)
        if not outer.contains(inner):
            raise ValueError(f"{inner} is not contained in {outer}")
        inner_cells = set(inner.cells())
        return cls((Box(c, r, species) for r, c in outer.cells() if (r, c) not in inner_cells), ell)

    def __repr__(self):
        return f"SkewShape({sorted(self.boxes, key=_reading_key)}, ell={self.ell})"


def _reading_key(b: Box):
    return (b.species, b.y, b.x)


def connected_components(shape: SkewShape) -> list[SkewShape]:
    """Classes of the adjacency closure, each species separately."""
    remaining = set(shape.boxes)
    comps = []
    for start in sorted(shape.boxes, key=_reading_key):
        if start not in remaining:
            continue
        remaining.discard(start)
        stack, comp = [start], [start]
        while stack:
            cur = stack.pop()
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nb = cur.shifted(dx, dy)
                if nb in remaining:
                    remaining.discard(nb)
                    stack.append(nb)
                    comp.append(nb)
        comps.append(SkewShape(comp, shape.ell))
    return comps


def _local_form(comp: SkewShape) -> tuple[tuple[int, int], ...]:
    xmin = min(b.x for b in comp.boxes)
    ymin = min(b.y for b in comp.boxes)
    return tuple(sorted((int(b.y - ymin) + 1, int(b.x - xmin) + 1) for b in comp.boxes))


def normalized_layout(shape: SkewShape) -> tuple[SkewShape, list[tuple[int, Fraction]]]:
    """Canonical integral placement plus ``(species, min content)`` per component.

    Components of one species are ordered by (min content, size, local shape)
    and laid out as a direct sum along the anti-diagonal: the component with
    the largest key sits top-right and each following one starts one row
    below and strictly left of the previous one.
    """
    return direct_sum(connected_components(shape), shape.ell)


def direct_sum(components: Iterable[SkewShape], ell: int) -> tuple[SkewShape, list[tuple[int, Fraction]]]:
    """Lay out connected pieces in canonical order; contents only set the order."""
    by_species: dict[int, list] = {}
    for comp in components:
        if not comp.boxes:
            continue
        species = {b.species for b in comp.boxes}
        if len(species) != 1:
            raise ValueError("a component lives in a single species")
        key = (min(b.content for b in comp.boxes), comp.size, _local_form(comp))
        by_species.setdefault(species.pop(), []).append(key)
    boxes: list[Box] = []
    offsets: list[tuple[int, Fraction]] = []
    for j in sorted(by_species):
        keyed = sorted(by_species[j], reverse=True)
        widths = [max(col for _, col in local) for _, _, local in keyed]
        x_offset = sum(widths)
        y_offset = 0
        for (low, _, local), width in zip(keyed, widths):
            x_offset -= width
            for row, col in local:
                boxes.append(Box(col + x_offset, row + y_offset, j))
            y_offset += max(row for row, _ in local)
            offsets.append((j, low))
    return SkewShape(boxes, ell), sorted(offsets)


def normalize_skew(shape: SkewShape) -> SkewShape:
    return normalized_layout(shape)[0]


def slide_equivalent(a: SkewShape, b: SkewShape) -> bool:
    return normalize_skew(a) == normalize_skew(b)


def syt_enumerate(shape: SkewShape) -> list[dict[Box, int]]:
    """All standard fillings (linear extensions of the box order), lexicographic."""
    boxes = sorted(shape.boxes, key=_reading_key)
    below = {b: [c for c in boxes if c != b and box_leq(c, b)] for b in boxes}
    out: list[dict[Box, int]] = []
    filling: dict[Box, int] = {}

    def extend(label: int):
        if label > len(boxes):
            out.append(dict(filling))
            return
        for b in boxes:
            if b not in filling and all(c in filling for c in below[b]):
                filling[b] = label
                extend(label + 1)
                del filling[b]

    extend(1)
    return out
