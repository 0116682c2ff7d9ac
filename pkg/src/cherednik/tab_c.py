"""Admissible tableau pairs and the skew shapes they index.

For an ell-partition ``λ`` and parameter ``c`` the module enumerates pairs
``(P, Q)`` subject to the four admissibility conditions (a)-(d), projects
to the ``Q`` fillings, and turns each admissible ``Q`` into a skew shape by
rebuilding a standard tableau from its sequence of (content, species)
targets.  Two explicit geometric constructions, for ``ell == 1`` with
``c0 = 1/k`` and for ``ell == 2``, are kept as independent cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core_partitions import (
    Box,
    EllPartition,
    Params,
    SkewShape,
    box_leq,
    charged_content,
    direct_sum,
)


@dataclass(frozen=True)
class FillingQ:
    """Non-negative integer filling of an ell-partition, stored in box order."""

    shape: EllPartition
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "shape", EllPartition(self.shape))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.shape.size:
            raise ValueError("one value per box is required")
        if any(v < 0 for v in self.values):
            raise ValueError("fillings are non-negative")

    @classmethod
    def from_rows(cls, shape, rows: Sequence[Sequence[Sequence[int]]]) -> "FillingQ":
        """``rows[j]`` lists the rows of species ``j`` top to bottom."""
        shape = EllPartition(shape)
        values = [v for comp in rows for row in comp for v in row]
        return cls(shape, values)

    @classmethod
    def zero(cls, shape) -> "FillingQ":
        shape = EllPartition(shape)
        return cls(shape, (0,) * shape.size)

    @property
    def boxes(self) -> list[Box]:
        return self.shape.boxes()

    @property
    def degree(self) -> int:
        return sum(self.values)

    def items(self) -> Iterator[tuple[Box, int]]:
        return zip(self.boxes, self.values)

    def __getitem__(self, box: Box) -> int:
        return self.values[self.boxes.index(box)]

    def rows(self) -> list[list[list[int]]]:
        out, it = [], iter(self.values)
        for comp in self.shape:
            out.append([[next(it) for _ in range(length)] for length in comp])
        return out

    def is_weakly_increasing(self) -> bool:
        boxes = self.boxes
        return all(
            self.values[i] <= self.values[j]
            for i, a in enumerate(boxes)
            for j, b in enumerate(boxes)
            if box_leq(a, b)
        )


@dataclass(frozen=True)
class PairPQ:
    q: FillingQ
    p: tuple[int, ...]  # P-label of each box, aligned with ``q.boxes``

    def p_inverse(self) -> list[int]:
        """Box index holding each label 1..n (position 0 unused)."""
        inv = [0] * (len(self.p) + 1)
        for idx, label in enumerate(self.p):
            inv[label] = idx
        return inv


# ---------------------------------------------------------------------------
# admissibility data


@dataclass
class _Constraints:
    boxes: list[Box]
    caps: list[int | None]  # condition (c): Q(b) <= cap
    order: list[tuple[int, int]]  # box_leq pairs (i, j), i != j
    bounded: list[tuple[int, int, list[int]]]  # condition (d): (b, b', admissible k's)


def _condition_c_values(b: Box, p: Params) -> list[int]:
    """Positive integers k with ct_c(b) = d_{β(b)-k} + k, solved exactly."""
    ctc = charged_content(b, p)
    out = set()
    for j in range(p.ell):
        k = ctc - p.d[j]
        if k.denominator == 1 and k > 0 and (b.species - int(k) - j) % p.ell == 0:
            out.add(int(k))
    return sorted(out)


def _condition_d_values(b: Box, b2: Box, p: Params) -> list[int]:
    """Positive k ≡ β(b)-β(b') mod ell with ct_c(b)-ct_c(b') = k ± ell*c0."""
    diff = charged_content(b, p) - charged_content(b2, p)
    out = set()
    for sign in (1, -1):
        k = diff - sign * p.ell * p.c0
        if k.denominator == 1 and k > 0 and (int(k) - b.species + b2.species) % p.ell == 0:
            out.add(int(k))
    return sorted(out)


def _constraints(lam: EllPartition, p: Params) -> _Constraints:
    if lam.ell != p.ell:
        raise ValueError(f"λ has {lam.ell} components but the parameter has ell={p.ell}")
    boxes = lam.boxes()
    caps: list[int | None] = []
    for b in boxes:
        ks = _condition_c_values(b, p)
        caps.append(min(ks) - 1 if ks else None)
    order = [
        (i, j)
        for i, a in enumerate(boxes)
        for j, b in enumerate(boxes)
        if i != j and box_leq(a, b)
    ]
    bounded = []
    for i, a in enumerate(boxes):
        for j, b in enumerate(boxes):
            if i != j:
                ks = _condition_d_values(a, b, p)
                if ks:
                    bounded.append((i, j, ks))
    return _Constraints(boxes, caps, order, bounded)


def _q_fillings(cons: _Constraints, max_degree: int) -> Iterator[tuple[int, ...]]:
    """Fillings satisfying (a), (c) and the inequality half of (d)."""
    n = len(cons.boxes)
    preds = [[i for i, j in cons.order if j == t] for t in range(n)]
    checks: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for i, j, ks in cons.bounded:
        # Q(b_i) <= Q(b_j) + min k, checked once both are assigned
        checks[max(i, j)].append((i, j, min(ks)))
    values = [0] * n

    def fill(t: int, budget: int):
        if t == n:
            yield tuple(values)
            return
        low = max((values[i] for i in preds[t]), default=0)
        high = budget if cons.caps[t] is None else min(budget, cons.caps[t])
        for v in range(low, high + 1):
            values[t] = v
            if all(values[i] <= values[j] + k for i, j, k in checks[t]):
                yield from fill(t + 1, budget - v)
        values[t] = 0

    # box order is (species, row, column), so every ≤-predecessor comes first
    yield from fill(0, max_degree)


def _p_relations(cons: _Constraints, q: Sequence[int]) -> list[tuple[int, int]]:
    """Pairs (i, j) demanding P(b_i) > P(b_j) for the given Q."""
    rel = [(i, j) for i, j in cons.order if q[i] == q[j]]  # condition (b)
    for i, j, ks in cons.bounded:
        if any(q[i] == q[j] + k for k in ks):  # equality case of (d)
            rel.append((i, j))
    return rel


def _linear_extensions(n: int, greater: list[tuple[int, int]]) -> Iterator[tuple[int, ...]]:
    """Labelings P with P[i] > P[j] for each (i, j); smallest labels placed first."""
    must_precede = [[] for _ in range(n)]  # j gets a smaller label than i
    for i, j in greater:
        must_precede[i].append(j)
    labels = [0] * n

    def assign(label: int):
        if label > n:
            yield tuple(labels)
            return
        for t in range(n):
            if labels[t] == 0 and all(labels[s] for s in must_precede[t]):
                labels[t] = label
                yield from assign(label + 1)
                labels[t] = 0

    yield from assign(1)


def _first_extension(n: int, greater: list[tuple[int, int]]) -> tuple[int, ...] | None:
    """Kahn's algorithm; ``None`` when the relations are cyclic."""
    must_precede = [set() for _ in range(n)]
    for i, j in greater:
        must_precede[i].add(j)
    labels = [0] * n
    for label in range(1, n + 1):
        ready = [t for t in range(n) if labels[t] == 0 and all(labels[s] for s in must_precede[t])]
        if not ready:
            return None
        labels[ready[0]] = label
    return tuple(labels)


def enumerate_gamma(lam, p: Params, max_degree: int) -> list[PairPQ]:
    """All admissible pairs (P, Q) with |Q| <= max_degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    lam = EllPartition(lam)
    cons = _constraints(lam, p)
    out = []
    for q in _q_fillings(cons, max_degree):
        filling = FillingQ(lam, q)
        for labels in _linear_extensions(len(q), _p_relations(cons, q)):
            out.append(PairPQ(filling, labels))
    return out


def tab_c(lam, p: Params, max_degree: int) -> list[FillingQ]:
    """Admissible Q fillings (those with at least one completing P), by degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    lam = EllPartition(lam)
    cons = _constraints(lam, p)
    out = [
        FillingQ(lam, q)
        for q in _q_fillings(cons, max_degree)
        if _first_extension(len(q), _p_relations(cons, q)) is not None
    ]
    return sorted(out, key=lambda f: (f.degree, f.values))


def completing_p(q: FillingQ, p: Params) -> tuple[int, ...]:
    cons = _constraints(q.shape, p)
    if not _admissible_q(cons, q.values):
        raise ValueError(f"{q} violates conditions (a), (c) or (d)")
    labels = _first_extension(len(q.values), _p_relations(cons, q.values))
    if labels is None:
        raise ValueError(f"no P completes {q}")
    return labels


def all_completing_p(q: FillingQ, p: Params) -> list[tuple[int, ...]]:
    cons = _constraints(q.shape, p)
    return list(_linear_extensions(len(q.values), _p_relations(cons, q.values)))


def _admissible_q(cons: _Constraints, q: Sequence[int]) -> bool:
    if any(q[i] > q[j] for i, j in cons.order):
        return False
    if any(cap is not None and v > cap for v, cap in zip(q, cons.caps)):
        return False
    return all(q[i] <= q[j] + min(ks) for i, j, ks in cons.bounded)


# ---------------------------------------------------------------------------
# general s_c(Q)


def target_sequence(q: FillingQ, p: Params, labels: Sequence[int] | None = None) -> list[tuple[Fraction, int]]:
    """The (content, species) prescribed for entries 1..n of the rebuilt tableau."""
    if p.c0 == 0:
        raise ValueError("c0 = 0 leaves the reconstruction undefined")
    if labels is None:
        labels = completing_p(q, p)
    boxes = q.boxes
    n = len(boxes)
    by_label = {label: idx for idx, label in enumerate(labels)}
    seq = []
    for i in range(1, n + 1):
        idx = by_label[n - i + 1]
        b, qb = boxes[idx], q.values[idx]
        species = (b.species - qb) % p.ell
        shift = (qb - (p.d_at(b.species) - p.d_at(b.species - qb))) / (p.ell * p.c0)
        seq.append((b.content - shift, species))
    return seq


class ReconstructionError(ValueError):
    """The content sequence does not come from a standard skew tableau."""


def check_sequence_hypothesis(seq: Sequence[tuple[Fraction, int]]) -> None:
    """Repeated (content, species) must be separated by both neighbours."""
    for i, (a, s) in enumerate(seq):
        for j in range(i + 1, len(seq)):
            if seq[j] == (a, s):
                between = seq[i + 1 : j]
                if (a + 1, s) not in between or (a - 1, s) not in between:
                    raise ReconstructionError(
                        f"entries {i + 1} and {j + 1} share content {a} in species {s} "
                        "without both neighbouring diagonals in between"
                    )
                break


class _Component:
    def __init__(self, species: int):
        self.species = species
        self.cells: dict[tuple[Fraction, Fraction], int] = {}

    def candidate_slots(self, a: Fraction) -> set[tuple[Fraction, Fraction]]:
        slots = set()
        for (x, y) in self.cells:
            if x - y == a - 1:
                slots.add((x + 1, y))
            elif x - y == a + 1:
                slots.add((x, y + 1))
        return {s for s in slots if self._can_add(s)}

    def _can_add(self, slot) -> bool:
        if slot in self.cells:
            return False
        sx, sy = slot
        for (x, y) in self.cells:
            dx, dy = x - sx, y - sy
            if dx.denominator != 1 or dy.denominator != 1:
                return False
            if dx >= 0 and dy >= 0:
                return False  # slot would sit below an existing larger entry
            if dx <= 0 and dy <= 0:
                for ex in range(int(-dx) + 1):
                    for ey in range(int(-dy) + 1):
                        cell = (x + ex, y + ey)
                        if cell != slot and cell not in self.cells:
                            return False
        return True


def reconstruct(seq: Sequence[tuple[Fraction, int]], ell: int) -> list[tuple[SkewShape, dict[Box, int]]]:
    """Rebuild a skew shape and standard tableau from (content, species) targets.

    Entry ``i`` goes to the unique addable slot of the prescribed content next
    to an existing component; when slots exist on two components they are
    joined by a diagonal slide, otherwise a new component is opened.
    Returns the connected pieces with their true contents, each with its
    part of the tableau.
    """
    check_sequence_hypothesis(seq)
    comps: list[_Component] = []
    for label, (a, species) in enumerate(seq, start=1):
        hits = []
        for comp in comps:
            if comp.species != species:
                continue
            slots = comp.candidate_slots(a)
            if len(slots) > 1:
                raise ReconstructionError(f"entry {label}: several slots in one component")
            if slots:
                hits.append((comp, slots.pop()))
        if not hits:
            comp = _Component(species)
            comp.cells[(a, Fraction(0))] = label
            comps.append(comp)
            continue
        base, slot = hits[0]
        for other, other_slot in hits[1:]:
            t = slot[0] - other_slot[0]
            for (x, y), lab in other.cells.items():
                moved = (x + t, y + t)
                if moved in base.cells:
                    raise ReconstructionError(f"entry {label}: merging components collides")
                base.cells[moved] = lab
            comps.remove(other)
        if not base._can_add(slot):
            raise ReconstructionError(f"entry {label}: merged slot is not addable")
        base.cells[slot] = label
    pieces = []
    for comp in comps:
        tableau = {Box(x, y, comp.species): lab for (x, y), lab in comp.cells.items()}
        pieces.append((SkewShape(tableau, ell), tableau))
    _verify_calibrated(pieces, seq)
    return pieces


def _verify_calibrated(pieces, seq) -> None:
    pos = {}
    for shape, tableau in pieces:
        if not shape.satisfies_interval_axiom():
            raise ReconstructionError("rebuilt component is not a skew shape")
        for a in tableau:
            for b in tableau:
                if a != b and box_leq(a, b) and tableau[a] > tableau[b]:
                    raise ReconstructionError("rebuilt tableau is not standard")
        for b, lab in tableau.items():
            pos[lab] = (b, shape)
    for lab, (a, s) in enumerate(seq, start=1):
        if pos[lab][0].content != a or pos[lab][0].species != s:
            raise ReconstructionError("rebuilt tableau misses its targets")
    # consecutive entries on neighbouring diagonals of one coset must touch
    for lab in range(1, len(seq)):
        (u, cu), (v, cv) = pos[lab], pos[lab + 1]
        gap = u.content - v.content
        if u.species == v.species and abs(gap) == 1:
            if cu is not cv or abs(u.x - v.x) + abs(u.y - v.y) != 1:
                raise ReconstructionError(f"entries {lab} and {lab + 1} should be adjacent")


def shape_s_c(q: FillingQ, p: Params, labels: Sequence[int] | None = None) -> SkewShape:
    """Normalized skew shape s_c(Q), built from any completing P."""
    seq = target_sequence(q, p, labels)
    pieces = reconstruct(seq, p.ell)
    return direct_sum((shape for shape, _ in pieces), p.ell)[0]


# ---------------------------------------------------------------------------
# explicit constructions


def shape_s_1k(q: FillingQ, k: int) -> SkewShape:
    """ell = 1, c0 = 1/k: boxes filled with j move jm left and j(k-m) down."""
    if q.shape.ell != 1:
        raise ValueError("shape_s_1k needs a single partition")
    m = q.shape[0].first
    moved = [b.shifted(-j * m, j * (k - m)) for b, j in q.items()]
    return SkewShape(moved, 1)


def shape_s_c_ell2(q: FillingQ, p: Params) -> SkewShape:
    """ell = 2: apply the j-th iterate of the c-shifting function to boxes with Q = j."""
    if p.ell != 2 or q.shape.ell != 2:
        raise ValueError("shape_s_c_ell2 needs ell = 2")
    lam = q.shape
    if not lam[0]:
        # swap the species; the parameter d becomes -d
        swapped = FillingQ(
            EllPartition((lam[1], lam[0])),
            [v for b, v in sorted(q.items(), key=lambda bv: (1 - bv[0].species, bv[0].y, bv[0].x))],
        )
        shape = shape_s_c_ell2(swapped, Params(p.c0, (p.d[1], p.d[0])))
        return SkewShape((Box(b.x, b.y, 1 - b.species) for b in shape.boxes), 2)
    c, d = p.c0, p.d[0]
    top0, top1 = lam[0].first, lam[1].first
    half = 1 / (2 * c)
    case_two = not lam[1] and d + (top0 - 1) * c == Fraction(1, 2)
    if case_two:
        second = lam[0][1] if len(lam[0]) > 1 else 0
        shifts = {
            0: (-second, -second + half - d / c),
            1: (Fraction(0), half + d / c),
        }
    else:
        shifts = {
            0: (-top0, -top0 + half - d / c),
            1: (-top1, -top1 + half + d / c),
        }
    moved = []
    for b, j in q.items():
        for _ in range(j):
            dx, dy = shifts[b.species]
            b = Box(b.x + dx, b.y + dy, 1 - b.species)
        moved.append(b)
    return SkewShape(moved, 2)


def reverse_shape(shape: SkewShape) -> SkewShape:
    """Rotate by 180 degrees (negate every content), keeping species."""
    return SkewShape((Box(-b.x, -b.y, b.species) for b in shape.boxes), shape.ell)
