"""k-abacus of a partition and the graded poset P(n, k).

A partition with first part below ``k`` is traced from ``(k-1, 0)`` along its
outline; step ``m`` of the trace is position ``m`` of the abacus (row
``m // k``, runner ``m % k``), holding a bead for a left step and a space
for a down step.  The poset is the set of partitions reachable from
``bgspart(n, k)`` by moving one bead down and another up by the same number
of rows, ordered by the bead-swap cover relation.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterator

from .core_partitions import Partition, format_partition

Cell = tuple[int, int]  # (row, column), 1-indexed


@dataclass(frozen=True)
class Abacus:
    k: int
    beads: frozenset[int]

    @property
    def rows(self) -> tuple[int | None, ...]:
        """(a_0, ..., a_{k-1}): bead row per runner, ``None`` for the empty runner."""
        out: list[int | None] = [None] * self.k
        for pos in self.beads:
            row, runner = divmod(pos, self.k)
            if out[runner] is not None:
                raise ValueError("runner holds several beads; rows are undefined")
            out[runner] = row
        return tuple(out)

    @classmethod
    def from_rows(cls, rows) -> "Abacus":
        k = len(rows)
        return cls(k, frozenset(a * k + r for r, a in enumerate(rows) if a is not None))

    def extended(self, i: int) -> int | None:
        """a_i for any integer i, using a_{i-k} = a_i + 1."""
        q, r = divmod(i, self.k)
        base = self.rows[r]
        return None if base is None else base - q

    def render(self) -> str:
        """Text picture: row 0 at the bottom, 'o' bead, 'x' space."""
        top = max(self.beads, default=0) // self.k + 1
        lines = []
        for row in range(top, -1, -1):
            lines.append(" ".join("o" if row * self.k + r in self.beads else "x" for r in range(self.k)))
        return "\n".join(lines)


def abacus_of_partition(lam, k: int) -> Abacus:
    lam = Partition(lam)
    if k < 2:
        raise ValueError("k must be at least 2")
    if lam.first >= k:
        raise ValueError(f"first part {lam.first} must be below k={k}")
    beads, pos, x = set(), 0, k - 1
    for part in lam:
        while x > part:
            beads.add(pos)
            pos, x = pos + 1, x - 1
        pos += 1  # down step
    while x > 0:
        beads.add(pos)
        pos, x = pos + 1, x - 1
    return Abacus(k, frozenset(beads))


def partition_of_abacus(ab: Abacus) -> Partition:
    if len(ab.beads) != ab.k - 1:
        raise ValueError(f"a {ab.k}-abacus carries {ab.k - 1} beads")
    parts, x = [], ab.k - 1
    for pos in range(max(ab.beads, default=-1) + 1):
        if pos in ab.beads:
            x -= 1
        else:
            parts.append(x)
    return Partition(p for p in parts if p)


def bgspart(n: int, k: int) -> Partition:
    if k < 2 or n < 0:
        raise ValueError("need k >= 2 and n >= 0")
    q, r = divmod(n, k - 1)
    return Partition([k - 1] * q + ([r] if r else []))


def _compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def poset_elements(n: int, k: int) -> list[Partition]:
    """Vertices of P(n, k), sorted in reverse lexicographic order."""
    rows = abacus_of_partition(bgspart(n, k), k).rows
    runners = [r for r, a in enumerate(rows) if a is not None]
    total = sum(a for a in rows if a is not None)
    out = []
    # bead moves keep the runner set and the row sum, and reach every such vector
    for vec in _compositions(total, len(runners)):
        new: list[int | None] = [None] * k
        for r, a in zip(runners, vec):
            new[r] = a
        out.append(partition_of_abacus(Abacus.from_rows(new)))
    return sorted(out, reverse=True)


# ---------------------------------------------------------------------------
# cover relation


@dataclass(frozen=True)
class CoverCertificate:
    i: int
    j: int
    a_i: int
    a_j: int
    strip_len: int  # ℓ = j - i
    row_diff: int  # m = a_i - a_j
    cell_a: Cell  # top of λ \ γ, in λ
    cell_a_prime: Cell  # top of γ \ λ, in γ

    def to_json(self) -> dict:
        return {
            "i": self.i, "j": self.j, "a_i": self.a_i, "a_j": self.a_j,
            "ell": self.strip_len, "m": self.row_diff,
            "A": list(self.cell_a), "A_prime": list(self.cell_a_prime),
        }


def _cells(lam: Partition) -> set[Cell]:
    return set(lam.cells())


def _swaps(ab: Abacus) -> Iterator[tuple[int, int, int, int, Abacus]]:
    """Pairs (i, j) meeting the cover conditions, with the covering abacus."""
    k = ab.k
    for i in range(k):
        a_i = ab.extended(i)
        if a_i is None:
            continue
        for j in range(i + 1, i + k):
            a_j = ab.extended(j)
            if a_j is None or not a_i > a_j:
                continue
            blocked = any(
                (a_h := ab.extended(h)) is not None and a_j <= a_h <= a_i for h in range(i + 1, j)
            )
            if blocked:
                continue
            rows = list(ab.rows)
            rows[i] = a_j
            rows[j % k] = a_i + j // k
            if min(a for a in rows if a is not None) < 0:
                continue
            yield i, j, a_i, a_j, Abacus.from_rows(rows)


def _top(cells: set[Cell]) -> Cell:
    return min(cells)


def covers(gamma, lam, k: int) -> CoverCertificate | None:
    """Certificate when ``gamma`` covers ``lam`` in P(n, k), else ``None``."""
    gamma, lam = Partition(gamma), Partition(lam)
    if gamma.size != lam.size or gamma == lam:
        return None
    for i, j, a_i, a_j, up in _swaps(abacus_of_partition(lam, k)):
        if partition_of_abacus(up) == gamma:
            return _certificate(gamma, lam, i, j, a_i, a_j)
    return None


def _certificate(gamma, lam, i, j, a_i, a_j) -> CoverCertificate:
    gone = _cells(lam) - _cells(gamma)
    new = _cells(gamma) - _cells(lam)
    return CoverCertificate(i, j, a_i, a_j, j - i, a_i - a_j, _top(gone), _top(new))


def covers_of(lam, k: int) -> list[tuple[Partition, CoverCertificate]]:
    """Every γ covering ``lam`` with its certificate."""
    lam = Partition(lam)
    out = []
    for i, j, a_i, a_j, up in _swaps(abacus_of_partition(lam, k)):
        gamma = partition_of_abacus(up)
        out.append((gamma, _certificate(gamma, lam, i, j, a_i, a_j)))
    return out


@dataclass
class HasseDiagram:
    n: int
    k: int
    vertices: list[Partition]
    edges: dict[tuple[Partition, Partition], CoverCertificate]  # (γ, λ) with γ covering λ

    def ranks(self) -> dict[Partition, int]:
        """Rank from the minimal elements, checking every maximal chain has one length."""
        below = defaultdict(list)
        for gamma, lam in self.edges:
            below[gamma].append(lam)
        rank: dict[Partition, int] = {}

        def visit(v):
            if v not in rank:
                lows = {visit(u) for u in below[v]}
                if len(lows) > 1:
                    raise ValueError(f"P({self.n},{self.k}) is not graded at {format_partition(v)}")
                rank[v] = lows.pop() + 1 if lows else 0
            return rank[v]

        for v in self.vertices:
            visit(v)
        if len({rank[v] for v in self.vertices if not any(e[1] == v for e in self.edges)}) > 1:
            raise ValueError(f"maximal elements of P({self.n},{self.k}) sit at different ranks")
        return rank

    def to_dot(self) -> str:
        name = {v: format_partition(v) or "0" for v in self.vertices}
        lines = [f'digraph "P({self.n},{self.k})" {{', "  rankdir=BT;"]
        for v in self.vertices:
            lines.append(f'  "{name[v]}";')
        for (gamma, lam), cert in sorted(self.edges.items(), key=lambda e: (e[0][1], e[0][0])):
            lines.append(f'  "{name[lam]}" -> "{name[gamma]}" [label="l={cert.strip_len},m={cert.row_diff}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def hasse_diagram(n: int, k: int) -> HasseDiagram:
    vertices = poset_elements(n, k)
    known = set(vertices)
    edges = {}
    for lam in vertices:
        for gamma, cert in covers_of(lam, k):
            if gamma not in known:
                raise AssertionError(f"cover {format_partition(gamma)} left the vertex set")
            edges[(gamma, lam)] = cert
    return HasseDiagram(n, k, vertices, edges)


# ---------------------------------------------------------------------------
# regions and the cells under a cell


def region_residue(cell: Cell, k: int) -> tuple[int, int]:
    """(ρ, r) with content = kρ + r and 0 <= r < k."""
    row, col = cell
    return divmod(col - row, k)


def unders(cell: Cell, lam, k: int) -> set[Cell]:
    """The cell and those below it in its column lying above the next same-residue diagonal."""
    lam = Partition(lam)
    row, col = cell
    cells = _cells(lam)
    if cell not in cells:
        raise ValueError(f"{cell} is not a cell of {format_partition(lam)}")
    return {(r, col) for r in range(row, row + k) if (r, col) in cells}
