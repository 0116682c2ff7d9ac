"""Littlewood-Richardson coefficients.

Two independent routes are provided and must agree:

* :func:`lr_coeff_skew` counts LR tableaux (column-strict fillings whose
  right-to-left row reading word is a lattice word);
* :func:`lr_oracle` expands the skew Schur function in monomials through
  chains of horizontal strips and peels off Schur functions by unitriangularity
  of the Kostka matrix.

The multipartition versions factor over species.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod

from .core_partitions import (
    EllPartition,
    Partition,
    SkewShape,
    ell_partitions_of,
    normalize_skew,
    partitions_of,
    transpose,
)


@lru_cache(maxsize=4096)
def skew_pair(shape: SkewShape, species: int = 0) -> tuple[Partition, Partition]:
    """Write the normalized single-species part of ``shape`` as outer/inner."""
    rows = normalize_skew(shape.species_part(species)).rows(species)
    outer, inner = [], []
    for cols in rows:
        if cols != list(range(cols[0], cols[-1] + 1)):
            raise ValueError(f"row {cols} is not an interval")
        outer.append(cols[-1])
        inner.append(cols[0] - 1)
    return Partition(outer), Partition(inner)


# ---------------------------------------------------------------------------
# LR tableau enumeration


@lru_cache(maxsize=None)
def _lr_count(outer: Partition, inner: Partition, weight: Partition) -> int:
    cells = []
    for r in range(len(outer)):
        start = inner[r] if r < len(inner) else 0
        for c in range(outer[r], start, -1):
            cells.append((r, c))
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(weight) + 2)
    total = 0

    def place(idx: int):
        nonlocal total
        if idx == len(cells):
            total += 1
            return
        r, c = cells[idx]
        right = filling.get((r, c + 1))
        above = filling.get((r - 1, c))
        low = 1 if above is None else above + 1
        high = len(weight) if right is None else min(right, len(weight))
        for v in range(low, high + 1):
            if counts[v] >= weight[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            place(idx + 1)
            del filling[(r, c)]
            counts[v] -= 1

    place(0)
    return total


def lr_coeff_skew(shape: SkewShape, weight) -> int:
    """Number of LR tableaux of the given weight on a single-species skew shape."""
    weight = Partition(weight)
    if shape.size != weight.size:
        return 0
    if shape.size == 0:
        return 1
    species = {b.species for b in shape.boxes}
    if len(species) != 1:
        raise ValueError("lr_coeff_skew expects a single-species shape")
    outer, inner = skew_pair(shape, species.pop())
    return _lr_count(outer, inner, weight)


def lr_coeff(lam, mu, nu) -> int:
    """Classical c^lam_{mu nu}, zero unless mu fits inside lam."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if lam.size != mu.size + nu.size or not lam.contains(mu):
        return 0
    return _lr_count(lam, mu, nu) if nu.size else 1


def cyclotomic_lr(shape: SkewShape, mu: EllPartition) -> int:
    """Product over species of the classical coefficients."""
    mu = EllPartition(mu)
    if mu.ell != shape.ell or shape.species_sizes() != tuple(c.size for c in mu):
        return 0
    return prod(
        lr_coeff_skew(shape.species_part(j), mu[j]) if mu[j] else 1 for j in range(shape.ell)
    )


def cyclotomic_lr_triple(lam, mu, nu) -> int:
    """Multipartition c^lam_{mu nu} as a product of classical numbers."""
    return prod(lr_coeff(a, b, c) for a, b, c in zip(lam, mu, nu))


def lr_expansion(shape: SkewShape) -> dict[EllPartition, int]:
    """All nonzero c^D_mu for a multispecies skew shape D."""
    sizes = shape.species_sizes()
    per_species = []
    for j, n in enumerate(sizes):
        part = shape.species_part(j)
        per_species.append(
            [(nu, lr_coeff_skew(part, nu) if n else 1) for nu in partitions_of(n)]
        )
    out: dict[EllPartition, int] = {}

    def combine(j, chosen, mult):
        if j == len(per_species):
            out[EllPartition(chosen)] = mult
            return
        for nu, c in per_species[j]:
            if c:
                combine(j + 1, chosen + [nu], mult * c)

    combine(0, [], 1)
    return out


# ---------------------------------------------------------------------------
# monomial-expansion oracle


@lru_cache(maxsize=None)
def _horizontal_strip_chains(outer: Partition, inner: Partition, content: tuple[int, ...]) -> int:
    """Column-strict fillings of outer/inner with the given content.

    Letter ``i`` occupies a horizontal strip added after letters ``< i``.
    """
    if not content:
        return 1 if outer == inner else 0
    size = content[0]
    total = 0
    for grown in _add_horizontal_strips(inner, outer, size):
        total += _horizontal_strip_chains(outer, grown, content[1:])
    return total


def _add_horizontal_strips(inner: Partition, outer: Partition, size: int):
    """Partitions ``inner ⊆ g ⊆ outer`` with ``g/inner`` a horizontal strip of ``size``."""
    rows = len(outer)
    base = list(inner) + [0] * (rows - len(inner))

    def grow(r, left, acc):
        if r == rows:
            if left == 0:
                yield Partition(acc)
            return
        # a horizontal strip never puts two boxes in a column: row r may only
        # reach the old length of row r-1
        cap = outer[r] if r == 0 else min(outer[r], base[r - 1])
        for extra in range(min(cap - base[r], left), -1, -1):
            yield from grow(r + 1, left - extra, acc + [base[r] + extra])

    yield from grow(0, size, [])


def kostka(nu: Partition, alpha: tuple[int, ...]) -> int:
    return _horizontal_strip_chains(Partition(nu), Partition(), tuple(alpha))


def lr_oracle(shape: SkewShape, weight) -> int:
    """c^D_weight from the monomial expansion of the skew Schur function."""
    weight = Partition(weight)
    n = shape.size
    if n != weight.size:
        return 0
    if n == 0:
        return 1
    species = {b.species for b in shape.boxes}
    if len(species) != 1:
        raise ValueError("lr_oracle expects a single-species shape")
    outer, inner = skew_pair(shape, species.pop())
    return _schur_coefficients(outer, inner).get(weight, 0)


@lru_cache(maxsize=None)
def _schur_coefficients(outer: Partition, inner: Partition) -> dict[Partition, int]:
    n = outer.size - inner.size
    # partitions_of lists in decreasing lex order, a linear extension of dominance
    coeffs: dict[Partition, int] = {}
    for alpha in partitions_of(n):
        mono = _horizontal_strip_chains(outer, inner, tuple(alpha))
        residual = mono - sum(c * kostka(nu, tuple(alpha)) for nu, c in coeffs.items())
        if residual:
            coeffs[alpha] = residual
    return coeffs


# ---------------------------------------------------------------------------
# tensoring with exterior powers


def exterior_tensor_mult(mu: EllPartition, nu: EllPartition, i: int) -> int:
    """dim Hom(S^mu, S^nu ⊗ Λ^i V*) as a sum of products of LR numbers."""
    mu, nu = EllPartition(mu), EllPartition(nu)
    n = nu.size
    if mu.size != n or mu.ell != nu.ell:
        raise ValueError("mu and nu must be ell-partitions of the same n")
    if not 0 <= i <= n:
        raise ValueError(f"homological degree {i} outside [0, {n}]")
    ell = nu.ell
    total = 0
    for eta in ell_partitions_of(ell, n - i):
        if not all(a.contains(b) and c.contains(b) for a, b, c in zip(nu, eta, mu)):
            continue
        for chi in ell_partitions_of(ell, i):
            left = cyclotomic_lr_triple(nu, eta, chi)
            if left:
                total += left * cyclotomic_lr_triple(mu, eta, transpose(chi))
    return total
