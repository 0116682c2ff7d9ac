"""Betti numbers of the ideal of ``X_k ∪ Y_{m+1}`` and the ℓ = 1 unitarity test.

``X_k`` is the locus where some ``k`` coordinates agree up to an ℓ-th root
of unity and ``Y_{m+1}`` the locus where some ``m+1`` coordinates vanish.
At ``c0 = 1/k`` and ``d_0 - d_{ℓ-1} + ℓ m c0 = 1`` the ideal is a unitary
``L_c(λ)`` for an explicit lowest weight ``λ``, so its Betti table is the
Ext table of :mod:`cherednik.characters` read with internal degree shifts.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .characters import ExtTable, ext_table
from .core_partitions import EllPartition, Params, Partition, dim_irrep, format_rational

# Reading of the side-condition grid: p runs over 1..ell-1 and m' over 0..m-1.
# With m' = m and p = 1 the defining equation turns the strict inequality into
# an equality, so the wider range would exclude every point of the family.
GRID_READING = "1 <= p <= ell-1, 0 <= m' <= m-1"


@dataclass(frozen=True)
class ArrangementSpec:
    ell: int
    n: int
    k: int
    m: int

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("ell must be at least 1")
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if not 2 <= self.k <= self.n:
            raise ValueError(f"need 2 <= k <= n, got k={self.k}, n={self.n}")
        if not 0 <= self.m <= self.k - 1:
            raise ValueError(f"need 0 <= m <= k-1, got m={self.m}")
        if self.ell == 1 and self.m > 0:
            raise ValueError("with ell = 1 there is no second component to hold the first m columns")


def lowest_weight(spec: ArrangementSpec) -> EllPartition:
    q, r = divmod(spec.n, spec.k - 1)
    full = Partition([spec.k - 1] * q + ([r] if r else []))
    cols = full.conjugate()
    left = Partition(cols[: spec.m]).conjugate()
    right = Partition(cols[spec.m :]).conjugate()
    if spec.ell == 1:
        return EllPartition([right])
    comps = [Partition()] * spec.ell
    comps[0], comps[-1] = left, right
    return EllPartition(comps)


def inequality_grid(spec: ArrangementSpec) -> list[tuple[int, int]]:
    return [(p, mm) for p in range(1, spec.ell) for mm in range(spec.m)]


def violated_inequalities(spec: ArrangementSpec, params: Params) -> list[tuple[int, int]]:
    """Grid pairs (p, m') where d_0 - d_{-p} + ell m' c0 < p fails."""
    return [
        (p, mm)
        for p, mm in inequality_grid(spec)
        if not params.d_at(0) - params.d_at(-p) + spec.ell * mm * params.c0 < p
    ]


def unitarity_params(spec: ArrangementSpec) -> Params:
    """c0 = 1/k and d solving the defining equation, with interior d's equal."""
    c0 = Fraction(1, spec.k)
    if spec.ell == 1:
        return Params(c0, (Fraction(0),))
    gap = 1 - spec.ell * spec.m * c0  # d_0 - d_{ell-1}
    tries = [Fraction(0)] + [Fraction(s, t * spec.k) for t in (2, 3, 5, 7) for s in (1, -1)]
    for t in tries:
        # 2 d_0 - gap + (ell-2) t = 0
        d0 = (gap - (spec.ell - 2) * t) / 2
        d = [d0] + [t] * (spec.ell - 2) + [d0 - gap]
        params = Params(c0, tuple(d))
        if not violated_inequalities(spec, params):
            return params
    raise ValueError(f"no tried d satisfies the side conditions for {spec}")


def unitary_ell1(lam, k: int) -> bool:
    """Hook from the lowest-content box to the top removable box has length <= k."""
    lam = Partition(lam)
    if not lam:
        return True
    return lam[0] + len(lam) - 1 <= k


@dataclass
class BettiTable:
    spec: ArrangementSpec
    lam: EllPartition
    params: Params
    ext: ExtTable

    def rows(self) -> list[dict]:
        out = []
        for (mu, i), dim in sorted(self.ext.entries.items(), key=lambda kv: (kv[0][1], self.ext.shift(kv[0][0]), kv[0][0].to_json())):
            out.append(
                {
                    "mu": mu.to_json(),
                    "i": i,
                    "dim": dim,
                    "shift": format_rational(self.ext.shift(mu)),
                    "rank": dim * dim_irrep(mu),
                }
            )
        return out

    def totals(self) -> dict[tuple[int, Fraction], int]:
        """(homological degree, internal shift) -> rank of that free summand."""
        out: dict[tuple[int, Fraction], int] = defaultdict(int)
        for (mu, i), dim in self.ext.entries.items():
            out[(i, self.ext.shift(mu))] += dim * dim_irrep(mu)
        return dict(out)

    def to_json(self) -> dict:
        return {
            "spec": {"ell": self.spec.ell, "n": self.spec.n, "k": self.spec.k, "m": self.spec.m},
            "lambda": self.lam.to_json(),
            "params": self.params.to_json(),
            "grid_reading": GRID_READING,
            "entries": self.rows(),
            "totals": [
                {"i": i, "shift": format_rational(s), "rank": r}
                for (i, s), r in sorted(self.totals().items())
            ],
        }

    def text(self) -> str:
        totals = self.totals()
        shifts = sorted({s for _, s in totals})
        degrees = sorted({i for i, _ in totals})
        head = ["shift\\i"] + [str(i) for i in degrees]
        body = [[format_rational(s)] + [str(totals.get((i, s), "-")) for i in degrees] for s in shifts]
        widths = [max(len(r[c]) for r in [head] + body) for c in range(len(head))]
        return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in [head] + body)


def betti_table(spec: ArrangementSpec) -> BettiTable:
    lam = lowest_weight(spec)
    params = unitarity_params(spec)
    return BettiTable(spec, lam, params, ext_table(lam, params))
