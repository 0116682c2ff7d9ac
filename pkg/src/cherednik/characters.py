"""Graded characters and Ext dimensions from admissible fillings.

The degree ``d`` layer of the character is the sum over admissible ``Q`` with
``|Q| = d`` of the LR expansion of ``s_c(Q)``.  The Ext dimension against
``Δ_c(μ)`` in homological degree ``i`` pairs the same expansions with the
exterior-power multiplicities, restricted to ``|Q| = ct_c(λ) - ct_c(μ) - i``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .core_partitions import (
    EllPartition,
    Params,
    charged_content_sum,
    dim_irrep,
    ell_partitions_of,
    format_rational,
)
from .lr import exterior_tensor_mult, lr_expansion
from .tab_c import FillingQ, shape_s_c, tab_c


@dataclass
class GradedCharacter:
    lam: EllPartition
    params: Params
    base: Fraction  # ct_c(λ), the degree of the lowest layer
    layers: dict[int, dict[EllPartition, int]] = field(default_factory=dict)

    def layer_dimension(self, degree: int) -> int:
        return sum(m * dim_irrep(mu) for mu, m in self.layers.get(degree, {}).items())

    def rows(self) -> list[dict]:
        return [
            {"degree": d, "mu": mu.to_json(), "mult": m}
            for d in sorted(self.layers)
            for mu, m in sorted(self.layers[d].items(), key=lambda kv: kv[0].to_json())
        ]


@dataclass
class ExtTable:
    lam: EllPartition
    params: Params
    entries: dict[tuple[EllPartition, int], int] = field(default_factory=dict)

    def shift(self, mu: EllPartition) -> Fraction:
        """Internal degree ct_c(λ) - ct_c(μ) of the entries for ``mu``."""
        return charged_content_sum(self.lam, self.params) - charged_content_sum(mu, self.params)

    def rows(self) -> list[dict]:
        return [
            {"mu": mu.to_json(), "i": i, "dim": dim}
            for (mu, i), dim in sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[0][0].to_json()))
        ]


class _Layers:
    """Admissible fillings of λ grouped by degree, with cached LR expansions."""

    def __init__(self, lam: EllPartition, p: Params, max_degree: int):
        self.lam, self.p = lam, p
        self.by_degree: dict[int, list[FillingQ]] = defaultdict(list)
        for q in tab_c(lam, p, max_degree):
            self.by_degree[q.degree].append(q)

    def expansions(self, degree: int) -> list[dict[EllPartition, int]]:
        return [_expansion(q, self.p) for q in self.by_degree.get(degree, [])]


@lru_cache(maxsize=None)
def _expansion(q: FillingQ, p: Params) -> dict[EllPartition, int]:
    return lr_expansion(shape_s_c(q, p))


def graded_character(lam, p: Params, max_degree: int) -> GradedCharacter:
    """Layers 0..max_degree of ch L_c(λ); t-diagonalizability is the caller's claim."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    lam = EllPartition(lam)
    layers = _Layers(lam, p, max_degree)
    char = GradedCharacter(lam, p, charged_content_sum(lam, p))
    for d in range(max_degree + 1):
        total: dict[EllPartition, int] = defaultdict(int)
        for exp in layers.expansions(d):
            for mu, c in exp.items():
                total[mu] += c
        if total:
            char.layers[d] = dict(total)
    return char


def _targets(lam: EllPartition, mu: EllPartition, p: Params) -> dict[int, int]:
    """Homological degree -> required |Q|, for the degrees where that is a natural number."""
    gap = charged_content_sum(lam, p) - charged_content_sum(mu, p)
    if gap.denominator != 1:
        return {}
    return {i: int(gap) - i for i in range(lam.size + 1) if int(gap) - i >= 0}


def candidate_mus(lam, p: Params) -> list[EllPartition]:
    """ℓ-partitions μ with ct_c(λ) - ct_c(μ) a non-negative integer, down the ladder."""
    lam = EllPartition(lam)
    top = charged_content_sum(lam, p)
    keyed = []
    for mu in ell_partitions_of(lam.ell, lam.size):
        gap = top - charged_content_sum(mu, p)
        if gap.denominator == 1 and gap >= 0:
            keyed.append((gap, mu.to_json(), mu))
    return [mu for _, _, mu in sorted(keyed)]


def _ext_dims(lam, mu, layers: _Layers) -> dict[int, int]:
    out = {}
    for i, degree in _targets(lam, mu, layers.p).items():
        dim = sum(
            c * exterior_tensor_mult(mu, nu, i)
            for exp in layers.expansions(degree)
            for nu, c in exp.items()
        )
        if dim:
            out[i] = dim
    return out


def ext_dims(lam, mu, p: Params) -> dict[int, int]:
    """Nonzero dim Ext^i(Δ_c(μ), L_c(λ)); unitarity of L_c(λ) is the caller's claim."""
    lam, mu = EllPartition(lam), EllPartition(mu)
    if lam.ell != mu.ell or lam.size != mu.size:
        raise ValueError("λ and μ must be ℓ-partitions of the same n")
    targets = _targets(lam, mu, p)
    if not targets:
        return {}
    return _ext_dims(lam, mu, _Layers(lam, p, max(targets.values())))


def ext_table(lam, p: Params) -> ExtTable:
    lam = EllPartition(lam)
    mus = candidate_mus(lam, p)
    top = charged_content_sum(lam, p)
    deepest = max(int(top - charged_content_sum(mu, p)) for mu in mus)
    layers = _Layers(lam, p, deepest)
    table = ExtTable(lam, p)
    for mu in mus:
        for i, dim in _ext_dims(lam, mu, layers).items():
            table.entries[(mu, i)] = dim
    return table


def report(lam, p: Params, character_degree: int) -> dict:
    """JSON-ready bundle of the Ext table and the character up to a degree."""
    lam = EllPartition(lam)
    return {
        "lambda": lam.to_json(),
        "params": p.to_json(),
        "charged_content": format_rational(charged_content_sum(lam, p)),
        "ext": ext_table(lam, p).rows(),
        "character": graded_character(lam, p, character_degree).rows(),
    }
