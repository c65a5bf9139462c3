"""The descending chain ``I_1(f^(p-1)) ⊇ I_2(f^(p^2-1)) ⊇ ...``.

The chain stops at the first level ``s`` whose ideal equals the next one;
from there on it is constant. Every generator has degree below ``deg f``, so
the chain lives in a finite-dimensional space of polynomials and the default
cap (that dimension plus one) is never reached on correct arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .frobenius import frobenius_root_ideal
from .ideal import Ideal, ideal_equal
from .poly import Poly, pow_ps_minus_one


@dataclass
class ChainLevel:
    s: int
    ideal: Ideal
    power: Poly = field(repr=False)

    @property
    def max_gen_degree(self) -> int:
        return self.ideal.max_generator_degree()


@dataclass
class ChainReport:
    f: Poly
    levels: list[ChainLevel]
    stabilized_at: int | None
    cap: int
    degrees_ok: bool
    descending_ok: bool

    def level(self, s: int) -> ChainLevel:
        return self.levels[s - 1]

    @property
    def stable_ideal(self) -> Ideal | None:
        if self.stabilized_at is None:
            return None
        return self.level(self.stabilized_at).ideal


def auto_cap(f: Poly) -> int:
    """Dimension of the polynomials of degree < deg f, plus one."""
    d = f.ctx.nvars
    return comb(f.degree - 1 + d, d) + 1


def compute_chain(f: Poly, max_level: int | None = None) -> ChainReport:
    """Compute root ideals level by level until two consecutive ones agree.

    ``max_level=None`` uses :func:`auto_cap`. If the cap runs out first the
    report has ``stabilized_at=None``.
    """
    if f.is_zero() or f.is_constant():
        raise ValueError("f must be a non-constant polynomial")
    cap = auto_cap(f) if max_level is None else max_level
    if cap < 1:
        raise ValueError("max_level must be positive")
    deg = f.degree
    levels: list[ChainLevel] = []
    stabilized_at = None
    power = None
    descending_ok = True
    for s in range(1, cap + 1):
        power = pow_ps_minus_one(f, s, previous=power)
        ideal = frobenius_root_ideal(power, s)
        ideal.groebner()
        levels.append(ChainLevel(s, ideal, power))
        if s > 1:
            prev = levels[-2].ideal
            if not all(prev.contains(g) for g in ideal.groebner()):
                descending_ok = False
            if ideal_equal(prev, ideal):
                stabilized_at = s - 1
                break
    degrees_ok = all(g.degree < deg for lv in levels for g in lv.ideal.gens)
    return ChainReport(f, levels, stabilized_at, cap, degrees_ok, descending_ok)


def stabilization_level(report: ChainReport) -> int | None:
    """The first ``s`` with ``I_s = I_{s+1}``, or None if the cap ran out."""
    return report.stabilized_at
