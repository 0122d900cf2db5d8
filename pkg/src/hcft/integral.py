"""Berezin integral, the invariant pairing and point-supported distributions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import DimensionError, OrderError
from .scalar import GridFn, MAX_GRID_ORDER
from .superalgebra import MAX_N, delta_gamma, full_mask, mask_of, members_of
from .superfunction import SuperFunction, product


def berezin_integral(F: SuperFunction) -> complex:
    """``int F = int_R F(gamma; x) dx``: integrate the top component."""
    top = F.comps.get(full_mask(F.n))
    if top is None:
        return 0j
    return top.integral()


def pairing(F: SuperFunction, G: SuperFunction) -> complex:
    """Invariant pairing ``<F, G> = int (F.G)``.

    Evaluated through the Sweedler expansion of ``Delta(gamma)``:
    ``sum_I (-1)^{|G||a_I|} int F(a_I) G(*a_I)``.
    """
    if F.n != G.n:
        raise DimensionError(f"ambient dimensions differ: {F.n} vs {G.n}")
    total = 0j
    for left, (sign, right) in delta_gamma(F.n):
        f = F.comps.get(left.mask)
        g = G.comps.get(right.mask)
        if f is None or g is None:
            continue
        # G is nonzero on a_{I^c} only through its part of parity |I^c|
        koszul = -1 if (right.mask.bit_count() & 1) and (left.mask.bit_count() & 1) else 1
        total += koszul * sign * (f * g).integral()
    return complex(total)


def pairing_via_product(F: SuperFunction, G: SuperFunction) -> complex:
    return berezin_integral(product(F, G))


@dataclass(frozen=True)
class PointMass:
    """``coeff * delta_{x0}^{(order)}`` with ``delta^{(j)}(phi) = (-1)^j phi^{(j)}(x0)``."""

    order: int
    x0: float
    coeff: complex

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("distribution order must be non-negative")
        object.__setattr__(self, "x0", float(self.x0))
        object.__setattr__(self, "coeff", complex(self.coeff))


class CompactDistribution:
    """Point-supported distribution, stored per component.

    ``<U, Phi> = sum_I U_I(Phi(a_I))``.
    """

    __slots__ = ("n", "comps")

    def __init__(self, n: int, comps: Mapping | None = None):
        if not 1 <= n <= MAX_N:
            raise DimensionError(f"n must lie in 1..{MAX_N}, got {n}")
        clean: dict[int, tuple[PointMass, ...]] = {}
        for key, masses in (comps or {}).items():
            if isinstance(key, int):
                mask = key
            elif isinstance(key, str):
                mask = mask_of(int(s) for s in key.strip("{} ").split(",") if s.strip())
            else:
                mask = mask_of(key)
            if mask >> n:
                raise ValueError(f"component {key!r} outside 1..{n}")
            ms = tuple(m if isinstance(m, PointMass) else PointMass(*m) for m in masses)
            ms = tuple(m for m in ms if m.coeff != 0)
            if ms:
                clean[mask] = clean.get(mask, ()) + ms
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "comps", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("CompactDistribution is immutable")

    @classmethod
    def delta_identity(cls, n: int) -> "CompactDistribution":
        """``Phi -> Phi(1; 0)``."""
        return cls(n, {0: [PointMass(0, 0.0, 1)]})

    def __repr__(self):
        keys = ", ".join("{" + ",".join(map(str, members_of(m))) + "}" for m in self.comps)
        return f"CompactDistribution(n={self.n}, components=[{keys}])"

    @property
    def max_order(self) -> int:
        return max((m.order for ms in self.comps.values() for m in ms), default=0)

    def support(self) -> tuple[float, float]:
        xs = [m.x0 for ms in self.comps.values() for m in ms]
        return (min(xs), max(xs)) if xs else (0.0, 0.0)


def apply_point_mass(m: PointMass, phi) -> complex:
    if isinstance(phi, GridFn) and m.order > MAX_GRID_ORDER:
        raise OrderError(f"order {m.order} exceeds the grid differentiation limit {MAX_GRID_ORDER}")
    d = phi.derivative(m.order) if m.order else phi
    val = complex(np.asarray(d(np.array([m.x0])))[0])
    return m.coeff * (-1) ** m.order * val


def dist_pair(U: CompactDistribution, Phi: SuperFunction) -> complex:
    """``<U, Phi> = sum_I U_I(Phi(a_I))``."""
    if U.n != Phi.n:
        raise DimensionError(f"ambient dimensions differ: {U.n} vs {Phi.n}")
    total = 0j
    for mask, masses in U.comps.items():
        phi = Phi.comps.get(mask)
        if phi is None:
            continue
        for m in masses:
            total += apply_point_mass(m, phi)
    return total
