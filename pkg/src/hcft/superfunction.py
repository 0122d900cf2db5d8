"""Smooth superfunctions on the Heisenberg-Clifford supergroup.

A superfunction ``F`` is stored through its components ``f_I = F(a_I)``, one
scalar function per subset ``I`` of the odd generators. Values on the rest of
the PBW basis are derived: the central element ``z`` acts as ``d/dx``, so

    F(z^k a_I) = f_I^(k).

``f (x) xi^I`` denotes the superfunction whose only component is ``f_I = f``.
"""
from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionError
from .scalar import GaussPoly, GridFn, ScalarFn, default_grid, is_scalar_fn
from .superalgebra import (
    MAX_N,
    PBWElement,
    PBWMonomial,
    antipode_sign,
    mask_of,
    members_of,
    merge_sign,
)


def _key_to_mask(key, n: int) -> int:
    if isinstance(key, int):
        mask = key
    elif isinstance(key, str):
        inner = key.strip().strip("{}")
        mask = mask_of(int(s) for s in inner.split(",") if s.strip())
    else:
        mask = mask_of(key)
    if mask < 0 or mask >> n:
        raise ValueError(f"component {key!r} outside 1..{n}")
    return mask


class SuperFunction:
    """Component map ``I -> f_I``; absent components are zero. Immutable."""

    __slots__ = ("n", "comps")

    def __init__(self, n: int, comps: Mapping | None = None):
        if not 1 <= n <= MAX_N:
            raise DimensionError(f"n must lie in 1..{MAX_N}, got {n}")
        clean: dict[int, ScalarFn] = {}
        for key, fn in (comps or {}).items():
            if not is_scalar_fn(fn):
                raise TypeError(f"component {key!r} is not a scalar function")
            mask = _key_to_mask(key, n)
            if mask in clean:
                fn = clean[mask] + fn
            if not fn.is_zero():
                clean[mask] = fn
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "comps", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("SuperFunction is immutable")

    @classmethod
    def basis(cls, n: int, members: Iterable[int] | int, f: ScalarFn) -> "SuperFunction":
        """``f (x) xi^I``."""
        mask = members if isinstance(members, int) else mask_of(members)
        return cls(n, {mask: f})

    @classmethod
    def zero(cls, n: int) -> "SuperFunction":
        return cls(n)

    def __repr__(self):
        keys = ", ".join("{" + ",".join(map(str, members_of(m))) + "}" for m in self.comps)
        return f"SuperFunction(n={self.n}, components=[{keys}])"

    def component(self, mask: int) -> ScalarFn:
        fn = self.comps.get(mask)
        if fn is not None:
            return fn
        return self._zero_fn()

    def _zero_fn(self) -> ScalarFn:
        for fn in self.comps.values():
            if isinstance(fn, GridFn):
                return fn.scale(0)
        return GaussPoly()

    @property
    def backend(self) -> str:
        kinds = {fn.backend for fn in self.comps.values()}
        if not kinds:
            return "gausspoly"
        return kinds.pop() if len(kinds) == 1 else "mixed"

    @property
    def parity(self) -> int | None:
        """0 or 1 when homogeneous, ``None`` when mixed; zero counts as even."""
        ps = {m.bit_count() & 1 for m in self.comps}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def parity_part(self, p: int) -> "SuperFunction":
        return SuperFunction(self.n, {m: f for m, f in self.comps.items() if (m.bit_count() & 1) == p})

    def is_zero(self) -> bool:
        return not self.comps

    # linear structure
    def _same_n(self, other: "SuperFunction"):
        if self.n != other.n:
            raise DimensionError(f"ambient dimensions differ: {self.n} vs {other.n}")

    def __add__(self, other: "SuperFunction") -> "SuperFunction":
        if not isinstance(other, SuperFunction):
            return NotImplemented
        self._same_n(other)
        out = dict(self.comps)
        for m, f in other.comps.items():
            out[m] = out[m] + f if m in out else f
        return SuperFunction(self.n, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SuperFunction":
        return SuperFunction(self.n, {m: f.scale(c) for m, f in self.comps.items()})

    def __mul__(self, other):
        if isinstance(other, SuperFunction):
            return product(self, other)
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        return NotImplemented

    def map(self, fn) -> "SuperFunction":
        """Apply a scalar-level map to every component."""
        return SuperFunction(self.n, {m: fn(f) for m, f in self.comps.items()})

    def to_grid(self, grid: tuple[float, float, int] | None = None) -> "SuperFunction":
        grid = grid or default_grid()
        return self.map(lambda f: f.to_grid(grid) if isinstance(f, GaussPoly) else f)

    def max_abs_diff(self, other: "SuperFunction", x=None) -> float:
        """Largest componentwise deviation, sampled at ``x``."""
        self._same_n(other)
        if x is None:
            x = np.linspace(-6, 6, 241)
        err = 0.0
        for m in set(self.comps) | set(other.comps):
            d = np.abs(self.component(m)(x) - other.component(m)(x))
            err = max(err, float(d.max(initial=0.0)))
        return err


# --------------------------------------------------------------------------
# operations


def evaluate(F: SuperFunction, u: PBWElement) -> ScalarFn:
    """``F(u)`` as a scalar function; ``z`` acts by ``d/dx``."""
    if F.n != u.n:
        raise DimensionError(f"ambient dimensions differ: {F.n} vs {u.n}")
    acc = None
    for (k, mask), c in u.items():
        f = F.comps.get(mask)
        if f is None:
            continue
        term = f.derivative(k).scale(c) if k else f.scale(c)
        acc = term if acc is None else acc + term
    return F._zero_fn() if acc is None else acc


def product_sign(i_mask: int, j_mask: int) -> int:
    """Sign of ``f_I g_J`` in ``(F.G)(a_{I u J})`` for disjoint ``I, J``."""
    s = merge_sign(i_mask, j_mask)
    if (i_mask.bit_count() & 1) and (j_mask.bit_count() & 1):
        s = -s
    return s


def product(F: SuperFunction, G: SuperFunction) -> SuperFunction:
    """Pointwise superalgebra product ``mu o (F (x) G) o Delta``.

    In components ``(F.G)_K = sum_{I u J = K} sgn(I,J) (-1)^{|I||J|} f_I g_J``.
    """
    F._same_n(G)
    out: dict[int, ScalarFn] = {}
    for i, f in F.comps.items():
        for j, g in G.comps.items():
            if i & j:
                continue
            term = (f * g).scale(product_sign(i, j))
            k = i | j
            out[k] = out[k] + term if k in out else term
    return SuperFunction(F.n, out)


def left_action(u: PBWElement, x: float, F: SuperFunction) -> SuperFunction:
    """``L_{u;x} F``: ``(L_{u;x}F)(v; y) = (-1)^{|u||F|} F(S(u) v; y - x)``.

    Mixed-parity ``u`` and ``F`` are handled bilinearly over parity parts.
    """
    if F.n != u.n:
        raise DimensionError(f"ambient dimensions differ: {F.n} vs {u.n}")
    n = F.n
    out: dict[int, ScalarFn] = {}
    for (k, i_mask), c in u.items():
        s_u = antipode_sign(PBWMonomial(k, i_mask))
        for j_mask in range(1 << n):
            src = i_mask ^ j_mask
            f = F.comps.get(src)
            if f is None:
                continue
            # parity of the F-part hit here is |src|
            sign = s_u * merge_sign(i_mask, j_mask)
            if (i_mask.bit_count() & 1) and (src.bit_count() & 1):
                sign = -sign
            order = k + (i_mask & j_mask).bit_count()
            term = f.derivative(order) if order else f
            term = term.scale(sign * c)
            out[j_mask] = out[j_mask] + term if j_mask in out else term
    res = SuperFunction(n, out)
    if x:
        res = res.map(lambda f: f.translate(x))
    return res


def translate(F: SuperFunction, x: float) -> SuperFunction:
    """``L_x F``."""
    return F.map(lambda f: f.translate(x))


def involution(F: SuperFunction) -> SuperFunction:
    """``i^*F``: ``(i^*F)(u; x) = F(S(u); -x)``, so ``(i^*F)_I = (-1)^{|I|} f_I(-x)``."""
    return SuperFunction(
        F.n, {m: f.reflect().scale(-1 if m.bit_count() & 1 else 1) for m, f in F.comps.items()}
    )


def schwartz_seminorm(F: SuperFunction, j: int, u: PBWElement) -> float:
    """``sup_x |x^j (L_u F)(1; x)|``; ``inf`` for non-decaying grid data."""
    g = left_action(u, 0.0, F).component(0)
    if isinstance(g, GridFn):
        peak = np.abs(g.values).max(initial=0.0)
        edge = max(abs(g.values[0]), abs(g.values[-1]))
        if peak and edge > 1e-10 * peak:
            return float("inf")
    return g.sup_norm(j)


__all__ = [
    "SuperFunction", "evaluate", "product", "product_sign", "left_action", "translate",
    "involution", "schwartz_seminorm",
]
