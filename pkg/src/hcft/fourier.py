"""Matrix-valued Fourier transform on the Heisenberg-Clifford supergroup.

The transform of ``F`` is ``Fhat(zeta) = <F, pi_{-zeta}>``, which expands as

    Fhat(zeta) = sum_I fhat_I(zeta) dpi_{-zeta}(*a_I).

A :class:`FourierImage` stores such an expansion as scalar coefficient
functions ``phi_m`` against the basis ``dpi_{-zeta}(a_m)``, so it can be
evaluated at any real or complex ``zeta``.

Components are read back with

    A(u; zeta) = <A(zeta) | dpi_{-zeta}(alpha^n u)> (-2 zeta)^{-[n]}

where ``alpha`` is the parity automorphism (only active for odd ``n``).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionError, SingularPointError
from .integral import CompactDistribution
from .scalar import GaussPoly, GridFn, inverse_fourier_samples
from .spinrep import (
    SpinSpec,
    HMatrix,
    bracket,
    h_pairing_entries,
    monomial_stack,
    trace_T_entries,
)
from .superalgebra import PBWElement, coproduct, full_mask, hodge_star, members_of
from .superfunction import SuperFunction

_SQ = np.exp(1j * np.pi / 4)


def _as_array(zeta):
    return np.asarray(zeta, dtype=complex)


def dpi_basis(n: int, zeta) -> np.ndarray:
    """``dpi_zeta(a_m)`` for every mask ``m``: ``(..., 2^n, d, d)``."""
    z = _as_array(zeta)
    mats = monomial_stack(n, z)
    phase = _SQ ** np.array([m.bit_count() for m in range(1 << n)])
    return mats * phase[:, None, None]


def _parity_twist(n: int) -> np.ndarray:
    """Signs of the parity automorphism on masks, applied for odd ``n`` only."""
    if n % 2 == 0:
        return np.ones(1 << n)
    return np.array([-1.0 if m.bit_count() & 1 else 1.0 for m in range(1 << n)])


@dataclass(frozen=True, eq=False)
class FourierImage:
    """``zeta -> sum_m phi_m(zeta) dpi_{-zeta}(a_m)``.

    ``coeffs`` maps masks to ``GaussPoly`` (closed form) or to callables of
    ``zeta``. ``grid`` records ``(x0, dx, M)`` for sampled images.
    """

    n: int
    coeffs: Mapping[int, object]
    provenance: str = "closed-form"
    grid: tuple[float, float, int] | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def spec(self) -> SpinSpec:
        return SpinSpec(self.n)

    def coefficient_array(self, zeta) -> np.ndarray:
        z = _as_array(zeta)
        out = np.zeros(z.shape + (1 << self.n,), dtype=complex)
        for m, phi in self.coeffs.items():
            out[..., m] = phi(z)
        return out

    def __call__(self, zeta) -> np.ndarray:
        """Matrix entries at ``zeta``; batched over array input."""
        z = _as_array(zeta)
        basis = dpi_basis(self.n, -z)
        return np.einsum("...m,...mab->...ab", self.coefficient_array(z), basis)

    def at(self, zeta: complex) -> HMatrix:
        return HMatrix(self.spec, -complex(zeta), self(complex(zeta)))

    def __add__(self, other: "FourierImage") -> "FourierImage":
        if self.n != other.n:
            raise DimensionError("images over different n")
        keys = set(self.coeffs) | set(other.coeffs)
        out = {}
        for m in keys:
            a, b = self.coeffs.get(m), other.coeffs.get(m)
            if a is None or b is None:
                out[m] = a if b is None else b
            elif isinstance(a, GaussPoly) and isinstance(b, GaussPoly):
                out[m] = a + b
            else:
                out[m] = (lambda z, a=a, b=b: a(z) + b(z))
        prov = self.provenance if self.provenance == other.provenance else "mixed"
        return FourierImage(self.n, out, prov, self.grid or other.grid)


def _scalar_ft(f):
    if isinstance(f, GaussPoly):
        return f.fourier()
    return f.fourier_at


def transform(F: SuperFunction) -> FourierImage:
    """``Fhat(zeta) = sum_I fhat_I(zeta) dpi_{-zeta}(*a_I)``."""
    coeffs: dict[int, object] = {}
    grids = []
    for mask, f in F.comps.items():
        sign, mono = hodge_star(mask, F.n)
        ft = _scalar_ft(f)
        if isinstance(ft, GaussPoly):
            coeffs[mono.mask] = ft.scale(sign)
        else:
            coeffs[mono.mask] = (lambda z, ft=ft, s=sign: s * ft(z))
            grids.append((f.x0, f.dx, f.size))
    prov = "sampled" if grids else "closed-form"
    grid = None
    if grids:
        x0 = min(g[0] for g in grids)
        dx = grids[0][1]
        x1 = max(g[0] + g[1] * g[2] for g in grids)
        grid = (x0, dx, int(round((x1 - x0) / dx)))
    return FourierImage(F.n, coeffs, prov, grid)


def transform_direct(F: SuperFunction, zeta) -> np.ndarray:
    """``<F, pi_{-zeta}>`` from the generic coproduct of ``gamma``.

    Independent of :func:`hodge_star`: expands ``Delta(gamma)`` by graded
    tensor multiplication and sums ``int F(g1; x) pi_{-zeta}(g2; x) dx``.
    """
    n = F.n
    z = _as_array(zeta)
    gam = PBWElement.from_mask(n, full_mask(n))
    basis = dpi_basis(n, -z)
    out = np.zeros(basis.shape[:-3] + basis.shape[-2:], dtype=complex)
    for (g1, g2), c in coproduct(gam).items():
        f = F.comps.get(g1.mask)
        if f is None:
            continue
        # pi is even, so no Koszul sign; z-powers never occur in Delta(gamma)
        fhat = f.fourier()(z) if isinstance(f, GaussPoly) else f.fourier_at(z)
        out += c * fhat[..., None, None] * basis[..., g2.mask, :, :]
    return out


def _check_real_nonzero(zeta) -> np.ndarray:
    z = np.asarray(zeta)
    if np.iscomplexobj(z):
        if np.any(np.imag(z) != 0):
            raise ValueError("component extraction needs real zeta")
        z = np.real(z)
    z = z.astype(float)
    if np.any(z == 0):
        raise SingularPointError("A(u; zeta) is undefined at zeta = 0")
    return z


def component_of_entries(n: int, entries: np.ndarray, u: PBWElement, zeta) -> np.ndarray:
    """``<A | dpi_{-zeta}(alpha^n u)> (-2 zeta)^{-[n]}`` for batched entries."""
    z = _check_real_nonzero(zeta)
    twist = _parity_twist(n)
    basis = dpi_basis(n, -z)
    target = np.zeros(entries.shape, dtype=complex)
    for (k, mask), c in u.items():
        target = target + (c * twist[mask] * (-1j * z) ** k)[..., None, None] * basis[..., mask, :, :]
    val = h_pairing_entries(n, -z, entries, target)
    return val * (-2 * z) ** (-float(bracket(n)))


def component(A: FourierImage, u: PBWElement, zeta) -> np.ndarray | complex:
    """``A(u; zeta)`` at real nonzero ``zeta`` (scalar or array)."""
    if A.n != u.n:
        raise DimensionError(f"ambient dimensions differ: {A.n} vs {u.n}")
    z = _check_real_nonzero(zeta)
    val = component_of_entries(A.n, A(z), u, z)
    return complex(val) if np.ndim(val) == 0 else val


def component_weights(n: int, zeta) -> np.ndarray:
    """``W[m, J] = <dpi_{-zeta}(a_m) | dpi_{-zeta}(alpha^n a_J)> (-2 zeta)^{-[n]}``."""
    z = _check_real_nonzero(zeta)
    basis = dpi_basis(n, -z)
    twist = _parity_twist(n)
    m = 1 << n
    W = np.empty(z.shape + (m, m), dtype=complex)
    for j in range(m):
        W[..., :, j] = h_pairing_entries(
            n, -z[..., None], basis, (twist[j] * basis[..., j, :, :])[..., None, :, :]
        ) * ((-2 * z) ** (-float(bracket(n))))[..., None]
    return W


_WEIGHT_PROBES = np.array([0.37, -1.9, 2.6])


def constant_weights(n: int) -> np.ndarray:
    """Component weights, checked to be independent of ``zeta``."""
    Ws = component_weights(n, _WEIGHT_PROBES)
    W = Ws[0]
    if np.abs(Ws - W).max() > 1e-12 * max(1.0, np.abs(W).max()):
        raise ArithmeticError("component weights depend on zeta; closed-form inversion unavailable")
    return np.where(np.abs(W) < 1e-13, 0, np.round(W.real) + 1j * np.round(W.imag))


def inverse(A: FourierImage, grid: tuple[float, float, int] | None = None) -> SuperFunction:
    """``f_J(x) = (1/2pi) int A(a_J; zeta) exp(i x zeta) d zeta`` for each ``J``.

    Closed-form images invert exactly. Sampled images are read on the
    half-shifted frequency grid of their ``x`` grid, which never contains
    ``zeta = 0`` and inverts the quadrature transform exactly.
    """
    n = A.n
    if A.provenance == "closed-form" and all(isinstance(c, GaussPoly) for c in A.coeffs.values()):
        W = constant_weights(n)
        comps = {}
        for j in range(1 << n):
            acc = GaussPoly()
            for m, phi in A.coeffs.items():
                if W[m, j] != 0:
                    acc = acc + phi.scale(W[m, j])
            if not acc.is_zero():
                comps[j] = acc.inverse_fourier()
        return SuperFunction(n, comps)
    grid = grid or A.grid
    if grid is None:
        raise ValueError("a sampled image needs an x grid (x0, dx, M) for inversion")
    x0, dx, m = grid
    probe = GridFn(x0, dx, np.zeros(m))
    zs = probe.inverse_zeta_grid()
    entries = A(zs)
    comps = {}
    for j in range(1 << n):
        vals = component_of_entries(n, entries, PBWElement.from_mask(n, j), zs)
        edge = np.abs(vals[[0, -1]]).max()
        if edge > 1e-8 * max(np.abs(vals).max(), 1e-300):
            warnings.warn(
                f"component {members_of(j)} has not decayed at the frequency cut-off; inversion may be inaccurate",
                RuntimeWarning,
                stacklevel=2,
            )
        g = inverse_fourier_samples(vals, x0, dx)
        if np.any(g.values):
            comps[j] = g
    return SuperFunction(n, comps)


# --------------------------------------------------------------------------
# distributions


def _point_mass_ft(masses):
    def phi(z):
        z = _as_array(z)
        out = np.zeros(z.shape, dtype=complex)
        for m in masses:
            out += m.coeff * (1j * z) ** m.order * np.exp(-1j * z * m.x0)
        return out

    return phi


def transform_dist(U: CompactDistribution) -> FourierImage:
    """Fourier-Laplace transform of a point-supported distribution.

    ``Uhat(zeta) = sum_I (-1)^{|I|(n-|I|)} Uhat_I(zeta) dpi_{-zeta}(a_I)`` where
    ``delta_{x0}^{(j)}`` contributes ``(i zeta)^j exp(-i zeta x0)``; this is
    the limit of :func:`transform` on mollified approximants.
    """
    n = U.n
    coeffs = {}
    for mask, masses in U.comps.items():
        k = mask.bit_count()
        sign = -1 if (k * (n - k)) & 1 else 1
        phi = _point_mass_ft(masses)
        coeffs[mask] = (lambda z, phi=phi, s=sign: s * phi(z))
    return FourierImage(n, coeffs, "laplace")


# --------------------------------------------------------------------------
# Paley-Wiener diagnostic


@dataclass
class PWReport:
    passed: bool
    a: float
    constants: dict[int, float]
    refined: dict[int, float]
    ratios: dict[int, float]
    worst_monomial: dict[int, tuple[int, int]]
    samples: int

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "a": self.a,
            "constants": {str(k): v for k, v in self.constants.items()},
            "refined": {str(k): v for k, v in self.refined.items()},
            "ratios": {str(k): v for k, v in self.ratios.items()},
            "samples": self.samples,
        }


def pw_samples(radius: float = 256.0, angles: int = 16, per_octave: int = 6, r0: float = 0.25) -> np.ndarray:
    """Rays at angles ``2 pi k / angles`` with geometric radii up to ``radius``."""
    octaves = np.log2(radius / r0)
    radii = r0 * 2 ** np.linspace(0, octaves, int(np.ceil(octaves * per_octave)) + 1)
    th = 2 * np.pi * np.arange(angles) / angles
    return (radii[:, None] * np.exp(1j * th)[None, :]).reshape(-1)


def _pw_constants(A: FourierImage, a: float, N_list, zs, prefactor: bool, max_z: int):
    n = A.n
    entries = A(zs)
    basis = dpi_basis(n, -zs)
    br = bracket(n)
    best = {N: 0.0 for N in N_list}
    where = {N: (0, 0) for N in N_list}
    for mask in range(1 << n):
        for k in range(max_z + 1):
            target = ((-1j * zs) ** k)[:, None, None] * basis[:, mask]
            t = trace_T_entries(n, -zs, entries @ target)
            if prefactor:
                t = t * zs ** (-float(br))
            mag = np.abs(t) * np.exp(-a * np.abs(zs.imag))
            for N in N_list:
                vals = mag * (1 + np.abs(zs)) ** N
                c = np.inf if np.any(np.isnan(vals)) else np.max(vals)
                if not np.isfinite(c):
                    c = np.inf
                if c > best[N]:
                    best[N] = float(c)
                    where[N] = (k, mask)
    return best, where


def paley_wiener_check(
    A: FourierImage,
    a: float,
    N_list: Sequence[int] = tuple(range(7)),
    zeta_samples: np.ndarray | None = None,
    *,
    radius: float = 256.0,
    prefactor: bool = True,
    max_z: int = 2,
    ratio_limit: float = 2.0,
) -> PWReport:
    """Estimate ``C_N = max |zeta^{-[n]} T(A dpi_{-zeta}(u))| (1+|zeta|)^N e^{-a |Im zeta|}``.

    Passes when every estimate is finite and doubling the sampling radius,
    the radial density and the number of rays changes none of them by a
    factor of ``ratio_limit`` or more. ``prefactor=False`` drops the
    ``zeta^{-[n]}`` factor. A diagnostic only, never a proof.
    """
    if a <= 0:
        raise ValueError("exponential type must be positive")
    if zeta_samples is None:
        base = pw_samples(radius, 16, 6)
        fine = pw_samples(2 * radius, 32, 12)
    else:
        base = np.asarray(zeta_samples, dtype=complex).reshape(-1)
        fine = np.concatenate([base, 2 * base, base * np.exp(1j * np.pi / 32)])
    base = base[base != 0]
    fine = fine[fine != 0]
    if A.grid is not None:
        nyquist = np.pi / A.grid[1]
        if np.abs(fine).max() >= nyquist:
            warnings.warn(
                f"sampling radius {np.abs(fine).max():.0f} exceeds the grid Nyquist frequency {nyquist:.0f}; "
                "use a finer grid or a smaller radius",
                RuntimeWarning,
                stacklevel=2,
            )
    with np.errstate(all="ignore"):
        c0, where = _pw_constants(A, a, N_list, base, prefactor, max_z)
        c1, _ = _pw_constants(A, a, N_list, fine, prefactor, max_z)
    ratios = {}
    ok = True
    for N in N_list:
        if not (np.isfinite(c0[N]) and np.isfinite(c1[N])):
            ratios[N] = np.inf
            ok = False
            continue
        ratios[N] = c1[N] / c0[N] if c0[N] > 0 else (1.0 if c1[N] == 0 else np.inf)
        if not ratios[N] < ratio_limit:
            ok = False
    return PWReport(ok, a, c0, c1, ratios, where, int(base.size + fine.size))


__all__ = [
    "FourierImage", "transform", "transform_direct", "component", "component_weights",
    "constant_weights", "inverse", "transform_dist", "paley_wiener_check", "pw_samples",
    "PWReport", "dpi_basis",
]
