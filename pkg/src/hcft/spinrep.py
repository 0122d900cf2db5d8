"""Spin module matrices for the Clifford quotient of U(hc) at ``z = zeta``.

For even ``n = 2k`` the spin module is ``C^(2^k)`` graded by the popcount of
the basis index, with Jordan-Wigner generators

    c(a_{2j-1}) = G x .. x G x B1 x 1 x .. x 1,    B1 = [[0, zeta], [1, 0]]
    c(a_{2j})   = G x .. x G x B2 x 1 x .. x 1,    B2 = [[0, i zeta], [-i, 0]]

with ``G = diag(1, -1)`` in the first ``j - 1`` slots.

For odd ``n = 2k + 1`` the module is ``D x C^(2^k)`` with ``D`` the rank one
Clifford algebra, ``c(a_i) = E x A_i`` where ``E = [[0, zeta], [1, 0]]`` and
the ``A_i`` are Hermitian anticommuting involutions with product ``(-i)^k``.
The matrix ``eps = E x 1`` realises the odd generator of ``D``.

Every function accepting ``zeta`` also accepts a 1-d array; batched results
carry the zeta axis first.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache, reduce

import numpy as np

from .errors import DegenerateFormError, DimensionError
from .superalgebra import MAX_N, PBWElement

_SQ = np.exp(1j * np.pi / 4)
_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def bracket(n: int) -> int:
    """``[n]``: ``n/2`` for even ``n`` and ``(n+1)/2`` for odd ``n``."""
    return (n + 1) // 2


@dataclass(frozen=True)
class SpinSpec:
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise DimensionError(f"n must lie in 1..{MAX_N}, got {self.n}")

    @property
    def parity_case(self) -> str:
        return "even" if self.n % 2 == 0 else "odd"

    @property
    def bracket(self) -> int:
        return bracket(self.n)

    @property
    def dim(self) -> int:
        return 2 ** self.bracket

    @property
    def N_half(self) -> int:
        return self.dim // 2

    @property
    def parity_vector(self) -> np.ndarray:
        """``+1`` on even basis vectors, ``-1`` on odd ones."""
        return _parity_vector(self.n)


@lru_cache(maxsize=None)
def _parity_vector(n: int) -> np.ndarray:
    d = 2 ** bracket(n)
    if n % 2 == 0:
        p = np.array([-1 if bin(b).count("1") % 2 else 1 for b in range(d)], dtype=float)
    else:
        p = np.concatenate([np.ones(d // 2), -np.ones(d // 2)])
    p.setflags(write=False)
    return p


def _kron_all(mats):
    return reduce(np.kron, mats)


@lru_cache(maxsize=None)
def _odd_pauli_gammas(k: int) -> tuple[np.ndarray, ...]:
    """``2k+1`` Hermitian anticommuting involutions on ``k`` qubits, product ``(-i)^k``."""
    if k == 0:
        return (np.eye(1, dtype=complex),)
    gs = []
    for j in range(k):
        for p in ("X", "Y"):
            gs.append(_kron_all([_PAULI["Z"]] * j + [_PAULI[p]] + [_PAULI["I"]] * (k - j - 1)))
    gs.append(_kron_all([_PAULI["Z"]] * k))
    gs = gs[::-1]  # n = 3 gives (Z, Y, X)
    prod = reduce(np.matmul, gs)
    target = (-1j) ** k
    if not np.allclose(prod, target * np.eye(2 ** k)):
        gs[-1] = -gs[-1]
    for g in gs:
        g.setflags(write=False)
    return tuple(gs)


def _as_zeta_array(zeta):
    z = np.asarray(zeta, dtype=complex)
    return z, z.ndim == 0


def generator_stack(n: int, zeta) -> np.ndarray:
    """Matrices ``c(a_1) .. c(a_n)`` as an array ``(..., n, d, d)``."""
    if not 1 <= n <= MAX_N:
        raise DimensionError(f"n must lie in 1..{MAX_N}, got {n}")
    z, _ = _as_zeta_array(zeta)
    zf = z.reshape(-1)
    Z = zf.size
    d = 2 ** bracket(n)
    out = np.zeros((Z, n, d, d), dtype=complex)
    if n % 2 == 0:
        k = n // 2
        for j in range(k):
            right = 2 ** (k - j - 1)
            chi = _kron_all([_PAULI["Z"]] * j) if j else np.eye(1)
            for s, (upper, lower) in enumerate(((1, 1), (1j, -1j))):
                # slot block [[0, upper*zeta], [lower, 0]]
                blk = np.zeros((Z, 2, 2), dtype=complex)
                blk[:, 0, 1] = upper * zf
                blk[:, 1, 0] = lower
                full = np.einsum("ab,zcd,ef->zacebdf", chi, blk, np.eye(right))
                out[:, 2 * j + s] = full.reshape(Z, d, d)
    else:
        k = (n - 1) // 2
        E = np.zeros((Z, 2, 2), dtype=complex)
        E[:, 0, 1] = zf
        E[:, 1, 0] = 1
        for i, A in enumerate(_odd_pauli_gammas(k)):
            out[:, i] = np.einsum("zab,cd->zacbd", E, A).reshape(Z, d, d)
    return out.reshape(z.shape + (n, d, d))


def epsilon_stack(n: int, zeta) -> np.ndarray:
    """The odd ``D``-generator ``E x 1`` (odd ``n`` only)."""
    if n % 2 == 0:
        raise DimensionError("the eps-matrix exists only for odd n")
    z, _ = _as_zeta_array(zeta)
    zf = z.reshape(-1)
    k = (n - 1) // 2
    E = np.zeros((zf.size, 2, 2), dtype=complex)
    E[:, 0, 1] = zf
    E[:, 1, 0] = 1
    d = 2 ** (k + 1)
    return np.einsum("zab,cd->zacbd", E, np.eye(2 ** k)).reshape(z.shape + (d, d))


def monomial_stack(n: int, zeta) -> np.ndarray:
    """``c(a_I)`` for every bit mask ``I``: array ``(..., 2^n, d, d)``."""
    gens = generator_stack(n, zeta)
    lead = gens.shape[:-3]
    d = gens.shape[-1]
    out = np.empty(lead + (1 << n, d, d), dtype=complex)
    out[..., 0, :, :] = np.eye(d)
    for mask in range(1, 1 << n):
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        out[..., mask, :, :] = out[..., rest, :, :] @ gens[..., top, :, :]
    return out


_cache_lock = threading.Lock()


@lru_cache(maxsize=256)
def _cached_monomials(n: int, zeta: complex) -> np.ndarray:
    arr = monomial_stack(n, zeta)
    arr.setflags(write=False)
    return arr


def cached_monomials(n: int, zeta: complex) -> np.ndarray:
    with _cache_lock:
        return _cached_monomials(n, complex(zeta))


# --------------------------------------------------------------------------
# HMatrix


def _parity_of_entries(n: int, entries: np.ndarray, tol: float = 1e-12) -> str:
    p = _parity_vector(n)
    mixed = entries * np.outer(p, p)
    even = entries + mixed
    odd = entries - mixed
    scale = max(1.0, np.abs(entries).max(initial=0.0))
    has_even = np.abs(even).max(initial=0.0) > 2 * tol * scale
    has_odd = np.abs(odd).max(initial=0.0) > 2 * tol * scale
    if has_even and has_odd:
        return "mixed"
    return "odd" if has_odd else "even"


@dataclass(frozen=True, eq=False)
class HMatrix:
    """A matrix on the spin module at a fixed ``zeta``."""

    spec: SpinSpec
    zeta: complex
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        e = np.array(self.entries, dtype=complex)
        if e.shape != (self.spec.dim, self.spec.dim):
            raise DimensionError(f"expected {self.spec.dim}x{self.spec.dim} entries, got {e.shape}")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "zeta", complex(self.zeta))

    @property
    def parity(self) -> str:
        return _parity_of_entries(self.spec.n, self.entries)

    def parity_part(self, p: int) -> "HMatrix":
        pv = self.spec.parity_vector
        flip = self.entries * np.outer(pv, pv)
        part = (self.entries + flip) / 2 if p == 0 else (self.entries - flip) / 2
        return HMatrix(self.spec, self.zeta, part)

    def _check(self, other: "HMatrix"):
        if self.spec != other.spec:
            raise DimensionError("matrices belong to different spin modules")
        if self.zeta != other.zeta:
            raise ValueError("matrices belong to different zeta")

    def __matmul__(self, other: "HMatrix") -> "HMatrix":
        self._check(other)
        return HMatrix(self.spec, self.zeta, self.entries @ other.entries)

    def __add__(self, other: "HMatrix") -> "HMatrix":
        self._check(other)
        return HMatrix(self.spec, self.zeta, self.entries + other.entries)

    def __sub__(self, other: "HMatrix") -> "HMatrix":
        self._check(other)
        return HMatrix(self.spec, self.zeta, self.entries - other.entries)

    def __mul__(self, c) -> "HMatrix":
        return HMatrix(self.spec, self.zeta, self.entries * complex(c))

    __rmul__ = __mul__

    def is_d_linear(self, tol: float = 1e-12) -> bool:
        """Commutes with the eps-matrix (always true for even ``n``)."""
        if self.spec.n % 2 == 0:
            return True
        eps = epsilon_stack(self.spec.n, self.zeta)
        return np.abs(eps @ self.entries - self.entries @ eps).max() <= tol * max(1.0, abs(self.zeta))


def build_generators(n: int, zeta: complex) -> list[HMatrix]:
    """``[c(a_1), .., c(a_n)]``, followed by the eps-matrix when ``n`` is odd."""
    spec = SpinSpec(n)
    gens = generator_stack(n, complex(zeta))
    out = [HMatrix(spec, zeta, g) for g in gens]
    if n % 2:
        out.append(HMatrix(spec, zeta, epsilon_stack(n, complex(zeta))))
    return out


def _mono_weights(u: PBWElement, zeta, scaled: bool):
    """Per-mask coefficient arrays for ``u`` at each zeta."""
    z, _ = _as_zeta_array(zeta)
    w = np.zeros(z.shape + (1 << u.n,), dtype=complex)
    for (k, mask), c in u.items():
        if scaled:
            factor = (1j * z) ** k * _SQ ** mask.bit_count()
        else:
            factor = z ** k
        w[..., mask] += c * factor
    return w


def represent_entries(u: PBWElement, zeta) -> np.ndarray:
    """Batched :func:`represent`; returns ``(..., d, d)``."""
    mats = monomial_stack(u.n, zeta)
    return np.einsum("...m,...mab->...ab", _mono_weights(u, zeta, False), mats)


def dpi_entries(u: PBWElement, zeta) -> np.ndarray:
    """Batched :func:`dpi`."""
    z = np.asarray(zeta, dtype=complex)
    mats = cached_monomials(u.n, complex(z)) if z.ndim == 0 else monomial_stack(u.n, z)
    return np.einsum("...m,...mab->...ab", _mono_weights(u, z, True), mats)


def represent(u: PBWElement, zeta: complex) -> HMatrix:
    """Image of ``u`` in the Clifford quotient, ``z -> zeta``."""
    mats = cached_monomials(u.n, zeta)
    return HMatrix(SpinSpec(u.n), zeta, np.einsum("m,mab->ab", _mono_weights(u, complex(zeta), False), mats))


def dpi(u: PBWElement, zeta: complex) -> HMatrix:
    """``d pi_zeta``: each odd generator carries ``e^{i pi/4}``, ``z`` acts by ``i zeta``."""
    return HMatrix(SpinSpec(u.n), zeta, dpi_entries(u, complex(zeta)))


def pi(u: PBWElement, x: float, zeta: complex) -> HMatrix:
    """``pi_zeta(u; x) = e^{i zeta x} d pi_zeta(u)``."""
    zeta = complex(zeta)
    return HMatrix(SpinSpec(u.n), zeta, np.exp(1j * zeta * x) * dpi_entries(u, zeta))


# --------------------------------------------------------------------------
# trace, forms, adjoints


_T_PHASE = np.exp(-1j * np.pi / 4)


def trace_T_entries(n: int, zeta, entries: np.ndarray) -> np.ndarray:
    """Batched trace functional over leading axes."""
    if n % 2 == 0:
        return np.einsum("...aa,a->...", entries, _parity_vector(n).astype(complex))
    eps = epsilon_stack(n, zeta)
    return _T_PHASE * np.einsum("...ab,...ba->...", eps, entries)


def trace_T(A: HMatrix) -> complex:
    """Supertrace for even ``n``; ``Tr(e^{-i pi/4} eps A)`` for odd ``n``.

    The phase is chosen so that ``T(d pi_zeta(gamma)) = (2 zeta)^[n]``.
    """
    return complex(trace_T_entries(A.spec.n, A.zeta, A.entries))


@dataclass(frozen=True, eq=False)
class GramForm:
    """Gram matrix ``G`` of the form ``(u, v) = v^H G u`` on the spin module."""

    spec: SpinSpec
    zeta: float
    matrix: np.ndarray = field(repr=False)

    @property
    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.matrix))


@lru_cache(maxsize=None)
def _gram_diag_pattern(n: int) -> np.ndarray:
    d = 2 ** bracket(n)
    if n % 2 == 0:
        pw = np.array([bin(b).count("1") for b in range(d)])
    else:
        pw = np.concatenate([np.zeros(d // 2, dtype=int), np.ones(d // 2, dtype=int)])
    pw.setflags(write=False)
    return pw


def gram_diagonal(n: int, zeta) -> np.ndarray:
    z = np.asarray(zeta, dtype=float)
    return z[..., None] ** _gram_diag_pattern(n)


def gram(spec: SpinSpec | int, zeta: float) -> GramForm:
    """Gram form of ``(.,.)_zeta``; tensor powers of ``diag(1, zeta)``."""
    if not isinstance(spec, SpinSpec):
        spec = SpinSpec(spec)
    if np.iscomplexobj(zeta) and np.imag(zeta) != 0:
        raise ValueError("the Gram form needs real zeta")
    zeta = float(np.real(zeta))
    if zeta == 0:
        raise DegenerateFormError("the form (.,.)_zeta degenerates at zeta = 0")
    return GramForm(spec, zeta, np.diag(gram_diagonal(spec.n, zeta)).astype(complex))


def super_adjoint_entries(n: int, zeta, entries: np.ndarray) -> np.ndarray:
    """Batched super adjoint for real nonzero ``zeta``."""
    z = np.asarray(zeta, dtype=float)
    if np.any(z == 0):
        raise DegenerateFormError("super adjoint undefined at zeta = 0")
    g = gram_diagonal(n, z)
    star = np.conj(np.swapaxes(entries, -1, -2)) * g[..., None, :] / g[..., :, None]
    p = _parity_vector(n)
    flip = star * np.outer(p, p)
    even = (star + flip) / 2
    odd = (star - flip) / 2
    return even - 1j * odd


def super_adjoint(A: HMatrix, form: GramForm | None = None) -> HMatrix:
    """``A^dagger = A*_0 - i A*_1`` with ``A*`` the adjoint for the Gram form.

    With this phase ``<A u|v> = (-1)^{|u||A|} <u|A^dagger v>`` for the form
    ``<u|v> = i^{|u||v|} (u, v)``, ``(AB)^dagger = (-1)^{|A||B|} B^dagger A^dagger``
    and ``d pi(u)^dagger = d pi(S(u))``.
    """
    if form is None:
        form = gram(A.spec, A.zeta)
    elif form.spec != A.spec:
        raise DimensionError("form and matrix belong to different spin modules")
    return HMatrix(A.spec, A.zeta, super_adjoint_entries(A.spec.n, form.zeta, A.entries))


def h_pairing(A: HMatrix, B: HMatrix, form: GramForm | None = None) -> complex:
    """``<A|B> = T(A B^dagger)``."""
    A._check(B)
    return trace_T(A @ super_adjoint(B, form))


def h_pairing_entries(n: int, zeta, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Batched ``T(A B^dagger)`` over leading axes (real ``zeta``)."""
    return trace_T_entries(n, zeta, A @ super_adjoint_entries(n, zeta, B))


def gamma_dpi_trace(n: int, zeta) -> complex:
    """Reference value ``(2 zeta)^[n]``."""
    return (2 * np.asarray(zeta, dtype=complex)) ** bracket(n)


__all__ = [
    "SpinSpec", "HMatrix", "GramForm", "bracket", "build_generators", "generator_stack",
    "epsilon_stack", "monomial_stack", "represent", "represent_entries", "dpi", "dpi_entries",
    "pi", "trace_T", "trace_T_entries", "gram", "gram_diagonal", "super_adjoint",
    "super_adjoint_entries", "h_pairing", "h_pairing_entries",
]
