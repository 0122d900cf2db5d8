"""Slow reference implementations used to cross-check the fast paths.

Each function transcribes a defining formula directly, without the cached
signs or coordinate shortcuts of the main modules.
"""
from __future__ import annotations

import numpy as np

from .convolution import convolve, convolve_via_pairing, mollify
from .integral import CompactDistribution
from .scalar import GaussPoly, ScalarFn
from .superalgebra import (
    PBWElement,
    coproduct,
    full_mask,
    members_of,
    oracle_normalize,
)
from .superfunction import SuperFunction


def permutation_sign(seq) -> int:
    """Sign of a permutation given as a sequence, by counting inversions."""
    seq = list(seq)
    inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inv & 1 else 1


def hodge_sign(mask: int, n: int) -> int:
    """``sgn(sigma_I)`` for ``sigma_I = (I ascending, I^c ascending)``."""
    comp = full_mask(n) ^ mask
    return permutation_sign(members_of(mask) + members_of(comp))


def word_of(zpow: int, mask: int) -> list:
    return ["z"] * zpow + list(members_of(mask))


def word_product(u: PBWElement, v: PBWElement) -> PBWElement:
    """Multiply by concatenating words and normalising with single rewrites."""
    n = u.n
    total = PBWElement.zero(n)
    for (k, i), cu in u.items():
        for (l, j), cv in v.items():
            total = total + oracle_normalize(word_of(k, i) + word_of(l, j), n).scale(cu * cv)
    return total


def word_antipode(u: PBWElement) -> PBWElement:
    """Reverse each word, negate every letter, and add the Koszul sign of the reversal."""
    n = u.n
    total = PBWElement.zero(n)
    for (k, mask), c in u.items():
        letters = word_of(k, mask)
        odd = len(members_of(mask))
        # reversing r odd letters costs r(r-1)/2 transpositions
        sign = (-1) ** len(letters) * (-1) ** (odd * (odd - 1) // 2)
        total = total + oracle_normalize(letters[::-1], n).scale(sign * c)
    return total


def delta_product(F: SuperFunction, G: SuperFunction) -> SuperFunction:
    """``(F.G)(a_K) = sum (-1)^{|G||x|} F(x) G(y)`` over ``Delta(a_K) = sum x (x) y``."""
    n = F.n
    comps: dict[int, ScalarFn] = {}
    for kmask in range(1 << n):
        acc = None
        for (x, y), c in coproduct(PBWElement.from_mask(n, kmask)).items():
            f = F.comps.get(x.mask)
            g = G.comps.get(y.mask)
            if f is None or g is None:
                continue
            sign = -1 if (x.mask.bit_count() & 1) and (y.mask.bit_count() & 1) else 1
            term = (f * g).scale(sign * c)
            acc = term if acc is None else acc + term
        if acc is not None:
            comps[kmask] = acc
    return SuperFunction(n, comps)


def mollified_convolution(U: CompactDistribution, F: SuperFunction, width: float) -> SuperFunction:
    """``mollify(U) * F``; tends to ``U * F`` as ``width -> 0``."""
    return convolve(mollify(U, width), F)


def definitional_convolution(F: SuperFunction, G: SuperFunction, u: PBWElement, x: float) -> complex:
    return convolve_via_pairing(F, G, u, x)


def anticommutator_error(mats, zeta: complex) -> float:
    """``max |c_i c_j + c_j c_i - 2 zeta delta_ij|`` over all pairs."""
    d = mats[0].shape[0]
    eye = np.eye(d)
    err = 0.0
    for i, ci in enumerate(mats):
        for j, cj in enumerate(mats):
            target = 2 * zeta * eye if i == j else 0
            err = max(err, float(np.abs(ci @ cj + cj @ ci - target).max()))
    return err


# Gaussian calculus: closed forms for exp(-alpha (x - mu)^2)


def gaussian_integral(alpha: complex) -> complex:
    return complex(np.sqrt(np.pi / alpha))


def gaussian_ft(alpha: complex, zeta, mu: complex = 0.0):
    z = np.asarray(zeta, dtype=complex)
    return np.sqrt(np.pi / alpha) * np.exp(-z * z / (4 * alpha) - 1j * z * mu)


def gaussian_convolution(alpha: float, beta: float):
    """``exp(-alpha x^2) * exp(-beta x^2)`` as a ``GaussPoly``."""
    gam = alpha * beta / (alpha + beta)
    return GaussPoly.gaussian(gam, 0.0, np.sqrt(np.pi / (alpha + beta)))


def gaussian_derivative_sup(alpha: float) -> float:
    """``max |d/dx exp(-alpha x^2)| = sqrt(2 alpha / e)``."""
    return float(np.sqrt(2 * alpha / np.e))


def brute_force_sign_table(n: int) -> dict[tuple[int, int], int]:
    """Signs of ``a_I a_J`` found by sorting the concatenated word with bubble swaps."""
    table = {}
    for i in range(1 << n):
        for j in range(1 << n):
            table[(i, j)] = int(oracle_normalize(list(members_of(i)) + list(members_of(j)), n).coeff(
                (i & j).bit_count(), i ^ j).real)
    return table


__all__ = [
    "permutation_sign", "hodge_sign", "word_product", "word_antipode", "delta_product",
    "mollified_convolution", "definitional_convolution", "anticommutator_error",
    "gaussian_integral", "gaussian_ft", "gaussian_convolution", "gaussian_derivative_sup",
    "brute_force_sign_table", "oracle_normalize",
]
