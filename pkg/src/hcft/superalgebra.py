"""Exact arithmetic in the enveloping algebra U(hc) of the Heisenberg-Clifford
superalgebra.

The algebra is generated by odd ``a_1 .. a_n`` and a central even ``z`` with

    a_i a_j = -a_j a_i  (i != j),      a_i a_i = z.

Every element is a finite combination of PBW monomials ``z^k a_I`` where ``I``
is a subset of ``{1..n}``. Subsets are stored as bit masks (bit ``i-1`` marks
``a_i``) and all reordering signs are computed by popcount-based inversion
counts.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import DimensionError

MAX_N = 12


# --------------------------------------------------------------------------
# index sets


def mask_of(members: Iterable[int]) -> int:
    mask = 0
    for i in members:
        if i < 1:
            raise ValueError(f"generator index must be >= 1, got {i}")
        mask |= 1 << (i - 1)
    return mask


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def size(mask: int) -> int:
    return mask.bit_count()


def merge_sign(left: int, right: int) -> int:
    """Sign picked up when ``a_left a_right`` is brought into ascending order.

    Counts the pairs ``(i, j)`` with ``i`` in ``left``, ``j`` in ``right`` and
    ``i > j``; each such pair is one transposition of odd generators.
    """
    count = 0
    r = right
    j = 0
    while r:
        if r & 1:
            count += (left >> (j + 1)).bit_count()
        r >>= 1
        j += 1
    return -1 if count & 1 else 1


@dataclass(frozen=True)
class IndexSet:
    """A subset of ``{1..n}``, kept as a bit mask."""

    n: int
    mask: int = 0

    def __post_init__(self):
        _check_n(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#b} has members outside 1..{self.n}")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "IndexSet":
        members = tuple(members)
        if list(members) != sorted(set(members)):
            raise ValueError(f"members must be strictly increasing: {members}")
        return cls(n, mask_of(members))

    @property
    def members(self) -> tuple[int, ...]:
        return members_of(self.mask)

    @property
    def complement(self) -> "IndexSet":
        return IndexSet(self.n, full_mask(self.n) ^ self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise DimensionError(f"n must lie in 1..{MAX_N}, got {n}")


def all_masks(n: int) -> range:
    return range(1 << n)


# --------------------------------------------------------------------------
# monomials and elements


class PBWMonomial(NamedTuple):
    """``z^zpow a_I`` with ``I`` given by ``mask``."""

    zpow: int
    mask: int

    @property
    def parity(self) -> int:
        return self.mask.bit_count() & 1


class SignedMonomial(NamedTuple):
    sign: int
    monomial: PBWMonomial


class PBWElement:
    """Finite complex combination of PBW monomials over a fixed ``n``.

    Instances are immutable; arithmetic returns new objects. ``u * v`` is the
    algebra product, ``c * u`` scales by a number.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[PBWMonomial, complex] | None = None):
        _check_n(n)
        clean: dict[PBWMonomial, complex] = {}
        for mono, c in (terms or {}).items():
            mono = PBWMonomial(*mono)
            if mono.zpow < 0 or mono.mask >> n:
                raise ValueError(f"monomial {mono} invalid for n={n}")
            c = complex(c)
            if c != 0:
                clean[mono] = clean.get(mono, 0) + c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", {m: c for m, c in clean.items() if c != 0})

    def __setattr__(self, name, value):
        raise AttributeError("PBWElement is immutable")

    # constructors
    @classmethod
    def one(cls, n: int) -> "PBWElement":
        return cls(n, {PBWMonomial(0, 0): 1})

    @classmethod
    def zero(cls, n: int) -> "PBWElement":
        return cls(n)

    @classmethod
    def monomial(cls, n: int, zpow: int = 0, members: Iterable[int] = (), coeff=1) -> "PBWElement":
        return cls(n, {PBWMonomial(zpow, mask_of(members)): coeff})

    @classmethod
    def from_mask(cls, n: int, mask: int, zpow: int = 0, coeff=1) -> "PBWElement":
        return cls(n, {PBWMonomial(zpow, mask): coeff})

    @classmethod
    def z(cls, n: int) -> "PBWElement":
        return cls(n, {PBWMonomial(1, 0): 1})

    @classmethod
    def a(cls, n: int, i: int) -> "PBWElement":
        return cls(n, {PBWMonomial(0, mask_of([i])): 1})

    # mapping-ish access
    @property
    def terms(self) -> dict[PBWMonomial, complex]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[PBWMonomial, complex]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, zpow: int, mask: int) -> complex:
        return self._terms.get(PBWMonomial(zpow, mask), 0j)

    @property
    def parity(self) -> int | None:
        """0 or 1 for homogeneous elements, ``None`` when mixed (zero counts as even)."""
        parities = {m.parity for m in self._terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def parity_part(self, p: int) -> "PBWElement":
        return PBWElement(self.n, {m: c for m, c in self._terms.items() if m.parity == p})

    # arithmetic
    def _same_n(self, other: "PBWElement") -> None:
        if self.n != other.n:
            raise DimensionError(f"ambient dimensions differ: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        self._same_n(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return PBWElement(self.n, out)

    def __neg__(self):
        return PBWElement(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c: complex) -> "PBWElement":
        return PBWElement(self.n, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return multiply(self, other)
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def isclose(self, other: "PBWElement", tol: float = 1e-12) -> bool:
        self._same_n(other)
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coeff(*k) - other.coeff(*k)) <= tol for k in keys)

    def __repr__(self):
        return f"PBWElement(n={self.n}, {format_element(self)!r})"


# --------------------------------------------------------------------------
# operations


def multiply(u: PBWElement, v: PBWElement) -> PBWElement:
    """PBW-normalised product ``u v``."""
    if u.n != v.n:
        raise DimensionError(f"ambient dimensions differ: {u.n} vs {v.n}")
    out: dict[PBWMonomial, complex] = {}
    for (k, i_mask), cu in u.items():
        for (l, j_mask), cv in v.items():
            mono = PBWMonomial(k + l + (i_mask & j_mask).bit_count(), i_mask ^ j_mask)
            out[mono] = out.get(mono, 0) + merge_sign(i_mask, j_mask) * cu * cv
    return PBWElement(u.n, out)


def monomial_product(m1: PBWMonomial, m2: PBWMonomial) -> SignedMonomial:
    return SignedMonomial(
        merge_sign(m1.mask, m2.mask),
        PBWMonomial(m1.zpow + m2.zpow + (m1.mask & m2.mask).bit_count(), m1.mask ^ m2.mask),
    )


def antipode_sign(mono: PBWMonomial) -> int:
    # S(z^k a_I) = (-1)^(k + |I|) z^k a_I: each generator flips sign and the
    # super-reversal of |I| odd letters contributes (-1)^(|I|(|I|-1)) = +1.
    return -1 if (mono.zpow + mono.mask.bit_count()) & 1 else 1


def antipode(u: PBWElement) -> PBWElement:
    return PBWElement(u.n, {m: antipode_sign(m) * c for m, c in u.items()})


def parity_automorphism(u: PBWElement) -> PBWElement:
    """``u -> (-1)^{|u|} u`` extended linearly."""
    return PBWElement(u.n, {m: (-c if m.parity else c) for m, c in u.items()})


def hodge_star(I: IndexSet | int, n: int | None = None) -> SignedMonomial:
    """``*a_I = sgn(sigma_I) a_{I^c}``, chosen so that ``a_I (*a_I) = gamma``."""
    if isinstance(I, IndexSet):
        n, mask = I.n, I.mask
    else:
        if n is None:
            raise TypeError("n is required when I is given as a bit mask")
        _check_n(n)
        mask = I
    comp = full_mask(n) ^ mask
    return SignedMonomial(merge_sign(mask, comp), PBWMonomial(0, comp))


def gamma(n: int) -> PBWElement:
    """Orientation element ``a_1 a_2 ... a_n``."""
    return PBWElement.from_mask(n, full_mask(n))


def delta_gamma(n: int) -> list[tuple[PBWMonomial, SignedMonomial]]:
    """Canonical Sweedler expansion of the coproduct of ``gamma``.

    Returns ``[(a_I, *a_I) for I in subsets]`` ordered by bit mask.
    """
    _check_n(n)
    return [(PBWMonomial(0, mask), hodge_star(mask, n)) for mask in all_masks(n)]


def element_of(sm: SignedMonomial, n: int) -> PBWElement:
    return PBWElement(n, {sm.monomial: sm.sign})


# --------------------------------------------------------------------------
# graded tensor square and coproduct


TensorKey = tuple[PBWMonomial, ...]


def tensor_multiply(x: Mapping[TensorKey, complex], y: Mapping[TensorKey, complex]) -> dict:
    """Product in the graded tensor power ``U^(x)r``.

    ``(x_1 (x) .. (x) x_r)(y_1 (x) .. (x) y_r)`` carries the Koszul sign of
    moving each ``y_s`` past ``x_{s+1} .. x_r``.
    """
    out: dict[TensorKey, complex] = {}
    for xk, xc in x.items():
        for yk, yc in y.items():
            sign = 1
            key = []
            for s, (xm, ym) in enumerate(zip(xk, yk)):
                later = sum(m.parity for m in xk[s + 1:])
                if later & ym.parity:
                    sign = -sign
                sm = monomial_product(xm, ym)
                sign *= sm.sign
                key.append(sm.monomial)
            key = tuple(key)
            out[key] = out.get(key, 0) + sign * xc * yc
    return {k: c for k, c in out.items() if c != 0}


def coproduct(u: PBWElement, times: int = 1) -> dict[TensorKey, complex]:
    """Iterated coproduct of ``u`` into ``times + 1`` tensor factors.

    Built as the algebra homomorphism with primitive generators, by
    multiplying out ``prod (x (x) 1 (x) .. + .. + 1 (x) .. (x) x)``.
    """
    r = times + 1
    unit = PBWMonomial(0, 0)
    result: dict[TensorKey, complex] = {}
    for (k, mask), c in u.items():
        acc = {(unit,) * r: 1 + 0j}
        letters = [("z", None)] * k + [("a", i) for i in members_of(mask)]
        for kind, i in letters:
            gen = PBWMonomial(1, 0) if kind == "z" else PBWMonomial(0, 1 << (i - 1))
            prim = {}
            for s in range(r):
                key = [unit] * r
                key[s] = gen
                prim[tuple(key)] = 1 + 0j
            acc = tensor_multiply(acc, prim)
        for key, v in acc.items():
            result[key] = result.get(key, 0) + c * v
    return {k: v for k, v in result.items() if v != 0}


# --------------------------------------------------------------------------
# brute-force oracle


def oracle_normalize(word: Sequence, n: int) -> PBWElement:
    """Normalise a word in the generators by single adjacent rewrites only.

    Letters are ``"z"``, ``"a<i>"`` or a positive int ``i`` for ``a_i``.
    Uses ``a_j a_i -> -a_i a_j`` (i < j) and ``a_i a_i -> z`` one step at a
    time; never touches :func:`merge_sign`.
    """
    letters: list[int] = []
    zpow = 0
    for sym in word:
        if sym == "z":
            zpow += 1
            continue
        if isinstance(sym, str):
            if not sym.startswith("a"):
                raise ValueError(f"bad letter {sym!r}")
            sym = int(sym[1:])
        if not 1 <= sym <= n:
            raise ValueError(f"generator a_{sym} outside 1..{n}")
        letters.append(int(sym))
    sign = 1
    changed = True
    while changed:
        changed = False
        p = 0
        while p < len(letters) - 1:
            left, right = letters[p], letters[p + 1]
            if left == right:
                del letters[p:p + 2]
                zpow += 1
                changed = True
                continue
            if left > right:
                letters[p], letters[p + 1] = right, left
                sign = -sign
                changed = True
            p += 1
    return PBWElement(n, {PBWMonomial(zpow, mask_of(letters)): sign})


# --------------------------------------------------------------------------
# text syntax

_TOKEN = re.compile(
    r"""\s*(?:
        (?P<cplx>\(\s*[-+]?[\d.eE+-]+\s*,\s*[-+]?[\d.eE+-]+\s*\))
      | (?P<real>\d+\.?\d*(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)
      | (?P<z>z(?:\^\d+)?)
      | (?P<a>a\{[\d,\s]*\}|a\d+)
      | (?P<op>[-+*])
    )""",
    re.VERBOSE,
)


def parse_element(text: str, n: int) -> PBWElement:
    """Parse the CLI element syntax.

    Grammar::

        element := ['-'] term (('+' | '-') term)*
        term    := [coeff] [ '*' ] factor ( ['*'] factor )*  |  coeff
        coeff   := real | '(' real ',' real ')'
        factor  := 'z' ['^' int] | 'a{' i (',' i)* '}' | 'a' i | '1'

    Factors inside a term multiply left to right, so ``a{2} a{1}`` equals
    ``-a{1,2}``. Example: ``"2.0 z^1 a{1,3} + (0,1) a{2}"``.
    """
    pos = 0
    text = text.strip()
    total = PBWElement.zero(n)
    sign = 1
    term = None
    coeff: complex | None = None
    expect_term = True

    def flush():
        nonlocal total, term, coeff
        if term is None and coeff is None:
            return
        t = term if term is not None else PBWElement.one(n)
        total = total + t.scale(sign * (1 if coeff is None else coeff))
        term, coeff = None, None

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse element at column {pos}: {text[pos:]!r}")
        pos = m.end()
        kind = m.lastgroup
        tok = m.group(kind).strip()
        if kind == "op":
            if tok == "*":
                continue
            if not expect_term:
                flush()
            sign = (1 if tok == "+" else -1) * (sign if expect_term else 1)
            expect_term = True
            continue
        if kind == "real" and tok == "1":
            # bare "1" is the unit factor
            term = term if term is not None else PBWElement.one(n)
        elif kind in ("cplx", "real"):
            if term is not None or coeff is not None:
                raise ValueError(f"unexpected coefficient at column {m.start()}")
            if kind == "cplx":
                re_, im_ = tok[1:-1].split(",")
                coeff = complex(float(re_), float(im_))
            else:
                coeff = float(tok)
        elif kind == "z":
            power = int(tok[2:]) if "^" in tok else 1
            f = PBWElement.from_mask(n, 0, zpow=power)
            term = f if term is None else term * f
        else:
            inner = tok[2:-1] if tok.startswith("a{") else tok[1:]
            idx = [int(s) for s in inner.split(",") if s.strip()]
            f = PBWElement.one(n)
            for i in idx:
                if not 1 <= i <= n:
                    raise ValueError(f"generator a{i} outside 1..{n}")
                f = f * PBWElement.a(n, i)
            term = f if term is None else term * f
        expect_term = False
    if expect_term and pos:
        raise ValueError("element ends with a dangling operator")
    flush()
    return total


def format_monomial(m: PBWMonomial) -> str:
    parts = []
    if m.zpow:
        parts.append(f"z^{m.zpow}")
    if m.mask:
        parts.append("a{" + ",".join(map(str, members_of(m.mask))) + "}")
    return " ".join(parts) or "1"


def format_element(u: PBWElement) -> str:
    if not u:
        return "0"
    chunks = []
    for m, c in sorted(u.items(), key=lambda mc: (mc[0].mask.bit_count(), mc[0].mask, mc[0].zpow)):
        chunks.append(f"({c.real!r},{c.imag!r}) {format_monomial(m)}")
    return " + ".join(chunks)
