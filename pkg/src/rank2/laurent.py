"""Exact sparse Laurent-polynomial arithmetic over the integers.

A single representation serves every coefficient ring in this package:
the quantum parameter (printed ``v``) and the shift variable (printed
``t``) are both Laurent polynomials with arbitrary-precision integer
coefficients.  Values are sparse exponent -> coefficient maps kept in
canonical form (no stored zero coefficients) and treated as immutable,
so they are safe to share between threads and to cache.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import NonDivisibleExponent


class LaurentPoly:
    """An integer Laurent polynomial in one variable.

    Equality is exact: two values compare equal iff their canonical term
    maps agree.  Integers mix freely with ``LaurentPoly`` in arithmetic
    and comparisons.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[int, int] | Iterable[tuple[int, int]] | None = None):
        merged: dict[int, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                if c:
                    nc = merged.get(e, 0) + c
                    if nc:
                        merged[e] = nc
                    elif e in merged:
                        del merged[e]
        self._terms = merged

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> "LaurentPoly":
        # Internal: caller guarantees canonical form.
        out = object.__new__(cls)
        out._terms = terms
        return out

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._raw({0: 1})

    @classmethod
    def const(cls, n: int) -> "LaurentPoly":
        return cls._raw({0: n} if n else {})

    @classmethod
    def term(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {})

    # -- basic queries ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def degree(self, default=None):
        """Largest exponent, or ``default`` for the zero polynomial."""
        return max(self._terms) if self._terms else default

    def valuation(self, default=None):
        """Smallest exponent, or ``default`` for the zero polynomial."""
        return min(self._terms) if self._terms else default

    def terms(self) -> list[tuple[int, int]]:
        """Term list sorted by exponent ascending."""
        return sorted(self._terms.items())

    def exponents(self) -> list[int]:
        return sorted(self._terms)

    def unit_term(self) -> tuple[int, int] | None:
        """Return ``(sign, exp)`` if the value is a single term with
        coefficient +/-1, else ``None``."""
        if len(self._terms) != 1:
            return None
        (e, c), = self._terms.items()
        return (c, e) if c in (1, -1) else None

    def at_one(self) -> int:
        """Specialize the variable to 1 (sum of coefficients)."""
        return sum(self._terms.values())

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return None

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            nc = out.get(e, 0) + c
            if nc:
                out[e] = nc
            elif e in out:
                del out[e]
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._terms or not o._terms:
            return LaurentPoly.zero()
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = e1 + e2
                nc = out.get(e, 0) + c1 * c2
                if nc:
                    out[e] = nc
                elif e in out:
                    del out[e]
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not defined here")
        out = LaurentPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by the k-th power of the variable."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    # -- structure maps ----------------------------------------------------

    def bar(self) -> "LaurentPoly":
        """The bar involution: invert the variable (negate exponents)."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def substitute_power(self, r: int) -> "LaurentPoly":
        """Substitute the variable by its r-th power (multiply exponents)."""
        if r < 1:
            raise ValueError("power substitution needs r >= 1")
        return LaurentPoly._raw({e * r: c for e, c in self._terms.items()})

    def extract_power(self, r: int) -> "LaurentPoly":
        """Inverse of :meth:`substitute_power`; every exponent must be
        divisible by ``r``."""
        if r < 1:
            raise ValueError("power extraction needs r >= 1")
        out = {}
        for e, c in self._terms.items():
            if e % r:
                raise NonDivisibleExponent(f"exponent {e} not divisible by {r}")
            out[e // r] = c
        return LaurentPoly._raw(out)

    def positive_part(self) -> "LaurentPoly":
        """Terms with strictly positive exponent."""
        return LaurentPoly._raw({e: c for e, c in self._terms.items() if e > 0})

    # -- serialization and display ------------------------------------------

    def to_json(self) -> list[list]:
        """Pairs ``[exponent, coefficient-as-decimal-string]`` sorted by
        exponent ascending."""
        return [[e, str(c)] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data})

    def format(self, var: str = "v", descending: bool = False) -> str:
        if not self._terms:
            return "0"
        items = sorted(self._terms.items(), reverse=descending)
        parts = []
        for e, c in items:
            if e == 0:
                body = str(abs(c))
            else:
                xs = var if e == 1 else f"{var}^{e}"
                body = xs if abs(c) == 1 else f"{abs(c)}{xs}"
            parts.append(("-" if c < 0 else ("+" if parts else "")) + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.format()})"

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._terms.items()))


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()


# -- Kronecker packing ------------------------------------------------------
#
# Large coefficient polynomials are multiplied by packing them into one
# big integer (one signed digit of `bytes_per` bytes per exponent) and
# letting CPython's subquadratic integer multiplication do the work.
# Digits are balanced: a digit d >= 2^(8*bytes_per-1) decodes as d - 2^(8b).
# Callers must size `bytes_per` so accumulated digits never reach half the
# base; packing is split into a positive and a negative part so building
# the integer is a pair of bulk byte conversions.

def pack_terms(terms: dict[int, int], offset: int, bytes_per: int, span: int,
               stride: int = 1) -> int:
    pos = bytearray(span * bytes_per)
    neg = bytearray(span * bytes_per)
    for e, c in terms.items():
        i = ((e - offset) // stride) * bytes_per
        if c >= 0:
            pos[i:i + bytes_per] = c.to_bytes(bytes_per, "little")
        else:
            neg[i:i + bytes_per] = (-c).to_bytes(bytes_per, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def unpack_terms(big: int, offset: int, bytes_per: int, stride: int = 1) -> dict[int, int]:
    if not big:
        return {}
    width = 8 * bytes_per
    span = big.bit_length() // width + 2
    half = 1 << (width - 1)
    bias = int.from_bytes(half.to_bytes(bytes_per, "little") * span, "little")
    shifted = big + bias
    if shifted < 0 or shifted >> (span * width):
        raise OverflowError("packed digit escaped its balanced range")
    raw = shifted.to_bytes(span * bytes_per, "little")
    out = {}
    for i in range(span):
        d = int.from_bytes(raw[i * bytes_per:(i + 1) * bytes_per], "little") - half
        if d:
            out[offset + i * stride] = d
    return out


def exponent_stride(p: LaurentPoly) -> int:
    """Gcd of the exponent gaps; 0 for constants and single terms."""
    import math
    exps = iter(p._terms)
    try:
        base = next(exps)
    except StopIteration:
        return 0
    s = 0
    for e in exps:
        s = math.gcd(s, e - base)
    return s


def max_abs_coeff(p: LaurentPoly) -> int:
    return max((abs(c) for c in p._terms.values()), default=0)


_GB_CACHE: dict[tuple[int, int], LaurentPoly] = {}


def gauss_binomial(n: int, k: int, scale: int = 1) -> LaurentPoly:
    """Balanced (bar-invariant) Gaussian binomial coefficient.

    The returned value is symmetric under inverting the variable, has
    support ``{-k(n-k), -k(n-k)+2, ..., k(n-k)}`` (scaled by ``scale``),
    positive coefficients and extreme coefficients 1.  Out-of-range ``k``
    gives zero.  Satisfies the balanced Pascal identity
    ``[n,k] = t^-k [n-1,k] + t^(n-k) [n-1,k-1]``.
    """
    if n < 0:
        raise ValueError("gauss_binomial needs n >= 0")
    if scale < 1:
        raise ValueError("gauss_binomial needs scale >= 1")
    if k < 0 or k > n:
        return ZERO
    base = _gb(n, k)
    return base if scale == 1 else base.substitute_power(scale)


def _gb(n: int, k: int) -> LaurentPoly:
    if k == 0 or k == n:
        return ONE
    got = _GB_CACHE.get((n, k))
    if got is None:
        got = _gb(n - 1, k).shift(-k) + _gb(n - 1, k - 1).shift(n - k)
        _GB_CACHE[(n, k)] = got
    return got
