"""Exchange parameters and size caps for one rank-2 algebra."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ExchangeParams:
    """The exchange-exponent pair (b, c) plus desk-scale caps.

    ``m_cap`` bounds the cluster-variable index, ``a_cap`` the root
    coordinates fed to basis computations, ``scan_cap`` the window used
    when decomposing a real root over consecutive denominator vectors.
    """

    b: int
    c: int
    m_cap: int = 12
    a_cap: int = 64
    scan_cap: int = 32

    def __post_init__(self):
        if self.b < 1 or self.c < 1:
            raise ValueError("exchange exponents must be positive")
        if self.m_cap < 3 or self.a_cap < 1 or self.scan_cap < 2:
            raise ValueError("caps too small to be usable")

    @property
    def skew_symmetric(self) -> bool:
        return self.b == self.c

    @property
    def r(self) -> int:
        if not self.skew_symmetric:
            raise ValueError("r is only defined when b == c")
        return self.b

    @classmethod
    def skew(cls, r: int, **kwargs) -> "ExchangeParams":
        return cls(r, r, **kwargs)
