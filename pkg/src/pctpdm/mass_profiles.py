"""Position-dependent mass distributions and their coordinate maps.

Each profile m(x) comes with the map y = f(x) = integral of sqrt(m) dx in
closed form, so that f' = sqrt(m) holds exactly.  Parameters are
dimensionless (hbar = m0 = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

KINDS = ("uniform", "lorentzian", "squared_lorentzian", "exponential")


class DomainError(ValueError):
    """Argument outside a profile's domain or a map's image."""


@dataclass(frozen=True)
class MassProfile:
    """One of the supported mass distributions.

    ``uniform``: m = 1; ``lorentzian``: m = a^2/(q + x^2);
    ``squared_lorentzian``: m = a^2/(b + x^2)^2; ``exponential``: m = exp(-q x).
    Parameters a kind does not use are carried but ignored.
    """

    kind: str = "uniform"
    a: float = 1.0
    q: float = 1.0
    b: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown mass profile kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in ("lorentzian", "squared_lorentzian") and not self.a > 0:
            raise ValueError(f"{self.kind}: a must be positive, got {self.a}")
        if self.kind in ("lorentzian", "exponential") and not self.q > 0:
            raise ValueError(f"{self.kind}: q must be positive, got {self.q}")
        if self.kind == "squared_lorentzian" and not self.b > 0:
            raise ValueError(f"squared_lorentzian: b must be positive, got {self.b}")

    @classmethod
    def parse(cls, text: str) -> "MassProfile":
        """Build a profile from ``"lorentzian a=1.0 q=1.0"`` style text."""
        tokens = text.replace(",", " ").split()
        if not tokens:
            raise ValueError("empty profile specification")
        kw = {}
        for tok in tokens[1:]:
            name, sep, value = tok.partition("=")
            if not sep or name not in ("a", "q", "b"):
                raise ValueError(f"bad profile parameter {tok!r}; expected a=, q= or b=")
            kw[name] = float(value)
        return cls(tokens[0], **kw)

    def describe(self) -> str:
        names = {"uniform": (), "lorentzian": ("a", "q"), "squared_lorentzian": ("a", "b"),
                 "exponential": ("q",)}[self.kind]
        return " ".join([self.kind] + [f"{n}={getattr(self, n):g}" for n in names])

    # -- domain bookkeeping -------------------------------------------------

    @property
    def domain(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    @property
    def image(self) -> tuple[float, float]:
        """Open interval f(domain)."""
        if self.kind == "squared_lorentzian":
            half = self.a * math.pi / (2.0 * math.sqrt(self.b))
            return (-half, half)
        if self.kind == "exponential":
            return (-math.inf, 0.0)
        return (-math.inf, math.inf)

    def _x(self, x):
        x = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(x)):
            raise DomainError(f"{self.kind}: x must be finite")
        return x

    # -- mass and derivatives -----------------------------------------------

    def mass(self, x):
        x = self._x(x)
        k = self.kind
        if k == "uniform":
            m = np.ones_like(x)
        elif k == "lorentzian":
            m = self.a**2 / (self.q + x**2)
        elif k == "squared_lorentzian":
            m = self.a**2 / (self.b + x**2) ** 2
        else:
            m = np.exp(-self.q * x)
        return _out(m)

    def dmass(self, x):
        x = self._x(x)
        k = self.kind
        if k == "uniform":
            d = np.zeros_like(x)
        elif k == "lorentzian":
            d = -2.0 * self.a**2 * x / (self.q + x**2) ** 2
        elif k == "squared_lorentzian":
            d = -4.0 * self.a**2 * x / (self.b + x**2) ** 3
        else:
            d = -self.q * np.exp(-self.q * x)
        return _out(d)

    def d2mass(self, x):
        x = self._x(x)
        k = self.kind
        if k == "uniform":
            d = np.zeros_like(x)
        elif k == "lorentzian":
            u = self.q + x**2
            d = self.a**2 * (6.0 * x**2 - 2.0 * self.q) / u**3
        elif k == "squared_lorentzian":
            u = self.b + x**2
            d = self.a**2 * (20.0 * x**2 - 4.0 * self.b) / u**4
        else:
            d = self.q**2 * np.exp(-self.q * x)
        return _out(d)

    # -- coordinate map -----------------------------------------------------

    def mapping(self, x):
        """y = f(x) with f' = sqrt(m)."""
        x = self._x(x)
        k = self.kind
        if k == "uniform":
            y = x.copy()
        elif k == "lorentzian":
            # a*ln(x + sqrt(q + x^2)), written via asinh to avoid cancellation at x << 0
            y = self.a * (np.arcsinh(x / math.sqrt(self.q)) + 0.5 * math.log(self.q))
        elif k == "squared_lorentzian":
            rb = math.sqrt(self.b)
            y = self.a / rb * np.arctan(x / rb)
        else:
            y = -2.0 / self.q * np.exp(-0.5 * self.q * x)
        return _out(y)

    def inverse_mapping(self, y):
        """x = f^{-1}(y); raises DomainError outside the image."""
        y = np.asarray(y, dtype=float)
        lo, hi = self.image
        if not np.all((y > lo) & (y < hi)):
            raise DomainError(f"{self.describe()}: y outside the image ({lo}, {hi})")
        k = self.kind
        if k == "uniform":
            x = y.copy()
        elif k == "lorentzian":
            # (e^{y/a} - q e^{-y/a})/2 == sqrt(q) sinh(y/a - ln(q)/2)
            x = math.sqrt(self.q) * np.sinh(y / self.a - 0.5 * math.log(self.q))
        elif k == "squared_lorentzian":
            rb = math.sqrt(self.b)
            x = rb * np.tan(rb * y / self.a)
        else:
            x = -2.0 / self.q * np.log(-0.5 * self.q * y)
        return _out(x)


def _out(v):
    return v if v.ndim else float(v)
