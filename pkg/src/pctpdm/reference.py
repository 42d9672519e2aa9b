"""Closed-form constant-mass bound states of the two reference potentials.

Both problems are one-dimensional radial equations in a coordinate y,

    -(1/(2 M)) phi''(y) + V(y) phi(y) = E phi(y),

with ``M = mass_scale``.  For the modified Kratzer potential y is the
internuclear distance and ``M = mu/hbar^2``; for the Morse potential y is the
dimensionless displacement (r - r0)/r0 and ``M = mu r0^2 / hbar^2``.

Wavefunctions are returned as real functions of y normalised on the y-axis
with unit measure (the reduced radial function u = r R).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .specfun import integrate, laguerre, laguerre_derivative, log_gamma


class NoBoundStateError(ValueError):
    """Requested vibrational level lies above the bound-state cap."""


@dataclass(frozen=True)
class BoundState:
    """A single (n, ell) eigenstate with an evaluable wavefunction."""

    n: int
    ell: int
    energy: float
    wavefunction: Callable = field(repr=False, compare=False)
    provenance: str = "analytic"
    domain: tuple[float, float] = (-math.inf, math.inf)
    norm: float = 1.0

    def __call__(self, y):
        return self.wavefunction(y)


# ---------------------------------------------------------------------------
# modified Kratzer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KratzerParams:
    """Modified Kratzer potential De*((y - ye)/y)^2 in partial wave ``ell``."""

    De: float
    ye: float
    ell: int = 0
    mu: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.De >= 0:
            raise ValueError(f"De must be non-negative, got {self.De}")
        for name in ("ye", "mu", "hbar"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if int(self.ell) != self.ell or self.ell < 0:
            raise ValueError(f"ell must be a non-negative integer, got {self.ell}")

    name = "kratzer"
    domain = (0.0, math.inf)

    @property
    def mass_scale(self) -> float:
        return self.mu / self.hbar**2

    @property
    def gamma(self) -> float:
        return 2 * self.mu * (self.De * self.ye**2 + self.ell * (self.ell + 1) * self.hbar**2 / (2 * self.mu)) / self.hbar**2

    @property
    def eta(self) -> float:
        return math.sqrt(1.0 + 4.0 * self.gamma)

    @property
    def beta(self) -> float:
        """Magnitude 4 mu De ye / hbar^2 (the Coulomb-like strength)."""
        return 4.0 * self.mu * self.De * self.ye / self.hbar**2

    def kappa(self, n: int) -> float:
        return self.beta / (2 * n + 1 + self.eta)

    def bare_potential(self, y):
        y = np.asarray(y, dtype=float)
        return self.De * ((y - self.ye) / y) ** 2

    def centrifugal(self, y):
        y = np.asarray(y, dtype=float)
        return self.hbar**2 * self.ell * (self.ell + 1) / (2 * self.mu * y**2)

    def potential(self, y):
        """Effective radial potential: Kratzer term plus centrifugal barrier."""
        return self.bare_potential(y) + self.centrifugal(y)

    def asymptote(self) -> float:
        return self.De

    def n_bound(self) -> float:
        return math.inf

    def with_(self, **kw) -> "KratzerParams":
        return KratzerParams(**{**self.__dict__, **kw})


def kratzer_energy(p: KratzerParams, n: int) -> float:
    """Bound-state energy E_{n ell}; increases with n towards De."""
    _check_n(n)
    return p.De - p.hbar**2 / (2 * p.mu) * p.beta**2 / (2 * n + 1 + p.eta) ** 2


def _kratzer_shape(p: KratzerParams, n: int, lag_index: float, power: float):
    kappa = p.kappa(n)

    def shape(y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
            yp = np.where(y > 0, y, 1.0)
            env = np.exp(power * np.log(yp) - kappa * yp)
            out = np.where(y > 0, env * laguerre(n, lag_index, 2 * kappa * yp), 0.0)
        return out if out.ndim else float(out)

    return shape, kappa


def kratzer_norm_closed(p: KratzerParams, n: int) -> float:
    """Normalisation constant of y^{(eta+1)/2} e^{-kappa y} L_n^eta(2 kappa y)
    from the Laguerre integral; used as a cross-check of the quadrature."""
    eta, k2 = p.eta, 2 * p.kappa(n)
    log_n2 = (eta + 2) * math.log(k2) + log_gamma(n + 1) - log_gamma(n + eta + 1) - math.log(2 * n + eta + 1)
    return math.exp(0.5 * log_n2)


def _quadrature_norm(shape, lo, hi, points=None, rel_tol=1e-12, panels=16):
    ys = np.linspace(lo, hi, 4001)
    rough = np.trapezoid(shape(ys) ** 2, ys)
    sq = integrate(lambda t: shape(t) ** 2, lo, hi, rel_tol * rough, points=points, panels=panels)
    return 1.0 / math.sqrt(sq)


def kratzer_wavefunction(p: KratzerParams, n: int) -> BoundState:
    """Normalised reduced radial function

        u(y) = N y^{(eta+1)/2} exp(-kappa y) L_n^eta(2 kappa y).
    """
    _check_n(n)
    if p.De == 0:
        raise NoBoundStateError("De = 0 supports no bound states")
    shape, kappa = _kratzer_shape(p, n, p.eta, 0.5 * (p.eta + 1))
    # scale so that the tail envelope starts near the outermost lobe
    hi = (p.eta + 4 * n + 40) / kappa
    norm = _quadrature_norm(shape, 0.0, hi)

    def psi(y):
        return norm * shape(y)

    return BoundState(n, p.ell, kratzer_energy(p, n), psi, "analytic", p.domain, norm)


def kratzer_norm_paper(p: KratzerParams, n: int) -> float:
    """The printed closed-form constant

        (2 kappa)^{3/2} [ n! / ((2n + eta + 1) Gamma(n + eta + 1)) ]^{1/2}.

    It normalises the 3-D radial form (2 kappa y)^{(eta-1)/2} e^{-kappa y} L
    against the measure y^2 dy; compare with :func:`kratzer_norm_audit`.
    """
    _check_n(n)
    eta = p.eta
    k2 = 2 * p.kappa(n)
    log_a = 1.5 * math.log(k2) + 0.5 * (log_gamma(n + 1) - math.log(2 * n + eta + 1) - log_gamma(n + eta + 1))
    return math.exp(log_a)


def kratzer_norm_audit(p: KratzerParams, n: int) -> dict:
    """Quadrature normalisation of the printed wavefunction form under both
    candidate measures, with ratios against :func:`kratzer_norm_paper`."""
    eta, kappa = p.eta, p.kappa(n)
    k2 = 2 * kappa
    printed, _ = _kratzer_shape(p, n, eta, 0.5 * (eta - 1))

    def form(y):
        return k2 ** (0.5 * (eta - 1)) * printed(y)

    hi = (eta + 4 * n + 40) / kappa
    n_line = _quadrature_norm(form, 0.0, hi)
    n_radial = _quadrature_norm(lambda y: y * form(y), 0.0, hi)
    constant = kratzer_norm_paper(p, n)
    return {
        "constant": constant,
        "quadrature_dy": n_line,
        "quadrature_y2dy": n_radial,
        "ratio_dy": constant / n_line,
        "ratio_y2dy": constant / n_radial,
    }


# ---------------------------------------------------------------------------
# rotationally corrected Morse (Pekeris)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MorseParams:
    """Morse potential with the Pekeris-expanded centrifugal term.

    ``y`` is the dimensionless displacement (r - r0)/r0 and alpha = a r0.
    """

    D: float
    a: float
    r0: float = 1.0
    ell: int = 0
    mu: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("D", "a", "r0", "mu", "hbar"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if int(self.ell) != self.ell or self.ell < 0:
            raise ValueError(f"ell must be a non-negative integer, got {self.ell}")

    name = "morse"
    domain = (-math.inf, math.inf)

    @property
    def mass_scale(self) -> float:
        return self.mu * self.r0**2 / self.hbar**2

    @property
    def alpha(self) -> float:
        return self.a * self.r0

    @property
    def gamma_rot(self) -> float:
        return self.hbar**2 * self.ell * (self.ell + 1) / (2 * self.mu * self.r0**2)

    @property
    def pekeris(self) -> tuple[float, float, float]:
        al = self.alpha
        return (1 - 3 / al + 3 / al**2, 4 / al - 6 / al**2, -1 / al + 3 / al**2)

    @property
    def eps2(self) -> float:
        _, d1, _ = self.pekeris
        return 2 * self.mass_scale * (2 * self.D - self.gamma_rot * d1) / self.alpha**2

    @property
    def eps3(self) -> float:
        _, _, d2 = self.pekeris
        return 2 * self.mass_scale * (self.D + self.gamma_rot * d2) / self.alpha**2

    @property
    def level_cap(self) -> float:
        """epsilon2/(2 sqrt(epsilon3)); level n is bound iff n + 1/2 < cap."""
        if self.eps3 <= 0:
            return -math.inf
        return self.eps2 / (2 * math.sqrt(self.eps3))

    def n_bound(self) -> int:
        """Number of bound levels."""
        cap = self.level_cap
        if cap <= 0.5:
            return 0
        return int(math.ceil(cap - 0.5))

    def potential(self, y):
        """Pekeris-approximated rotating Morse potential."""
        y = np.asarray(y, dtype=float)
        d0, d1, d2 = self.pekeris
        with np.errstate(over="ignore"):
            s = np.exp(-self.alpha * y)
            return self.D * (s * s - 2 * s) + self.gamma_rot * (d0 + d1 * s + d2 * s * s)

    def exact_potential(self, y):
        """Morse term plus the unexpanded barrier hbar^2 l(l+1)/(2 mu r^2), r = r0(1+y)."""
        y = np.asarray(y, dtype=float)
        with np.errstate(over="ignore"):
            s = np.exp(-self.alpha * y)
            v = self.D * (s * s - 2 * s)
        if self.ell:
            v = v + self.gamma_rot / (1 + y) ** 2
        return v

    def asymptote(self) -> float:
        return self.gamma_rot * self.pekeris[0]

    def with_(self, **kw) -> "MorseParams":
        return MorseParams(**{**self.__dict__, **kw})


def _morse_eps1(p: MorseParams, n: int) -> float:
    _check_n(n)
    if p.eps3 <= 0 or not n + 0.5 < p.level_cap:
        raise NoBoundStateError(
            f"Morse level n={n} is not bound (need n + 1/2 < {p.level_cap:.6g}; "
            f"{p.n_bound()} bound levels for ell={p.ell})"
        )
    return p.level_cap - (n + 0.5)


def morse_energy(p: MorseParams, n: int) -> float:
    """Rotation-vibration energy in the Pekeris approximation."""
    eps1 = _morse_eps1(p, n)
    return p.asymptote() - p.hbar**2 * p.a**2 / (2 * p.mu) * eps1**2


def morse_textbook_energy(D, a, n, mu=1.0, hbar=1.0) -> float:
    """Non-rotating Morse levels -D + hbar a sqrt(2D/mu)(n+1/2) - hbar^2 a^2 (n+1/2)^2/(2 mu)."""
    v = n + 0.5
    return -D + hbar * a * math.sqrt(2 * D / mu) * v - hbar**2 * a**2 / (2 * mu) * v**2


def morse_shape(p: MorseParams, n: int, lag_index: float | None = None):
    """Unnormalised s^{eps1} exp(-sqrt(eps3) s) L_n^{index}(2 sqrt(eps3) s), s = e^{-alpha y}.

    ``lag_index`` defaults to 2*eps1; pass 1 + 2*eps1 for the printed variant.
    """
    eps1 = _morse_eps1(p, n)
    c = math.sqrt(p.eps3)
    al = p.alpha
    index = 2 * eps1 if lag_index is None else lag_index
    sign = (-1) ** n  # makes the outermost-left lobe positive

    def shape(y):
        y = np.asarray(y, dtype=float)
        t = -al * y  # log s
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            log_env = eps1 * t - c * np.exp(np.minimum(t, 700.0))
            env = np.where(t > 700.0, 0.0, np.exp(log_env))
            s = np.exp(np.minimum(t, 700.0))
            out = np.where(env > 0, sign * env * laguerre(n, index, 2 * c * s), 0.0)
        return out if out.ndim else float(out)

    return shape, eps1, c


def morse_support_hint(p: MorseParams, n: int) -> tuple[float, float]:
    """Rough interval of y carrying the state, used for quadrature breakpoints."""
    eps1 = _morse_eps1(p, n)
    c = math.sqrt(p.eps3)
    al = p.alpha
    lo = -math.log((eps1 + 2 * n + 40.0) / c) / al
    hi = (40.0 + 2 * n) / (eps1 * al) + 2.0
    return lo, hi


def morse_wavefunction(p: MorseParams, n: int, lag_index: float | None = None) -> BoundState:
    """Normalised Morse eigenfunction on the whole y-axis."""
    shape, eps1, _ = morse_shape(p, n, lag_index)
    lo, hi = morse_support_hint(p, n)
    norm = _quadrature_norm(shape, lo, hi)

    def psi(y):
        return norm * shape(y)

    return BoundState(n, p.ell, morse_energy(p, n), psi, "analytic", p.domain, norm)


def morse_norm_closed(p: MorseParams, n: int) -> float:
    """Normalisation of the Morse eigenfunction from the Laguerre integral."""
    eps1 = _morse_eps1(p, n)
    c2 = 2 * math.sqrt(p.eps3)
    log_n2 = (math.log(p.alpha) + log_gamma(n + 1) + math.log(2 * eps1) + 2 * eps1 * math.log(c2)
              - log_gamma(n + 2 * eps1 + 1))
    return math.exp(0.5 * log_n2)


def morse_norm_paper(p: MorseParams, n: int, a_profile: float = 1.0) -> float:
    """Literal printed constant sqrt(4 a n! (1+n+eps1)^2 (2 sqrt(eps3))^{2 eps1} / (1+n+2 eps1)!)."""
    eps1 = _morse_eps1(p, n)
    c2 = 2 * math.sqrt(p.eps3)
    log_a2 = (math.log(4 * a_profile) + log_gamma(n + 1) + 2 * math.log(1 + n + eps1)
              + 2 * eps1 * math.log(c2) - log_gamma(2 + n + 2 * eps1))
    return math.exp(0.5 * log_a2)


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def energy(p, n: int) -> float:
    """Dispatch to the reference energy formula for ``p``."""
    if isinstance(p, KratzerParams):
        return kratzer_energy(p, n)
    return morse_energy(p, n)


def wavefunction(p, n: int) -> BoundState:
    if isinstance(p, KratzerParams):
        return kratzer_wavefunction(p, n)
    return morse_wavefunction(p, n)


def support(p, n_max: int, rel_tol: float = 1e-10) -> tuple[float, float]:
    """Interval of y outside which every state n <= n_max is below
    ``rel_tol`` times its peak magnitude.

    For Kratzer the left end is the hard wall y = 0.
    """
    if isinstance(p, KratzerParams):
        kmin = p.kappa(n_max)
        ys = np.linspace(0.0, (p.eta + 4 * n_max + 60) / kmin, 20001)[1:]
        lo = 0.0
    else:
        lo_h, hi_h = morse_support_hint(p, n_max)
        for n in range(n_max + 1):
            lo_n, hi_n = morse_support_hint(p, n)
            lo_h, hi_h = min(lo_h, lo_n), max(hi_h, hi_n)
        ys = np.linspace(lo_h - 1.0, hi_h + 5.0, 40001)
        lo = math.inf
    hi = -math.inf
    for n in range(n_max + 1):
        st = wavefunction(p, n)
        v = np.abs(st(ys))
        big = np.nonzero(v >= rel_tol * v.max())[0]
        hi = max(hi, ys[big[-1]])
        if not isinstance(p, KratzerParams):
            lo = min(lo, ys[big[0]])
    return lo, hi


def residual(p, n: int, y, lag_index: float | None = None):
    """Pointwise residual -(1/2M) phi'' + (V - E) phi of the analytic state,
    using exact derivatives of the Laguerre factor."""
    y = np.asarray(y, dtype=float)
    M = p.mass_scale
    if isinstance(p, KratzerParams):
        st = kratzer_wavefunction(p, n)
        k, eta = p.kappa(n), p.eta
        idx = eta if lag_index is None else lag_index
        s = 0.5 * (eta + 1)
        t = 2 * k * y
        L = laguerre(n, idx, t)
        L1 = 2 * k * laguerre_derivative(n, idx, t, 1)
        L2 = 4 * k * k * laguerre_derivative(n, idx, t, 2)
        env = y**s * np.exp(-k * y)
        denv = env * (s / y - k)
        d2env = env * ((s / y - k) ** 2 - s / y**2)
        phi = env * L
        d2phi = d2env * L + 2 * denv * L1 + env * L2
        E = kratzer_energy(p, n)
        norm = st.norm
    else:
        eps1 = _morse_eps1(p, n)
        c = math.sqrt(p.eps3)
        al = p.alpha
        idx = 2 * eps1 if lag_index is None else lag_index
        s = np.exp(-al * y)
        # g(s) = s^eps1 exp(-c s) L(2 c s); d/dy = -al s d/ds
        g_env = s**eps1 * np.exp(-c * s)
        L = laguerre(n, idx, 2 * c * s)
        L1 = 2 * c * laguerre_derivative(n, idx, 2 * c * s, 1)
        L2 = 4 * c * c * laguerre_derivative(n, idx, 2 * c * s, 2)
        denv = g_env * (eps1 / s - c)
        d2env = g_env * ((eps1 / s - c) ** 2 - eps1 / s**2)
        g = g_env * L
        g1 = denv * L + g_env * L1
        g2 = d2env * L + 2 * denv * L1 + g_env * L2
        phi = g
        d2phi = al**2 * (s * g1 + s * s * g2)
        E = morse_energy(p, n)
        norm = 1.0
    return norm * (-d2phi / (2 * M) + (p.potential(y) - E) * phi), norm * phi


def _check_n(n):
    if int(n) != n or n < 0:
        raise ValueError(f"quantum number n must be a non-negative integer, got {n!r}")
