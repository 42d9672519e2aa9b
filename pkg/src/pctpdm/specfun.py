"""Special functions and quadrature used by the analytic wavefunctions.

Laguerre polynomials are evaluated by the upward three-term recurrence,
which stays well conditioned for the degrees needed here; the explicit
finite series cancels badly once ``n`` grows and is only used in tests.
"""

from __future__ import annotations

import math
import warnings
from typing import Callable, Sequence

import numpy as np
from scipy import integrate as _spi


class IntegrationError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


def _check_laguerre_args(n, alpha):
    if int(n) != n or n < 0:
        raise ValueError(f"invalid Laguerre degree n={n!r}: must be a non-negative integer")
    if not alpha > -1:
        raise ValueError(f"invalid Laguerre index alpha={alpha!r}: must exceed -1")


def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial L_n^alpha(x).

    Parameters
    ----------
    n : int
        degree, ``n >= 0``
    alpha : float
        upper index, ``alpha > -1``
    x : float or numpy.ndarray
        evaluation points

    Returns
    -------
    float or numpy.ndarray
        values with the shape of ``x``

    """
    _check_laguerre_args(n, alpha)
    x = np.asarray(x, dtype=float)
    lkm1 = np.ones_like(x)
    if n == 0:
        return lkm1 if lkm1.ndim else float(lkm1)
    lk = 1.0 + alpha - x
    for k in range(2, int(n) + 1):
        lk, lkm1 = ((2 * k - 1 + alpha - x) * lk - (k - 1 + alpha) * lkm1) / k, lk
    return lk if lk.ndim else float(lk)


def laguerre_derivative(n, alpha, x, order=1):
    """``order``-th derivative of L_n^alpha, via d/dx L_n^a = -L_{n-1}^{a+1}."""
    _check_laguerre_args(n, alpha)
    if order > n:
        x = np.asarray(x, dtype=float)
        z = np.zeros_like(x)
        return z if z.ndim else 0.0
    return (-1) ** order * laguerre(n - order, alpha + order, x)


def log_gamma(x):
    """ln Gamma(x) for x > 0.

    Backed by the C library ``lgamma`` (Lanczos-class, relative error near
    machine precision on the positive axis).
    """
    if not x > 0:
        raise ValueError(f"log_gamma domain error: x={x!r} must be positive")
    return math.lgamma(x)


def tail_cutoff(a, decay_rate, tol, scale=1.0):
    """Upper limit B such that an envelope ``scale*exp(-decay_rate*(x-a))``
    integrated over [B, inf) stays below ``tol/10``."""
    if decay_rate <= 0:
        raise ValueError("decay_rate must be positive")
    return a + max(0.0, math.log(10.0 * scale / (decay_rate * tol))) / decay_rate


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    *,
    decay_rate: float | None = None,
    scale: float = 1.0,
    points: Sequence[float] | None = None,
    panels: int = 1,
    limit: int = 500,
) -> float:
    """Adaptive Gauss-Kronrod estimate of the integral of ``f`` over [a, b].

    ``b = inf`` is allowed only with a ``decay_rate`` hint: the integral is
    truncated at :func:`tail_cutoff` so the discarded tail is below tol/10.
    ``points`` are interior breakpoints; ``panels`` further splits the range
    into equal pieces (useful for long, oscillatory integrands).

    Raises
    ------
    IntegrationError
        if the error estimate exceeds ``tol`` after ``limit`` subdivisions.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if math.isinf(b):
        if decay_rate is None:
            raise ValueError("semi-infinite integral needs a decay_rate hint")
        b = tail_cutoff(a, decay_rate, tol, scale)
    if not a < b:
        raise ValueError(f"empty interval [{a}, {b}]")
    edges = set(np.linspace(a, b, panels + 1).tolist())
    if points is not None:
        edges.update(p for p in points if a < p < b)
    edges = sorted(edges)
    npieces = len(edges) - 1
    total, err_total = 0.0, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", _spi.IntegrationWarning)
            val, err = _spi.quad(f, lo, hi, epsabs=0.1 * tol / npieces, epsrel=0.0, limit=limit)
        total += val
        err_total += err
    if not err_total <= tol or not math.isfinite(total):
        raise IntegrationError(
            f"quadrature on [{a}, {b}] did not converge: error estimate {err_total:.3g} > tol {tol:.3g}"
        )
    return total
