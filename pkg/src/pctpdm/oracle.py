"""Finite-difference ground truth for both eigenproblems.

Everything here works on a uniform grid with Dirichlet ends and produces a
symmetric tridiagonal matrix; nothing in this module uses the coordinate
map or the analytic spectra except to *compare* against them.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import reference as ref
from .pct import TargetProblem, target_potential, transform_wavefunction
from .reference import KratzerParams, MorseParams

OVERFLOW_GUARD = 1e250
ORDER_BAND = (1.7, 2.3)


class SingularPotentialError(ValueError):
    """Potential is non-finite or beyond the overflow guard at a grid node."""


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 3:
            raise ValueError("a grid needs at least 3 points")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    @property
    def interior(self) -> np.ndarray:
        return self.nodes[1:-1]


@dataclass
class DiscreteOperator:
    """Symmetric tridiagonal operator on the interior nodes of ``grid``.

    ``boundary_coupling`` holds the (left, right) couplings to the two
    Dirichlet nodes; they are only used when a residual is evaluated on a
    function sampled including its boundary values.
    """

    diagonal: np.ndarray
    off_diagonal: np.ndarray
    grid: Grid
    boundary_coupling: tuple[float, float] = (0.0, 0.0)
    symmetric: bool = True

    @property
    def size(self) -> int:
        return len(self.diagonal)

    def matvec(self, v):
        v = np.asarray(v, dtype=float)
        out = self.diagonal * v
        out[:-1] += self.off_diagonal * v[1:]
        out[1:] += self.off_diagonal * v[:-1]
        return out

    def norm1(self) -> float:
        a = np.abs(self.diagonal).copy()
        a[:-1] += np.abs(self.off_diagonal)
        a[1:] += np.abs(self.off_diagonal)
        return float(a.max())


def _guard(v, where):
    v = np.asarray(v, dtype=float)
    bad = ~np.isfinite(v) | (np.abs(v) > OVERFLOW_GUARD)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise SingularPotentialError(f"potential is singular or overflows at interior node {i} ({where})")
    return v


def discretize_constant_mass(V: Callable, grid: Grid, mu: float = 1.0) -> DiscreteOperator:
    """Three-point stencil for -(1/(2 mu)) d^2/dx^2 + V."""
    k = 1.0 / (2.0 * mu * grid.h**2)
    v = _guard(V(grid.interior), "constant-mass")
    n = grid.n_points - 2
    diag = 2.0 * k + v
    off = np.full(n - 1, -k)
    return DiscreteOperator(diag, off, grid, (-k, -k))


def discretize_pdm(tp: TargetProblem, grid: Grid) -> DiscreteOperator:
    """Flux-form stencil for -(1/(2M)) d/dx (1/m) d/dx + Vt with m at half-nodes."""
    lo, hi = tp.x_domain
    if grid.x_min < lo or grid.x_max > hi:
        raise ValueError(f"{tp.label}: grid [{grid.x_min}, {grid.x_max}] leaves the domain ({lo}, {hi})")
    half = grid.nodes[:-1] + 0.5 * grid.h
    m_half = np.asarray(tp.profile.mass(half))
    if not np.all(m_half > 0):
        raise SingularPotentialError("non-positive mass at a half-node")
    k = 1.0 / (2.0 * tp.reference.mass_scale * grid.h**2)
    w = k / m_half  # length n_points - 1
    v = _guard(target_potential(tp, grid.interior), "position-dependent mass")
    diag = w[:-1] + w[1:] + v
    off = -w[1:-1]
    return DiscreteOperator(diag, off, grid, (-w[0], -w[-1]))


def lowest_eigenpairs(op: DiscreteOperator, k: int):
    """The ``k`` lowest eigenpairs by Sturm-count bisection and inverse iteration.

    Eigenvectors are normalised so that sum(v^2) h = 1, with the first lobe
    positive.  Returns ``(values, vectors)`` with vectors as columns.
    """
    if not 1 <= k <= op.size:
        raise ValueError(f"k={k} out of range 1..{op.size}")
    # absolute bisection tolerance near the underflow threshold: the Sturm
    # count is accurate entrywise, so large graded entries do not cost accuracy
    tol = 4 * np.finfo(float).tiny
    try:
        w, v = eigh_tridiagonal(op.diagonal, op.off_diagonal, select="i", select_range=(0, k - 1),
                                lapack_driver="stebz", tol=tol)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise ConvergenceError(f"tridiagonal eigensolver failed: {exc}") from exc
    h = op.grid.h
    for j in range(k):
        col = v[:, j]
        col /= math.sqrt(h * float(col @ col))
        big = np.nonzero(np.abs(col) > 1e-6 * np.abs(col).max())[0]
        if col[big[0]] < 0:
            col *= -1.0
    return w, v


def residual_norm(op: DiscreteOperator, psi, E: float) -> float:
    """||H psi - E psi|| / ||psi|| in the grid norm.

    ``psi`` is sampled either on the interior nodes (Dirichlet ends implied)
    or on all nodes, in which case the boundary values enter the stencil.
    """
    psi = np.asarray(psi, dtype=float)
    n = op.size
    if len(psi) == n:
        inner = psi
        r = op.matvec(inner) - E * inner
    elif len(psi) == n + 2:
        inner = psi[1:-1]
        r = op.matvec(inner) - E * inner
        r[0] += op.boundary_coupling[0] * psi[0]
        r[-1] += op.boundary_coupling[1] * psi[-1]
    else:
        raise ValueError(f"psi has {len(psi)} samples; operator expects {n} (interior) or {n + 2} (full grid)")
    return float(np.linalg.norm(r) / np.linalg.norm(inner))


# ---------------------------------------------------------------------------
# problems and convergence studies
# ---------------------------------------------------------------------------


@dataclass
class OracleProblem:
    """A discretisable problem with known analytic states.

    ``build`` maps a grid to the operator; ``exact[i]`` samples the i-th
    analytic eigenfunction in the operator's coordinate (or is None).
    """

    label: str
    x_min: float
    x_max: float
    states: list  # (n, ell, E_analytic)
    build: Callable[[Grid], DiscreteOperator]
    exact: list = field(default_factory=list)

    def grid(self, n_points: int) -> Grid:
        return Grid(self.x_min, self.x_max, n_points)


def _exact_list(states_fn, n_max):
    return [states_fn(n) for n in range(n_max + 1)]


def constant_mass_problem(p, n_max: int = 2, x_min=None, x_max=None, support_tol=1e-10) -> OracleProblem:
    """Reference problem in y, with V the reference (Pekeris for Morse) potential."""
    lo, hi = ref.support(p, n_max, support_tol)
    x_min = lo if x_min is None else x_min
    x_max = hi if x_max is None else x_max
    states = [(n, p.ell, ref.energy(p, n)) for n in range(n_max + 1)]
    exact = _exact_list(lambda n: ref.wavefunction(p, n), n_max)
    return OracleProblem(
        f"{p.name} (constant mass)", x_min, x_max, states,
        lambda g: discretize_constant_mass(p.potential, g, p.mass_scale), exact,
    )


def pdm_problem(tp: TargetProblem, n_max: int = 2, support_tol=1e-10) -> OracleProblem:
    """Position-dependent-mass problem on the x-window carrying the states."""
    p = tp.reference
    lo, hi = ref.support(p, n_max, support_tol)
    if isinstance(p, KratzerParams):
        # keep the hard wall when it is reachable at finite x, else cut where
        # the states have decayed
        if math.isinf(tp._x_at(0.0)):
            lo = kratzer_inner_cut(p, n_max, support_tol)
    x_min, x_max = tp.x_window(lo, hi)
    if not (math.isfinite(x_min) and math.isfinite(x_max)):
        raise ValueError(f"{tp.label}: states' support does not map to a finite x-window")
    states = [(n, p.ell, ref.energy(p, n)) for n in range(n_max + 1)]
    exact = [transform_wavefunction(tp, ref.wavefunction(p, n)) for n in range(n_max + 1)]
    return OracleProblem(f"{tp.label} (position-dependent mass)", x_min, x_max, states,
                         lambda g: discretize_pdm(tp, g), exact)


def kratzer_inner_cut(p: KratzerParams, n_max: int, tol: float) -> float:
    """Smallest y below which all states n <= n_max are under tol of their peak."""
    ys = np.geomspace(1e-12, 10 * p.ye, 4000)
    cut = math.inf
    for n in range(n_max + 1):
        st = ref.kratzer_wavefunction(p, n)
        v = np.abs(st(ys))
        peak = np.abs(st(np.linspace(1e-6, 3 * (p.eta + 4 * n) / p.kappa(n), 4000))).max()
        idx = np.nonzero(v >= tol * peak)[0]
        cut = min(cut, ys[idx[0]])
    return float(cut)


def exact_centrifugal_problem(p: MorseParams, n_max: int = 0, support_tol=1e-10) -> OracleProblem:
    """Morse well with the unexpanded barrier; analytic column holds the
    Pekeris energies so the report shows the approximation gap.

    For ell > 0 the barrier confines y to (-1, inf) (r > 0); for ell = 0 the
    potential is the plain Morse well on the whole line.
    """
    lo, hi = ref.support(p, n_max, support_tol)
    if p.ell > 0:
        lo = -1.0
    states = [(n, p.ell, ref.morse_energy(p, n)) for n in range(n_max + 1)]
    return OracleProblem(
        f"morse exact centrifugal (ell={p.ell})", lo, hi + 5.0, states,
        lambda g: discretize_constant_mass(p.exact_potential, g, p.mass_scale), [],
    )


@dataclass
class StateRecord:
    n: int
    ell: int
    E_analytic: float
    E_numeric: float
    abs_err: float
    rel_err: float
    residual: float
    order: float
    E_extrapolated: float = math.nan
    rel_err_extrapolated: float = math.nan


CSV_COLUMNS = ("n", "ell", "E_analytic", "E_numeric", "abs_err", "rel_err", "residual", "order")


@dataclass
class VerificationReport:
    label: str
    n_points: list
    records: list

    def order_ok(self, band=ORDER_BAND) -> bool:
        return all(band[0] <= r.order <= band[1] for r in self.records)

    def passed(self, tol: float, use_extrapolated: bool = False) -> bool:
        key = "rel_err_extrapolated" if use_extrapolated else "rel_err"
        return all(getattr(r, key) <= tol for r in self.records)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.records:
            w.writerow([r.n, r.ell] + [fmt(getattr(r, c)) for c in CSV_COLUMNS[2:]])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"label": self.label, "n_points": list(self.n_points),
                           "records": [asdict(r) for r in self.records]}, indent=2)


def fmt(v) -> str:
    """Fixed 12-significant-digit float formatting used in every table."""
    return f"{float(v):.12g}"


def solve_levels(problem: OracleProblem, n_points: int, k: int | None = None):
    k = len(problem.states) if k is None else k
    g = problem.grid(n_points)
    op = problem.build(g)
    w, v = lowest_eigenpairs(op, k)
    return w, v, op


def convergence_study(problem: OracleProblem, n_points: Sequence[int]) -> VerificationReport:
    """Energies on each grid, Richardson extrapolation on the two finest, and
    the observed order log(|E_c - E|/|E_f - E|)/log(h_c/h_f)."""
    n_points = sorted(n_points)
    if len(n_points) < 3:
        raise ValueError("a convergence study needs at least 3 grid resolutions")
    energies, hs = [], []
    op = None
    for npts in n_points:
        w, _, op = solve_levels(problem, npts)
        energies.append(w)
        hs.append(problem.grid(npts).h)
    coarse, fine = energies[-2], energies[-1]
    ratio = hs[-2] / hs[-1]
    nodes = op.grid.nodes
    records = []
    for i, (n, ell, ea) in enumerate(problem.states):
        ef = float(fine[i])
        ec = float(coarse[i])
        ex = ef + (ef - ec) / (ratio**2 - 1)
        scale = max(abs(ea), 1e-300)
        with np.errstate(divide="ignore"):
            order = math.log(abs(ec - ea) / abs(ef - ea)) / math.log(ratio) if ef != ea else math.inf
        res = math.nan
        if i < len(problem.exact) and problem.exact[i] is not None:
            res = residual_norm(op, np.asarray(problem.exact[i](nodes)), ea)
        records.append(StateRecord(n, ell, ea, ef, abs(ef - ea), abs(ef - ea) / scale, res, order,
                                   ex, abs(ex - ea) / scale))
    return VerificationReport(problem.label, list(n_points), records)


def residual_sweep(problem: OracleProblem, n_points: Sequence[int], state: int = 0, exact=None):
    """Residual of an analytic function on successively refined operators."""
    f = problem.exact[state] if exact is None else exact
    ea = problem.states[state][2]
    out = []
    for npts in n_points:
        g = problem.grid(npts)
        op = problem.build(g)
        out.append(residual_norm(op, np.asarray(f(g.nodes)), ea))
    return out
