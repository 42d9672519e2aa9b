"""Command-line front end.

Exit status: 0 success, 1 verification tolerance failure, 2 configuration
error.  Floats are written with 12 significant digits so identical
configurations give byte-identical output.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import sys
from dataclasses import dataclass, field, fields, replace

import numpy as np

from . import oracle, pct
from . import reference as ref
from .mass_profiles import KINDS, MassProfile
from .oracle import fmt
from .reference import KratzerParams, MorseParams, NoBoundStateError

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

POTENTIAL_KEYS = ("De", "ye", "D", "morse_a", "r0", "mu", "hbar")
PROFILE_KEYS = ("a", "q", "b")
SWEEPABLE = POTENTIAL_KEYS + PROFILE_KEYS


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    potential: str = "kratzer"
    De: float = 1.0
    ye: float = 1.0
    D: float = 8.0
    morse_a: float = 1.0
    r0: float = 1.0
    mu: float = 1.0
    hbar: float = 1.0
    profile: str = "uniform"
    a: float = 1.0
    q: float = 1.0
    b: float = 1.0
    n_max: int = 2
    ell: list = field(default_factory=lambda: [0])
    grid_points: int = 4000
    format: str = "csv"
    tol: float = 1e-4
    correction_sign: float = 1.0

    def reference(self, ell: int):
        if self.potential == "kratzer":
            return KratzerParams(self.De, self.ye, ell, self.mu, self.hbar)
        return MorseParams(self.D, self.morse_a, self.r0, ell, self.mu, self.hbar)

    def mass_profile(self) -> MassProfile:
        return MassProfile(self.profile, self.a, self.q, self.b)

    def validate(self) -> "RunConfig":
        if self.potential not in ("kratzer", "morse"):
            raise ConfigError(f"potential: expected 'kratzer' or 'morse', got {self.potential!r}")
        if self.profile not in KINDS:
            raise ConfigError(f"profile: expected one of {KINDS}, got {self.profile!r}")
        if self.n_max < 0:
            raise ConfigError(f"n_max: must be >= 0, got {self.n_max}")
        if self.grid_points < 16:
            raise ConfigError(f"grid_points: must be >= 16, got {self.grid_points}")
        if self.format not in ("csv", "json", "table"):
            raise ConfigError(f"format: expected csv, json or table, got {self.format!r}")
        if not self.tol > 0:
            raise ConfigError(f"tol: must be positive, got {self.tol}")
        for ell in self.ell:
            try:
                self.reference(ell)
            except ValueError as exc:
                raise ConfigError(f"[potential] {exc}") from None
        try:
            self.mass_profile()
        except ValueError as exc:
            raise ConfigError(f"[profile] {exc}") from None
        return self

    def echo(self) -> list[str]:
        keys = ["potential"]
        keys += ["De", "ye"] if self.potential == "kratzer" else ["D", "morse_a", "r0"]
        keys += ["mu", "hbar", "profile"]
        keys += {"uniform": [], "lorentzian": ["a", "q"], "squared_lorentzian": ["a", "b"],
                 "exponential": ["q"]}[self.profile]
        keys += ["n_max", "ell", "grid_points", "tol"]
        out = []
        for k in keys:
            v = getattr(self, k)
            if isinstance(v, float):
                v = fmt(v)
            elif isinstance(v, list):
                v = ",".join(str(i) for i in v)
            out.append(f"{k}={v}")
        if self.correction_sign != 1.0:
            out.append("correction_sign=minus")
        return out


# ---------------------------------------------------------------------------
# config loading
# ---------------------------------------------------------------------------

# section -> {file key: RunConfig attribute}
_FILE_KEYS = {
    "potential": {"kind": "potential", **{k: k for k in POTENTIAL_KEYS}},
    "profile": {"kind": "profile", "a": "a", "q": "q", "b": "b"},
    "states": {"n_max": "n_max", "ell": "ell"},
    "grid": {"n_points": "grid_points"},
    "output": {"format": "format"},
    "tolerances": {"energy_rel": "tol"},
}


def _coerce(attr: str, raw):
    kinds = {f.name: f.type for f in fields(RunConfig)}
    try:
        if attr == "ell":
            if isinstance(raw, list):
                return [int(v) for v in raw]
            return [int(v) for v in str(raw).replace(" ", "").split(",") if v != ""]
        if kinds[attr] == "int":
            return int(raw)
        if kinds[attr] == "float":
            return float(raw)
        return str(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{attr}: cannot interpret {raw!r}") from None


def load_config_file(path: str) -> dict:
    cp = configparser.ConfigParser()
    cp.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"config file {path}: {exc}") from None
    values = {}
    for section in cp.sections():
        if section not in _FILE_KEYS:
            raise ConfigError(f"{path}: unknown section [{section}]")
        for key, raw in cp.items(section):
            attr = _FILE_KEYS[section].get(key)
            if attr is None:
                raise ConfigError(f"{path}: [{section}] unknown key {key!r}")
            values[attr] = _coerce(attr, raw)
    return values


def build_config(args) -> RunConfig:
    values = {}
    if getattr(args, "config", None):
        values.update(load_config_file(args.config))
    if getattr(args, "profile", None):
        spec = args.profile
        if "=" in spec or " " in spec.strip():
            try:
                prof = MassProfile.parse(spec)
            except ValueError as exc:
                raise ConfigError(f"--profile: {exc}") from None
            values.update(profile=prof.kind, a=prof.a, q=prof.q, b=prof.b)
        else:
            values["profile"] = spec
    for attr in ("potential",) + SWEEPABLE + ("n_max", "grid_points", "format", "tol"):
        v = getattr(args, attr, None)
        if v is not None:
            values[attr] = _coerce(attr, v)
    if getattr(args, "ell", None) is not None:
        values["ell"] = _coerce("ell", args.ell)
    if getattr(args, "correction_sign", None) == "minus":
        values["correction_sign"] = -1.0
    return RunConfig(**values).validate()


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def render(cfg: RunConfig, columns, rows, title: str, extra: dict | None = None) -> str:
    """Render rows as CSV (with '#' config echo), JSON, or an aligned table."""
    header = [f"# {title}"] + [f"# {line}" for line in cfg.echo()]
    cells = [[c if isinstance(c, str) else (str(c) if isinstance(c, (int, np.integer)) else fmt(c))
              for c in row] for row in rows]
    if cfg.format == "json":
        body = {"command": title, "config": cfg.echo(), "columns": list(columns),
                "rows": [dict(zip(columns, r)) for r in cells]}
        if extra:
            body.update(extra)
        return json.dumps(body, indent=2) + "\n"
    if cfg.format == "table":
        widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
        lines = header + ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
        lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
        return "\n".join(lines) + "\n"
    lines = header + [",".join(columns)] + [",".join(r) for r in cells]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def spectrum_rows(cfg: RunConfig, notices: list | None = None):
    rows = []
    for ell in cfg.ell:
        p = cfg.reference(ell)
        for n in range(cfg.n_max + 1):
            if isinstance(p, KratzerParams) and p.De == 0:
                rows.append((n, ell, 0.0))
                continue
            try:
                rows.append((n, ell, ref.energy(p, n)))
            except NoBoundStateError:
                if notices is not None:
                    notices.append(f"ell={ell}: levels n>={n} are unbound and omitted ({p.n_bound()} bound levels)")
                break
    return rows


def cmd_spectrum(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    notices = []
    rows = spectrum_rows(cfg, notices)
    for msg in notices:
        print(f"notice: {msg}", file=err)
    out.write(render(cfg, ("n", "ell", "E_analytic"), rows, "spectrum"))
    return EXIT_OK


def wavefunction_table(cfg: RunConfig, n: int, ell: int, coordinate: str, samples: int = 2001):
    p = cfg.reference(ell)
    state = ref.wavefunction(p, n)
    lo, hi = ref.support(p, n, 1e-12)
    if coordinate == "y":
        grid = np.linspace(lo, hi, samples)
        return grid, np.asarray(state(grid))
    tp = pct.make_target(p, cfg.mass_profile(), n_max=n)
    psi = pct.transform_wavefunction(tp, state)
    if isinstance(p, KratzerParams) and math.isinf(tp._x_at(0.0)):
        lo = oracle.kratzer_inner_cut(p, n, 1e-12)
    # stay strictly inside the image, where x is finite
    ilo, ihi = tp.y_image
    pad = 1e-9 * (hi - lo)
    xlo, xhi = tp.x_window(max(lo, ilo + pad), min(hi, ihi - pad))
    grid = np.linspace(xlo, xhi, samples)
    return grid, np.asarray(psi(grid))


def cmd_wavefunction(cfg: RunConfig, n: int, ell: int, coordinate: str, samples: int = 2001,
                     out=sys.stdout) -> int:
    grid, amp = wavefunction_table(cfg, n, ell, coordinate, samples)
    rows = list(zip(grid.tolist(), amp.tolist()))
    out.write(render(cfg, (coordinate, "amplitude"), rows, f"wavefunction n={n} ell={ell}"))
    return EXIT_OK


def verification_reports(cfg: RunConfig):
    npts = cfg.grid_points
    sweep = [npts // 4, npts // 2, npts]
    reports = []
    for ell in cfg.ell:
        p = cfg.reference(ell)
        n_max = cfg.n_max
        if isinstance(p, MorseParams):
            n_max = min(n_max, p.n_bound() - 1)
            if n_max < 0:
                raise ConfigError(f"morse ell={ell}: no bound states")
        tp = pct.make_target(p, cfg.mass_profile(), n_max=n_max, correction_sign=cfg.correction_sign)
        problem = oracle.pdm_problem(tp, n_max)
        reports.append(oracle.convergence_study(problem, sweep))
    return reports


def cmd_verify(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    reports = verification_reports(cfg)
    ok = True
    rows = []
    for rep in reports:
        for r in rep.records:
            state_ok = r.rel_err_extrapolated <= cfg.tol and oracle.ORDER_BAND[0] <= r.order <= oracle.ORDER_BAND[1]
            if not state_ok:
                print(f"FAIL {rep.label}: n={r.n} ell={r.ell} rel_err(extrapolated)={r.rel_err_extrapolated:.3g} "
                      f"order={r.order:.3g} (tol {cfg.tol:g}, order band {oracle.ORDER_BAND})", file=err)
            ok &= state_ok
            rows.append((r.n, r.ell, r.E_analytic, r.E_numeric, r.abs_err, r.rel_err, r.residual, r.order,
                         r.E_extrapolated, "pass" if state_ok else "fail"))
    cols = oracle.CSV_COLUMNS + ("E_extrapolated", "status")
    out.write(render(cfg, cols, rows, "verify", extra={"passed": ok}))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_audit(cfg: RunConfig, out=sys.stdout) -> int:
    records = []
    for ell in cfg.ell:
        p = cfg.reference(ell)
        records.extend(pct.audit_composition(p, cfg.mass_profile()))
    rows = [(r.equation_id, r.verdict, r.max_abs_deviation, r.argmax) for r in records]
    out.write(render(cfg, ("equation", "verdict", "max_deviation", "argmax"), rows, "audit"))
    return EXIT_OK


def cmd_sweep(cfg: RunConfig, parameter: str, values, numeric: bool = False, out=sys.stdout) -> int:
    if parameter not in SWEEPABLE:
        raise ConfigError(f"--param: {parameter!r} is not sweepable; choose from {SWEEPABLE}")
    if not values:
        return EXIT_OK
    rows = []
    for v in values:
        c = replace(cfg, **{parameter: float(v)}).validate()
        energies = {(n, ell): e for n, ell, e in spectrum_rows(c)}
        numeric_e = {}
        if numeric:
            for rep in verification_reports(c):
                for r in rep.records:
                    numeric_e[(r.n, r.ell)] = r.E_extrapolated
        for (n, ell), e in energies.items():
            row = (float(v), n, ell, e)
            if numeric:
                row = row + (numeric_e.get((n, ell), math.nan),)
            rows.append(row)
    cols = (parameter, "n", "ell", "E_analytic") + (("E_numeric",) if numeric else ())
    out.write(render(cfg, cols, rows, f"sweep {parameter}"))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(sp):
    sp.add_argument("--config", help="INI file with [potential] [profile] [states] [grid] [output] [tolerances]")
    sp.add_argument("--potential", choices=("kratzer", "morse"))
    sp.add_argument("--De", type=float, help="Kratzer dissociation energy")
    sp.add_argument("--ye", type=float, help="Kratzer equilibrium separation")
    sp.add_argument("--D", type=float, help="Morse dissociation energy")
    sp.add_argument("--morse-a", dest="morse_a", type=float, help="Morse width parameter")
    sp.add_argument("--r0", type=float, help="Morse equilibrium distance")
    sp.add_argument("--mu", type=float)
    sp.add_argument("--hbar", type=float)
    sp.add_argument("--profile", help="profile kind, or a full spec such as 'lorentzian a=20 q=1'")
    sp.add_argument("--a", type=float, help="profile parameter a")
    sp.add_argument("--q", type=float, help="profile parameter q")
    sp.add_argument("--b", type=float, help="profile parameter b")
    sp.add_argument("--ell", help="comma-separated angular momenta")
    sp.add_argument("--n-max", dest="n_max", type=int)
    sp.add_argument("--grid-points", dest="grid_points", type=int)
    sp.add_argument("--format", choices=("csv", "json", "table"))
    sp.add_argument("--tol", type=float, help="relative energy tolerance for verify")
    sp.add_argument("--correction-sign", dest="correction_sign", choices=("plus", "minus"),
                    help=argparse.SUPPRESS)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pctpdm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("spectrum", help="analytic energies"))
    sp = sub.add_parser("wavefunction", help="sampled analytic wavefunction")
    _add_common(sp)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--coordinate", choices=("y", "x"), default="y")
    sp.add_argument("--samples", type=int, default=2001)
    _add_common(sub.add_parser("verify", help="finite-difference verification of the spectrum"))
    _add_common(sub.add_parser("audit", help="check printed closed-form target potentials"))
    sp = sub.add_parser("sweep", help="energies over a parameter sweep")
    _add_common(sp)
    sp.add_argument("--param", required=True)
    sp.add_argument("--values", default="", help="comma-separated values")
    sp.add_argument("--numeric", action="store_true", help="also run the finite-difference oracle")
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = make_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        if args.command == "spectrum":
            return cmd_spectrum(cfg, out, err)
        if args.command == "wavefunction":
            if len(cfg.ell) != 1:
                raise ConfigError("wavefunction: give exactly one --ell")
            return cmd_wavefunction(cfg, args.n, cfg.ell[0], args.coordinate, args.samples, out)
        if args.command == "verify":
            return cmd_verify(cfg, out, err)
        if args.command == "audit":
            return cmd_audit(cfg, out)
        values = [float(v) for v in args.values.split(",") if v.strip()]
        return cmd_sweep(cfg, args.param, values, args.numeric, out)
    except (ConfigError, NoBoundStateError, pct.CompositionError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
