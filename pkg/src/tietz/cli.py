"""
Command-line driver.

Usage::

    tietz spectrum CONFIG [--format csv|json] [--out PATH]
    tietz wavefunction CONFIG --nr N --l L [--format csv|json] [--out PATH]
    tietz validate CONFIG [--format csv|json] [--out PATH]

The config is a flat ``key = value`` file with ``#`` comments. Exit codes:
0 success, 1 failure, 2 empty spectrum or no such state.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import ConfigError, DomainError, NoSuchStateError, TietzError
from .oracle import solve_radial
from .potential import (
    CentrifugalScheme,
    MoleculeParams,
    RegimeTag,
    centrifugal_coeffs,
    classify,
    domain_floor,
    effective_potential,
    exact_effective_potential,
    tietz_potential,
)
from .spectrum import RootSearchConfig, bound_states, morse_lambda
from .wavefn import DEFAULT_POINTS, sample_state

__all__ = [
    "HBAR2_OVER_2AMU_ANGSTROM2_CM",
    "RunConfig",
    "load_config",
    "parse_config",
    "dump_config",
    "cmd_spectrum",
    "cmd_wavefunction",
    "cmd_validate",
    "main",
]

# hbar^2 / (2 * 1 u * (1 Angstrom)^2) in cm^-1, from the CODATA 2022 values of
# hbar, the atomic mass constant, h and c.
HBAR2_OVER_2AMU_ANGSTROM2_CM = 16.857629168

EXIT_OK, EXIT_FAIL, EXIT_EMPTY = 0, 1, 2

VALIDATE_TOL = 1e-5
MORSE_VALIDATE_TOL = 1e-4
# Below this lambda * exp(2 alpha re) the Morse formula's dropped boundary
# term is visible at the 1e-5 level.
MORSE_ASYMPTOTIC_LIMIT = 1e4

ORACLE_WIDTH = 60.0  # in units of 1/alpha
SINGULAR_OFFSET = 1e-4  # grid floor offset past r0, in units of 1/alpha

UNIT_SYSTEMS = ("natural", "molecular")
FORMATS = ("csv", "json")

_KNOWN_KEYS = (
    "unit_system",
    "De",
    "re",
    "alpha",
    "q",
    "mass",
    "hbar",
    "l_max",
    "scheme",
    "e_scan_points",
    "energy_rel_tol",
)


@dataclass(frozen=True)
class RunConfig:
    """A validated run. ``molecule`` is already in internal units.

    In molecular units energies are cm^-1, lengths Angstrom and masses amu,
    which fixes ``hbar = sqrt(2 * HBAR2_OVER_2AMU_ANGSTROM2_CM)``.
    """

    molecule: MoleculeParams
    unit_system: str = "natural"
    l_max: int = 0
    scheme: CentrifugalScheme = CentrifugalScheme.GreeneAldrich
    root_search: RootSearchConfig = field(default_factory=RootSearchConfig)
    output_path: Optional[Path] = None
    format: str = "csv"

    def __post_init__(self):
        if self.unit_system not in UNIT_SYSTEMS:
            raise ConfigError("unit_system", f"expected one of {UNIT_SYSTEMS}, got {self.unit_system!r}")
        if self.format not in FORMATS:
            raise ConfigError("format", f"expected one of {FORMATS}, got {self.format!r}")
        if self.l_max < 0:
            raise ConfigError("l_max", "must be >= 0")
        tag = classify(self.molecule).tag
        if self.l_max and tag is not RegimeTag.DeformedManningRosenStrong:
            raise ConfigError("l_max", f"must be 0 in regime {tag.name}")

    @property
    def centrifugal(self):
        if classify(self.molecule).tag is RegimeTag.DeformedManningRosenStrong:
            return centrifugal_coeffs(self.scheme, self.molecule)
        return None


def molecular_hbar():
    return math.sqrt(2.0 * HBAR2_OVER_2AMU_ANGSTROM2_CM)


def _parse_lines(text):
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ConfigError(key, "unknown key")
        if key in out:
            raise ConfigError(key, "given twice")
        out[key] = value
    return out


def _number(raw, key, kind=float, positive=True):
    if key not in raw:
        raise ConfigError(key, "missing")
    try:
        v = kind(raw[key])
    except ValueError:
        raise ConfigError(key, f"not a valid {kind.__name__}: {raw[key]!r}") from None
    if kind is float and not math.isfinite(v):
        raise ConfigError(key, "must be finite")
    if positive and not v > 0:
        raise ConfigError(key, f"must be > 0, got {v!r}")
    return v


def parse_config(text, output_path=None, fmt="csv"):
    """Build a :class:`RunConfig` from the text of a config file."""
    raw = _parse_lines(text)
    unit_system = raw.get("unit_system", "natural")
    if unit_system not in UNIT_SYSTEMS:
        raise ConfigError("unit_system", f"expected one of {UNIT_SYSTEMS}, got {unit_system!r}")
    De, re, alpha = (_number(raw, k) for k in ("De", "re", "alpha"))
    q = _number(raw, "q", positive=False)
    if unit_system == "molecular":
        if "hbar" in raw:
            raise ConfigError("hbar", "only allowed with unit_system = natural")
        mass, hbar = _number(raw, "mass"), molecular_hbar()
    else:
        mass = _number(raw, "mass") if "mass" in raw else 1.0
        hbar = _number(raw, "hbar") if "hbar" in raw else 1.0
    l_max = _number(raw, "l_max", int, positive=False) if "l_max" in raw else 0
    try:
        scheme = CentrifugalScheme(raw.get("scheme", CentrifugalScheme.GreeneAldrich.value))
    except ValueError:
        raise ConfigError("scheme", f"unknown scheme {raw['scheme']!r}") from None
    search = {}
    if "e_scan_points" in raw:
        search["scan_points"] = _number(raw, "e_scan_points", int)
    if "energy_rel_tol" in raw:
        search["energy_rel_tol"] = _number(raw, "energy_rel_tol")
    try:
        molecule = MoleculeParams(De, re, alpha, q, mass, hbar)
        root_search = RootSearchConfig(**search)
    except DomainError as exc:
        raise ConfigError("molecule", str(exc)) from None
    return RunConfig(
        molecule=molecule,
        unit_system=unit_system,
        l_max=l_max,
        scheme=scheme,
        root_search=root_search,
        output_path=Path(output_path) if output_path else None,
        format=fmt,
    )


def load_config(path, output_path=None, fmt="csv"):
    """Read and validate a config file."""
    return parse_config(Path(path).read_text(), output_path, fmt)


def dump_config(cfg):
    """Text that :func:`parse_config` turns back into ``cfg``."""
    m = cfg.molecule
    lines = [
        f"unit_system = {cfg.unit_system}",
        f"De = {m.De!r}",
        f"re = {m.re!r}",
        f"alpha = {m.alpha!r}",
        f"q = {m.q!r}",
        f"mass = {m.mass!r}",
    ]
    if cfg.unit_system == "natural":
        lines.append(f"hbar = {m.hbar!r}")
    lines += [
        f"l_max = {cfg.l_max}",
        f"scheme = {cfg.scheme.value}",
        f"e_scan_points = {cfg.root_search.scan_points}",
        f"energy_rel_tol = {cfg.root_search.energy_rel_tol!r}",
    ]
    return "\n".join(lines) + "\n"


# -- output -------------------------------------------------------------------


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _render(columns, rows, fmt):
    if fmt == "json":
        return json.dumps([dict(zip(columns, r)) for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(_fmt(v) for v in r) + "\n")
    return buf.getvalue()


def _emit(cfg, text):
    if cfg.output_path is None:
        sys.stdout.write(text)
    else:
        cfg.output_path.write_text(text)


def _all_states(cfg):
    m, cc = cfg.molecule, cfg.centrifugal
    states = []
    for l in range(cfg.l_max + 1):
        states.extend(bound_states(m, l, cc, cfg.root_search))
    return states


def cmd_spectrum(cfg):
    """Write ``nr, l, energy, method, residual`` for every bound state."""
    try:
        states = _all_states(cfg)
        if not states:
            print("no bound states", file=sys.stderr)
            return EXIT_EMPTY
        rows = [(s.nr, s.l, float(s.energy), s.method.value, float(s.residual)) for s in states]
        _emit(cfg, _render(("nr", "l", "energy", "method", "residual"), rows, cfg.format))
    except (OSError, TietzError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_wavefunction(cfg, nr, l, n_points=DEFAULT_POINTS):
    """Write ``r, chi`` samples of the normalized ``(nr, l)`` state."""
    try:
        try:
            states = bound_states(cfg.molecule, l, cfg.centrifugal, cfg.root_search)
        except DomainError as exc:
            raise NoSuchStateError(str(exc)) from None
        match = [s for s in states if s.nr == nr]
        if not match:
            raise NoSuchStateError(f"no bound state nr={nr}, l={l}")
        g = sample_state(cfg.molecule, match[0], cfg.centrifugal, n_points)
    except NoSuchStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except TietzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rows = [(float(r), float(v)) for r, v in zip(g.r_values, g.values)]
    try:
        _emit(cfg, _render(("r", "chi"), rows, cfg.format))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _oracle_levels(potential, m, k, floor, offset, threshold):
    levels = solve_radial(
        potential,
        floor,
        m.mass,
        m.hbar,
        k,
        width=ORACLE_WIDTH / m.alpha,
        floor_offset=offset,
        threshold=threshold,
    )
    return list(levels.best) + [math.nan] * (k - len(levels.best))


def validation_tolerance(m):
    if classify(m).tag is RegimeTag.Morse and morse_lambda(m) * math.exp(2 * m.alpha * m.re) < MORSE_ASYMPTOTIC_LIMIT:
        return MORSE_VALIDATE_TOL
    return VALIDATE_TOL


def validation_rows(cfg):
    """``(nr, l, analytic, oracle, rel_deviation, approx_error)`` per state.

    The oracle sees the same potential the analytic result solves. In the
    ``q <= -1`` regime ``approx_error`` is the relative shift between the
    oracle on the approximated and on the true centrifugal term.
    """
    m, cc = cfg.molecule, cfg.centrifugal
    strong = cc is not None
    floor = domain_floor(m)
    offset = SINGULAR_OFFSET / m.alpha if strong else 0.0
    rows = []
    for l in range(cfg.l_max + 1):
        states = bound_states(m, l, cc, cfg.root_search)
        if not states:
            continue
        k = len(states)
        if strong:
            limit = m.De + m.kinetic * l * (l + 1) * cc.C0
            same = _oracle_levels(lambda r, l=l: effective_potential(m, l, cc, r), m, k, floor, offset, limit)
            true = _oracle_levels(lambda r, l=l: exact_effective_potential(m, l, r), m, k, floor, offset, m.De)
        else:
            same = _oracle_levels(lambda r: tietz_potential(m, r), m, k, floor, offset, m.De)
            true = None
        for i, s in enumerate(states):
            e = float(s.energy)
            dev = abs(e - same[i]) / abs(same[i]) if math.isfinite(same[i]) else math.nan
            approx = None
            if true is not None:
                approx = (same[i] - true[i]) / abs(true[i]) if math.isfinite(true[i]) else math.nan
            rows.append((s.nr, s.l, e, float(same[i]), dev, approx))
    return rows


def cmd_validate(cfg):
    """Compare analytic energies with the finite-difference oracle.

    Exit 0 iff every same-potential deviation is within tolerance.
    """
    try:
        rows = validation_rows(cfg)
        _emit(
            cfg,
            _render(("nr", "l", "analytic", "oracle", "rel_deviation", "approx_error"), rows, cfg.format),
        )
    except (OSError, TietzError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if not rows:
        return EXIT_EMPTY
    tol = validation_tolerance(cfg.molecule)
    return EXIT_OK if all(r[4] <= tol for r in rows) else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="tietz", description="Bound states of the improved Tietz potential.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("config", help="flat key = value config file")
        sp.add_argument("--format", choices=FORMATS, default="csv")
        sp.add_argument("--out", default=None, help="output path (default: stdout)")

    common(sub.add_parser("spectrum", help="list bound-state energies"))
    wf = sub.add_parser("wavefunction", help="sample one normalized wavefunction")
    common(wf)
    wf.add_argument("--nr", type=int, required=True)
    wf.add_argument("--l", type=int, default=0)
    common(sub.add_parser("validate", help="compare against the finite-difference oracle"))
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.out, args.format)
    except (OSError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.command == "spectrum":
        return cmd_spectrum(cfg)
    if args.command == "wavefunction":
        return cmd_wavefunction(cfg, args.nr, args.l)
    return cmd_validate(cfg)


if __name__ == "__main__":
    sys.exit(main())
