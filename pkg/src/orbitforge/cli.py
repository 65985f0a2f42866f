"""Command-line front end: configuration, subcommand dispatch, reports, plots.

Subcommands
-----------
constants   coefficient table A_k, c_k (csv/json; svg = curvature sweep)
operators   bracket and Casimir certification report
carleman    divergence scan table (csv/json/svg) with the gauge check
orbit       orbit samples for a word or a half-plane grid (json/csv)
flow        frame transport along a constant coframe
spherical   radial profile against the orbit coordinate (csv/json/svg)
verify      geometric suites; exit 0 only if every check passes
area        sharp area constants and the octagon quadrature

Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.
Named tolerances are overridable with --tolerance NAME=VALUE; flags beat the
JSON config file (--config), which beats built-in defaults.  The environment
variable ORBITFORGE_THREADS caps internal parallelism (default: serial).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .group import GroupWord, HalfPlanePoint, mobius_apply
from .operators import IndexWindow, build_skew_basis, carleman_scan, commutator_residuals, \
    graded_laplacian_check
from .orbit import OrbitEmbedding, cross_validate, frame_flow
from .params import SeriesParam, a_sequence, c_coeff, curvature_from_series, \
    series_from_curvature
from .spherical import compare_spherical
from .verify import Report, area_rigidity, gauss_curvature_fd, gram_pairings, \
    minimality_residual, octagon_area_quadrature, pullback_metric

DEFAULT_TOLERANCES = {
    "bracket": 1e-12,
    "casimir": 1e-11,
    "skew": 0.0,
    "real_structure": 0.0,
    "norm": 1e-12,
    "metric": 1e-4,
    "metric_offdiag": 1e-5,
    "curvature_rel": 1e-2,
    "minimality": 1e-3,
    "gram": 1e-8,
    "spherical": 1e-5,
    "spherical_imag": 1e-10,
    "carleman_ratio": 0.1,
    "carleman_doubling": 0.2,
    "cross_validation": 1e-6,
    "area": 1e-6,
}

DEFAULTS = {
    "curvature": None,
    "series": None,
    "value": None,
    "trunc": 256,
    "margin": 2,
    "tail_eps": 1e-10,
    "suite": "all",
    "out": None,
    "format": None,
    "t_max": 3.0,
    "steps": 1000,
    "genus": 2,
    "nmax": 10**6,
    "kmax": 8,
    "coframe": None,
    "word": None,
    "grid": None,
    "frame_cols": 12,
    "tolerance": [],
    "config": None,
}


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    series_param: SeriesParam = None
    trunc: int = 256
    margin: int = 2
    tail_eps: float = 1e-10
    suite: str = "all"
    out: str = None
    format: str = None
    t_max: float = 3.0
    steps: int = 1000
    genus: int = 2
    nmax: int = 10**6
    kmax: int = 8
    coframe: tuple = None
    word: GroupWord = None
    grid: list = None
    frame_cols: int = 12
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    @property
    def window(self) -> IndexWindow:
        return IndexWindow(self.trunc, self.margin)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ORBITFORGE_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items):
    items = list(items)
    n = _threads()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# configuration assembly


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitforge",
        description="construct and verify constant negative curvature minimal "
                    "surfaces in truncated Hilbert spheres",
    )
    parser.add_argument("--version", action="version", version=f"orbitforge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("constants", "coefficient recursion table"),
        ("operators", "bracket and Casimir certification"),
        ("carleman", "divergence scan for essential self-adjointness"),
        ("orbit", "orbit samples for a word or grid"),
        ("flow", "frame transport along a constant coframe"),
        ("spherical", "radial profile vs orbit coordinate"),
        ("verify", "geometric verification suites"),
        ("area", "area rigidity constants and octagon quadrature"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", help="JSON config file (flags take precedence)")
        p.add_argument("--curvature", type=float, help="Gaussian curvature K < 0")
        p.add_argument("--series", choices=["principal", "complementary"],
                       help="parameter branch (with --value)")
        p.add_argument("--value", type=float, help="tau or sigma for --series")
        p.add_argument("--trunc", type=int, help="window half-width N")
        p.add_argument("--margin", type=int, help="interior buffer for operator tests")
        p.add_argument("--tail-eps", type=float, dest="tail_eps", help="tail mass bound")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=["json", "csv", "svg", "text"], help="output format")
        p.add_argument("--t-max", type=float, dest="t_max", help="parameter range for flows")
        p.add_argument("--steps", type=int, help="integrator step count")
        p.add_argument("--tolerance", action="append", default=None, metavar="NAME=VALUE",
                       help="override a named tolerance (repeatable)")
        if name == "verify":
            p.add_argument("--suite", help="one of metric,curvature,minimality,gram,"
                                           "spherical,operators,carleman,cross,structure,area or 'all'")
            p.add_argument("--genus", type=int, help="genus >= 2 for the area suite")
            p.add_argument("--nmax", type=int, help="endpoint of the carleman suite")
            p.add_argument("--kmax", type=int, help="largest pairing index for the gram suite")
        if name == "area":
            p.add_argument("--genus", type=int, help="genus >= 2")
        if name == "carleman":
            p.add_argument("--nmax", type=int, help="scan endpoint (>= 100)")
        if name == "constants":
            p.add_argument("--kmax", type=int, help="largest coefficient index")
        if name == "orbit":
            p.add_argument("--word", help="JSON word: [{\"basis\":[a,b,c],\"t\":...},...]")
            p.add_argument("--grid", help="half-plane samples 'x,y;x,y;...'")
        if name == "flow":
            p.add_argument("--coframe", help="constant coframe 'w1,w2,rho'")
            p.add_argument("--frame-cols", type=int, dest="frame_cols",
                           help="half-width of the unitarity-checked block")
    return parser


def _merge_config(args: argparse.Namespace) -> RunConfig:
    merged = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}")
        unknown = set(file_cfg) - set(DEFAULTS) - {"tolerances"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        merged.update(file_cfg)
    for key in DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag

    needs_param = args.command != "area"
    series_param = None
    if needs_param:
        if (merged["curvature"] is None) == (merged["series"] is None):
            raise ConfigError("exactly one of --curvature and --series/--value is required")
        if merged["series"] is not None:
            if merged["value"] is None:
                raise ConfigError("--series requires --value")
            series_param = SeriesParam(merged["series"], float(merged["value"]))
        else:
            if merged["curvature"] >= 0:
                raise ConfigError("curvature must be negative")
            series_param = series_from_curvature(merged["curvature"])

    tolerances = dict(DEFAULT_TOLERANCES)
    tolerances.update(merged.get("tolerances") or {})
    for item in merged["tolerance"] or []:
        name, _, value = item.partition("=")
        if name not in tolerances:
            raise ConfigError(f"unknown tolerance {name!r}; known: {sorted(tolerances)}")
        try:
            tolerances[name] = float(value)
        except ValueError:
            raise ConfigError(f"bad tolerance value in {item!r}")
    if any(v < 0 for v in tolerances.values()):
        raise ConfigError("tolerances must be nonnegative")

    try:
        cfg = RunConfig(
            series_param=series_param,
            trunc=int(merged["trunc"]),
            margin=int(merged["margin"]),
            tail_eps=float(merged["tail_eps"]),
            suite=str(merged["suite"]),
            out=merged["out"],
            format=merged["format"],
            t_max=float(merged["t_max"]),
            steps=int(merged["steps"]),
            genus=int(merged["genus"]),
            nmax=int(merged["nmax"]),
            kmax=int(merged["kmax"]),
            coframe=_parse_triple(merged["coframe"]) if merged["coframe"] else None,
            word=GroupWord.from_json(json.loads(merged["word"])) if merged["word"] else None,
            grid=_parse_grid(merged["grid"]) if merged["grid"] else None,
            frame_cols=int(merged["frame_cols"]),
            tolerances=tolerances,
        )
        if cfg.trunc < 16:
            raise ConfigError("--trunc must be at least 16")
        cfg.window  # validates margin against trunc
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise ConfigError(str(exc))
    return cfg


def _parse_triple(text) -> tuple:
    parts = [float(x) for x in str(text).split(",")]
    if len(parts) != 3:
        raise ConfigError(f"expected 'w1,w2,rho', got {text!r}")
    return tuple(parts)


def _parse_grid(text) -> list:
    pts = []
    for chunk in str(text).split(";"):
        x, y = (float(v) for v in chunk.split(","))
        pts.append(HalfPlanePoint(x, y))
    return pts


# ---------------------------------------------------------------------------
# output helpers


def _emit(cfg: RunConfig, text: str):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(cfg: RunConfig, payload: dict):
    _emit(cfg, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _emit_svg(cfg: RunConfig, draw):
    if not cfg.out:
        raise ConfigError("--format svg requires --out")
    import matplotlib
    matplotlib.use("SVG")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    draw(ax)
    fig.tight_layout()
    fig.savefig(cfg.out, format="svg")
    plt.close(fig)


def _print_report(report: Report):
    for c in report.checks:
        status = "pass" if c.passed else "FAIL"
        line = (f"[{status}] {c.name}: value={c.value:.6g} expected={c.expected:.6g} "
                f"tol={c.tolerance:.2g}  ({c.statement})")
        print(line, file=sys.stderr)


def _finish_report(cfg: RunConfig, report: Report) -> int:
    _print_report(report)
    if cfg.format in (None, "json"):
        _emit_json(cfg, report.as_dict())
    return 0 if report.passed else 1


def _param_dict(cfg: RunConfig) -> dict:
    lam, c, K = curvature_from_series(cfg.series_param)
    return {
        "kind": cfg.series_param.kind,
        "value": cfg.series_param.value,
        "eigenvalue": lam,
        "conformal_factor": c,
        "curvature": K,
        "trunc": cfg.trunc,
        "margin": cfg.margin,
    }


# ---------------------------------------------------------------------------
# subcommands


def _cmd_constants(cfg: RunConfig) -> int:
    K = cfg.series_param.curvature
    coeffs = a_sequence(K, cfg.kmax)
    if cfg.format == "svg":
        def draw(ax):
            taus = np.linspace(0.0, 1.5, 120)
            sigmas = np.linspace(0.0, 0.49, 120)
            s2 = np.concatenate([-(taus[::-1] ** 2), sigmas**2])
            ax.plot(s2, -8.0 / (1.0 - 4.0 * s2))
            ax.axvline(0.0, color="gray", lw=0.5)
            ax.set_xlabel("s^2  (negative: principal, positive: complementary)")
            ax.set_ylabel("curvature K")
            ax.set_title("curvature dictionary K = -8/(1 - 4 s^2)")
        _emit_svg(cfg, draw)
        return 0
    if cfg.format == "json":
        _emit_json(cfg, {
            "curvature": K,
            "a_seq": list(coeffs.a_seq),
            "c_seq": [c_coeff(K, p) for p in range(1, cfg.kmax + 1)],
        })
        return 0
    lines = ["k,A_k,c_k"]
    for k in range(cfg.kmax + 1):
        ck = "" if k == 0 else f"{c_coeff(K, k):.17g}"
        lines.append(f"{k},{coeffs.a_seq[k]:.17g},{ck}")
    _emit(cfg, "\n".join(lines) + "\n")
    return 0


def _cmd_operators(cfg: RunConfig) -> int:
    K = cfg.series_param.curvature
    window = cfg.window
    report = Report(suite="operators", params=_param_dict(cfg))
    brackets = commutator_residuals(K, window)
    for name, res in brackets.residuals.items():
        report.add(f"bracket {name}", f"{name} = 0 on |k| <= {brackets.interior_half_width}",
                   res, 0.0, cfg.tolerances["bracket"])
    casimir = graded_laplacian_check(K, window)
    for name, res in casimir.residuals.items():
        report.add(f"casimir {name}", f"{name} = 0 on |k| <= {casimir.interior_half_width}",
                   res, 0.0, cfg.tolerances["casimir"])
    for label, op in zip(("f1", "f2", "f3"), build_skew_basis(K, window)):
        report.add(f"skew {label}", "entry(j,k) = -conj(entry(k,j))",
                   op.skew_defect(), 0.0, cfg.tolerances["skew"])
        report.add(f"real structure {label}", "J F J = F for (Jx)_k = conj(x_{-k})",
                   op.real_structure_defect(), 0.0, cfg.tolerances["real_structure"])
    return _finish_report(cfg, report)


def _cmd_carleman(cfg: RunConfig) -> int:
    scan = carleman_scan(cfg.series_param.curvature, cfg.nmax)
    if cfg.format == "svg":
        def draw(ax):
            ns = [r[0] for r in scan.rows]
            ratios = [r[2] for r in scan.rows]
            ax.semilogx(ns, ratios, marker="o")
            ax.axhline(1.0, color="gray", lw=0.5)
            ax.set_xlabel("N")
            ax.set_ylabel("S(N) / ((2/sqrt|K|) ln N)")
            ax.set_title("divergence of sum 1/b_k")
        _emit_svg(cfg, draw)
        return 0
    if cfg.format == "json":
        _emit_json(cfg, {
            "curvature": scan.curvature,
            "rows": [list(r) for r in scan.rows],
            "gauge_half_width": scan.gauge_half_width,
            "gauge_positive": scan.gauge_positive,
        })
        return 0
    _emit(cfg, "\n".join(scan.csv_lines()) + "\n")
    return 0


def _orbit_payload(cfg: RunConfig, vectors, points) -> dict:
    return {
        "s": {"kind": cfg.series_param.kind, "value": cfg.series_param.value},
        "N": cfg.trunc,
        "points": [
            {"x": p.x, "y": p.y, "coords": [[z.real, z.imag] for z in vec]}
            for p, vec in zip(points, vectors)
        ],
    }


def _cmd_orbit(cfg: RunConfig) -> int:
    emb = OrbitEmbedding(series=cfg.series_param, truncation=cfg.trunc, margin=cfg.margin,
                         tail_eps=cfg.tail_eps, auto_grow=False).fit()
    if cfg.word is not None:
        vectors = [emb.orbit_point(cfg.word)]
        points = [mobius_apply(cfg.word.matrix(), HalfPlanePoint(0.0, 1.0))]
    elif cfg.grid is not None:
        vectors = _map(emb.point_vector, cfg.grid)
        points = cfg.grid
    else:
        raise ConfigError("orbit requires --word or --grid")
    if cfg.format == "csv":
        ks = range(-cfg.trunc, cfg.trunc + 1)
        header = "x,y," + ",".join(f"k_re_{k},k_im_{k}" for k in ks)
        lines = [header]
        for p, vec in zip(points, vectors):
            flat = ",".join(f"{z.real:.17g},{z.imag:.17g}" for z in vec)
            lines.append(f"{p.x:.17g},{p.y:.17g},{flat}")
        _emit(cfg, "\n".join(lines) + "\n")
    else:
        _emit_json(cfg, _orbit_payload(cfg, vectors, points))
    return 0


def _cmd_flow(cfg: RunConfig) -> int:
    coframe = cfg.coframe
    if coframe is None:
        coframe = (1.0 / math.sqrt(abs(cfg.series_param.curvature)), 0.0, 0.0)
    state = frame_flow(cfg.series_param, cfg.window, coframe, cfg.t_max, cfg.steps,
                       frame_half_width=cfg.frame_cols)
    _emit_json(cfg, {
        "coframe": list(state.coframe),
        "t": state.t,
        "steps": cfg.steps,
        "frame_half_width": state.frame_half_width,
        "unitarity_drift": state.unitarity_drift,
        "column0": [[z.real, z.imag] for z in state.columns[:, cfg.trunc]],
    })
    return 0


def _cmd_spherical(cfg: RunConfig) -> int:
    comparison = compare_spherical(cfg.series_param, cfg.window, cfg.t_max, cfg.steps)
    if cfg.format == "svg":
        def draw(ax):
            ax.plot(comparison.ts, comparison.phi, label="radial ODE")
            ax.plot(comparison.ts, comparison.orbit_coordinate, "--", label="orbit coordinate")
            ax.set_xlabel("t")
            ax.set_ylabel("phi_s(t)")
            ax.legend()
            ax.set_title(f"spherical profile, {cfg.series_param.label}")
        _emit_svg(cfg, draw)
        return 0
    if cfg.format == "json":
        _emit_json(cfg, {
            "params": _param_dict(cfg),
            "max_abs_error": comparison.max_abs_error,
            "max_imag": comparison.max_imag,
            "rows": [
                [float(t), float(p), float(o), float(e)]
                for t, p, o, e in zip(comparison.ts, comparison.phi,
                                      comparison.orbit_coordinate, comparison.abs_error)
            ],
        })
        return 0
    _emit(cfg, "\n".join(comparison.csv_lines()) + "\n")
    return 0


def _cmd_area(cfg: RunConfig) -> int:
    bound, hyperbolic = area_rigidity(cfg.genus)
    octagon = octagon_area_quadrature(cfg.tolerances["area"])
    if cfg.format in (None, "text"):
        print(f"{_pi_multiple(cfg.genus - 1, 2)} {_pi_multiple(4 * (cfg.genus - 1), 1)} 0.125")
    report = Report(suite="area", params={"genus": cfg.genus})
    report.add("area bound", "Area >= (pi/4) |chi|", bound,
               math.pi / 4.0 * (2 * cfg.genus - 2), 0.0)
    report.add("hyperbolic area", "Area(g_hyp) = 2 pi |chi|", hyperbolic,
               2.0 * math.pi * (2 * cfg.genus - 2), 0.0)
    report.add("rescaling ratio", "bound / hyperbolic = 1/8", bound / hyperbolic, 0.125, 0.0)
    report.add("octagon quadrature", "area(octagon, pi/4 angles) = 4 pi", octagon,
               4.0 * math.pi, cfg.tolerances["area"])
    report.add("octagon rescaled", "area / 8 = (pi/4) |chi(genus 2)|", octagon / 8.0,
               math.pi / 2.0, cfg.tolerances["area"])
    if cfg.format == "json":
        _print_report(report)
        _emit_json(cfg, report.as_dict())
        return 0 if report.passed else 1
    return 0 if report.passed else 1


def _pi_multiple(num: int, den: int) -> str:
    frac = Fraction(num, den)
    n, d = frac.numerator, frac.denominator
    core = "pi" if n == 1 else f"{n}*pi"
    return core if d == 1 else f"{core}/{d}"


# ---------------------------------------------------------------------------
# verification suites


def _suite_metric(cfg, report, emb):
    c = cfg.series_param.conformal_factor
    for p, scale in ((HalfPlanePoint(0.0, 1.0), 1.0), (HalfPlanePoint(0.0, 2.0), 0.25)):
        m = pullback_metric(cfg.series_param, cfg.window, p, embedding=emb)
        report.add(f"metric g11 at (0,{p.y:g})", "u* g_H = c g_0",
                   m.g11, c * scale, cfg.tolerances["metric"])
        report.add(f"metric g22 at (0,{p.y:g})", "u* g_H = c g_0",
                   m.g22, c * scale, cfg.tolerances["metric"])
        report.add(f"metric g12 at (0,{p.y:g})", "conformality: g12 = 0",
                   m.g12, 0.0, cfg.tolerances["metric_offdiag"])
    # conformality across a 5x5 grid around (0, 1); stencil width h = 1e-3
    offsets = [(dx, dy) for dx in np.linspace(-0.02, 0.02, 5) for dy in np.linspace(-0.02, 0.02, 5)]
    samples = _map(
        lambda d: pullback_metric(cfg.series_param, cfg.window,
                                  (d[0], 1.0 + d[1]), embedding=emb),
        offsets,
    )
    worst = max(s.conformal_defect / s.g11 for s in samples)
    report.add("conformality grid", "|g12|/g11 and |g11-g22|/g11 <= 10 h^2 on a 5x5 patch",
               worst, 0.0, 10.0 * (1e-3) ** 2)


def _suite_curvature(cfg, report, emb):
    K = cfg.series_param.curvature
    est = gauss_curvature_fd(cfg.series_param, cfg.window, (0.0, 1.0), embedding=emb)
    report.add("gaussian curvature", "K = -8/(1 - 4 s^2)",
               est, K, cfg.tolerances["curvature_rel"] * abs(K))


def _suite_minimality(cfg, report, emb):
    r1, r2 = minimality_residual(cfg.series_param, cfg.window, (0.0, 1.0), embedding=emb)
    report.add("laplace eigen-residual", "Delta_{g0} u = -lambda u",
               r1, 0.0, cfg.tolerances["minimality"])
    report.add("induced-metric residual", "Delta_{u*g} u = -2 u",
               r2, 0.0, cfg.tolerances["minimality"] / cfg.series_param.conformal_factor)


def _suite_gram(cfg, report, emb):
    scale = 1.0 / math.sqrt(abs(cfg.series_param.curvature))
    state = frame_flow(cfg.series_param, cfg.window, (scale, 0.0, 0.0), 1.0, cfg.steps,
                       frame_half_width=cfg.kmax + 4)
    g = gram_pairings(state, cfg.kmax)
    for statement, value in g.as_dict().items():
        if statement == "kmax":
            continue
        report.add(f"gram {statement}", statement, value, 0.0, cfg.tolerances["gram"])


def _suite_spherical(cfg, report, emb):
    comparison = compare_spherical(cfg.series_param, cfg.window, cfg.t_max,
                                   max(cfg.steps, 100), embedding=emb)
    report.add("spherical agreement", "<u(exp(t s1)) v, v> = phi_s(t)",
               comparison.max_abs_error, 0.0, cfg.tolerances["spherical"])
    report.add("spherical realness", "radial matrix coefficient is real",
               comparison.max_imag, 0.0, cfg.tolerances["spherical_imag"])


def _suite_operators(cfg, report, emb):
    K = cfg.series_param.curvature
    brackets = commutator_residuals(K, cfg.window)
    report.add("bracket residual", "all nine bracket identities on interior columns",
               brackets.max_residual, 0.0, cfg.tolerances["bracket"])
    casimir = graded_laplacian_check(K, cfg.window)
    report.add("casimir residual", "phi = -2 I and [phi, .] = 0 on interior columns",
               casimir.max_residual, 0.0, cfg.tolerances["casimir"])
    worst_skew = max(op.skew_defect() for op in build_skew_basis(K, cfg.window))
    report.add("skew-Hermitian truncation", "entry(j,k) = -conj(entry(k,j))",
               worst_skew, 0.0, cfg.tolerances["skew"])


def _suite_carleman(cfg, report, emb):
    scan = carleman_scan(cfg.series_param.curvature, cfg.nmax)
    report.add("carleman ratio", "S(N) ~ (2/sqrt|K|) ln N",
               scan.rows[-1][2], 1.0, cfg.tolerances["carleman_ratio"])
    if cfg.nmax >= 10**6:
        s_1e3 = next(s for n, s, _ in scan.rows if n == 10**3)
        report.add("carleman doubling", "S(10^6)/S(10^3) ~ 2 (log growth)",
                   scan.rows[-1][1] / s_1e3, 2.0, cfg.tolerances["carleman_doubling"])
    report.add("gauge positivity", "sign flip e_{1-2k} -> -e_{1-2k} makes t_x - t_y a "
               "positive-offdiagonal Jacobi matrix", float(scan.gauge_positive), 1.0, 0.0)


def _suite_cross(cfg, report, emb):
    cv = cross_validate(cfg.series_param, cfg.window, min(cfg.t_max, 1.0), cfg.steps)
    report.add("flow vs exponential (sigma1)", "frame transport = orbit map",
               cv.sigma1_discrepancy, 0.0, cfg.tolerances["cross_validation"])
    report.add("flow vs exponential (sigma2)", "frame transport = orbit map",
               cv.sigma2_discrepancy, 0.0, cfg.tolerances["cross_validation"])


def _suite_structure(cfg, report, emb):
    words = [
        GroupWord.identity(),
        GroupWord.from_json([{"basis": [1, 0, 0], "t": 0.8}]),
        GroupWord.from_json([{"basis": [0.3, -0.4, 0.9], "t": 1.1},
                             {"basis": [0, 1, 0], "t": -0.5}]),
    ]
    vecs = [emb.orbit_point(w) for w in words]
    report.add("orbit norm", "|u| = 1 structurally",
               max(abs(np.linalg.norm(v) - 1.0) for v in vecs), 0.0, cfg.tolerances["norm"])
    report.add("orbit real structure", "x_k = conj(x_{-k})",
               max(float(np.abs(v - np.conj(v[::-1])).max()) for v in vecs),
               0.0, cfg.tolerances["norm"])
    fiber = emb.orbit_point(words[1] * GroupWord.from_json([{"basis": [0, 0, 1], "t": 2.2}]))
    report.add("fiber stationarity", "appending exp(t sigma3) fixes the orbit point",
               float(np.abs(fiber - vecs[1]).max()), 0.0, cfg.tolerances["norm"])


SUITES = {
    "metric": _suite_metric,
    "curvature": _suite_curvature,
    "minimality": _suite_minimality,
    "gram": _suite_gram,
    "spherical": _suite_spherical,
    "operators": _suite_operators,
    "carleman": _suite_carleman,
    "cross": _suite_cross,
    "structure": _suite_structure,
}


def _cmd_verify(cfg: RunConfig) -> int:
    names = list(SUITES) + ["area"] if cfg.suite == "all" else cfg.suite.split(",")
    unknown = [n for n in names if n not in SUITES and n != "area"]
    if unknown:
        raise ConfigError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)} or 'all'")
    report = Report(suite=cfg.suite, params=_param_dict(cfg))
    emb = OrbitEmbedding(series=cfg.series_param, truncation=cfg.trunc, margin=cfg.margin,
                         tail_eps=cfg.tail_eps, auto_grow=False).fit()
    for name in names:
        if name == "area":
            octagon = octagon_area_quadrature(cfg.tolerances["area"])
            report.add("octagon quadrature", "area(octagon, pi/4 angles) = 4 pi",
                       octagon, 4.0 * math.pi, cfg.tolerances["area"])
            bound, hyperbolic = area_rigidity(cfg.genus)
            report.add("rescaling ratio", "bound / hyperbolic = 1/8",
                       bound / hyperbolic, 0.125, 0.0)
        else:
            SUITES[name](cfg, report, emb)
    return _finish_report(cfg, report)


# ---------------------------------------------------------------------------


_COMMANDS = {
    "constants": _cmd_constants,
    "operators": _cmd_operators,
    "carleman": _cmd_carleman,
    "orbit": _cmd_orbit,
    "flow": _cmd_flow,
    "spherical": _cmd_spherical,
    "verify": _cmd_verify,
    "area": _cmd_area,
}


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _merge_config(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OverflowError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
