"""Parameter sweeps, CSV emission and the analytic-vs-simulation report."""

import csv
import dataclasses
import hashlib
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .config import DB_NATIVE, LINK_NODES, Scale, SweepVariable
from .errors import PreconditionError, SecrelayError
from .link import SpeedConvention
from .montecarlo import McSettings, max_workers, mc_intercept_probability
from .secrecy import (
    EvalPath,
    effective_snrs,
    ip_asymptotic_scenario1,
    ip_asymptotic_scenario2,
    ip_exact,
    ip_low_threshold_floor,
    is_ideal,
)

CSV_HEADER = ("sweep_variable", "sweep_value", "path", "ip", "mc_stderr", "gd", "gc", "seed", "config_hash", "error")
Z_GATE = 4.0


@dataclass
class RunRecord:
    index: int
    sweep_variable: str
    sweep_value: float
    config: object
    config_hash: str
    seed: int
    reports: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)
    timestamp: float = 0.0
    version: str = __version__


def config_hash(system):
    """Short stable digest of every input parameter of ``system``."""
    blob = json.dumps(dataclasses.asdict(system), sort_keys=True, default=_jsonable)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _jsonable(obj):
    if isinstance(obj, SpeedConvention):
        return obj.value
    return repr(obj)


def point_seed(root_seed, index):
    """Per-point Monte-Carlo seed derived from the root seed and the point index."""
    ss = np.random.SeedSequence(root_seed, spawn_key=(index,))
    return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))


def _set_links(system, names, **kw):
    return system.with_links(**{n: replace(getattr(system, "link_" + n), **kw) for n in names})


def apply_sweep_value(system, spec, value):
    """Return a copy of ``system`` with the swept parameter set to ``value``."""
    var = spec.variable
    if spec.scale is Scale.DB and var not in DB_NATIVE:
        value = 10.0 ** (value / 10.0)
    if var is SweepVariable.DELTA_LEGIT:
        return _set_links(system, ("sr", "rd"), delta_db=value)
    if var is SweepVariable.DELTA_SR:
        return _set_links(system, ("sr",), delta_db=value)
    if var is SweepVariable.DELTA_RD:
        return _set_links(system, ("rd",), delta_db=value)
    if var is SweepVariable.DELTA_SE1:
        return _set_links(system, ("se1",), delta_db=value)
    if var is SweepVariable.DELTA_RE2:
        return _set_links(system, ("re2",), delta_db=value)
    if var is SweepVariable.GAMMA_TH:
        return replace(system, gamma_th=value)
    if var is SweepVariable.TAU:
        return replace(system, ctx=replace(system.ctx, delay_s=value))
    if var is SweepVariable.FC:
        return replace(system, ctx=replace(system.ctx, carrier_frequency_hz=value))
    if var is SweepVariable.SIGMA_EPS:
        return _set_links(system, spec.links, sigma_eps_sq=value)
    if var is SweepVariable.SPEED:
        if system.ctx.speed_convention is SpeedConvention.EXPLICIT_RELATIVE:
            return _set_links(system, spec.links, speed_a_kmh=value)
        out = system
        for name, (tx, rx) in LINK_NODES.items():
            kw = {}
            if tx in spec.nodes:
                kw["speed_a_kmh"] = value
            if rx in spec.nodes:
                kw["speed_b_kmh"] = value
            if kw:
                out = _set_links(out, (name,), **kw)
        return out
    raise ValueError(f"unsupported sweep variable {var}")


def evaluate_path(system, path, mc=None):
    if path is EvalPath.EXACT:
        return ip_exact(system)
    if path is EvalPath.LOW_THRESHOLD_FLOOR:
        return ip_low_threshold_floor(system)
    if path is EvalPath.ASYMPTOTIC_S1:
        return ip_asymptotic_scenario1(system)
    if path is EvalPath.ASYMPTOTIC_S2:
        if system.link_sr.delta_db != system.link_rd.delta_db:
            raise PreconditionError("scenario II needs equal transmit SNR on both legitimate hops")
        return ip_asymptotic_scenario2(system, system.link_sr.delta_db)
    if path is EvalPath.MONTE_CARLO:
        return mc_intercept_probability(system, mc or McSettings())
    raise ValueError(f"unknown path {path}")


def _evaluate_point(system, variable, value, index, paths, mc):
    seed = point_seed(mc.seed, index)
    rec = RunRecord(
        index=index,
        sweep_variable=variable,
        sweep_value=value,
        config=system,
        config_hash=config_hash(system),
        seed=seed,
        timestamp=time.time(),
    )
    for path in paths:
        try:
            rec.reports[path] = evaluate_path(system, path, replace(mc, seed=seed))
        except SecrelayError as exc:
            rec.errors[path] = f"{type(exc).__name__}: {exc}"
    return rec


def run_sweep(system, spec, mc):
    """Evaluate every requested path at every sweep point.

    Points are independent and run on a thread pool capped by
    ``SECRELAY_THREADS``; records come back in point order. Engine errors
    are stored on the record instead of aborting the sweep.
    """
    grid = [float(v) for v in spec.grid()]
    configs = [apply_sweep_value(system, spec, v) for v in grid]

    def task(i):
        return _evaluate_point(configs[i], spec.variable.value, grid[i], i, spec.paths, mc)

    workers = min(max_workers(), len(grid))
    if workers == 1:
        return [task(i) for i in range(len(grid))]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, range(len(grid))))


def run_single(system, paths, mc):
    """Evaluate the requested paths at one configuration (no sweep)."""
    return [_evaluate_point(system, "none", math.nan, 0, paths, mc)]


def _fmt(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{x:.12g}"


def csv_rows(records):
    for rec in sorted(records, key=lambda r: r.index):
        paths = list(rec.reports) + [p for p in rec.errors if p not in rec.reports]
        order = {p: i for i, p in enumerate(EvalPath)}
        for path in sorted(paths, key=order.get):
            rep = rec.reports.get(path)
            yield (
                rec.sweep_variable,
                _fmt(rec.sweep_value),
                path.value,
                _fmt(rep.ip) if rep else "",
                _fmt(rep.mc_stderr) if rep else "",
                _fmt(rep.terms.get("G_d")) if rep else "",
                _fmt(rep.terms.get("G_c")) if rep else "",
                str(rec.seed),
                rec.config_hash,
                rec.errors.get(path, ""),
            )


def emit_csv(records, path):
    """Write one CSV row per (point, path); numbers carry 12 significant digits."""
    if not records:
        raise ValueError("emit_csv needs at least one record")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            writer.writerows(csv_rows(records))
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write results to {path}: {exc.strerror}") from exc


@dataclass
class ComparisonReport:
    lines: list
    passed: bool

    @property
    def text(self):
        return "\n".join(self.lines)

    def __str__(self):
        return self.text


def compare_report(system, mc, upsilon_scale=1.0, scaled_links=("sr", "rd")):
    """Closed form against Monte-Carlo at one configuration, with a 4-sigma gate.

    ``upsilon_scale`` multiplies the effective SNRs of ``scaled_links`` fed
    to the closed form only; it exists to check that the gate actually
    detects a wrong SNR. Scaling all four links together would mostly
    cancel, since the intercept events compare SNRs with each other.
    """
    ups = {k: s.upsilon for k, s in effective_snrs(system).items()}
    scaled = {k: v * upsilon_scale if k in scaled_links else v for k, v in ups.items()}
    exact = ip_exact(system, upsilons=scaled)
    sim = mc_intercept_probability(system, mc)
    stderr = max(sim.mc_stderr, 1.0 / mc.n_samples)
    z = abs(exact.ip - sim.ip) / stderr
    passed = z <= Z_GATE
    lines = [
        f"exact IP            = {exact.ip:.10g}",
        f"monte-carlo IP      = {sim.ip:.10g} +/- {sim.mc_stderr:.3g} ({mc.n_samples} samples, seed {mc.seed})",
        f"|exact - mc|/stderr = {z:.3f}  -> {'PASS' if passed else 'FAIL'} (gate {Z_GATE:g} sigma)",
    ]
    if upsilon_scale != 1.0:
        lines.append(f"note: closed-form SNRs of {', '.join(scaled_links)} scaled by {upsilon_scale:g}")
    try:
        floor = ip_asymptotic_scenario1(system)
        lines.append(f"mobile-node floor   = {floor.ip:.10g}")
    except SecrelayError:
        pass
    if is_ideal(system) and system.link_sr.delta_db == system.link_rd.delta_db:
        try:
            asym = ip_asymptotic_scenario2(system, system.link_sr.delta_db)
            lines.append(f"static/perfect-CSI asymptote = {asym.aux['asymptote']:.10g}")
            lines.append(f"coding gain = {asym.terms['G_c']:.10g}")
            lines.append(f"diversity order = {int(asym.terms['G_d'])}")
        except SecrelayError:
            pass
    low = ip_low_threshold_floor(system)
    lines.append(f"low-threshold floor = {low.ip:.10g}")
    return ComparisonReport(lines=lines, passed=passed)
