"""Flat ``key = value`` configuration files with dotted keys.

Example::

    # two-hop link at 40 dB, eavesdroppers at 0 / 20 dB
    gamma_th = 3
    links.delta_db = 40
    link_se1.delta_db = 0
    link_re2.delta_db = 20
    sweep.variable = DELTA_SE1
    sweep.start = 0
    sweep.stop = 40
    sweep.points = 21
    sweep.paths = EXACT, MONTE_CARLO

Keys left out take the default network parameters (2.4 GHz, 1 ms delay,
25 km/h per node, m = 2, omega = 2, sigma_eps^2 = 0.1, 4 antennas at the
relay and destination, 2 at each eavesdropper, 30 dB legitimate and 10 dB
wiretap transmit SNR, linear decoding threshold 3).

Precedence, lowest first: defaults, preset, ``links.*`` (all four links),
``node.*`` (per-node speeds), ``link_<name>.*``. The decoding threshold
``gamma_th`` is a linear SNR, not dB.
"""

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError
from .link import AUTO, LinkParams, MobilityContext, SpeedConvention
from .montecarlo import McSettings
from .secrecy import LINK_NAMES, EvalPath, SystemConfig

# (transmitter, receiver) node of every link
LINK_NODES = {"sr": ("S", "R"), "rd": ("R", "D"), "se1": ("S", "E1"), "re2": ("R", "E2")}
NODES = ("S", "R", "D", "E1", "E2")

LINK_FIELDS = {
    "m": float,
    "omega": float,
    "n_rx": int,
    "sigma_eps_sq": float,
    "sigma_w_sq": "auto_or_float",
    "delta_db": float,
    "speed_a_kmh": float,
    "speed_b_kmh": float,
}


class SweepVariable(enum.Enum):
    DELTA_LEGIT = "DELTA_LEGIT"
    DELTA_SR = "DELTA_SR"
    DELTA_RD = "DELTA_RD"
    DELTA_SE1 = "DELTA_SE1"
    DELTA_RE2 = "DELTA_RE2"
    GAMMA_TH = "GAMMA_TH"
    TAU = "TAU"
    FC = "FC"
    SPEED = "SPEED"
    SIGMA_EPS = "SIGMA_EPS"


class Scale(enum.Enum):
    LINEAR = "LINEAR"
    LOG = "LOG"
    DB = "DB"


DB_NATIVE = {
    SweepVariable.DELTA_LEGIT,
    SweepVariable.DELTA_SR,
    SweepVariable.DELTA_RD,
    SweepVariable.DELTA_SE1,
    SweepVariable.DELTA_RE2,
}


@dataclass(frozen=True)
class SweepSpec:
    variable: SweepVariable
    start: float
    stop: float
    points: int
    scale: Scale = Scale.LINEAR
    paths: tuple = (EvalPath.EXACT,)
    nodes: tuple = NODES
    links: tuple = LINK_NAMES

    def __post_init__(self):
        if self.points < 2:
            raise ConfigError(f"sweep needs at least 2 points, got {self.points}")
        if not self.start < self.stop:
            raise ConfigError(f"sweep start ({self.start}) must be below stop ({self.stop})")

    def grid(self):
        if self.scale is Scale.LOG:
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class RunConfig:
    system: SystemConfig = field(default_factory=SystemConfig)
    sweep: SweepSpec = None
    mc: McSettings = field(default_factory=McSettings)
    paths: tuple = (EvalPath.EXACT,)
    preset: str = None


def parse_text(text, source="<config>"):
    """Parse ``key = value`` lines into an ordered dict of raw strings."""
    entries = {}
    problems = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            problems.append(f"{source}:{lineno}: empty key or value in {raw.strip()!r}")
            continue
        entries[key] = (value, f"{source}:{lineno}")
    if problems:
        raise ConfigError(problems)
    return entries


def _enum(cls, value, where, problems, key):
    try:
        return cls(value.strip().upper() if cls is not SpeedConvention else value.strip().lower())
    except ValueError:
        allowed = ", ".join(m.value for m in cls)
        problems.append(f"{where}: {key} = {value!r} is not one of {allowed}")
        return None


def _number(kind, value, where, problems, key):
    try:
        if kind == "auto_or_float":
            return AUTO if value.strip().lower() == AUTO else float(value)
        if kind is int:
            f = float(value)
            if not f.is_integer():
                raise ValueError
            return int(f)
        return float(value)
    except ValueError:
        problems.append(f"{where}: {key} = {value!r} is not a valid {getattr(kind, '__name__', kind)}")
        return None


def build(entries, extra_problems=()):
    """Turn parsed entries into a validated :class:`RunConfig`."""
    problems = list(extra_problems)
    links = {name: {} for name in LINK_NAMES}
    all_links = {}
    node_speed = {}
    ctx_kw = {}
    sweep_kw = {}
    mc_kw = {}
    gamma_th = 3.0
    preset = None
    paths = None

    for key, (value, where) in entries.items():
        head, _, tail = key.partition(".")
        if key == "gamma_th":
            gamma_th = _number(float, value, where, problems, key)
        elif key == "preset":
            preset = value
        elif key == "paths":
            paths = _parse_paths(value, where, problems, key)
        elif head == "links" and tail in LINK_FIELDS:
            all_links[tail] = _number(LINK_FIELDS[tail], value, where, problems, key)
        elif head.startswith("link_") and head[5:] in LINK_NAMES and tail in LINK_FIELDS:
            links[head[5:]][tail] = _number(LINK_FIELDS[tail], value, where, problems, key)
        elif head == "node" and tail in NODES:
            node_speed[tail] = _number(float, value, where, problems, key)
        elif head == "ctx" and tail in ("fc_hz", "tau_s", "light_speed_mps"):
            ctx_kw[tail] = _number(float, value, where, problems, key)
        elif key == "ctx.speed_convention":
            ctx_kw["speed_convention"] = _enum(SpeedConvention, value, where, problems, key)
        elif head == "sweep" and tail in ("start", "stop"):
            sweep_kw[tail] = _number(float, value, where, problems, key)
        elif key == "sweep.points":
            sweep_kw["points"] = _number(int, value, where, problems, key)
        elif key == "sweep.variable":
            sweep_kw["variable"] = _enum(SweepVariable, value, where, problems, key)
        elif key == "sweep.scale":
            sweep_kw["scale"] = _enum(Scale, value, where, problems, key)
        elif key == "sweep.paths":
            sweep_kw["paths"] = _parse_paths(value, where, problems, key)
        elif key == "sweep.nodes":
            sweep_kw["nodes"] = _parse_names(value, NODES, where, problems, key)
        elif key == "sweep.links":
            sweep_kw["links"] = _parse_names(value.lower(), LINK_NAMES, where, problems, key)
        elif key == "mc.samples":
            mc_kw["n_samples"] = _number(int, value, where, problems, key)
        elif key == "mc.seed":
            mc_kw["seed"] = _number(int, value, where, problems, key)
        elif key == "mc.partitions":
            mc_kw["n_partitions"] = _number(int, value, where, problems, key)
        else:
            problems.append(f"{where}: unknown key {key!r}")

    ctx = MobilityContext()
    try:
        ctx = MobilityContext(
            carrier_frequency_hz=ctx_kw.get("fc_hz", ctx.carrier_frequency_hz),
            delay_s=ctx_kw.get("tau_s", ctx.delay_s),
            light_speed_mps=ctx_kw.get("light_speed_mps", ctx.light_speed_mps),
            speed_convention=ctx_kw.get("speed_convention") or ctx.speed_convention,
        )
    except (ValueError, TypeError) as exc:
        problems.append(f"ctx: {exc}")

    base = SystemConfig()
    built = {}
    for name in LINK_NAMES:
        kw = {k: v for k, v in all_links.items() if v is not None}
        tx, rx = LINK_NODES[name]
        if tx in node_speed and node_speed[tx] is not None:
            kw["speed_a_kmh"] = node_speed[tx]
        if rx in node_speed and node_speed[rx] is not None:
            kw["speed_b_kmh"] = node_speed[rx]
        kw.update({k: v for k, v in links[name].items() if v is not None})
        if "m" in kw and float(kw["m"]).is_integer():
            kw["m"] = int(kw["m"])
        built[name] = replace(getattr(base, "link_" + name), **kw)
        problems.extend(_link_problems(name, built[name]))

    if gamma_th is not None and not gamma_th >= 0:
        problems.append(f"gamma_th must be >= 0, got {gamma_th}")

    sweep = None
    if sweep_kw:
        missing = [k for k in ("variable", "start", "stop", "points") if k not in sweep_kw]
        if missing:
            problems.append("sweep is missing " + ", ".join("sweep." + k for k in missing))
        elif None not in sweep_kw.values():
            try:
                sweep = SweepSpec(**sweep_kw)
            except ConfigError as exc:
                problems.extend(exc.problems)

    mc = McSettings()
    if None not in mc_kw.values():
        try:
            mc = McSettings(**{**{"n_samples": mc.n_samples, "seed": mc.seed, "n_partitions": mc.n_partitions}, **mc_kw})
        except ValueError as exc:
            problems.append(f"mc: {exc}")

    requested = sweep.paths if sweep else (paths or (EvalPath.EXACT,))
    closed_form = set(requested) - {EvalPath.MONTE_CARLO}
    if closed_form:
        for name, link in built.items():
            if not float(link.m).is_integer():
                problems.append(
                    f"link_{name}.m = {link.m}: closed-form paths ({', '.join(sorted(p.value for p in closed_form))}) "
                    "need an integer Nakagami m; use MONTE_CARLO only for non-integer m"
                )

    if problems:
        raise ConfigError(problems)
    system = SystemConfig(ctx=ctx, gamma_th=gamma_th, **{"link_" + k: v for k, v in built.items()})
    return RunConfig(system=system, sweep=sweep, mc=mc, paths=tuple(requested), preset=preset)


def _link_problems(name, link):
    out = []
    if not link.m >= 1:
        out.append(f"link_{name}.m must be >= 1, got {link.m}")
    if not link.omega > 0:
        out.append(f"link_{name}.omega must be > 0, got {link.omega}")
    if not link.n_rx >= 1:
        out.append(f"link_{name}.n_rx must be >= 1, got {link.n_rx}")
    if not link.sigma_eps_sq >= 0:
        out.append(f"link_{name}.sigma_eps_sq must be >= 0, got {link.sigma_eps_sq}")
    if not isinstance(link.sigma_w_sq, str) and not link.sigma_w_sq >= 0:
        out.append(f"link_{name}.sigma_w_sq must be >= 0 or auto, got {link.sigma_w_sq}")
    if not (link.speed_a_kmh >= 0 and link.speed_b_kmh >= 0):
        out.append(f"link_{name} speeds must be >= 0")
    return out


def _parse_paths(value, where, problems, key):
    out = []
    for item in value.split(","):
        p = _enum(EvalPath, item, where, problems, key)
        if p is not None:
            out.append(p)
    return tuple(out) if out else None


def _parse_names(value, allowed, where, problems, key):
    names = tuple(v.strip() for v in value.split(",") if v.strip())
    bad = [n for n in names if n not in allowed]
    if bad:
        problems.append(f"{where}: {key} has unknown entries {bad}; allowed: {', '.join(allowed)}")
        return None
    return names


def load_text(text, source="<config>", preset=None):
    """Parse and validate configuration text, optionally on top of a named preset."""
    from .presets import preset_entries

    entries = parse_text(text, source)
    name = preset or (entries.pop("preset")[0] if "preset" in entries else None)
    merged = {}
    if name is not None:
        merged.update(preset_entries(name))
    merged.update(entries)
    cfg = build(merged)
    return replace(cfg, preset=name)


def load_config(path, preset=None):
    """Read a configuration file; see the module docstring for the format."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    return load_text(text, source=str(path), preset=preset)
