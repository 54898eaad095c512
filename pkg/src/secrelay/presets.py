"""Named scenario presets, stored as configuration text.

Each preset is a named scenario layered on top of the default network
parameters; the names follow the figure numbering of the reference curves. Presets with a Monte-Carlo path default to 10^6
samples per point to keep full sweeps at desk scale; pass
``--mc-samples 9000000`` for the full-size runs.
"""

from .config import parse_text
from .errors import ConfigError

PRESETS = {
    "fig2": """
# IP vs common legitimate SNR, default fading/antennas, with the mobile-node floor
sweep.variable = DELTA_LEGIT
sweep.start = 0
sweep.stop = 60
sweep.points = 31
sweep.paths = EXACT, ASYMPTOTIC_S1, MONTE_CARLO
mc.samples = 1000000
""",
    "fig3": """
# estimation noise case 2 (better S-R estimation) at 70 km/h relative speed
ctx.speed_convention = explicit
links.speed_a_kmh = 70
link_sr.sigma_eps_sq = 0.02
link_rd.sigma_eps_sq = 0.09
link_se1.sigma_eps_sq = 0.09
link_re2.sigma_eps_sq = 0.09
sweep.variable = DELTA_LEGIT
sweep.start = 0
sweep.stop = 60
sweep.points = 31
sweep.paths = EXACT, ASYMPTOTIC_S1
""",
    "fig4a": """
# perfect estimation, 30 km/h relative speed on every link
ctx.speed_convention = explicit
links.speed_a_kmh = 30
links.sigma_eps_sq = 0
sweep.variable = DELTA_LEGIT
sweep.start = 0
sweep.stop = 60
sweep.points = 31
sweep.paths = EXACT, ASYMPTOTIC_S1
""",
    "fig4b": """
# static nodes, perfect estimation, strong eavesdroppers (30 dB)
node.S = 0
node.R = 0
node.D = 0
node.E1 = 0
node.E2 = 0
links.sigma_eps_sq = 0
link_se1.delta_db = 30
link_re2.delta_db = 30
sweep.variable = DELTA_LEGIT
sweep.start = 20
sweep.stop = 60
sweep.points = 41
sweep.paths = EXACT, ASYMPTOTIC_S2
""",
    "fig5": """
# IP vs first-eavesdropper SNR, legitimate hops at 40 dB, second eavesdropper at 20 dB
link_sr.delta_db = 40
link_rd.delta_db = 40
link_re2.delta_db = 20
sweep.variable = DELTA_SE1
sweep.start = 0
sweep.stop = 40
sweep.points = 21
sweep.paths = EXACT, MONTE_CARLO
mc.samples = 1000000
""",
    "fig6": """
# IP vs decoding threshold at 20 km/h relative speed
ctx.speed_convention = explicit
links.speed_a_kmh = 20
sweep.variable = GAMMA_TH
sweep.start = 0.01
sweep.stop = 1000
sweep.points = 26
sweep.scale = LOG
sweep.paths = EXACT, LOW_THRESHOLD_FLOOR
""",
    "fig7": """
# IP vs estimation delay at 2.4 GHz; legitimate nodes at 25 km/h in opposite
# directions (50 km/h relative), static eavesdroppers
ctx.fc_hz = 2.4e9
node.E1 = 0
node.E2 = 0
link_sr.delta_db = 40
link_rd.delta_db = 40
sweep.variable = TAU
sweep.start = 0
sweep.stop = 0.006
sweep.points = 61
sweep.paths = EXACT
""",
    "fig8": """
# moving legitimate nodes, static eavesdroppers, opposite directions
node.S = 25
node.R = 25
node.D = 25
node.E1 = 0
node.E2 = 0
sweep.variable = DELTA_LEGIT
sweep.start = 0
sweep.stop = 60
sweep.points = 31
sweep.paths = EXACT, ASYMPTOTIC_S1
""",
    "fig9": """
# IP vs relay speed (destination follows the relay), static source,
# eavesdroppers at 25 km/h
node.S = 0
node.E1 = 25
node.E2 = 25
sweep.variable = SPEED
sweep.nodes = R, D
sweep.start = 0
sweep.stop = 100
sweep.points = 21
sweep.paths = EXACT
""",
    "fig10": """
# IP vs first-hop SNR with the second hop held at 10 dB
link_rd.delta_db = 10
sweep.variable = DELTA_SR
sweep.start = 0
sweep.stop = 40
sweep.points = 21
sweep.paths = EXACT
""",
}

# start, stop, points, scale for --sweep without explicit bounds
DEFAULT_SWEEPS = {
    "DELTA_LEGIT": ("0", "60", "31", "LINEAR"),
    "DELTA_SR": ("0", "60", "31", "LINEAR"),
    "DELTA_RD": ("0", "60", "31", "LINEAR"),
    "DELTA_SE1": ("0", "40", "21", "LINEAR"),
    "DELTA_RE2": ("0", "40", "21", "LINEAR"),
    "GAMMA_TH": ("0.01", "1000", "26", "LOG"),
    "TAU": ("0", "0.006", "61", "LINEAR"),
    "FC": ("1e9", "6e9", "26", "LINEAR"),
    "SPEED": ("0", "100", "21", "LINEAR"),
    "SIGMA_EPS": ("1e-4", "1", "21", "LOG"),
}


def preset_entries(name):
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    return parse_text(PRESETS[name], source=f"preset {name}")


def describe(name):
    """Leading comment block of a preset, joined into one line."""
    words = []
    for line in PRESETS[name].strip().splitlines():
        if not line.startswith("#"):
            break
        words.append(line.lstrip("# ").strip())
    return " ".join(words)
