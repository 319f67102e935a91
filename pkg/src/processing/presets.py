"""Named parameter sets for the standard figure panels"""

import math
from dataclasses import dataclass, field
from typing import Dict


@dataclass(frozen=True)
class FigurePreset:
    name: str
    subcommand: str
    params: Dict[str, object] = field(default_factory=dict)
    caption: str = ""


_PRESETS = (
    FigurePreset(
        "fig2a", "echo",
        {"n_sites": 32, "r": 1.0, "h_f": 1.0, "h_b": -1.0, "state": "vacuum", "t_max": 500.0, "dt": 0.01},
        "Vacuum echo of a small chain over a long time; revivals persist (repeat for N up to 44)",
    ),
    FigurePreset(
        "fig2b", "echo",
        {"n_sites": 100, "r": 1.0, "h_f": 1.0, "h_b": -1.0, "state": "vacuum", "t_max": 500.0, "dt": 0.01},
        "Vacuum echo of a long chain; only the early revival near t=1.2 survives",
    ),
    FigurePreset(
        "fig3", "echo",
        {"n_sites": 32, "r": 1.0, "h_f": 0.0, "h_b": -0.5, "state": "vacuum", "t_max": 10.0, "dt": 0.01},
        "Forward evolution at the critical field h_f=0; vary h_b to see the echo drop without revival",
    ),
    FigurePreset(
        "fig4", "echo",
        {"n_sites": 100, "r": 1.0, "h_f": 0.1, "h_b": -0.1, "state": "vacuum", "t_max": 500.0, "dt": 0.01},
        "Near-critical fields h_f=-h_b=0.1 on N=100 (repeat with N=120); long-time revivals",
    ),
    FigurePreset(
        "fig5", "echo",
        {"sizes": "16,20,24,28,32,36,40,44,48", "r": 1.0, "h_f": 1.0, "h_b": -1.0, "state": "vacuum",
         "average": True},
        "Time-averaged echo against N (repeat with --state magnon:1); the gap closes by N=40",
    ),
    FigurePreset(
        "fig6a", "momdist",
        {"n_sites": 32, "r": 1.0, "h_f": 1.0, "h_b": -1.0, "state": f"magnon:{math.pi / 32!r}",
         "k": f"{math.pi / 32!r}", "t_max": 50.0, "dt": 0.01, "window": 100},
        "P_q(k=q, t) for q=pi/32; every other k of the quartet stays at zero",
    ),
    FigurePreset(
        "fig6b", "momdist",
        {"n_sites": 32, "r": 1.0, "h_f": 1.0, "h_b": -1.0, "state": f"magnon:{15 * math.pi / 32!r}",
         "k": f"{15 * math.pi / 32!r}", "t_max": 50.0, "dt": 0.01, "window": 100},
        "P_q(k=q, t) for the last mode q=15pi/32",
    ),
    FigurePreset(
        "fig7", "echo",
        {"n_sites": 100, "r": 0.5, "h_f": 1.0, "h_b": -1.0, "state": "uniform", "t_max": 10.0, "dt": 0.01},
        "Uniform-momentum initial state on N=100 at r=0.5 (compare vacuum and magnon:1)",
    ),
    FigurePreset(
        "fig8a", "sweep",
        {"sizes": "40,60,80,100", "r": 1.0, "h_b": -1.0, "state": "vacuum", "hf_range": "-2:2:0.01", "time": 1.2},
        "Echo at t=1.2 against the forward field with h_b=-1",
    ),
    FigurePreset(
        "fig8b", "sweep",
        {"sizes": "40,60,80,100", "r": 1.0, "h_b": -0.1, "state": "vacuum", "hf_range": "-2:2:0.01", "time": 1.2},
        "Same sweep with h_b=-0.1; no revival",
    ),
    FigurePreset(
        "fig9a", "momdist",
        {"n_sites": 100, "r": 1.0, "h_f": 1.0, "h_b": -1.0, "state": "uniform", "time": 1.2, "k_range": "all"},
        "Uniform-state momentum distribution at t=1.2; four equal peaks at the quartet momenta",
    ),
    FigurePreset(
        "fig9b", "scaling",
        {"sizes": "20,40,60,80,100,120,140,160", "r": 1.0, "h_f": 1.0, "h_b": -1.0, "time": 1.2},
        "Peak height of the uniform-state distribution against N with its power-law fit",
    ),
    FigurePreset(
        "fig10", "momdist",
        {"n_sites": 32, "r": 1.0, "h_f": 1.0, "h_b": -1.0, "state": "uniform", "time": 1.2, "k_range": "0:pi/2"},
        "One distribution peak in 0<k<pi/2 (repeat with --time 0.1 and 1, and N=100)",
    ),
    FigurePreset(
        "fig11", "kicked",
        {"n_sites": 16, "r": 1.0, "h_f": 1.0, "h_b": -1.0, "state": "vacuum", "tau": math.pi / 4, "n_kicks": 200},
        "Kick period pi/4 with h=1: the echo stays at one",
    ),
    FigurePreset(
        "fig12", "kicked",
        {"n_sites": 16, "r": 1.0, "h_f": 1.0, "h_b": 0.9, "state": "vacuum", "tau": math.pi / 4, "n_kicks": 2000},
        "Kick period pi/4 with h_b=0.9; revivals for small chains only",
    ),
    FigurePreset(
        "fig13", "kicked",
        {"n_sites": 16, "r": 1.0, "h_f": 1.0, "h_b": -1.0, "state": "vacuum", "tau": math.pi / 12, "n_kicks": 2000,
         "window": 50},
        "Window-averaged kicked echo, tau=pi/12, window of 50 kicks (repeat up to N=100; inset h_b=0.1)",
    ),
    FigurePreset(
        "r0", "echo",
        {"n_sites": 32, "r": 0.0, "h_f": 1.0, "h_b": -1.0, "state": "vacuum", "t_max": 50.0, "dt": 0.01},
        "Pure x-bond chain (r=0): every quartet oscillates in phase and the echo is periodic",
    ),
)


def figure_presets() -> Dict[str, FigurePreset]:
    """Presets in panel order, keyed by name."""
    return {preset.name: preset for preset in _PRESETS}
