"""Run configuration shared by every CLI subcommand.

All fields are checked up front; `validate()` collects every problem and
raises one ConfigValidationError listing them.
"""

import math
import shlex
from dataclasses import dataclass, field, fields
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.echo.series import time_grid
from src.echo.states import InitialState, parse_momentum
from src.errors import ConfigValidationError, InvalidChainSpecError, MomentumError
from src.floquet.kicked import KickSpec
from src.model.chain import ChainSpec, allowed_momenta, locate_momentum

PROGRAM = "kitaev-echo"
SUBCOMMANDS = ("echo", "momdist", "sweep", "kicked", "scaling", "verify")

# Flags that define each subcommand's output, in the order they are recorded.
RECORDED_FLAGS: Dict[str, Tuple[str, ...]] = {
    "echo": ("n_sites", "j_x", "r", "h_f", "h_b", "state", "t_max", "dt", "window", "average", "sizes"),
    "momdist": ("n_sites", "j_x", "r", "h_f", "h_b", "state", "time", "k_range", "k", "t_max", "dt", "window"),
    "sweep": ("sizes", "j_x", "r", "h_b", "state", "hf_range", "time"),
    "kicked": ("n_sites", "j_x", "r", "h_f", "h_b", "state", "tau", "n_kicks", "window"),
    "scaling": ("sizes", "j_x", "r", "h_f", "h_b", "time"),
    "verify": ("n_sites", "r", "h_f", "h_b", "t_max", "dt"),
}

FLAG_NAMES = {
    "n_sites": "--n",
    "j_x": "--jx",
    "r": "--r",
    "h_f": "--hf",
    "h_b": "--hb",
    "state": "--state",
    "t_max": "--tmax",
    "dt": "--dt",
    "tau": "--tau",
    "n_kicks": "--kicks",
    "time": "--time",
    "k": "--k",
    "k_range": "--k-range",
    "window": "--window",
    "sizes": "--sizes",
    "hf_range": "--hf-range",
    "average": "--average",
}


def parse_sizes(text: str) -> Tuple[int, ...]:
    """'16,32,48' -> (16, 32, 48)."""
    try:
        return tuple(int(part) for part in str(text).replace(" ", "").split(",") if part)
    except ValueError:
        raise ValueError(f"sizes must be comma-separated integers, got {text!r}") from None


def parse_range(text: str) -> np.ndarray:
    """'start:stop:step' with stop included when it lands on the grid."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ValueError(f"range must be start:stop:step, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0:
        raise ValueError("range step must be positive")
    if stop < start:
        raise ValueError(f"empty range {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9))
    return start + step * np.arange(count + 1)


def parse_k_range(text: Optional[str], n_sites: int) -> np.ndarray:
    """Allowed momenta inside 'kmin:kmax' (pi forms accepted), or all of them."""
    momenta = np.asarray(allowed_momenta(n_sites))
    if text is None or str(text).strip().lower() in ("", "all"):
        return momenta
    lower, sep, upper = str(text).partition(":")
    if not sep:
        raise ValueError(f"k range must be kmin:kmax or 'all', got {text!r}")
    k_min, k_max = parse_momentum(lower), parse_momentum(upper)
    selected = momenta[(momenta >= k_min - 1e-12) & (momenta <= k_max + 1e-12)]
    if selected.size == 0:
        raise MomentumError(f"no allowed momentum of N={n_sites} lies in [{k_min}, {k_max}]")
    return selected


@dataclass
class RunConfig:
    subcommand: str
    n_sites: int = 32
    j_x: float = 1.0
    r: float = 1.0
    h_f: float = 1.0
    h_b: float = -1.0
    state: str = "vacuum"
    t_max: float = 10.0
    dt: float = 0.01
    tau: float = math.pi / 12
    n_kicks: int = 200
    time: Optional[float] = None
    k: Optional[str] = None
    k_range: Optional[str] = None
    window: Optional[int] = None
    sizes: Optional[str] = None
    hf_range: Optional[str] = None
    average: bool = False
    out: Optional[str] = None
    plot_script: Optional[str] = None
    workers: Optional[int] = None
    synthetic: bool = False
    corrupt: bool = False
    extra: Dict[str, object] = field(default_factory=dict)

    # --- validation ---

    def validate(self) -> "RunConfig":
        problems: List[str] = []
        if self.subcommand not in SUBCOMMANDS:
            problems.append(f"unknown subcommand {self.subcommand!r}")

        for name in ("j_x", "r", "h_f", "h_b", "t_max", "dt", "tau"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                problems.append(f"{FLAG_NAMES[name]} must be a finite number")
        if self.j_x == 0:
            problems.append("--jx must be non-zero")
        if self.workers is not None and self.workers < 0:
            problems.append("--workers must be 0 (all cores) or positive")
        if self.window is not None and self.window < 1:
            problems.append("--window must be a positive number of samples")

        uses_sizes = self.subcommand in ("sweep", "scaling") or (self.subcommand == "echo" and self.sizes)
        if uses_sizes:
            problems.extend(self._check_sizes())
        else:
            problems.extend(self._check_chain(self.n_sites))
        if not problems and not uses_sizes:
            problems.extend(self._check_state(self.n_sites))

        check = getattr(self, f"_check_{self.subcommand}", None)
        if check is not None and not problems:
            problems.extend(check())

        if problems:
            raise ConfigValidationError(problems)
        return self

    def _check_chain(self, n_sites) -> List[str]:
        try:
            ChainSpec(n_sites, self.j_x, self.r, self.h_f)
        except InvalidChainSpecError as e:
            return [str(e)]
        return []

    def _check_sizes(self) -> List[str]:
        try:
            sizes = self.size_list()
        except ValueError as e:
            return [str(e)]
        if not sizes:
            return ["--sizes needs at least one chain size"]
        problems = []
        for n in sizes:
            problems.extend(self._check_chain(n))
        if not problems and self.subcommand != "scaling":
            for n in sizes:
                problems.extend(self._check_state(n))
        return problems

    def _check_state(self, n_sites: int) -> List[str]:
        try:
            InitialState.parse(self.state, n_sites)
        except (MomentumError, ValueError) as e:
            return [f"--state: {e}"]
        return []

    def _check_time_grid(self) -> List[str]:
        try:
            points = len(time_grid(self.t_max, self.dt))
        except ValueError as e:
            return [str(e)]
        if self.window is not None and self.window > points:
            return [f"--window {self.window} is longer than the {points}-point time grid"]
        return []

    def _check_echo(self) -> List[str]:
        if self.sizes and not self.average:
            return ["--sizes with echo needs --average (one time average per size)"]
        return [] if self.sizes else self._check_time_grid()

    def _check_momdist(self) -> List[str]:
        if (self.time is None) == (self.k is None):
            return ["momdist needs exactly one of --time (k scan) or --k (time scan)"]
        if self.time is not None:
            problems = [] if self.time >= 0 else ["--time must be non-negative"]
            try:
                parse_k_range(self.k_range, self.n_sites)
            except (ValueError, MomentumError) as e:
                problems.append(f"--k-range: {e}")
            return problems
        try:
            locate_momentum(self.n_sites, parse_momentum(self.k))
        except MomentumError as e:
            return [f"--k: {e}"]
        return self._check_time_grid()

    def _check_sweep(self) -> List[str]:
        problems = []
        if self.time is None or self.time < 0:
            problems.append("sweep needs a non-negative --time")
        if self.hf_range is None:
            problems.append("sweep needs --hf-range start:stop:step")
        else:
            try:
                parse_range(self.hf_range)
            except ValueError as e:
                problems.append(f"--hf-range: {e}")
        return problems

    def _check_kicked(self) -> List[str]:
        problems = []
        if not self.tau > 0:
            problems.append("--tau must be positive")
        if self.n_kicks < 0:
            problems.append("--kicks must be non-negative")
        if self.window is not None and self.window > self.n_kicks + 1:
            problems.append(f"--window {self.window} is longer than the {self.n_kicks + 1} kicks")
        return problems

    def _check_scaling(self) -> List[str]:
        problems = []
        if len(self.size_list()) < 4:
            problems.append("scaling needs at least 4 sizes")
        if self.time is None or self.time < 0:
            problems.append("scaling needs a non-negative --time")
        return problems

    def _check_verify(self) -> List[str]:
        return self._check_time_grid()

    # --- derived objects ---

    def size_list(self) -> Tuple[int, ...]:
        return parse_sizes(self.sizes) if self.sizes else (self.n_sites,)

    def spec_f(self, n_sites: Optional[int] = None) -> ChainSpec:
        return ChainSpec(n_sites or self.n_sites, self.j_x, self.r, self.h_f)

    def spec_b(self, n_sites: Optional[int] = None) -> ChainSpec:
        return ChainSpec(n_sites or self.n_sites, self.j_x, self.r, self.h_b)

    def kick_specs(self) -> Tuple[KickSpec, KickSpec]:
        base = ChainSpec(self.n_sites, self.j_x, self.r, 0.0)
        return KickSpec(base, self.tau, self.h_f), KickSpec(base, self.tau, self.h_b)

    def initial_state(self, n_sites: Optional[int] = None) -> InitialState:
        return InitialState.parse(self.state, n_sites or self.n_sites)

    def times(self) -> np.ndarray:
        return time_grid(self.t_max, self.dt)

    def momenta(self) -> np.ndarray:
        return parse_k_range(self.k_range, self.n_sites)

    def fields(self) -> np.ndarray:
        return parse_range(self.hf_range)

    # --- provenance ---

    def parameters(self) -> Dict[str, object]:
        """Values of the flags that define this subcommand's output."""
        record = {}
        for name in RECORDED_FLAGS.get(self.subcommand, ()):
            value = getattr(self, name)
            if value is None or value is False:
                continue
            record[name] = value
        return record

    def command_line(self) -> str:
        """Invocation that regenerates the same data (worker count and plot script excluded)."""
        words = [PROGRAM, self.subcommand]
        for name, value in self.parameters().items():
            flag = FLAG_NAMES[name]
            if value is True:
                words.append(flag)
            else:
                words.extend([flag, repr(value) if isinstance(value, float) else str(value)])
        if self.synthetic:
            words.append("--synthetic")
        return shlex.join(words)

    @classmethod
    def field_names(cls) -> Tuple[str, ...]:
        return tuple(f.name for f in fields(cls))
