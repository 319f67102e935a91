"""Chain parameters, the momentum-quartet grid and closed-form mode energies.

Momenta are odd multiples of pi/N. A quartet is labelled by q_m = (2m-1)pi/N,
m = 1..N/4, and groups the four momenta (q-pi, -q, q, pi-q) that the
Hamiltonian couples. Slots 1..4 always refer to that order.
"""

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from src.errors import InvalidChainSpecError, MomentumError

DEGENERACY_TOL = 1e-12
MOMENTUM_TOL = 1e-9


@dataclass(frozen=True)
class ChainSpec:
    """Static parameters of one evolution direction."""

    n_sites: int
    j_x: float = 1.0
    r: float = 1.0
    h: float = 0.0

    def __post_init__(self):
        problems = []
        if not isinstance(self.n_sites, (int, np.integer)) or isinstance(self.n_sites, bool):
            problems.append(f"n_sites must be an integer, got {self.n_sites!r}")
        elif self.n_sites < 8 or self.n_sites % 4 != 0:
            problems.append(f"n_sites must be a multiple of 4 and at least 8, got {self.n_sites}")
        for name in ("j_x", "r", "h"):
            if not math.isfinite(getattr(self, name)):
                problems.append(f"{name} must be finite")
        if self.j_x == 0:
            problems.append("j_x must be non-zero")
        if problems:
            raise InvalidChainSpecError("; ".join(problems))

    @property
    def j_y(self) -> float:
        return self.r * self.j_x

    def with_field(self, h: float) -> "ChainSpec":
        return replace(self, h=float(h))


@dataclass(frozen=True)
class ModeQuartet:
    """One momentum block; `numerators` are the odd integers nu with k = nu*pi/N."""

    n_sites: int
    index_m: int

    @property
    def q(self) -> float:
        return (2 * self.index_m - 1) * math.pi / self.n_sites

    @property
    def numerators(self) -> Tuple[int, int, int, int]:
        nu = 2 * self.index_m - 1
        return (nu - self.n_sites, -nu, nu, self.n_sites - nu)

    @property
    def partners(self) -> Tuple[float, float, float, float]:
        return tuple(nu * math.pi / self.n_sites for nu in self.numerators)

    def momentum(self, slot: int) -> float:
        return self.partners[slot - 1]


@dataclass(frozen=True)
class ModeSpectrum:
    """Closed-form energies of one quartet.

    `h_over_lambda` holds nan where lambda_i = 0. `mixing_angle` equals
    `theta_q` whenever j_x + j_y > 0 and stays correct otherwise.
    """

    abs_e: float
    theta_q: float
    mixing_angle: float
    lambdas: Tuple[float, float, float, float]
    h_over_lambda: Tuple[float, float, float, float]
    degenerate: bool


def momentum_grid(n_sites: int) -> List[ModeQuartet]:
    """Return the N/4 quartets of an N-site chain, ordered by q."""
    if not isinstance(n_sites, (int, np.integer)) or n_sites < 8 or n_sites % 4 != 0:
        raise InvalidChainSpecError(
            f"momentum grid needs N divisible by 4 and N >= 8, got {n_sites}"
        )
    return [ModeQuartet(int(n_sites), m) for m in range(1, n_sites // 4 + 1)]


@lru_cache(maxsize=64)
def allowed_momenta(n_sites: int) -> np.ndarray:
    """All N momenta (2m-1)pi/N inside (-pi, pi), ascending."""
    momentum_grid(n_sites)
    nu = np.arange(-n_sites + 1, n_sites, 2)
    values = nu * np.pi / n_sites
    values.setflags(write=False)
    return values


def locate_momentum(n_sites: int, k: float) -> Tuple[int, int]:
    """Map an allowed momentum (any 2pi representative) to (index_m, slot)."""
    momentum_grid(n_sites)
    x = float(k) * n_sites / math.pi
    nu = int(round(x))
    if abs(x - nu) > MOMENTUM_TOL * n_sites:  # |k - nu pi/N| <= 1e-9 pi
        raise MomentumError(f"k={k} is not an allowed momentum for N={n_sites}")
    nu = (nu + n_sites) % (2 * n_sites) - n_sites  # into [-N, N)
    if nu % 2 == 0:
        raise MomentumError(f"k={k} is not an odd multiple of pi/{n_sites}")

    half = n_sites // 2
    if 0 < nu < half:
        base, slot = nu, 3
    elif -half < nu < 0:
        base, slot = -nu, 2
    elif nu > half:
        base, slot = n_sites - nu, 4
    else:
        base, slot = nu + n_sites, 1
    return (base + 1) // 2, slot


def mode_spectrum(spec: ChainSpec, quartet: ModeQuartet) -> ModeSpectrum:
    """Closed-form |e|, theta_q and the sorted mode energies lambda_1..lambda_4."""
    q = quartet.q
    j_x, j_y, r, h = spec.j_x, spec.j_y, spec.r, spec.h

    abs_e = 0.5 * math.hypot((j_x + j_y) * math.cos(q), (j_x - j_y) * math.sin(q))
    root = math.hypot(abs_e, h)
    lambdas = tuple(sorted((-abs_e - root, abs_e - root, root - abs_e, abs_e + root)))

    denominator = math.hypot((1 + r) * math.cos(q), (1 - r) * math.sin(q))
    ratio = (1 - r) * math.sin(q) / denominator
    theta_q = math.asin(min(1.0, max(-1.0, ratio)))
    mixing_angle = math.atan2((j_x - j_y) * math.sin(q), (j_x + j_y) * math.cos(q))

    scale = 1.0 + abs_e + abs(h)
    degenerate = any(abs(lam) <= DEGENERACY_TOL * scale for lam in lambdas)
    h_over_lambda = tuple(
        math.nan if abs(lam) <= DEGENERACY_TOL * scale else h / lam for lam in lambdas
    )
    return ModeSpectrum(abs_e, theta_q, mixing_angle, lambdas, h_over_lambda, degenerate)
