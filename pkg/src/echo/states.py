"""Initial states of the echo protocol and the momentum text format"""

import math
import re
from dataclasses import dataclass
from typing import Optional

from src.errors import MomentumError
from src.model.chain import locate_momentum

VACUUM = "vacuum"
DEFINITE = "definite_momentum"
UNIFORM = "uniform_site"

_PI_FORM = re.compile(r"^\s*([+-]?\d*(?:\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d+)?))?\s*$", re.IGNORECASE)


def parse_momentum(text: str) -> float:
    """Accepts plain floats and multiples of pi such as 'pi/32', '-15pi/32', '0.5*pi'."""
    match = _PI_FORM.match(str(text))
    if match:
        factor, denominator = match.groups()
        if factor in ("", "+"):
            factor = "1"
        elif factor == "-":
            factor = "-1"
        value = float(factor) * math.pi
        return value / float(denominator) if denominator else value
    try:
        return float(text)
    except ValueError:
        raise MomentumError(f"cannot read momentum {text!r}") from None


@dataclass(frozen=True)
class InitialState:
    kind: str
    momentum: Optional[float] = None

    @classmethod
    def vacuum(cls) -> "InitialState":
        return cls(VACUUM)

    @classmethod
    def definite(cls, q: float) -> "InitialState":
        return cls(DEFINITE, float(q))

    @classmethod
    def uniform(cls) -> "InitialState":
        return cls(UNIFORM)

    @classmethod
    def parse(cls, descriptor: str, n_sites: int) -> "InitialState":
        """'vacuum', 'uniform' or 'magnon:<m-index-or-momentum>'."""
        text = descriptor.strip().lower()
        if text == "vacuum":
            return cls.vacuum()
        if text == "uniform":
            return cls.uniform()
        if text.startswith("magnon:"):
            selector = text.split(":", 1)[1].strip()
            if re.fullmatch(r"\d+", selector):
                m = int(selector)
                if not 1 <= m <= n_sites // 4:
                    raise MomentumError(f"magnon index must be in 1..{n_sites // 4}, got {m}")
                return cls.definite((2 * m - 1) * math.pi / n_sites)
            q = parse_momentum(selector)
            locate_momentum(n_sites, q)
            return cls.definite(q)
        raise ValueError(f"unknown state descriptor {descriptor!r} (use vacuum, magnon:<m|k> or uniform)")

    def describe(self) -> str:
        if self.kind == DEFINITE:
            return f"magnon:{self.momentum!r}"
        return "uniform" if self.kind == UNIFORM else "vacuum"
