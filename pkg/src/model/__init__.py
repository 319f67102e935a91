"""Model parameters, momentum grid and closed-form quartet spectra"""

from src.model.chain import (
    ChainSpec,
    ModeQuartet,
    ModeSpectrum,
    allowed_momenta,
    locate_momentum,
    mode_spectrum,
    momentum_grid,
)
from src.model.quadratic import real_space_quadratic_form

__all__ = [
    "ChainSpec",
    "ModeQuartet",
    "ModeSpectrum",
    "allowed_momenta",
    "locate_momentum",
    "mode_spectrum",
    "momentum_grid",
    "real_space_quadratic_form",
]
