"""W-state correlations near a GHS dilaton black hole under amplitude damping."""
from .dilaton import beta, beta_of_alpha, dilaton_w_state, hawking_temperature
from .measures import OptimizerConfig, chsh_max, concurrence, pi_tangle, svetlichny_max
from .qmat import DensityMatrix

__all__ = [
    "DensityMatrix",
    "OptimizerConfig",
    "beta",
    "beta_of_alpha",
    "chsh_max",
    "concurrence",
    "dilaton_w_state",
    "hawking_temperature",
    "pi_tangle",
    "svetlichny_max",
]
__version__ = "0.1.0"
