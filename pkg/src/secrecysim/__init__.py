"""Physical-layer secrecy simulation for 5G technologies.

Subpackages and modules:

* :mod:`secrecysim.units` - dB conversions, Q-function, seeded random streams
* :mod:`secrecysim.simkit` - fading, Poisson point fields, Monte Carlo runners
* :mod:`secrecysim.propagation` - free-space and log-distance path loss, shadowing
* :mod:`secrecysim.weather` - rain and dust attenuation
* :mod:`secrecysim.secrecy` - SINR, capacity, secrecy rate and outage probability
* :mod:`secrecysim.models` - per-technology secrecy models
* :mod:`secrecysim.attack` - RRC interception and weather attacks
* :mod:`secrecysim.config`, :mod:`secrecysim.runner`, :mod:`secrecysim.cli` - scenario files and batch runs
"""

from .errors import ConfigError, DomainError, EstimationError
from .secrecy import SecrecyMetrics, SinrInputs, SopInputs, capacity, secrecy_metrics, secrecy_rate, sinr
from .simkit import FadingDescriptor, McEstimate, PointField, Window, mc_run, mc_run_batched, sample_ppp
from .units import RandomStream, db_to_lin, dbm_to_watt, lin_to_db, q_function, watt_to_dbm

__version__ = "0.1.0"
