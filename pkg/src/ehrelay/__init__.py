"""Outage performance of energy-harvesting two-way relay protocols.

Closed-form outage probabilities (``analytic``), seeded Monte Carlo
validation (``montecarlo``), per-draw link physics (``model``), GA and
grid-search optimization of the protocol tunables (``optimizer``), and a
sweep/CLI harness (``experiments``, ``cli``).
"""

from ._accel import NUMBA_ENABLED
from .analytic import (ClosedFormCoefficientsTsfpr, ClosedFormCoefficientsTsncr,
                       OutageBranch, OutageValue, bessel_k1, bessel_k2,
                       cdf_min_weighted, outage_capacity, outage_probability,
                       outage_tsfpr, outage_tsncr, pdf_weighted_exp_sum,
                       tail_integral, tsfpr_coefficients, tsncr_coefficients)
from .errors import (DegenerateConfigError, InternalConsistencyError,
                     ParameterError)
from .model import (ChannelDraw, FadingModel, NoiseModel, Protocol,
                    ProtocolConfig, SystemParams, harvested_energy,
                    outage_event, rate_broadcast_tsncr, rate_downlink_tsfpr,
                    rate_uplink, relay_power_tsfpr, relay_power_tsncr)
from .montecarlo import (CapacityEstimate, McConfig, McEstimate,
                         estimate_capacity, estimate_outage, sample_channels)
from .optimizer import (Chromosome, GaConfig, GaTrace, GridResult,
                        TerminationReason, ga_minimize, ga_optimize,
                        grid_search)

__version__ = "0.1.0"

__all__ = [
    "CapacityEstimate", "ChannelDraw", "Chromosome",
    "ClosedFormCoefficientsTsfpr", "ClosedFormCoefficientsTsncr",
    "DegenerateConfigError", "FadingModel", "GaConfig", "GaTrace",
    "GridResult", "InternalConsistencyError", "McConfig", "McEstimate",
    "NoiseModel", "NUMBA_ENABLED", "OutageBranch", "OutageValue",
    "ParameterError", "Protocol", "ProtocolConfig", "SystemParams",
    "TerminationReason", "bessel_k1", "bessel_k2", "cdf_min_weighted",
    "estimate_capacity", "estimate_outage", "ga_minimize", "ga_optimize",
    "grid_search", "harvested_energy", "outage_capacity", "outage_event",
    "outage_probability", "outage_tsfpr", "outage_tsncr",
    "pdf_weighted_exp_sum", "rate_broadcast_tsncr", "rate_downlink_tsfpr",
    "rate_uplink", "relay_power_tsfpr", "relay_power_tsncr",
    "sample_channels", "tail_integral", "tsfpr_coefficients",
    "tsncr_coefficients",
]
