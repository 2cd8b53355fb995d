"""Physical scenario types and per-realization link equations.

Two cooperating users U1, U2 exchange messages through an energy-harvesting
decode-and-forward relay R.  Each block of duration T starts with a
harvesting phase of length rho*T split equally between the two uplink
pilots; the remaining (1-rho)*T carries information in either three phases
(network-coded broadcast, TSNCR) or four phases (separate forwarding with a
power split theta : 1-theta, TSFPR).  Everything here is a pure function of
explicit inputs; the probability layers live in separate modules.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DegenerateConfigError, ParameterError


class Protocol(Enum):
    """Which relaying protocol a configuration refers to."""

    TSNCR = "tsncr"
    TSFPR = "tsfpr"

    @property
    def phases(self) -> int:
        """Number of equal-length transmission phases after harvesting."""
        return 3 if self is Protocol.TSNCR else 4


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


@dataclass(frozen=True)
class NoiseModel:
    """Receiver noise variances, split into antenna and conversion parts.

    Each receiver sees the sum of an antenna noise and an RF-to-baseband
    conversion noise; only the totals enter the rate equations.  Index 0 of
    each pair refers to link 1 (U1 side), index 1 to link 2 (U2 side).
    Defaults are the repository-wide 0.01 W per component (0.02 W total
    per receiver).
    """

    sigma2_r_a: tuple = (0.01, 0.01)  # antenna noise at R, per uplink
    sigma2_r_c: tuple = (0.01, 0.01)  # conversion noise at R, per uplink
    sigma2_u_a: tuple = (0.01, 0.01)  # antenna noise at U_i
    sigma2_u_c: tuple = (0.01, 0.01)  # conversion noise at U_i

    def __post_init__(self):
        for name in ("sigma2_r_a", "sigma2_r_c", "sigma2_u_a", "sigma2_u_c"):
            pair = getattr(self, name)
            _require(len(pair) == 2, f"{name} needs one value per link")
            _require(all(v >= 0 for v in pair), f"{name} must be >= 0")
        _require(all(v > 0 for v in self.sigma2_r),
                 "total relay noise must be > 0 on both links")
        _require(all(v > 0 for v in self.sigma2_u),
                 "total user noise must be > 0 on both links")

    @property
    def sigma2_r(self) -> tuple:
        """Total noise variance at the relay, per uplink."""
        return (self.sigma2_r_a[0] + self.sigma2_r_c[0],
                self.sigma2_r_a[1] + self.sigma2_r_c[1])

    @property
    def sigma2_u(self) -> tuple:
        """Total noise variance at each user."""
        return (self.sigma2_u_a[0] + self.sigma2_u_c[0],
                self.sigma2_u_a[1] + self.sigma2_u_c[1])


@dataclass(frozen=True)
class FadingModel:
    """Rate parameters of the exponentially distributed fading power gains.

    Rayleigh amplitude fading makes each power gain |h_i|^2, |f_i|^2
    exponential; ``lambda_*`` are *rate* parameters, so the mean gain is
    1/lambda.  h refers to the uplink channels (harvest + multiple access),
    f to the downlink channels.
    """

    lambda_h1: float = 1.0
    lambda_h2: float = 1.0
    lambda_f1: float = 1.0
    lambda_f2: float = 1.0

    def __post_init__(self):
        for name in ("lambda_h1", "lambda_h2", "lambda_f1", "lambda_f2"):
            _require(getattr(self, name) > 0, f"{name} must be > 0")


@dataclass(frozen=True)
class SystemParams:
    """Static description of one physical scenario.

    Attributes
    ----------
    P1, P2 : float
        Transmit powers of U1, U2 in watts.
    d1, d2 : float
        Distances from U1, U2 to the relay (dimensionless units).
    m : float
        Path-loss exponent, >= 2.
    eta : float
        RF-to-DC energy conversion efficiency, in (0, 1].
    R0 : float
        Target end-to-end rate in bits/s/Hz, >= 0.
    T : float
        Block duration (normalized; energies and powers scale linearly).
    B : float
        Bandwidth in Hz; pure normalization, default 1.
    noise, fading
        See :class:`NoiseModel` and :class:`FadingModel`.
    """

    P1: float = 1.0
    P2: float = 1.0
    d1: float = 1.0
    d2: float = 1.0
    m: float = 2.7
    eta: float = 1.0
    R0: float = 1.0
    T: float = 1.0
    B: float = 1.0
    noise: NoiseModel = field(default_factory=NoiseModel)
    fading: FadingModel = field(default_factory=FadingModel)

    def __post_init__(self):
        _require(self.P1 > 0, "P1 must be > 0")
        _require(self.P2 > 0, "P2 must be > 0")
        _require(self.d1 > 0, "d1 must be > 0")
        _require(self.d2 > 0, "d2 must be > 0")
        _require(self.m >= 2, "path-loss exponent m must be >= 2")
        _require(0 < self.eta <= 1, "eta must be in (0, 1]")
        _require(self.R0 >= 0, "R0 must be >= 0")
        _require(self.T > 0, "T must be > 0")
        _require(self.B > 0, "B must be > 0")

    def power(self, i: int) -> float:
        _require(i in (1, 2), f"link index must be 1 or 2, got {i}")
        return self.P1 if i == 1 else self.P2

    def distance(self, i: int) -> float:
        _require(i in (1, 2), f"link index must be 1 or 2, got {i}")
        return self.d1 if i == 1 else self.d2

    def path_loss(self, i: int) -> float:
        """d_i^m, the propagation attenuation of link i."""
        return self.distance(i) ** self.m


@dataclass(frozen=True)
class ProtocolConfig:
    """Protocol choice plus its tunables.

    ``rho`` is the time-switching factor (fraction of the block spent
    harvesting); ``theta`` is the relay power split used only by TSFPR
    (U1's downlink gets theta, U2's gets 1-theta) and is ignored by TSNCR.
    """

    kind: Protocol
    rho: float
    theta: float = 0.5

    def __post_init__(self):
        _require(0 <= self.rho <= 1, "rho must be in [0, 1]")
        _require(0 <= self.theta <= 1, "theta must be in [0, 1]")

    @property
    def phases(self) -> int:
        return self.kind.phases


@dataclass(frozen=True)
class ChannelDraw:
    """One realization of the four fading power gains."""

    h1sq: float
    h2sq: float
    f1sq: float
    f2sq: float

    def __post_init__(self):
        for name in ("h1sq", "h2sq", "f1sq", "f2sq"):
            _require(getattr(self, name) >= 0, f"{name} must be >= 0")


def snr_threshold(R0: float, rho: float, phases: int) -> float:
    """SNR level a phase must reach for its rate to meet the target R0.

    A phase rate ((1-rho)/k) * log2(1 + SNR) reaches R0 exactly at
    u0 = 2^(k R0/(1-rho)) - 1.  Requires rho < 1; returns inf when the
    exponent leaves double range (outage is then certain for any finite
    SNR, which downstream layers map to probability 1).
    """
    _require(0 <= rho < 1, "rho must be in [0, 1)")
    exponent = phases * R0 / (1.0 - rho)
    if exponent >= 1024.0:
        return math.inf
    return 2.0 ** exponent - 1.0


def harvested_energy(params: SystemParams, rho: float, h_sq: float,
                     i: int) -> float:
    """Energy harvested at the relay from user i's pilot.

    The harvesting phase rho*T is shared equally between the two users, so
    user i contributes eta * P_i * h_sq / d_i^m over rho*T/2 seconds.

    Parameters
    ----------
    params : SystemParams
    rho : float
        Time-switching factor in [0, 1].
    h_sq : float
        Fading power gain |h_i|^2 of the uplink, >= 0.
    i : int
        Link index, 1 or 2.

    Returns
    -------
    float
        Harvested energy in joules; zero iff rho = 0 or h_sq = 0.
    """
    _require(0 <= rho <= 1, "rho must be in [0, 1]")
    _require(h_sq >= 0, "h_sq must be >= 0")
    received = params.eta * params.power(i) * h_sq / params.path_loss(i)
    return received * rho * params.T / 2.0


def _relay_power(params: SystemParams, rho: float, draw: ChannelDraw,
                 phases: int) -> float:
    if rho >= 1:
        raise DegenerateConfigError(
            "rho = 1 leaves no transmission time; relay power is undefined")
    slot = (1.0 - rho) * params.T / phases
    energy = (harvested_energy(params, rho, draw.h1sq, 1)
              + harvested_energy(params, rho, draw.h2sq, 2))
    return energy / slot


def relay_power_tsncr(params: SystemParams, rho: float,
                      draw: ChannelDraw) -> float:
    """Relay transmit power under TSNCR: harvested energy over a (1-rho)T/3
    broadcast slot.  Zero at rho = 0; DegenerateConfigError at rho = 1."""
    return _relay_power(params, rho, draw, 3)


def relay_power_tsfpr(params: SystemParams, rho: float,
                      draw: ChannelDraw) -> float:
    """Relay transmit power under TSFPR (slot (1-rho)T/4): exactly 4/3 of
    the TSNCR value for identical inputs, up to rounding."""
    return _relay_power(params, rho, draw, 4)


def rate_uplink(params: SystemParams, rho: float, h_sq: float, i: int,
                kind: Protocol) -> float:
    """Achievable uplink rate from user i to the relay, bits/s/Hz.

    (1-rho)/k * log2(1 + P_i |h_i|^2 / (d_i^m sigma_{r,i}^2)) with k the
    protocol's phase count.  Exactly 0.0 when rho = 1 or h_sq = 0.
    """
    _require(0 <= rho <= 1, "rho must be in [0, 1]")
    _require(h_sq >= 0, "h_sq must be >= 0")
    if rho == 1 or h_sq == 0:
        return 0.0
    snr = params.power(i) * h_sq / (params.path_loss(i)
                                    * params.noise.sigma2_r[i - 1])
    return (1.0 - rho) / kind.phases * math.log2(1.0 + snr)


def rate_broadcast_tsncr(params: SystemParams, rho: float,
                         draw: ChannelDraw) -> float:
    """Rate of the network-coded broadcast phase, limited by the worse of
    the two downlink channels."""
    p_r = relay_power_tsncr(params, rho, draw)
    snr = min(p_r * draw.f1sq / (params.path_loss(1) * params.noise.sigma2_u[0]),
              p_r * draw.f2sq / (params.path_loss(2) * params.noise.sigma2_u[1]))
    return (1.0 - rho) / 3.0 * math.log2(1.0 + snr)


def rate_downlink_tsfpr(params: SystemParams, rho: float, theta: float,
                        draw: ChannelDraw, j: int) -> float:
    """Rate of the TSFPR downlink phase toward user j.

    User 1's downlink is allocated the power share theta, user 2's the
    share 1-theta; each runs over its own channel f_j for (1-rho)T/4.
    """
    _require(0 <= theta <= 1, "theta must be in [0, 1]")
    _require(j in (1, 2), f"link index must be 1 or 2, got {j}")
    p_r = relay_power_tsfpr(params, rho, draw)
    share = theta if j == 1 else 1.0 - theta
    f_sq = draw.f1sq if j == 1 else draw.f2sq
    snr = share * p_r * f_sq / (params.path_loss(j)
                                * params.noise.sigma2_u[j - 1])
    return (1.0 - rho) / 4.0 * math.log2(1.0 + snr)


def outage_event(params: SystemParams, config: ProtocolConfig,
                 draw: ChannelDraw) -> bool:
    """Whether this channel realization puts the exchange in outage.

    True iff any constituent rate of the configured protocol falls below
    the target R0: both uplinks and the broadcast for TSNCR; both uplinks
    and both downlinks for TSFPR.  R0 = 0 can never be missed, so the
    result is False for every draw.  Uplinks are checked first, which
    also settles all rho = 1 configurations (uplink rate exactly 0).
    """
    r0 = params.R0
    if r0 == 0:
        return False
    rho = config.rho
    if (rate_uplink(params, rho, draw.h1sq, 1, config.kind) < r0
            or rate_uplink(params, rho, draw.h2sq, 2, config.kind) < r0):
        return True
    if config.kind is Protocol.TSNCR:
        return rate_broadcast_tsncr(params, rho, draw) < r0
    return (rate_downlink_tsfpr(params, rho, config.theta, draw, 1) < r0
            or rate_downlink_tsfpr(params, rho, config.theta, draw, 2) < r0)
