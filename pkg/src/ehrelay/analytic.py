"""Closed-form outage probability and outage capacity for both protocols.

The outage probability of either protocol factors into per-link success
probabilities.  The uplink factors are exponential tails; the downlink
factors are expectations of ``exp(-beta / (wa*|h1|^2 + wb*|h2|^2))`` over
the harvesting channels, which reduce to modified Bessel functions K1/K2
(see :func:`tail_integral`).  Everything here is deterministic scalar
math; the Monte Carlo module provides the independent estimates these
expressions are validated against.
"""

import math
from dataclasses import dataclass
from enum import Enum

from ._accel import maybe_jit
from .bessel import _k1_raw, _k2_raw, bessel_k1, bessel_k2  # noqa: F401
from .errors import (DegenerateConfigError, InternalConsistencyError,
                     ParameterError)
from .model import Protocol, ProtocolConfig, SystemParams, snr_threshold

#: Relative tolerance on the weight discriminant wa*l2 - wb*l1 below which
#: the confluent (equal-rate) formulas are used.  Near but outside this
#: window the general branch is still well conditioned: the continuity gap
#: between branches is O(disc) while cancellation loses only O(disc) digits.
EQUAL_BRANCH_RTOL = 1e-9


class OutageBranch(Enum):
    """Which confluence case of the closed form was (or would be) used.

    The first word refers to the discriminant of the (1-theta)-weighted
    downlink factor, the second to the theta-weighted one.  TSNCR has a
    single downlink factor; its one discriminant is recorded in both
    positions, so TSNCR values are always GENERAL_GENERAL or EQUAL_EQUAL.
    """

    GENERAL_GENERAL = "general-general"
    GENERAL_EQUAL = "general-equal"
    EQUAL_GENERAL = "equal-general"
    EQUAL_EQUAL = "equal-equal"


@dataclass(frozen=True)
class OutageValue:
    """An outage probability plus the closed-form branch that produced it."""

    probability: float
    branch: OutageBranch


@dataclass(frozen=True)
class ClosedFormCoefficientsTsncr:
    """Derived scalars of the three-phase closed form.

    ``a, b`` weight the harvested-power sum a|h1|^2 + b|h2|^2; ``a0, b0``
    are the uplink outage thresholds; ``u0`` is the SNR threshold
    2^(3 R0/(1-rho)) - 1; ``e0`` aggregates downlink noise and fading as
    d1^m sigma_u1^2 lambda_f1 + d2^m sigma_u2^2 lambda_f2.
    """

    a: float
    b: float
    a0: float
    b0: float
    u0: float
    e0: float


@dataclass(frozen=True)
class ClosedFormCoefficientsTsfpr:
    """Derived scalars of the four-phase closed form.

    ``a, b`` carry the (1-theta) power share (downlink toward U2), ``c, d``
    the theta share (toward U1); ``c0, d0`` are the corresponding downlink
    threshold scales; ``e0`` here is the uplink success prefactor
    exp(-lambda_h1 a0 - lambda_h2 b0).
    """

    a: float
    b: float
    c: float
    d: float
    a0: float
    b0: float
    c0: float
    d0: float
    u0: float
    e0: float


def _is_equal_branch(wa: float, wb: float, l1: float, l2: float) -> bool:
    da = wa * l2
    db = wb * l1
    return abs(da - db) <= EQUAL_BRANCH_RTOL * max(da, db)


@maybe_jit
def _tail_raw(beta, l1, l2, wa, wb):
    """E[exp(-beta/(wa*X + wb*Y))], X~Exp(l1), Y~Exp(l2); no validation."""
    if beta == 0.0:
        return 1.0
    if math.isinf(beta):
        return 0.0
    da = wa * l2
    db = wb * l1
    disc = da - db
    mx = da if da > db else db
    if abs(disc) <= EQUAL_BRANCH_RTOL * mx:
        # confluent case: wa*X + wb*Y ~ Gamma(2, rate l1/wa)
        return 2.0 * (l1 / wa) * beta * _k2_raw(2.0 * math.sqrt(beta * (l2 / wb)))
    xa = 2.0 * math.sqrt(beta * (l1 / wa))
    xb = 2.0 * math.sqrt(beta * (l2 / wb))
    # sqrt(beta*wa/l1) K1(xa) written as (2 beta/xa) K1(xa) to dodge overflow
    bracket = (2.0 * beta / xa) * _k1_raw(xa) - (2.0 * beta / xb) * _k1_raw(xb)
    return 2.0 * (l1 * l2) / disc * bracket


@maybe_jit
def _succ_tsncr_raw(pre, beta, l1, l2, wa, wb):
    """Total success probability of the three-phase protocol from its parts."""
    if pre == 0.0:
        return 0.0
    return pre * _tail_raw(beta, l1, l2, wa, wb)


@maybe_jit
def _succ_tsfpr_raw(pre, beta2, beta1, l1, l2, wa, wb, wc, wd):
    """Success probability of the four-phase protocol: uplink prefactor times
    both downlink tail factors (grouped so a theta swap flips the product's
    operands without changing its value)."""
    if pre == 0.0:
        return 0.0
    t2 = _tail_raw(beta2, l1, l2, wa, wb)
    t1 = _tail_raw(beta1, l1, l2, wc, wd)
    return pre * (t2 * t1)


def pdf_weighted_exp_sum(a: float, b: float, lambda1: float, lambda2: float,
                         z: float) -> float:
    """Density of z = a*X + b*Y for independent X~Exp(lambda1), Y~Exp(lambda2).

    Uses the confluent (Gamma(2)) form when the rate discriminant
    a*lambda2 - b*lambda1 is within EQUAL_BRANCH_RTOL of zero, and the
    two-exponential difference form otherwise.
    """
    if a <= 0 or b <= 0 or lambda1 <= 0 or lambda2 <= 0:
        raise ParameterError("weights and rates must be > 0")
    if z < 0:
        raise ParameterError(f"density argument must be >= 0, got {z!r}")
    r1 = lambda1 / a
    r2 = lambda2 / b
    if _is_equal_branch(a, b, lambda1, lambda2):
        return r1 * r2 * z * math.exp(-r1 * z)
    return (lambda1 * lambda2 / (a * lambda2 - b * lambda1)
            * (math.exp(-r1 * z) - math.exp(-r2 * z)))


def cdf_min_weighted(params: SystemParams, w: float) -> float:
    """CDF of the normalized worse downlink gain.

    For w = min(|f1|^2/(d1^m sigma_u1^2), |f2|^2/(d2^m sigma_u2^2)) the
    minimum of two scaled exponentials is exponential again, so the CDF is
    1 - exp(-(d1^m sigma_u1^2 lambda_f1 + d2^m sigma_u2^2 lambda_f2) * w).
    """
    if w < 0:
        raise ParameterError(f"CDF argument must be >= 0, got {w!r}")
    e0 = (params.path_loss(1) * params.noise.sigma2_u[0] * params.fading.lambda_f1
          + params.path_loss(2) * params.noise.sigma2_u[1] * params.fading.lambda_f2)
    return -math.expm1(-e0 * w)


def tail_integral(beta: float, rates, weights) -> float:
    """Success probability E[exp(-beta / (wa*X + wb*Y))].

    X ~ Exp(rates[0]) and Y ~ Exp(rates[1]) are the two harvesting gains,
    ``weights`` their positive combination weights.  This is the building
    block of every downlink factor: a downlink succeeds when its fading
    gain exceeds a threshold proportional to 1/(harvested power), and
    averaging that exponential tail over the harvested power produces
    modified Bessel functions:

    * general case (wa*l2 != wb*l1):
      2 l1 l2/(wa l2 - wb l1) * [sqrt(beta wa/l1) K1(2 sqrt(beta l1/wa))
      - sqrt(beta wb/l2) K1(2 sqrt(beta l2/wb))]
    * confluent case: 2 l1 beta/wa * K2(2 sqrt(beta l2/wb)).

    Returns exactly 1.0 when beta is 0, and decays to 0.0 as beta grows.
    """
    l1, l2 = rates
    wa, wb = weights
    if not beta >= 0:
        raise ParameterError(f"beta must be >= 0, got {beta!r}")
    if min(l1, l2, wa, wb) <= 0:
        raise ParameterError("rates and weights must be > 0")
    return _finish_probability(_tail_raw(beta, l1, l2, wa, wb))


def _finish_probability(p: float) -> float:
    """Clamp floating-point spill of at most 1e-12 outside [0, 1]."""
    if 0.0 <= p <= 1.0:
        return p
    if -1e-12 <= p < 0.0:
        return 0.0
    if 1.0 < p <= 1.0 + 1e-12:
        return 1.0
    raise InternalConsistencyError(
        f"probability {p!r} out of [0, 1] beyond rounding tolerance")


def _reduced_weight(params: SystemParams, i: int) -> float:
    return params.power(i) / params.path_loss(i)


def _branch_tsncr(params: SystemParams) -> OutageBranch:
    equal = _is_equal_branch(_reduced_weight(params, 1),
                             _reduced_weight(params, 2),
                             params.fading.lambda_h1, params.fading.lambda_h2)
    return OutageBranch.EQUAL_EQUAL if equal else OutageBranch.GENERAL_GENERAL


def _branch_tsfpr(params: SystemParams, theta: float) -> OutageBranch:
    w1 = _reduced_weight(params, 1)
    w2 = _reduced_weight(params, 2)
    lh1 = params.fading.lambda_h1
    lh2 = params.fading.lambda_h2
    first = _is_equal_branch((1.0 - theta) * w1, (1.0 - theta) * w2, lh1, lh2)
    second = _is_equal_branch(theta * w1, theta * w2, lh1, lh2)
    return {(False, False): OutageBranch.GENERAL_GENERAL,
            (False, True): OutageBranch.GENERAL_EQUAL,
            (True, False): OutageBranch.EQUAL_GENERAL,
            (True, True): OutageBranch.EQUAL_EQUAL}[(first, second)]


def _check_rho(rho: float) -> None:
    if not 0 <= rho <= 1:
        raise ParameterError(f"rho must be in [0, 1], got {rho!r}")


def _check_theta(theta: float) -> None:
    if not 0 <= theta <= 1:
        raise ParameterError(f"theta must be in [0, 1], got {theta!r}")


def tsncr_coefficients(params: SystemParams,
                       rho: float) -> ClosedFormCoefficientsTsncr:
    """Derived scalars of the three-phase closed form at an interior rho."""
    _check_rho(rho)
    if rho == 1:
        raise DegenerateConfigError("rho = 1 leaves no transmission time")
    d1m = params.path_loss(1)
    d2m = params.path_loss(2)
    u0 = snr_threshold(params.R0, rho, 3)
    scale = 1.5 * rho * params.eta / (1.0 - rho)
    return ClosedFormCoefficientsTsncr(
        a=scale * params.P1 / d1m,
        b=scale * params.P2 / d2m,
        a0=u0 * d1m * params.noise.sigma2_r[0] / params.P1,
        b0=u0 * d2m * params.noise.sigma2_r[1] / params.P2,
        u0=u0,
        e0=(d1m * params.noise.sigma2_u[0] * params.fading.lambda_f1
            + d2m * params.noise.sigma2_u[1] * params.fading.lambda_f2),
    )


def tsfpr_coefficients(params: SystemParams, rho: float,
                       theta: float) -> ClosedFormCoefficientsTsfpr:
    """Derived scalars of the four-phase closed form at an interior rho."""
    _check_rho(rho)
    _check_theta(theta)
    if rho == 1:
        raise DegenerateConfigError("rho = 1 leaves no transmission time")
    d1m = params.path_loss(1)
    d2m = params.path_loss(2)
    fad = params.fading
    u0 = snr_threshold(params.R0, rho, 4)
    scale = 2.0 * rho * params.eta / (1.0 - rho)
    a0 = u0 * d1m * params.noise.sigma2_r[0] / params.P1
    b0 = u0 * d2m * params.noise.sigma2_r[1] / params.P2
    return ClosedFormCoefficientsTsfpr(
        a=(1.0 - theta) * scale * params.P1 / d1m,
        b=(1.0 - theta) * scale * params.P2 / d2m,
        c=theta * scale * params.P1 / d1m,
        d=theta * scale * params.P2 / d2m,
        a0=a0,
        b0=b0,
        c0=u0 * d2m * params.noise.sigma2_u[1],
        d0=u0 * d1m * params.noise.sigma2_u[0],
        u0=u0,
        e0=math.exp(-fad.lambda_h1 * a0 - fad.lambda_h2 * b0),
    )


def outage_tsncr(params: SystemParams, rho: float) -> OutageValue:
    """Outage probability of the network-coded three-phase protocol.

    The exchange succeeds when both uplinks clear the SNR threshold u0
    (probability exp(-lambda_h1 a0 - lambda_h2 b0)) and the network-coded
    broadcast clears it at both users (the tail_integral factor with
    beta = e0*u0).  Degenerate cases short-circuit before any coefficient
    is formed: R0 = 0 can never be missed (probability 0); rho in {0, 1}
    allows no harvesting or no transmission (probability 1).

    Returns an :class:`OutageValue`; the result is clamped to [0, 1] only
    against floating-point spill of at most 1e-12, anything larger raises
    :class:`InternalConsistencyError`.
    """
    _check_rho(rho)
    branch = _branch_tsncr(params)
    if params.R0 == 0:
        return OutageValue(0.0, branch)
    if rho == 0 or rho == 1:
        return OutageValue(1.0, branch)
    co = tsncr_coefficients(params, rho)
    fad = params.fading
    pre = math.exp(-fad.lambda_h1 * co.a0 - fad.lambda_h2 * co.b0)
    succ = _succ_tsncr_raw(pre, co.e0 * co.u0, fad.lambda_h1, fad.lambda_h2,
                           co.a, co.b)
    return OutageValue(_finish_probability(1.0 - succ), branch)


def outage_tsfpr(params: SystemParams, rho: float,
                 theta: float) -> OutageValue:
    """Outage probability of the four-phase protocol with power split theta.

    Success requires both uplinks (prefactor as in :func:`outage_tsncr`
    with the four-phase threshold) and both downlinks, each downlink
    contributing one tail_integral factor: toward U2 with the (1-theta)
    weights and beta = c0*lambda_f2, toward U1 with the theta weights and
    beta = d0*lambda_f1.  theta in {0, 1} starves one downlink entirely,
    so the probability is 1 exactly, as for rho in {0, 1}; R0 = 0 gives 0.
    """
    _check_rho(rho)
    _check_theta(theta)
    branch = _branch_tsfpr(params, theta)
    if params.R0 == 0:
        return OutageValue(0.0, branch)
    if rho == 0 or rho == 1 or theta == 0 or theta == 1:
        return OutageValue(1.0, branch)
    co = tsfpr_coefficients(params, rho, theta)
    fad = params.fading
    succ = _succ_tsfpr_raw(co.e0, co.c0 * fad.lambda_f2, co.d0 * fad.lambda_f1,
                           fad.lambda_h1, fad.lambda_h2,
                           co.a, co.b, co.c, co.d)
    return OutageValue(_finish_probability(1.0 - succ), branch)


def outage_probability(params: SystemParams,
                       config: ProtocolConfig) -> OutageValue:
    """Closed-form outage for either protocol, dispatched on the config."""
    if config.kind is Protocol.TSNCR:
        return outage_tsncr(params, config.rho)
    return outage_tsfpr(params, config.rho, config.theta)


def outage_capacity(params: SystemParams, config: ProtocolConfig,
                    p_out: float) -> float:
    """Outage capacity in bits/s/Hz: (1 - p_out) times the duty-cycled rate.

    The duty-cycle factor is 2(1-rho)/3 for TSNCR (two messages delivered
    in three phases) and (1-rho)/2 for TSFPR (two messages, four phases).
    """
    if not 0 <= p_out <= 1:
        raise ParameterError(f"p_out must be in [0, 1], got {p_out!r}")
    rho = config.rho
    if config.kind is Protocol.TSNCR:
        duty = 2.0 * (1.0 - rho) / 3.0
    else:
        duty = (1.0 - rho) / 2.0
    return duty * (1.0 - p_out) * params.R0
