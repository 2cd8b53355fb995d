"""Modified Bessel functions of the second kind K1 and K2.

Scalar double-precision implementation in the style of the Cephes library
(netlib.org/cephes, files k0.c / k1.c): on (0, 2] the functions are split
into a logarithmic part carrying the singularity and a smooth remainder
expanded in Chebyshev polynomials of x^2/2 - 1; on (2, inf) the scaled
functions e^x sqrt(x) K_nu(x) are expanded in Chebyshev polynomials of
4/x - 1.  K2 is obtained from the forward recurrence

    K2(x) = K0(x) + 2 K1(x) / x                      (DLMF 10.29.1)

which is numerically benign because both terms are positive.

The coefficient tables are generated by ``tools/gen_bessel_cheb.py`` with
mpmath at 50 significant digits; the evaluation below reproduces mpmath to
a relative error under 2e-15 for x in [1e-8, 700].  For x beyond ~705 the
e^{-x} factor underflows and the functions return 0.0; callers only ever
multiply K values by bounded prefactors, so the underflow is harmless and
documented behaviour.
"""

import math

import numpy as np

from ._accel import maybe_jit
from .errors import ParameterError

# Chebyshev tables from tools/gen_bessel_cheb.py (do not edit by hand).
# _P0, _P1: smooth parts on (0, 2] as functions of u = x^2/2 - 1.
# _Q0, _Q1: e^x sqrt(x) K_nu(x) on (2, inf) as functions of v = 4/x - 1.
_P0 = np.array([
    -0.53532739323390276872,
    0.34428989992462848689,
    0.035979936515361501627,
    0.0012646154114469259234,
    0.000022862121031194517861,
    2.5347910790261494573e-7,
    1.9045163772202088590e-9,
    1.0349695257633624585e-11,
    4.2598161427910825765e-14,
    1.3744654358807508969e-16,
    3.5708965285083735910e-19,
])

_P1 = np.array([
    1.5253002273389477705,
    -0.35315596077654487567,
    -0.12261118082265714823,
    -0.0069757238596398643502,
    -0.00017302889575130520630,
    -2.4334061415659682350e-6,
    -2.2133876307347258558e-8,
    -1.4114883926335277611e-10,
    -6.6669016941993290061e-13,
    -2.4274498505193659339e-15,
    -7.0238634793862875972e-18,
    -1.6543275155100994675e-20,
])

_Q0 = np.array([
    2.4403030820659554547,
    -0.031448101311964500543,
    0.0015698838857300533749,
    -0.00012849549581627802638,
    0.000013949813718876499364,
    -1.8317555227191194848e-6,
    2.7668136394450150761e-7,
    -4.6604898976879476656e-8,
    8.5740340174142260858e-9,
    -1.6975345093890615156e-9,
    3.5773972814003284472e-10,
    -7.9574892444773970377e-11,
    1.8559491149549265550e-11,
    -4.5145978833745191751e-12,
    1.1403405882073442347e-12,
    -2.9800969231481783548e-13,
    8.0328907750683743694e-14,
    -2.2275133267462963604e-14,
    6.3400764762766459661e-15,
    -1.8485933779209071694e-15,
    5.5120559994043333649e-16,
    -1.6782311257549006383e-16,
    5.2103917776435541125e-17,
    -1.6475805939842632815e-17,
    5.3004337711773357710e-18,
    -1.7331712005821000278e-18,
    5.7551092028827293794e-19,
    -1.9390956053183554660e-19,
    6.6246105345361470341e-20,
    -2.2932197170560117732e-20,
])

_Q1 = np.array([
    2.7206261904844426694,
    0.10392373657681723844,
    -0.0028578168596227793868,
    0.00019521551847135163111,
    -0.000019361979741660829600,
    2.4064849478372171171e-6,
    -3.5019606030878125421e-7,
    5.7410841254500492923e-8,
    -1.0345762465678097027e-8,
    2.0150497551970346161e-9,
    -4.1903547593419255842e-10,
    9.2183151876053141258e-11,
    -2.1299678384277910216e-11,
    5.1396396734823435404e-12,
    -1.2891739609498229352e-12,
    3.3484196660522431201e-13,
    -8.9767051820101460692e-14,
    2.4771544242195986813e-14,
    -7.0198370892147688513e-15,
    2.0387031662398608799e-15,
    -6.0570472706430178228e-16,
    1.8380935752430454256e-16,
    -5.6894628491936483743e-17,
    1.7940510478863572914e-17,
    -5.7567444820733024503e-18,
    1.8778651901623267401e-18,
    -6.2216452873526091852e-19,
    2.0919125269831136552e-19,
    -7.1327129083411020671e-20,
    2.4645751417354729461e-20,
])


@maybe_jit
def _clenshaw(coefs, t):
    """Sum the Chebyshev series c0/2 + sum c_j T_j(t) by Clenshaw recurrence."""
    b1 = 0.0
    b2 = 0.0
    for k in range(len(coefs) - 1, 0, -1):
        b1, b2 = 2.0 * t * b1 - b2 + coefs[k], b1
    return t * b1 - b2 + 0.5 * coefs[0]


@maybe_jit
def _i0(x):
    """I0(x) by the ascending series, adequate for x <= 2."""
    t = 0.25 * x * x
    term = 1.0
    acc = 1.0
    k = 0
    while term > 1e-18 * acc:
        k += 1
        term *= t / (k * k)
        acc += term
    return acc


@maybe_jit
def _i1(x):
    """I1(x) by the ascending series, adequate for x <= 2."""
    t = 0.25 * x * x
    term = 1.0
    acc = 1.0
    k = 0
    while term > 1e-18 * acc:
        k += 1
        term *= t / (k * (k + 1))
        acc += term
    return 0.5 * x * acc


@maybe_jit
def _k0_raw(x):
    if x <= 2.0:
        return _clenshaw(_P0, 0.5 * x * x - 1.0) - math.log(0.5 * x) * _i0(x)
    return math.exp(-x) / math.sqrt(x) * _clenshaw(_Q0, 4.0 / x - 1.0)


@maybe_jit
def _k1_raw(x):
    if x <= 2.0:
        return math.log(0.5 * x) * _i1(x) + _clenshaw(_P1, 0.5 * x * x - 1.0) / x
    return math.exp(-x) / math.sqrt(x) * _clenshaw(_Q1, 4.0 / x - 1.0)


@maybe_jit
def _k2_raw(x):
    return _k0_raw(x) + 2.0 / x * _k1_raw(x)


def _validate(x):
    x = float(x)
    if not x > 0.0:
        raise ParameterError(f"Bessel K argument must be > 0, got {x!r}")
    return x


def bessel_k1(x):
    """Modified Bessel function of the second kind, order 1.

    Parameters
    ----------
    x : float
        Argument, must be strictly positive.

    Returns
    -------
    float
        K1(x) to relative accuracy better than 1e-12 for x in [1e-8, 700];
        0.0 for very large x where e^{-x} underflows (x > ~705).

    Raises
    ------
    ParameterError
        If ``x <= 0`` or ``x`` is NaN.
    """
    return _k1_raw(_validate(x))


def bessel_k2(x):
    """Modified Bessel function of the second kind, order 2.

    Computed as K0(x) + 2 K1(x)/x; same accuracy, domain, and underflow
    contract as :func:`bessel_k1`.
    """
    return _k2_raw(_validate(x))
