"""Generate the Chebyshev coefficient tables used by ehrelay.bessel.

The evaluation scheme follows the classic Cephes k0.c/k1.c decomposition
(netlib.org/cephes):

  small arguments, 0 < x <= 2:
      K0(x) = P0(u) - log(x/2) * I0(x)
      K1(x) = log(x/2) * I1(x) + P1(u) / x
  large arguments, x > 2:
      Kn(x) = exp(-x) / sqrt(x) * Qn(v)

with u = x^2/2 - 1 in [-1, 1] and v = 4/x - 1 in (-1, 1].  P0, P1, Q0, Q1
are Chebyshev expansions fitted here with mpmath at 50 significant digits
via the Gauss--Chebyshev discrete cosine transform, then truncated once the
coefficients fall below 1e-20 (well under double-precision round-off).

Run from the repository root:

    python tools/gen_bessel_cheb.py

and paste the printed arrays into src/ehrelay/bessel.py.  The script also
prints the max relative error of a plain-float Clenshaw evaluation against
mpmath.besselk on a dense log grid, which must come out below 5e-14.
"""

import math

import mpmath as mp

mp.mp.dps = 50

N_FIT = 96  # fitting nodes; generous, truncated afterwards
CUTOFF = mp.mpf("1e-20")


def cheb_fit(f, n=N_FIT):
    """Chebyshev coefficients of f on [-1, 1] (c0 used with weight 1/2)."""
    nodes = [mp.cos(mp.pi * (k + mp.mpf("0.5")) / n) for k in range(n)]
    vals = [f(t) for t in nodes]
    coefs = []
    for j in range(n):
        acc = mp.mpf(0)
        for k in range(n):
            acc += vals[k] * mp.cos(j * mp.pi * (k + mp.mpf("0.5")) / n)
        coefs.append(2 * acc / n)
    # truncate trailing terms that cannot affect a double result
    last = n
    while last > 1 and abs(coefs[last - 1]) < CUTOFF:
        last -= 1
    return coefs[:last]


def i0(x):
    return mp.besseli(0, x)


def i1(x):
    return mp.besseli(1, x)


# --- small-argument tables: u = x^2/2 - 1, x in (0, 2] ---------------------

def x_from_u(u):
    return mp.sqrt(2 * (u + 1))


def p0(u):
    # K0(x) + log(x/2) I0(x); analytic continuation -EulerGamma at x = 0
    if u == -1:
        return -mp.euler
    x = x_from_u(u)
    return mp.besselk(0, x) + mp.log(x / 2) * i0(x)


def p1(u):
    # x*(K1(x) - log(x/2) I1(x)); limit 1 at x = 0
    if u == -1:
        return mp.mpf(1)
    x = x_from_u(u)
    return x * (mp.besselk(1, x) - mp.log(x / 2) * i1(x))


# --- large-argument tables: v = 4/x - 1, x in [2, inf) ---------------------

def x_from_v(v):
    return 4 / (v + 1) if v != -1 else mp.inf


def q(nu, v):
    # exp(x) sqrt(x) K_nu(x); limit sqrt(pi/2) as x -> inf
    if v == -1:
        return mp.sqrt(mp.pi / 2)
    x = x_from_v(v)
    return mp.exp(x) * mp.sqrt(x) * mp.besselk(nu, x)


# --- float re-implementation used only for validation ----------------------

def clenshaw(c, t):
    b1 = 0.0
    b2 = 0.0
    for ck in reversed(c[1:]):
        b1, b2 = 2.0 * t * b1 - b2 + ck, b1
    return t * b1 - b2 + 0.5 * c[0]


def i0_f(x):
    t = 0.25 * x * x
    term = 1.0
    acc = 1.0
    k = 0
    while term > 1e-18 * acc:
        k += 1
        term *= t / (k * k)
        acc += term
    return acc


def i1_f(x):
    t = 0.25 * x * x
    term = 1.0
    acc = 1.0
    k = 0
    while term > 1e-18 * acc:
        k += 1
        term *= t / (k * (k + 1))
        acc += term
    return 0.5 * x * acc


def k0_f(x, tab):
    p0c, p1c, q0c, q1c = tab
    if x <= 2.0:
        return clenshaw(p0c, 0.5 * x * x - 1.0) - math.log(0.5 * x) * i0_f(x)
    return math.exp(-x) / math.sqrt(x) * clenshaw(q0c, 4.0 / x - 1.0)


def k1_f(x, tab):
    p0c, p1c, q0c, q1c = tab
    if x <= 2.0:
        return math.log(0.5 * x) * i1_f(x) + clenshaw(p1c, 0.5 * x * x - 1.0) / x
    return math.exp(-x) / math.sqrt(x) * clenshaw(q1c, 4.0 / x - 1.0)


def main():
    tables = {
        "_P0": cheb_fit(p0),
        "_P1": cheb_fit(p1),
        "_Q0": cheb_fit(lambda v: q(0, v)),
        "_Q1": cheb_fit(lambda v: q(1, v)),
    }
    for name, coefs in tables.items():
        print(f"{name} = np.array([")
        for c in coefs:
            print(f"    {mp.nstr(c, 20, strip_zeros=False)},")
        print("])\n")

    tab = tuple([float(c) for c in tables[k]] for k in ("_P0", "_P1", "_Q0", "_Q1"))
    worst = (0.0, None, None)
    for i in range(4000):
        x = 10.0 ** (-8.0 + 10.85 * i / 3999.0)  # 1e-8 .. ~7e2
        for nu, f in ((0, k0_f), (1, k1_f)):
            got = f(x, tab)
            ref = mp.besselk(nu, x)
            if ref == 0:
                continue
            rel = abs((mp.mpf(got) - ref) / ref)
            if rel > worst[0]:
                worst = (rel, nu, x)
    print(f"# max rel err vs mpmath: {mp.nstr(worst[0], 3)} at nu={worst[1]}, "
          f"x={worst[2]:.6g}")
    # K2 through the forward recurrence used by the library
    worst2 = 0.0
    for i in range(2000):
        x = 10.0 ** (-8.0 + 10.85 * i / 1999.0)
        got = k0_f(x, tab) + 2.0 / x * k1_f(x, tab)
        ref = mp.besselk(2, x)
        rel = abs((mp.mpf(got) - ref) / ref)
        worst2 = max(worst2, rel)
    print(f"# max rel err K2 = K0 + 2 K1/x vs mpmath: {mp.nstr(worst2, 3)}")


if __name__ == "__main__":
    main()
