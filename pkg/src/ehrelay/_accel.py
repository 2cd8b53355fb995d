"""Optional numba acceleration for the scalar hot paths.

The package has exactly one implementation of every numerical kernel,
written as plain Python over floats.  When numba is available (and not
disabled), the kernels are additionally compiled with ``numba.njit``;
otherwise the plain-Python version runs as-is, and the Monte Carlo layer
falls back to an equivalent vectorized NumPy path.  Both routes perform
the same IEEE-754 operations on the same inputs, so results are identical
bit for bit -- the switch is a performance knob, never a semantics knob.

Selection is made once at import time from ``EHRELAY_NUMBA``:

* unset or ``"auto"`` -- use numba if it imports;
* ``"1"`` -- require numba (ImportError if missing);
* ``"0"`` -- plain Python / NumPy only.
"""

import os

_flag = os.environ.get("EHRELAY_NUMBA", "auto").strip().lower()

if _flag in ("0", "false", "off", "no"):
    NUMBA_ENABLED = False
elif _flag in ("1", "true", "on", "yes"):
    import numba  # noqa: F401 -- fail loudly when explicitly requested

    NUMBA_ENABLED = True
else:
    try:
        import numba  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False


def maybe_jit(func):
    """Compile a scalar float kernel with numba, or return it unchanged."""
    if NUMBA_ENABLED:
        from numba import njit

        return njit(cache=True)(func)
    return func
