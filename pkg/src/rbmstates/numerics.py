"""Numerically stable scalar helpers shared by the model and sampling code.

All free energies in this package involve exponentials of arguments up to a
few hundred (e.g. exp(2 v^2) at v = 16), so every log of a sum of
exponentials must be formed without materializing the exponentials.
"""

import numpy as np

LOG2 = float(np.log(2.0))


def log_cosh(x):
    """log(cosh(x)) for real x, stable for |x| up to ~1e308.

    Uses cosh(x) = e^|x| (1 + e^(-2|x|)) / 2.
    """
    x = np.abs(np.asarray(x, dtype=float))
    return x - LOG2 + np.log1p(np.exp(-2.0 * x))


def log_cosh_complex(z):
    """Principal-branch log(cosh(z)) for complex z without overflow.

    The real part is log|cosh z| and the imaginary part the phase of
    cosh z.  Branch: cosh(z) = e^w (1 + e^(-2w)) / 2 with w = z or -z,
    whichever has nonnegative real part, so |e^(-2w)| <= 1.
    """
    z = np.asarray(z, dtype=complex)
    w = np.where(z.real >= 0.0, z, -z)
    # log(1 + e^(-2w)) hits -inf only at genuine zeros of cosh (w = i pi/2).
    with np.errstate(divide="ignore", invalid="ignore"):
        out = w - LOG2 + np.log(1.0 + np.exp(-2.0 * w))
    return out


def binary_entropy(p):
    """H_b(p) = -p log p - (1-p) log(1-p) with the 0 log 0 = 0 convention."""
    p = np.asarray(p, dtype=float)
    if np.any((p < -1e-12) | (p > 1.0 + 1e-12)):
        raise ValueError("binary_entropy argument outside [0, 1]")
    p = np.clip(p, 0.0, 1.0)
    return xlogx(p) + xlogx(1.0 - p)


def xlogx(p):
    """-p log p elementwise with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    mask = p > 0.0
    out[mask] = -p[mask] * np.log(p[mask])
    return out


def logmeanexp(x):
    """log of the arithmetic mean of exp(x), stable.

    Exact (returns x[0]) when all entries are equal, which makes
    fluctuation statistics of a deterministic ensemble exactly zero.
    """
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise ValueError("logmeanexp of empty array")
    m = np.max(x)
    if not np.isfinite(m):
        return float(m)
    return float(m + np.log(np.mean(np.exp(x - m))))
