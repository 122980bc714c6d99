"""Lobachevsky function and the closed-form volumes built on it.

``lobachevsky(x) = -int_0^x log|2 sin t| dt`` is odd and pi-periodic. It is
evaluated by reducing ``x`` to ``[0, pi/2]`` and summing the power series

    Λ(x) = x (1 - log 2x) + sum_{n>=1} ζ(2n) x^(2n+1) / (n (2n+1) π^(2n)),

whose coefficients are rational multiples of Bernoulli numbers. On the
reduced interval the ratio of consecutive terms is at most 1/4, so 40 terms
give full double precision.
"""

import cmath
import math
from fractions import Fraction

from .errors import BadAngles, NotHyperbolic

__all__ = [
    "lobachevsky",
    "v8",
    "v3",
    "ideal_tetrahedron_volume",
    "cross_ratio_volume",
    "orthoscheme_volume",
]

_N_TERMS = 40
_HALF_PI = 0.5 * math.pi
_FLAT_DISC = 1e-15


def _bernoulli(m):
    """B_0..B_m as Fractions (Akiyama-Tanigawa)."""
    out = []
    a = [Fraction(0)] * (m + 1)
    for k in range(m + 1):
        a[k] = Fraction(1, k + 1)
        for j in range(k, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    # the algorithm yields B_1 = +1/2; only even indices are used here
    return out


def _series_coefficients(n_terms):
    bern = _bernoulli(2 * n_terms)
    coeffs = []
    for n in range(1, n_terms + 1):
        b = abs(bern[2 * n])
        c = b * 2 ** (2 * n - 1) / (math.factorial(2 * n) * n * (2 * n + 1))
        coeffs.append(float(c))
    return tuple(coeffs)


_COEFFS = _series_coefficients(_N_TERMS)


def _lob_reduced(x):
    # 0 <= x <= pi/2
    if x == 0.0:
        return 0.0
    x2 = x * x
    acc = 0.0
    for c in reversed(_COEFFS):
        acc = (acc + c) * x2
    return x * (1.0 - math.log(2.0 * x)) + x * acc


def lobachevsky(x):
    """Λ(x) = -∫_0^x log|2 sin t| dt for any finite real ``x``."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"lobachevsky needs a finite argument, got {x}")
    if x < 0.0:
        return -lobachevsky(-x)
    r = math.fmod(x, math.pi)
    if r > _HALF_PI:
        return -_lob_reduced(math.pi - r)
    return _lob_reduced(r)


def v8():
    """Volume of the regular ideal octahedron, 8Λ(π/4)."""
    return 8.0 * lobachevsky(math.pi / 4.0)


def v3():
    """Volume of the regular ideal tetrahedron, 2Λ(π/6)."""
    return 2.0 * lobachevsky(math.pi / 6.0)


def ideal_tetrahedron_volume(alpha, beta, gamma, tol=1e-9):
    """Volume Λ(α)+Λ(β)+Λ(γ) of the ideal tetrahedron with dihedral angles α, β, γ.

    The angles must be non-negative and sum to π within ``tol``. A zero angle
    gives the flat tetrahedron of volume 0.
    """
    angles = (float(alpha), float(beta), float(gamma))
    if any(a < 0.0 for a in angles):
        raise BadAngles(f"negative dihedral angle in {angles}")
    if abs(sum(angles) - math.pi) > tol:
        raise BadAngles(f"angles {angles} do not sum to pi")
    if any(a == 0.0 for a in angles):
        return 0.0
    return sum(lobachevsky(a) for a in angles)


def cross_ratio_volume(z):
    """Signed volume of the ideal tetrahedron with shape parameter ``z``.

    This is the Bloch-Wigner dilogarithm written through Λ: the three
    dihedral angles are arg z, arg 1/(1-z) and arg (z-1)/z. The sign follows
    Im z; a real shape is degenerate and has volume 0.
    """
    z = complex(z)
    if z == 0 or z == 1 or not cmath.isfinite(z):
        raise BadAngles(f"cross ratio {z} is one of 0, 1, inf")
    if z.imag == 0.0:
        return 0.0
    a = cmath.phase(z)
    b = cmath.phase(1.0 / (1.0 - z))
    c = cmath.phase((z - 1.0) / z)
    return lobachevsky(a) + lobachevsky(b) + lobachevsky(c)


def orthoscheme_volume(alpha, beta, gamma, tol=1e-12):
    """Volume of the hyperbolic orthoscheme with essential angles α, β, γ.

    α and γ are the dihedral angles at the two ends of the orthogonal edge
    path and β the one in the middle. The orthoscheme is hyperbolic when
    cos²β > sin²α sin²γ and Euclidean (volume 0) on equality.
    """
    alpha, beta, gamma = float(alpha), float(beta), float(gamma)
    disc = math.cos(beta) ** 2 - (math.sin(alpha) * math.sin(gamma)) ** 2
    if disc < -tol:
        raise NotHyperbolic(f"orthoscheme ({alpha}, {beta}, {gamma}) is spherical")
    if disc <= _FLAT_DISC:
        # Euclidean up to rounding; the true volume is O(disc^1.5)
        return 0.0
    delta = math.atan2(math.sqrt(disc), math.cos(alpha) * math.cos(gamma))
    lob = lobachevsky
    vol = (
        lob(alpha + delta) - lob(alpha - delta)
        + lob(gamma + delta) - lob(gamma - delta)
        - lob(_HALF_PI - beta + delta) + lob(_HALF_PI - beta - delta)
        + 2.0 * lob(_HALF_PI - delta)
    )
    return 0.25 * vol
