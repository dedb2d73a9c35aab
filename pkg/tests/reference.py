"""Independent high-precision references built on mpmath quadrature.

None of these share code with the package's series oracles.
"""

import mpmath as mp

mp.mp.dps = 30


def caputo_quad(dy, alpha, x):
    """Caputo derivative from its integral definition, given y' as an mpmath callable.

    Substituting u = s^(1-alpha) removes the kernel singularity:
    D^a y(x) = 1/Gamma(2-a) * int_0^{x^(1-a)} y'(x - u^(1/(1-a))) du.
    """
    a = mp.mpf(alpha)
    x = mp.mpf(x)
    p = 1 / (1 - a)
    val = mp.quad(lambda u: dy(x - u**p), [0, x ** (1 - a)])
    return float(val / mp.gamma(2 - a))


def frac_integral_quad(y, beta, x):
    """J^beta y(x) for beta > 1 (integrand is continuous)."""
    b = mp.mpf(beta)
    x = mp.mpf(x)
    val = mp.quad(lambda s: y(x - s) * s ** (b - 1), [0, x])
    return float(val / mp.gamma(b))
