"""Independent 40-digit reference values frozen into the unit tests.

Each quantity is recomputed from its defining integral or formula with mpmath,
without going through the C++ code. Run: python3 tools/mpmath_goldens.py
"""

from mpmath import conj, cos, diff, exp, inf, mp, mpf, pi, quad, re, sinh, sqrt

mp.dps = 40

m = hbar = kB = mpf(1)
g = mpf(-3)
L = mpf(50)
s0 = mpf(1)
k = mpf("0.1")


def tau(gam, t):
    return (1 - exp(-2 * gam * t)) / (2 * gam)


def cl_packet(x0, p0, gam, D, t):
    """Centre and width of a damped, diffusing packet."""
    E = exp(-2 * gam * t)
    ta = tau(gam, t)
    xt = x0 + p0 * ta / m - g * (t - ta) / (2 * gam)
    wt = sqrt(
        s0**2 * (1 + hbar**2 * ta**2 / (4 * m**2 * s0**4))
        - (3 + E * E - 4 * E - 4 * gam * t) / (8 * m**2 * gam**3) * D
    )
    return xt, wt


def term(j, r, t, gam, D):
    """Exponent coefficients (a_j, b_j) of the four density-matrix terms."""
    E = exp(-2 * gam * t)
    a1 = -1j * m * g * (1 - E) / (2 * gam * hbar) * r + exp(-4 * gam * t) * (
        -2 * D * s0**2 * (exp(4 * gam * t) - 1) - gam * hbar**2
    ) / (8 * gam * hbar**2 * s0**2) * r * r
    b1 = 1j * (-2 * gam * g * t - g * E + g - 2 * gam**2 * L) / (4 * gam**2) - exp(
        -4 * gam * t
    ) * (exp(2 * gam * t) - 1) * (2 * D * s0**2 * (exp(2 * gam * t) - 1) + gam * hbar**2) / (
        8 * gam**2 * hbar * m * s0**2
    ) * r
    if j == 1:
        return a1, b1
    if j == 2:
        return a1 + 1j * k * r * E, b1 + 1j * (L + hbar * k * (1 - E) / (2 * gam * m))
    a3 = (
        a1
        - (4 * k**2 * s0**4 + 4j * k * L * s0**2 + L**2) / (8 * s0**2)
        + E * (L + 2j * k * s0**2) / (4 * s0**2) * r
    )
    b3 = b1 + E * (L + 2j * k * s0**2) * (
        -hbar + exp(2 * gam * t) * (hbar + 4j * gam * m * s0**2)
    ) / (8 * gam * m * s0**2)
    if j == 3:
        return a3, b3
    return a3 + L * (1j * k - E / (2 * s0**2) * r), b3 + 2 * k * s0**2 + hbar * L * (E - 1) / (
        4 * gam * m * s0**2
    )


def rho(r, R, t, gam, D, alpha):
    """Density matrix in relative/centre coordinates."""
    _, w = cl_packet(0, 0, gam, D, t)
    total = 0
    for j, weight in [(1, 1), (2, 1), (3, exp(1j * alpha)), (4, exp(-1j * alpha))]:
        a, b = term(j, r, t, gam, D)
        total += weight * exp(a - (R + 1j * b) ** 2 / (2 * w * w))
    return total / (2 * sqrt(2 * pi) * w)


def cl_modular_quadrature(t, gam, D, alpha):
    f = lambda R: (rho(L, R, t, gam, D, alpha) + rho(-L, R, t, gam, D, alpha)) / 2
    c = -g * (t - tau(gam, t)) / (2 * gam)
    return quad(f, [c - 40, c - 10, c, c + 10, c + 40])


def cl_modular_closed(t, gam, D, alpha):
    E = exp(-2 * gam * t)
    env = exp(
        -D * L**2 / (2 * hbar**2 * gam) * E * sinh(2 * gam * t)
        - L**2 / (2 * s0**2) * E * sinh(gam * t) ** 2
        - k**2 * s0**2 / 2
    )
    return env * cos(alpha - L * (1 - E) / 2 * (k + m * g / (hbar * gam))) / 2


def common_bath_modular(t, gam, D, alpha):
    """Reduced modular variable with both particles in one bath."""
    E = exp(-4 * gam * t)
    env = exp(
        -D * L**2 / (4 * hbar**2 * gam) * E * sinh(4 * gam * t)
        - L**2 / (4 * s0**2) * E * sinh(2 * gam * t) ** 2
        - k**2 * s0**2 / 2
    )
    return env * cos(alpha - L * (1 - E) / 4 * (k + m * g / (hbar * gam))) / 2


def phi(x, t, x0, p0):
    """Free-fall Gaussian packet."""
    st = s0 * (1 + 1j * hbar * t / (2 * m * s0**2))
    xt = x0 + p0 * t / m - g * t * t / 2
    pt = p0 - m * g * t
    A = (p0**2 / (2 * m) - m * g * x0) * t - p0 * g * t**2 + m * g * g * t**3 / 3
    return (
        (2 * pi) ** mpf(-0.25)
        * st ** mpf(-0.5)
        * exp(-((x - xt) ** 2) / (4 * st * s0) + 1j * pt * (x - xt) / hbar + 1j * A / hbar)
    )


def psi(x, t, alpha):
    N = (1 + cos(alpha - k * L / 2) * exp(-(L**2) / (8 * s0**2) - k**2 * s0**2 / 2)) ** mpf(-0.5)
    return N * (phi(x, t, -L / 2, 0) + exp(1j * alpha) * phi(x, t, L / 2, hbar * k)) / sqrt(2)


def characteristic(r, t, alpha):
    c = -L / 2 - g * t * t / 2 + r / 2
    f = lambda R: psi(R + r / 2, t, alpha) * conj(psi(R - r / 2, t, alpha))
    return quad(f, [c - 30, c - 8, c, c + 8, c + 30])


def main():
    gam, T = mpf("0.001"), 2
    D = 2 * m * gam * kB * T
    print("tau(0.001, 2) =", tau(gam, 2))
    print("cl packet A, t=2 =", cl_packet(-L / 2, 0, gam, D, 2))
    print("cl packet B, t=2 =", cl_packet(L / 2, hbar * k, gam, D, 2))
    print("cl modular quadrature, t=2 =", cl_modular_quadrature(2, gam, D, 0))
    print("cl modular closed, t=2 =", cl_modular_closed(2, gam, D, 0))

    g5 = mpf("0.005")
    D5 = 2 * g5 * 15
    print("common bath, t=2 =", common_bath_modular(2, g5, D5, 0))
    print("common bath, t=0.2 =", common_bath_modular(mpf("0.2"), g5, D5, 0))

    print("characteristic(L, t=0) =", characteristic(L, 0, 0))
    print("<p-translation>(L, t=1) =", hbar / 1j * diff(lambda r: characteristic(r, 1, 0), L))

    x, t, alpha = mpf("-24.3"), mpf("0.7"), pi / 4
    P = psi(x, t, alpha)
    local = re(conj(P) * (psi(x + L, t, alpha) + psi(x - L, t, alpha)) / (2 * abs(P) ** 2))
    print("local pointwise =", local)

    norm2 = quad(lambda x: abs(phi(x, 0, -2, 0) + phi(x, 0, 2, 0)) ** 2 / 2, [-inf, 0, inf])
    print("N(L=4, k=0) =", 1 / sqrt(norm2))

    t, alpha = 1, pi / 4
    xa = cl_packet(-L / 2, 0, gam, D, t)[0]
    print("local translation =", rho(L, xa + L / 2, t, gam, D, alpha) / rho(0, xa, t, gam, D, alpha))


if __name__ == "__main__":
    main()
