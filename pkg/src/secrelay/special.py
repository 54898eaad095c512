"""Scalar special-function kernels used by the closed-form secrecy expressions.

Every routine works on plain Python floats. The incomplete gamma functions
are evaluated through their regularized forms (power series below
``x < a + 1``, Lentz continued fraction above) and are also available in
log form, which is what the secrecy engine consumes: products of powers,
factorials and incomplete gammas are assembled as sums of logarithms and
exponentiated once.
"""

import math

from .errors import ConvergenceError, DomainError

EPS = 2.220446049250313e-16
FPMIN = 1e-300
MAX_ITER = 100_000
MAX_HYP_TERMS = 2_000_000

# First zero of J0' (= first minimum of J0), used by the mobility model.
J0_FIRST_MINIMUM = 3.831705970207512


def bessel_j0(x):
    """Bessel function of the first kind of order zero."""
    x = abs(float(x))
    if not math.isfinite(x):
        raise DomainError(f"bessel_j0 needs a finite argument, got {x}")
    if x <= 8.0:
        return _j0_series(x)
    return _j0_miller(x)


def _j0_series(x):
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= -q / (k * k)
        total += term
        if abs(term) < EPS * 1e-3 * max(abs(total), 1e-300):
            return total


def _j0_miller(x):
    # Backward recurrence from an order well above x, normalized with
    # J0 + 2 * sum(J_2k) = 1.
    start = int(x + 30 + 8 * x ** (1.0 / 3.0))
    start += start % 2
    j_above = 0.0
    j = 1e-30
    norm = 0.0
    for k in range(start, 0, -1):
        j_below = 2.0 * k / x * j - j_above
        j_above, j = j, j_below
        # j now holds J_{k-1}
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j
        if abs(j) > 1e250:
            j *= 1e-250
            j_above *= 1e-250
            norm *= 1e-250
    norm += j
    return j / norm


def ln_gamma(a):
    """Natural log of the complete gamma function for ``a > 0``."""
    if not a > 0:
        raise DomainError(f"ln_gamma is defined for a > 0, got {a}")
    return math.lgamma(a)


def log_factorial(n):
    if n < 0:
        raise DomainError(f"factorial of negative number {n}")
    return math.lgamma(n + 1.0)


def _check_incgamma_args(a, x):
    if not a > 0:
        raise DomainError(f"incomplete gamma needs a > 0, got a={a}")
    if not x >= 0:
        raise DomainError(f"incomplete gamma needs x >= 0, got x={x}")


def _log_p_series(a, x):
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * EPS:
            return math.log(total) - x + a * math.log(x) - math.lgamma(a)
    raise ConvergenceError(f"gamma series did not converge for a={a}, x={x}")


def _log_q_contfrac(a, x):
    b = x + 1.0 - a
    c = 1.0 / FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < FPMIN:
            d = FPMIN
        c = b + an / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < EPS:
            return math.log(h) - x + a * math.log(x) - math.lgamma(a)
    raise ConvergenceError(f"gamma continued fraction did not converge for a={a}, x={x}")


def log_regularized_gamma_p(a, x):
    """log P(a, x), the regularized lower incomplete gamma function."""
    _check_incgamma_args(a, x)
    if x == 0.0:
        return -math.inf
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return _log_p_series(a, x)
    return _log1mexp(_log_q_contfrac(a, x))


def log_regularized_gamma_q(a, x):
    """log Q(a, x), the regularized upper incomplete gamma function."""
    _check_incgamma_args(a, x)
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return -math.inf
    if x < a + 1.0:
        return _log1mexp(_log_p_series(a, x))
    return _log_q_contfrac(a, x)


def _log1mexp(log_v):
    """log(1 - exp(log_v)) for log_v <= 0."""
    if log_v == -math.inf:
        return 0.0
    if log_v > -0.6931471805599453:
        return math.log(-math.expm1(log_v))
    return math.log1p(-math.exp(log_v))


def regularized_gamma_p(a, x):
    return math.exp(log_regularized_gamma_p(a, x))


def regularized_gamma_q(a, x):
    return math.exp(log_regularized_gamma_q(a, x))


def log_gamma_lower(a, x):
    """log of the (unregularized) lower incomplete gamma function."""
    return math.lgamma(a) + log_regularized_gamma_p(a, x)


def log_gamma_upper(a, x):
    """log of the (unregularized) upper incomplete gamma function."""
    return math.lgamma(a) + log_regularized_gamma_q(a, x)


def gamma_lower(a, x):
    """Lower incomplete gamma function, integral of t^(a-1) e^-t over [0, x]."""
    return math.exp(log_gamma_lower(a, x))


def gamma_upper(a, x):
    """Upper incomplete gamma function, integral of t^(a-1) e^-t over [x, inf)."""
    return math.exp(log_gamma_upper(a, x))


def log_gauss_2f1(a, b, c, z):
    """log of 2F1(a, b; c; z) for a, b, c > 0 and 0 <= z < 1.

    All series terms are positive here, so the sum is accumulated with a
    running scale factor instead of cancelling signed terms.
    """
    if not (a > 0 and b > 0 and c > 0):
        raise DomainError(f"log_gauss_2f1 needs positive parameters, got a={a}, b={b}, c={c}")
    if not 0.0 <= z < 1.0:
        raise DomainError(f"gauss_2f1 needs 0 <= z < 1, got z={z}")
    if z == 0.0:
        return 0.0
    log_scale = 0.0
    term = 1.0
    total = 1.0
    for k in range(MAX_HYP_TERMS):
        ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        term *= ratio
        total += term
        if total > 1e200:
            total *= 1e-200
            term *= 1e-200
            log_scale += 200.0 * math.log(10.0)
        q = max(ratio, z)
        if q < 1.0 and term * q / (1.0 - q) < EPS * 0.5 * total:
            return log_scale + math.log(total)
    raise ConvergenceError(f"2F1({a}, {b}; {c}; {z}) series did not converge in {MAX_HYP_TERMS} terms")


def gauss_2f1(a, b, c, z):
    """Gauss hypergeometric function 2F1(a, b; c; z) on 0 <= z < 1 by direct series."""
    if not c > 0:
        raise DomainError(f"gauss_2f1 needs c > 0, got c={c}")
    if not 0.0 <= z < 1.0:
        raise DomainError(f"gauss_2f1 needs 0 <= z < 1, got z={z}")
    if a > 0 and b > 0:
        return math.exp(log_gauss_2f1(a, b, c, z))
    term = 1.0
    total = 1.0
    for k in range(MAX_HYP_TERMS):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if term == 0.0 or abs(term) < EPS * 0.5 * abs(total) and abs((a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2.0)) * z) < 1.0:
            return total
    raise ConvergenceError(f"2F1({a}, {b}; {c}; {z}) series did not converge in {MAX_HYP_TERMS} terms")
