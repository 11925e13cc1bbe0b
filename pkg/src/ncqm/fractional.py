"""Fractional-calculus operators of the energy-operator representation.

Promoting the running energy to i*hbar d/dt (case I) or to the kinetic
Hamiltonian (case II) turns the power-law strengths into fractional
derivative operators. This module provides the operator ingredients:
the Caputo derivative of power series and of the exponential, the
Liouville exponential rule, the left-sided Riemann-Liouville
differintegral, a Grünwald-Letnikov evaluator used as an independent
numeric oracle, the plane-wave eigenvalue that separates the time
variable, and the complex coefficient pairs of the two operator cases.

Complex powers are taken on the principal branch (argument in (-pi, pi]),
which reproduces the plain first and second derivatives at order 1 and 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate

from .errors import ConvergenceError, DomainError, ValidationError
from .params import Mechanism, ModelParams, PhysicalConstants
from .specfun import (DEFAULT_SERIES, SeriesControl, gamma_fn, log_gamma,
                      mittag_leffler)


@dataclass(frozen=True)
class PowerSeriesFn:
    """A function f(x) = sum_k coeffs[k] * x**(k*alpha_step), x >= 0."""

    alpha_step: float
    coeffs: tuple[float, ...]
    radius: float = math.inf

    def __post_init__(self):
        if self.alpha_step <= 0:
            raise DomainError("alpha_step must be positive")
        if self.radius <= 0:
            raise DomainError("radius must be positive")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def __call__(self, x: float) -> float:
        if x < 0 or x >= self.radius:
            raise DomainError(f"x={x} outside [0, {self.radius})")
        return sum(c * x ** (k * self.alpha_step)
                   for k, c in enumerate(self.coeffs))


@dataclass(frozen=True)
class FractionalEigenvalue:
    """Eigenvalue a_alpha of D_t^alpha acting on exp(-i E t / hbar)."""

    order: float
    value: complex

    @property
    def stacked(self) -> complex:
        """Eigenvalue of the doubled order D_t^(2 alpha), i.e. a_alpha^2."""
        return self.value * self.value


def caputo_series_derivative(f: PowerSeriesFn, x: float) -> float:
    """Caputo derivative of order alpha_step of a matched power series.

    For f(x) = sum_k a_k x^(k a) the derivative of order a is
    sum_k a_{k+1} Gamma(1+(k+1)a)/Gamma(1+k a) x^(k a); the constant term
    is annihilated.
    """
    if x < 0 or x >= f.radius:
        raise DomainError(f"x={x} outside [0, {f.radius})")
    a = f.alpha_step
    acc = 0.0
    for k in range(len(f.coeffs) - 1):
        c = f.coeffs[k + 1]
        if c == 0.0:
            continue
        ratio = math.exp(log_gamma(1.0 + (k + 1) * a) - log_gamma(1.0 + k * a))
        acc += c * ratio * x ** (k * a)
    return acc


def caputo_exp(order: float, x: float,
               ctl: SeriesControl = DEFAULT_SERIES) -> float:
    """Caputo derivative of exp at order in (0, 1]:  x^(1-a) E_{1,2-a}(x)."""
    if not 0.0 < order <= 1.0:
        raise DomainError(f"order must be in (0, 1], got {order}")
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if x == 0.0:
        return 1.0 if order == 1.0 else 0.0
    return x ** (1.0 - order) * mittag_leffler(1.0, 2.0 - order, x, ctl)


def liouville_exp(order: float, k: float, x: float) -> float:
    """Liouville-rule fractional derivative of exp(k x): k^a exp(k x), k >= 0."""
    if order <= 0:
        raise DomainError(f"order must be positive, got {order}")
    if k < 0:
        raise DomainError(f"liouville_exp requires k >= 0, got {k}")
    if k == 0.0:
        return 0.0
    return k ** order * math.exp(k * x)


def riemann_liouville(f, order: float, x: float,
                      ctl: SeriesControl = DEFAULT_SERIES) -> float:
    """Left-sided Riemann-Liouville differintegral of order nu at x > 0.

    Computes (1/Gamma(n-nu)) d^n/dx^n  Int_0^x f(t) (x-t)^(n-nu-1) dt with
    n-1 < nu < n. The kernel singularity is removed by the substitution
    u = s^(1/(n-nu)), after which the inner integral is evaluated by
    adaptive quadrature; the outer derivative uses 5-point central
    differences. Supported for n <= 2.
    """
    if x <= 0:
        raise DomainError(f"x must be positive, got {x}")
    n = math.floor(order) + 1
    if order <= 0 or order == math.floor(order):
        raise DomainError(f"order must be positive non-integer, got {order}")
    if n > 2:
        raise DomainError(f"orders above 2 not supported, got {order}")
    mu = n - order  # in (0, 1)

    def inner(y: float) -> float:
        if y <= 0:
            return 0.0
        top = y ** mu

        def integrand(s):
            return f(y - s ** (1.0 / mu))

        val, err = integrate.quad(integrand, 0.0, top,
                                  epsabs=ctl.abs_tol * 10,
                                  epsrel=ctl.rel_tol * 10,
                                  limit=ctl.max_terms)
        if not math.isfinite(val):
            raise ConvergenceError("riemann_liouville inner quadrature failed")
        return val / mu

    h = 0.02 * max(1.0, abs(x))
    h = min(h, 0.45 * x / n)  # keep the stencil inside (0, inf)
    if n == 1:
        deriv = (inner(x - 2 * h) - 8 * inner(x - h)
                 + 8 * inner(x + h) - inner(x + 2 * h)) / (12 * h)
    else:
        deriv = (-inner(x - 2 * h) + 16 * inner(x - h) - 30 * inner(x)
                 + 16 * inner(x + h) - inner(x + 2 * h)) / (12 * h * h)
    return deriv / gamma_fn(mu)


def grunwald_letnikov(f, order: float, x: float, h: float) -> float:
    """Grünwald-Letnikov fractional derivative with terminal at 0.

    sum_j (-1)^j C(alpha, j) f(x - j h) / h^alpha over the grid reaching
    back to 0. Converges O(h) for smooth f; serves as the independent
    numeric oracle for the closed-form fractional operators.
    """
    if order <= 0:
        raise DomainError(f"order must be positive, got {order}")
    if h <= 0:
        raise DomainError(f"step must be positive, got {h}")
    n_steps = int(math.floor(x / h + 1e-12))
    weight = 1.0
    acc = f(x)
    for j in range(1, n_steps + 1):
        weight *= (j - 1.0 - order) / j  # recurrence for (-1)^j C(alpha, j)
        acc += weight * f(x - j * h)
    return acc / h ** order


def grunwald_letnikov_richardson(f, order: float, x: float, h: float) -> float:
    """First-order Richardson extrapolation of the GL evaluator."""
    coarse = grunwald_letnikov(f, order, x, h)
    fine = grunwald_letnikov(f, order, x, h / 2.0)
    return 2.0 * fine - coarse


def plane_wave_eigenvalue(order: float, energy: float,
                          c: PhysicalConstants) -> FractionalEigenvalue:
    """Eigenvalue of D_t^alpha on the stationary phase exp(-i E t / hbar).

    a_alpha = (-i E / hbar)^alpha on the principal branch, so
    |a_alpha| = (E/hbar)^alpha, a_1 = -iE/hbar and a_2 = -E^2/hbar^2.
    """
    if order <= 0:
        raise DomainError(f"order must be positive, got {order}")
    if energy <= 0:
        raise DomainError(f"energy must be positive, got {energy}")
    base = complex(0.0, -energy / c.hbar)
    return FractionalEigenvalue(order=order, value=base ** order)


def caputo_plane_wave(order: float, energy: float, t: float,
                      c: PhysicalConstants,
                      ctl: SeriesControl = DEFAULT_SERIES) -> complex:
    """Caputo derivative (terminal 0) of exp(-i E t / hbar) at time t.

    Equals (-iE/hbar) t^(1-a) E_{1,2-a}(-iE t/hbar). For order < 1 this is
    NOT proportional to the plane wave itself: the Caputo operator does not
    admit oscillatory exponentials as eigenfunctions, which is why the
    eigenvalue route uses the Liouville-type rule. The difference from
    a_alpha exp(-iEt/hbar) quantifies that mismatch.
    """
    if not 0.0 < order <= 1.0:
        raise DomainError(f"order must be in (0, 1], got {order}")
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    lam = complex(0.0, -energy / c.hbar)
    if t == 0.0:
        return lam if order == 1.0 else 0.0 + 0.0j
    return lam * t ** (1.0 - order) * mittag_leffler(1.0, 2.0 - order,
                                                     lam * t, ctl)


def eo_coefficients(p: ModelParams, case: str | None = None
                    ) -> tuple[complex, complex]:
    """Complex strength coefficients of the energy-operator representation.

    Case I  (energy -> i hbar d/dt):    eta0 (i hbar/e_ref)^alpha,
                                        theta0 (i hbar/e_ref)^beta.
    Case II (energy -> -hbar^2/2m Lap): eta0 (-hbar^2/2m e_ref)^alpha,
                                        theta0 (-hbar^2/2m e_ref)^beta.

    Principal branches throughout. The accompanying fractional operator
    (D_t or the Laplacian power) multiplies these; at alpha = 1 case I the
    product with the plane-wave eigenvalue is real and reduces to the
    energy-coupling value eta0 * E / e_ref.
    """
    if case is None:
        case = {Mechanism.EO_I: "I", Mechanism.EO_II: "II"}.get(p.mechanism)
        if case is None:
            raise ValidationError(
                f"mechanism {p.mechanism.value} is not an energy-operator case")
    elif p.mechanism not in (Mechanism.EO_I, Mechanism.EO_II):
        raise ValidationError(
            f"mechanism {p.mechanism.value} is not an energy-operator case")
    c = p.constants
    if case == "I":
        base = complex(0.0, c.hbar / p.e_ref)
    elif case == "II":
        base = complex(-c.hbar ** 2 / (2.0 * c.mass * p.e_ref), 0.0)
    else:
        raise ValidationError(f"case must be 'I' or 'II', got {case!r}")
    return p.eta0 * base ** p.alpha_exp, p.theta0 * base ** p.beta_exp
