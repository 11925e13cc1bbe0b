"""Energy levels of the free particle and harmonic oscillator in the
energy-dependent noncommutative models.

The confined radial problem quantizes through the transcendental condition

    (hbar/sqrt(m*)) (2n + m_phi + 1) = [E + m_phi hbar B_h(E)] / sqrt(K_h(E)),

whose left side carries the energy dependence through m*(E) and the right
side through B_h(E), K_h(E). Closed forms exist for the vacuum-fluctuation
(SQF) model, for the energy-coupled (EC) free particle with alpha != 1,
and to first order for the EC oscillator; everything else is root-found by
a deterministic scan+bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (BracketingError, DomainError, UsageError,
                     ValidationError)
from .params import (EffectiveCoefficients, Mechanism, ModelParams,
                     PhysicalConstants, effective_coefficients)
from .specfun import beta_fn


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial/angular indices (n, m_phi) and quasiparticle occupancies."""

    n: int = 0
    m_phi: int = 0
    n_alpha: int = 0
    n_beta: int = 0

    def __post_init__(self):
        for name in ("n", "m_phi", "n_alpha", "n_beta"):
            v = getattr(self, name)
            if v != int(v) or v < 0:
                raise ValidationError(f"{name} must be a non-negative integer")

    @property
    def radial_weight(self) -> int:
        return 2 * self.n + self.m_phi + 1


@dataclass(frozen=True)
class SpectrumResult:
    """A solved energy level and how it was obtained."""

    energy: float
    method: str  # "closed_form" | "root_find" | "first_order"
    residual: float
    bracket: tuple[float, float]
    roots_found: int = 1


@dataclass(frozen=True)
class FractionalOscSpec:
    """Parameters of the |p|^alpha + q^2 |x|^beta fractional oscillator."""

    alpha_p: float
    beta_p: float
    d_alpha: float
    q: float

    def __post_init__(self):
        if self.alpha_p <= 0 or self.beta_p <= 0:
            raise ValidationError("alpha_p and beta_p must be positive")
        if self.d_alpha <= 0 or self.q <= 0:
            raise ValidationError("d_alpha and q must be positive")


def _require(p: ModelParams, mechanism: Mechanism, fn: str,
             spring: str | None = None):
    if p.mechanism is not mechanism:
        raise UsageError(f"{fn} requires mechanism={mechanism.value}, "
                         f"got {p.mechanism.value}")
    if spring == "zero" and p.constants.spring_k != 0:
        raise UsageError(f"{fn} is the free-particle form (spring_k = 0)")
    if spring == "positive" and p.constants.spring_k <= 0:
        raise UsageError(f"{fn} needs an oscillator (spring_k > 0)")


def sqf_free_spectrum(p: ModelParams, eps: float, qn: QuantumNumbers) -> float:
    """Free-particle levels of the vacuum-fluctuation model.

    E = hbar Omega (n_alpha + n_beta + 1) with the single quasiparticle
    frequency Omega = (eta0/2m hbar)(1 + 1/sqrt(2)) (eps/eps0)^alpha
    composed from omega_eps = sqrt(k_e/m) and B_e.
    """
    _require(p, Mechanism.SQF, "sqf_free_spectrum", spring="zero")
    coeff = effective_coefficients(p, eps)
    omega_big = coeff.omega_eps + coeff.b_e
    return p.constants.hbar * omega_big * (qn.n_alpha + qn.n_beta + 1)


def sqf_oscillator_spectrum(p: ModelParams, eps: float,
                            qn: QuantumNumbers) -> float:
    """Oscillator levels of the vacuum-fluctuation model.

    E = hbar Omega (n_alpha + n_beta + 1) with
    Omega = sqrt(K_h/m*) + B_h evaluated at the fluctuation scale eps,
    K_h = k + eta^2/8m hbar^2 and B_h = eta/2m hbar + k theta/2 hbar.
    Degenerates to sqf_free_spectrum as k -> 0 and to the commutative
    oscillator as eps -> 0.
    """
    _require(p, Mechanism.SQF, "sqf_oscillator_spectrum", spring="positive")
    coeff = effective_coefficients(p, eps)
    omega_big = coeff.omega_h + coeff.b_h
    return p.constants.hbar * omega_big * (qn.n_alpha + qn.n_beta + 1)


def commutative_spectrum(qn: QuantumNumbers, omega: float,
                         c: PhysicalConstants) -> float:
    """Standard 2D oscillator levels hbar omega (2n + m_phi + 1)."""
    if omega < 0:
        raise DomainError("omega must be non-negative")
    return c.hbar * omega * qn.radial_weight


def ec_quantization_residual(energy: float, qn: QuantumNumbers,
                             p: ModelParams) -> float:
    """Signed residual of the quantization condition at the given energy.

    Zero residual marks an energy level; the sign flips across each root.
    """
    _require(p, Mechanism.EC, "ec_quantization_residual")
    coeff = effective_coefficients(p, energy)
    if coeff.k_h <= 0:
        raise DomainError("K_h(E) must be positive to evaluate the condition")
    hbar = p.constants.hbar
    lhs = hbar / math.sqrt(coeff.m_star) * qn.radial_weight
    rhs = (energy + qn.m_phi * hbar * coeff.b_h) / math.sqrt(coeff.k_h)
    return lhs - rhs


def _linear_level(coeff: EffectiveCoefficients, qn: QuantumNumbers,
                  hbar: float) -> float:
    """Exact root for frozen coefficients (condition linear in E)."""
    return (hbar * math.sqrt(coeff.k_h / coeff.m_star) * qn.radial_weight
            - qn.m_phi * hbar * coeff.b_h)


def ec_solve_energy(qn: QuantumNumbers, p: ModelParams,
                    bracket: tuple[float, float], tol: float = 1e-12,
                    scan_per_decade: int = 200) -> SpectrumResult:
    """Root-find the quantization condition on a bracket.

    A geometric scan (scan_per_decade points per decade) locates sign
    changes; the smallest root is refined by bisection until the residual
    magnitude drops below tol. Deterministic for fixed inputs. The number
    of sign changes seen in the scan is reported so callers can detect the
    high-energy spurious branch that large strengths produce.

    With eta0 = theta0 = 0 the coefficients are energy-independent, the
    condition is linear, and the exact commutative level is returned
    directly (method "closed_form").
    """
    _require(p, Mechanism.EC, "ec_solve_energy")
    hbar = p.constants.hbar
    if p.eta0 == 0.0 and p.theta0 == 0.0:
        if p.constants.spring_k == 0:
            raise DomainError("commutative free particle has a continuous "
                              "spectrum; no quantization condition to solve")
        coeff = effective_coefficients(p, 0.0)
        energy = _linear_level(coeff, qn, hbar)
        resid = ec_quantization_residual(energy, qn, p)
        return SpectrumResult(energy=energy, method="closed_form",
                              residual=resid, bracket=(energy, energy))

    lo, hi = bracket
    if not 0 <= lo < hi:
        raise ValidationError(f"bad bracket {bracket}")
    lo = max(lo, 1e-300)
    n_pts = max(2, int(math.log10(hi / lo) * scan_per_decade))
    step = (hi / lo) ** (1.0 / n_pts)
    roots = []
    e_prev = lo
    f_prev = ec_quantization_residual(e_prev, qn, p)
    for i in range(1, n_pts + 1):
        e_cur = lo * step ** i
        f_cur = ec_quantization_residual(e_cur, qn, p)
        if f_prev == 0.0:
            roots.append((e_prev, e_prev))
        elif f_prev * f_cur < 0:
            roots.append((e_prev, e_cur))
        e_prev, f_prev = e_cur, f_cur
    if not roots:
        raise BracketingError(f"no sign change of the quantization residual "
                              f"in {bracket} for {qn}")
    a, b = roots[0]
    fa = ec_quantization_residual(a, qn, p)
    for _ in range(200):
        mid = 0.5 * (a + b)
        fm = ec_quantization_residual(mid, qn, p)
        if abs(fm) <= tol or (b - a) <= 1e-16 * max(1.0, mid):
            return SpectrumResult(energy=mid, method="root_find", residual=fm,
                                  bracket=bracket, roots_found=len(roots))
        if fa * fm < 0:
            b = mid
        else:
            a, fa = mid, fm
    mid = 0.5 * (a + b)
    return SpectrumResult(energy=mid, method="root_find",
                          residual=ec_quantization_residual(mid, qn, p),
                          bracket=bracket, roots_found=len(roots))


def ec_default_bracket(qn: QuantumNumbers, p: ModelParams,
                       span: float = 1e6) -> tuple[float, float]:
    """A generous bracket around the commutative scale of the level."""
    c = p.constants
    scale = max(p.e_ref, c.hbar * max(c.omega, 1.0 / p.e_ref) * qn.radial_weight)
    return (scale / span, scale * span)


def ec_free_energy_closed(qn: QuantumNumbers, p: ModelParams) -> float:
    """Closed-form free-particle levels of the energy-coupled model.

    E = (sqrt(2m/hbar^2 k0) E0)^(1/(alpha-1)) * E0 /
        [2n + (1 - B0 sqrt(2m/k0)) m_phi + 1]^(1/(alpha-1)),

    with B0 = eta0/2m hbar and k0 = eta0^2/4m hbar^2, so the coefficient
    B0 sqrt(2m/k0) equals sqrt(2) identically. Requires alpha != 1 (the
    alpha = 1 spectrum is continuous, see ec_alpha1_constraint_residual).
    """
    _require(p, Mechanism.EC, "ec_free_energy_closed", spring="zero")
    if p.alpha_exp == 1.0:
        raise DomainError("alpha = 1 has a continuous spectrum; use "
                          "ec_alpha1_constraint_residual")
    if p.eta0 == 0.0:
        raise DomainError("eta0 = 0 leaves the free particle unconfined")
    c = p.constants
    hbar, m = c.hbar, c.mass
    b0 = p.eta0 / (2.0 * m * hbar)
    k0 = p.eta0 ** 2 / (4.0 * m * hbar ** 2)
    denom = 2 * qn.n + (1.0 - b0 * math.sqrt(2.0 * m / k0)) * qn.m_phi + 1.0
    if denom <= 0:
        raise DomainError(f"level bracket 2n + (1-sqrt(2)) m_phi + 1 = {denom} "
                          "is non-positive; no bound level")
    expo = 1.0 / (p.alpha_exp - 1.0)
    return (math.sqrt(2.0 * m / (hbar ** 2 * k0)) * p.e_ref) ** expo \
        * p.e_ref / denom ** expo


def ec_alpha1_constraint_residual(qn: QuantumNumbers, p: ModelParams) -> float:
    """Residual of the alpha = 1 free-particle consistency constraint.

    At alpha = 1 the energy cancels from the quantization condition and
    the spectrum is continuous; instead the reference scale must satisfy
    E0 = hbar sqrt(k0/2m) [2n + (1 - sqrt(2)) m_phi + 1]. Returns
    E0 - rhs (zero when the constraint holds).
    """
    _require(p, Mechanism.EC, "ec_alpha1_constraint_residual", spring="zero")
    c = p.constants
    k0 = p.eta0 ** 2 / (4.0 * c.mass * c.hbar ** 2)
    rhs = c.hbar * math.sqrt(k0 / (2.0 * c.mass)) \
        * (2 * qn.n + (1.0 - math.sqrt(2.0)) * qn.m_phi + 1.0)
    return p.e_ref - rhs


def ec_oscillator_first_order(qn: QuantumNumbers, p: ModelParams) -> float:
    """First-order oscillator level of the energy-coupled model at
    alpha = beta = 1, in units of the reference energy.

    Returns x = E/E0 with

        x ~ E_com / [E0 + (m_phi w^2/2)(eta0/k + m theta0)
                     - (m^2 w^2 theta0 / 8 hbar^2) E_com],

    E_com = hbar w (2n + m_phi + 1), w = sqrt(k/m). Multiply by e_ref for
    the physical energy. Valid for small strengths; the dropped terms are
    quadratic in eta0 (the theta0 dependence of the denominator is kept
    as displayed, first power).
    """
    _require(p, Mechanism.EC, "ec_oscillator_first_order", spring="positive")
    if p.alpha_exp != 1.0 or p.beta_exp != 1.0:
        raise UsageError("first-order form assumes alpha = beta = 1")
    c = p.constants
    hbar, m, k = c.hbar, c.mass, c.spring_k
    omega2 = k / m
    e_com = hbar * math.sqrt(omega2) * qn.radial_weight
    denom = (p.e_ref
             + qn.m_phi * omega2 / 2.0 * (p.eta0 / k + m * p.theta0)
             - m ** 2 * omega2 * p.theta0 / (8.0 * hbar ** 2) * e_com)
    if denom == 0.0:
        raise DomainError("degenerate parameters: first-order denominator "
                          "vanishes")
    return e_com / denom


def fractional_oscillator_levels(spec: FractionalOscSpec, n: int,
                                 c: PhysicalConstants) -> float:
    """Semiclassical levels of the |p|^a + q^2|x|^b fractional oscillator.

    E_n = [pi hbar b D^(1/a) q^(2/b) / 2 B(1/b, 1/a + 1)]^(ab/(a+b))
          * (n + 1/2)^(ab/(a+b)).
    """
    if n != int(n) or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    a, b = spec.alpha_p, spec.beta_p
    expo = a * b / (a + b)
    prefactor = (math.pi * c.hbar * b * spec.d_alpha ** (1.0 / a)
                 * spec.q ** (2.0 / b)
                 / (2.0 * beta_fn(1.0 / b, 1.0 / a + 1.0)))
    return prefactor ** expo * (n + 0.5) ** expo


def eo_alpha1_radial_params(energy: float, qn: QuantumNumbers, b_i: float,
                            k_i: float, c: PhysicalConstants
                            ) -> tuple[float, float]:
    """Radial-equation parameters of the energy-operator model at order 1.

    Returns (xi_scale, sigma): the dimensionless radial coordinate is
    xi = xi_scale * r with xi_scale = (m K_I E^2)^(1/4) / hbar, and
    sigma = 2 sqrt(m) (1 + m_phi B_I) / sqrt(K_I) plays the role of the
    quantization combination. sigma is energy-independent, so the bound
    condition sigma = 2 (2n + m_phi + 1) constrains the parameters rather
    than the energy; see eo_alpha1_constraint_residual.
    """
    if k_i <= 0:
        raise DomainError(f"K_I must be positive, got {k_i}")
    if energy <= 0:
        raise DomainError(f"energy must be positive, got {energy}")
    xi_scale = (c.mass * k_i * energy ** 2) ** 0.25 / c.hbar
    sigma = 2.0 * math.sqrt(c.mass) * (1.0 + qn.m_phi * b_i) / math.sqrt(k_i)
    return xi_scale, sigma


def eo_alpha1_constraint_residual(sigma: float, qn: QuantumNumbers) -> float:
    """sigma - 2(2n + m_phi + 1): zero when the parameters admit the level."""
    return sigma - 2.0 * qn.radial_weight


def eo_alpha1_from_ec(p: ModelParams) -> tuple[float, float]:
    """(B_I, K_I) that make the alpha = 1 energy-operator radial equation
    coincide with the energy-coupled one: B_I = hbar B0/E0,
    K_I = hbar^2 k0 / 2 E0^2.
    """
    c = p.constants
    b0 = p.eta0 / (2.0 * c.mass * c.hbar)
    k0 = p.eta0 ** 2 / (4.0 * c.mass * c.hbar ** 2)
    return (c.hbar * b0 / p.e_ref,
            c.hbar ** 2 * k0 / (2.0 * p.e_ref ** 2))
