"""Mesoscopic ring threaded by an external flux plus the
noncommutativity-induced effective flux.

Momentum noncommutativity acts on a ring electron like a uniform magnetic
field B_z = eta/(e alpha^2 hbar) with vector potential components
A = (eta/2 e alpha^2 hbar)(y, -x), producing an effective flux

    phi_nc = 2 pi R^2 eta / (e hbar alpha^2)

on top of the external flux phi (phi_0 = h/e is the flux quantum). The
resulting levels support a persistent current even at phi = 0, which is
the proposed experimental signature. SI-style constants (charge e, h =
2 pi hbar) enter only in this module; everything else stays in natural
units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ValidationError
from .params import ModelParams, PhysicalConstants, nc_strengths


@dataclass(frozen=True)
class RingSpec:
    """Geometry and map parameters of the ring.

    alpha_param is the map scale with theta*eta = 2 hbar^2 alpha^2 (1 -
    alpha^2); m_star defaults to mass/alpha_param^2 (the quadratic kinetic
    rescale) but can be overridden, since the literature also uses
    mass/alpha.
    """

    radius: float
    flux_ext: float = 0.0
    alpha_param: float = 1.0
    m_star: float | None = None
    constants: PhysicalConstants = PhysicalConstants()

    def __post_init__(self):
        if self.radius <= 0:
            raise ValidationError("radius must be positive")
        if not 0.0 < self.alpha_param <= 1.0:
            raise ValidationError("alpha_param must lie in (0, 1]")
        if self.m_star is None:
            object.__setattr__(
                self, "m_star", self.constants.mass / self.alpha_param ** 2)
        elif self.m_star <= 0:
            raise ValidationError("m_star must be positive")

    @property
    def flux_quantum(self) -> float:
        return 2.0 * math.pi * self.constants.hbar / self.constants.charge


@dataclass(frozen=True)
class RingFields:
    """Effective field and fluxes generated by the momentum strength."""

    b_z: float
    phi_nc: float
    flux_quantum: float


def nc_flux(spec: RingSpec, eta: float) -> RingFields:
    """Effective field B_z = eta/(e alpha^2 hbar) and flux
    phi_nc = 2 pi R^2 eta/(e hbar alpha^2).

    Note phi_nc carries twice the geometric area-times-field product
    pi R^2 B_z.
    """
    c = spec.constants
    b_z = eta / (c.charge * spec.alpha_param ** 2 * c.hbar)
    phi_nc = 2.0 * math.pi * spec.radius ** 2 * eta \
        / (c.charge * c.hbar * spec.alpha_param ** 2)
    return RingFields(b_z=b_z, phi_nc=phi_nc, flux_quantum=spec.flux_quantum)


def ring_levels(spec: RingSpec, eta: float, l: int) -> float:
    """Energy of angular-momentum state l.

    E_l = (hbar^2/2 m* R^2) [l + (phi - phi_nc)/phi_0]^2
          - (3 hbar^2/8 m* R^2) (phi_nc/phi_0)^2.
    """
    fields = nc_flux(spec, eta)
    c = spec.constants
    kin = c.hbar ** 2 / (2.0 * spec.m_star * spec.radius ** 2)
    shift = (spec.flux_ext - fields.phi_nc) / fields.flux_quantum
    return kin * (l + shift) ** 2 \
        - 0.75 * kin * (fields.phi_nc / fields.flux_quantum) ** 2


def persistent_current(spec: RingSpec, eta: float, l: int) -> float:
    """Equilibrium current I_l = -dE_l/dphi (analytic derivative).

    I_l = -(hbar^2 / m* R^2 phi_0) [l + (phi - phi_nc)/phi_0].
    """
    fields = nc_flux(spec, eta)
    c = spec.constants
    shift = (spec.flux_ext - fields.phi_nc) / fields.flux_quantum
    return -(c.hbar ** 2 / (spec.m_star * spec.radius ** 2
                            * fields.flux_quantum)) * (l + shift)


def ground_level_index(spec: RingSpec, eta: float) -> int:
    """The l minimizing E_l at the given fluxes."""
    fields = nc_flux(spec, eta)
    shift = (spec.flux_ext - fields.phi_nc) / fields.flux_quantum
    return round(-shift)


def ground_persistent_current(spec: RingSpec, eta: float) -> float:
    """Persistent current of the minimum-over-l branch."""
    return persistent_current(spec, eta, ground_level_index(spec, eta))


def ring_eta_from_params(p: ModelParams, energy: float) -> float:
    """Energy-dependent momentum strength for the ring, composing the
    power-law running with the ring model."""
    _, eta = nc_strengths(p, energy)
    return eta


def alpha_from_theta_eta(theta_eta: float, hbar: float = 1.0
                         ) -> tuple[float, float]:
    """Invert theta*eta = 2 hbar^2 alpha^2 (1 - alpha^2) for alpha.

    The quartic has two branches; both roots alpha = sqrt(s_-), sqrt(s_+)
    are returned (ascending). Requires 0 <= theta*eta <= hbar^2/2.
    """
    if theta_eta < 0:
        raise DomainError("theta*eta must be non-negative")
    disc = 1.0 - 2.0 * theta_eta / hbar ** 2
    if disc < 0:
        raise DomainError(
            f"theta*eta = {theta_eta} exceeds hbar^2/2; no real alpha")
    s_minus = 0.5 * (1.0 - math.sqrt(disc))
    s_plus = 0.5 * (1.0 + math.sqrt(disc))
    return math.sqrt(s_minus), math.sqrt(s_plus)
