"""Matrix verification layer for the deformed algebra.

A two-mode truncated Fock space carries the canonical operators
(x, y, p_x, p_y); the linear maps below then produce operators that must
satisfy

    [x^, y^] = i theta,   [p^_x, p^_y] = i eta,
    [x^_i, p^_j] = i hbar (1 + theta*eta/4hbar^2) delta_ij,

which the residual report checks entry by entry. Truncating the ladder
operators corrupts the two highest Fock levels of each mode, so all
residual norms are taken on the interior block (first n_trunc - 2 levels
per mode), where the identities hold to roundoff.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .params import PhysicalConstants, effective_planck, k_factor

_MAX_TRUNC = 120


def _ladder(n: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, n)), 1).astype(complex)


@dataclass(frozen=True)
class FockRep:
    """Canonical operators on a two-mode truncated Fock space.

    Mode dimensions are n_trunc each (total n_trunc^2); interior_dim is
    the per-mode size of the truncation-safe sub-block.
    """

    n_trunc: int
    ref_frequency: float
    hbar: float
    mass: float
    a: np.ndarray
    b: np.ndarray
    x: np.ndarray
    y: np.ndarray
    px: np.ndarray
    py: np.ndarray

    @property
    def interior_dim(self) -> int:
        return self.n_trunc - 2

    def interior_mask(self) -> np.ndarray:
        """Boolean mask of product-basis states below the truncation edge."""
        keep = np.zeros((self.n_trunc, self.n_trunc), dtype=bool)
        keep[: self.interior_dim, : self.interior_dim] = True
        return keep.reshape(-1)


@dataclass(frozen=True)
class MappedRep:
    """Operators after a linear noncommutativity-generating map."""

    rep: FockRep
    theta: float
    eta: float
    x: np.ndarray
    y: np.ndarray
    px: np.ndarray
    py: np.ndarray


def build_heisenberg_rep(n_trunc: int, c: PhysicalConstants,
                         ref_frequency: float = 1.0) -> FockRep:
    """Build x, y, p_x, p_y from ladder operators of a reference oscillator.

    x = sqrt(hbar/2m w)(a + a+), p_x = i sqrt(m w hbar/2)(a+ - a), and the
    same for (y, p_y) with the second mode. Commutators are exact on the
    interior block; n_trunc must be at least 4 (capped at 120).
    """
    if n_trunc < 4:
        raise ValidationError(f"n_trunc must be >= 4, got {n_trunc}")
    if n_trunc > _MAX_TRUNC:
        raise ValidationError(f"n_trunc capped at {_MAX_TRUNC}, got {n_trunc}")
    if ref_frequency <= 0:
        raise ValidationError("ref_frequency must be positive")
    eye = np.eye(n_trunc, dtype=complex)
    a1 = np.kron(_ladder(n_trunc), eye)
    b1 = np.kron(eye, _ladder(n_trunc))
    x_scale = math.sqrt(c.hbar / (2.0 * c.mass * ref_frequency))
    p_scale = math.sqrt(c.mass * ref_frequency * c.hbar / 2.0)
    return FockRep(
        n_trunc=n_trunc,
        ref_frequency=ref_frequency,
        hbar=c.hbar,
        mass=c.mass,
        a=a1,
        b=b1,
        x=x_scale * (a1 + a1.conj().T),
        y=x_scale * (b1 + b1.conj().T),
        px=1j * p_scale * (a1.conj().T - a1),
        py=1j * p_scale * (b1.conj().T - b1),
    )


def sw_forward(rep: FockRep, theta: float, eta: float) -> MappedRep:
    """Symmetric linear map from canonical to noncommutative operators.

    x^ = x - (theta/2hbar) p_y,  y^ = y + (theta/2hbar) p_x,
    p^_x = p_x + (eta/2hbar) y,  p^_y = p_y - (eta/2hbar) x.

    The coordinate-momentum commutator picks up the factor
    1 + theta*eta/4hbar^2 (an effective Planck constant).
    """
    ct = theta / (2.0 * rep.hbar)
    ce = eta / (2.0 * rep.hbar)
    return MappedRep(
        rep=rep, theta=theta, eta=eta,
        x=rep.x - ct * rep.py,
        y=rep.y + ct * rep.px,
        px=rep.px + ce * rep.y,
        py=rep.py - ce * rep.x,
    )


def sw_inverse(mapped: MappedRep, theta: float | None = None,
               eta: float | None = None, exact_k: bool = True) -> dict:
    """Invert sw_forward, returning the canonical operator matrices.

    x = k [x^ + (theta/2hbar) p^_y], etc. With exact_k the prefactor is
    k = 1/(1 - theta*eta/4hbar^2) and the round trip is an identity to
    roundoff; with exact_k=False the small-strength approximation k = 1
    is used and the round trip picks up a relative error theta*eta/4hbar^2.
    """
    rep = mapped.rep
    theta = mapped.theta if theta is None else theta
    eta = mapped.eta if eta is None else eta
    c = PhysicalConstants(hbar=rep.hbar, mass=rep.mass)
    k = k_factor(theta, eta, c) if exact_k else 1.0
    ct = theta / (2.0 * rep.hbar)
    ce = eta / (2.0 * rep.hbar)
    return {
        "x": k * (mapped.x + ct * mapped.py),
        "y": k * (mapped.y - ct * mapped.px),
        "px": k * (mapped.px - ce * mapped.y),
        "py": k * (mapped.py + ce * mapped.x),
    }


def alternative_maps(rep: FockRep, theta: float, eta: float,
                     variant: str) -> MappedRep:
    """One-sided linear maps that realize the same (theta, eta) commutators.

    Variant "asym_1" shifts only (x, p_y); "asym_2" shifts only (y, p_x).
    Both leave [x^_i, p^_j] = i hbar delta_ij exact (no effective-Planck
    shift), in contrast with sw_forward.
    """
    ct = theta / rep.hbar
    ce = eta / rep.hbar
    if variant == "asym_1":
        return MappedRep(rep=rep, theta=theta, eta=eta,
                         x=rep.x - ct * rep.py, y=rep.y.copy(),
                         px=rep.px.copy(), py=rep.py - ce * rep.x)
    if variant == "asym_2":
        return MappedRep(rep=rep, theta=theta, eta=eta,
                         x=rep.x.copy(), y=rep.y + ct * rep.px,
                         px=rep.px + ce * rep.y, py=rep.py.copy())
    raise ValidationError(f"unknown variant {variant!r}; use asym_1 or asym_2")


def _commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


@dataclass(frozen=True)
class ResidualEntry:
    commutator: str
    target: complex
    measured: complex
    max_residual: float

    def to_dict(self) -> dict:
        return {
            "commutator": self.commutator,
            "target": {"re": self.target.real, "im": self.target.imag},
            "measured": {"re": self.measured.real, "im": self.measured.imag},
            "max_residual": self.max_residual,
        }


def commutator_residuals(mapped: MappedRep,
                         targets: tuple[float, float, float] | None = None
                         ) -> list[ResidualEntry]:
    """Interior-block residuals of the mapped commutators.

    targets is (theta, eta, hbar_eff); when omitted, theta and eta are
    taken from the map and hbar_eff from the symmetric-map formula. The
    off-diagonal coordinate-momentum commutators [x^, p^_y] and [y^, p^_x]
    vanish identically for a single noncommutative plane, so their target
    is 0. Residuals are max absolute entries of C - i*target*I restricted
    to the interior block.
    """
    rep = mapped.rep
    if targets is None:
        c = PhysicalConstants(hbar=rep.hbar, mass=rep.mass)
        targets = (mapped.theta, mapped.eta,
                   effective_planck(mapped.theta, mapped.eta, c))
    theta_t, eta_t, hbar_eff = targets
    mask = rep.interior_mask()
    checks = [
        ("[x,y]", theta_t, _commutator(mapped.x, mapped.y)),
        ("[px,py]", eta_t, _commutator(mapped.px, mapped.py)),
        ("[x,px]", hbar_eff, _commutator(mapped.x, mapped.px)),
        ("[y,py]", hbar_eff, _commutator(mapped.y, mapped.py)),
        ("[x,py]", 0.0, _commutator(mapped.x, mapped.py)),
        ("[y,px]", 0.0, _commutator(mapped.y, mapped.px)),
    ]
    out = []
    for name, coeff, comm in checks:
        block = comm[np.ix_(mask, mask)]
        dim = block.shape[0]
        resid = block - 1j * coeff * np.eye(dim)
        out.append(ResidualEntry(
            commutator=name,
            target=complex(0.0, coeff),
            measured=complex(np.trace(block) / dim),
            max_residual=float(np.max(np.abs(resid))),
        ))
    return out


def residual_report_json(entries: list[ResidualEntry]) -> str:
    return json.dumps([e.to_dict() for e in entries], indent=2)


def bogoliubov_frequency(omega: float, b_field: float) -> float:
    """Single quasiparticle frequency of the quadratic Hamiltonian.

    The pair-transformation diagonalization of the (omega, B) quadratic
    form yields Omega = omega + B; the exact-diagonalization oracle keeps
    an independent record of the two-branch (omega +/- B) structure, and
    the verification report compares the two.
    """
    if omega < 0:
        raise ValidationError("omega must be non-negative")
    return omega + b_field
