"""Energy-dependent noncommutative quantum mechanics.

Deformed phase-space algebra with power-law energy-dependent strengths,
the linear maps realizing it on canonical operators, energy spectra and
radial wave functions of the free particle and harmonic oscillator in the
three energy-dependence mechanisms, the fractional-calculus operators of
the energy-operator representation, a mesoscopic-ring observable, and
independent matrix/ODE oracles verifying every closed form.
"""

from .params import (EffectiveCoefficients, Mechanism, ModelParams,
                     PhysicalConstants, effective_coefficients,
                     effective_planck, effective_planck_4d, k_factor,
                     nc_strengths, params_from_dict, params_from_json,
                     params_to_dict, params_to_json, rescaled_strengths)
from .spectra import (FractionalOscSpec, QuantumNumbers, SpectrumResult,
                      commutative_spectrum, ec_free_energy_closed,
                      ec_oscillator_first_order, ec_quantization_residual,
                      ec_solve_energy, fractional_oscillator_levels,
                      sqf_free_spectrum, sqf_oscillator_spectrum)

__all__ = [
    "EffectiveCoefficients", "Mechanism", "ModelParams", "PhysicalConstants",
    "effective_coefficients", "effective_planck", "effective_planck_4d",
    "k_factor", "nc_strengths", "params_from_dict", "params_from_json",
    "params_to_dict", "params_to_json", "rescaled_strengths",
    "FractionalOscSpec", "QuantumNumbers", "SpectrumResult",
    "commutative_spectrum", "ec_free_energy_closed",
    "ec_oscillator_first_order", "ec_quantization_residual",
    "ec_solve_energy", "fractional_oscillator_levels", "sqf_free_spectrum",
    "sqf_oscillator_spectrum",
]

__version__ = "0.1.0"
