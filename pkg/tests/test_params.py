import json
import math

import numpy as np
import pytest

from ncqm.errors import (DomainError, SingularityError, ValidationError)
from ncqm.params import (Mechanism, ModelParams, PhysicalConstants,
                         effective_coefficients, effective_planck,
                         effective_planck_4d, k_factor, nc_strengths,
                         params_from_json, params_to_json, rescaled_strengths)


def make_params(**kw):
    constants = PhysicalConstants(**kw.pop("constants", {}))
    defaults = dict(eta0=1.0, theta0=1.0, alpha_exp=2.0, beta_exp=2.0,
                    e_ref=1.0, mechanism=Mechanism.EC)
    defaults.update(kw)
    return ModelParams(constants=constants, **defaults)


class TestStrengths:
    def test_zero_energy_positive_exponent(self):
        theta, eta = nc_strengths(make_params(), 0.0)
        assert theta == 0.0 and eta == 0.0

    def test_unit_ratio_returns_amplitudes(self):
        p = make_params(eta0=0.7, theta0=0.3, alpha_exp=5.0, beta_exp=0.1)
        assert nc_strengths(p, p.e_ref) == (0.3, 0.7)

    def test_half_ratio_squared(self):
        p = make_params(eta0=1.0, alpha_exp=2.0, e_ref=2.0)
        _, eta = nc_strengths(p, 1.0)
        assert eta == pytest.approx(0.25, rel=1e-15)

    def test_negative_energy_rejected(self):
        with pytest.raises(DomainError):
            nc_strengths(make_params(), -1.0)

    def test_zero_energy_negative_exponent_rejected(self):
        p = make_params(alpha_exp=-1.0)
        with pytest.raises(SingularityError):
            nc_strengths(p, 0.0)

    def test_monotone_in_energy_for_positive_exponents(self):
        p = make_params(alpha_exp=1.3, beta_exp=0.7)
        energies = np.linspace(0.1, 5.0, 40)
        thetas, etas = zip(*(nc_strengths(p, e) for e in energies))
        assert all(a < b for a, b in zip(thetas, thetas[1:]))
        assert all(a < b for a, b in zip(etas, etas[1:]))


class TestPlanck:
    def test_commutative_limit(self):
        c = PhysicalConstants()
        assert effective_planck(0.0, 0.0, c) == 1.0

    def test_unit_zeta_doubles(self):
        c = PhysicalConstants(hbar=1.0)
        assert effective_planck(2.0, 2.0, c) == 2.0

    def test_direct_arithmetic(self):
        c = PhysicalConstants(hbar=1.0)
        assert effective_planck(0.2, 0.1, c) == pytest.approx(1.005, abs=1e-15)

    def test_4d_zero(self):
        z = np.zeros((4, 4))
        assert effective_planck_4d(z, z, PhysicalConstants()) == 1.0

    def test_4d_embedding_trace(self):
        # single plane embedded block-diagonally: Tr(theta @ eta) = -2 theta eta
        theta, eta = 0.3, 0.7
        th = np.zeros((4, 4))
        th[0, 1], th[1, 0] = theta, -theta
        et = np.zeros((4, 4))
        et[0, 1], et[1, 0] = eta, -eta
        trace = np.trace(th @ et)
        assert trace == pytest.approx(-2.0 * theta * eta, rel=1e-15)
        c = PhysicalConstants()
        val = effective_planck_4d(th, et, c)
        assert val == pytest.approx(c.hbar * (1.0 - 2.0 * theta * eta / 4.0),
                                    rel=1e-15)
        # the per-plane coefficient is recovered from -Tr/2
        assert c.hbar * (1.0 + (-trace / 2.0) / 4.0) == pytest.approx(
            effective_planck(theta, eta, c), rel=1e-15)

    def test_4d_random_antisymmetric_matches_trace_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            m = rng.normal(size=(4, 4))
            th = m - m.T
            m2 = rng.normal(size=(4, 4))
            et = m2 - m2.T
            # independent elementwise contraction
            trace = sum(th[i, j] * et[j, i] for i in range(4) for j in range(4))
            expected = 1.0 + trace / 4.0
            assert effective_planck_4d(th, et, PhysicalConstants()) == \
                pytest.approx(expected, rel=1e-13)

    def test_4d_rejects_non_antisymmetric(self):
        bad = np.eye(4)
        with pytest.raises(ValidationError):
            effective_planck_4d(bad, np.zeros((4, 4)), PhysicalConstants())


class TestKFactor:
    def test_identity_at_zero(self):
        assert k_factor(0.0, 0.0, PhysicalConstants()) == 1.0

    def test_forced_arithmetic(self):
        assert k_factor(1.0, 2.0, PhysicalConstants()) == 2.0

    def test_pole(self):
        with pytest.raises(SingularityError):
            k_factor(2.0, 2.0, PhysicalConstants())

    def test_product_identity(self):
        rng = np.random.default_rng(3)
        c = PhysicalConstants()
        for _ in range(50):
            theta, eta = rng.uniform(0.0, 1.5, size=2)
            prod = k_factor(theta, eta, c) * (1.0 - theta * eta / 4.0)
            assert prod == pytest.approx(1.0, rel=1e-15)


class TestRescaling:
    def test_zero_strengths(self):
        assert rescaled_strengths(0.0, 0.0, PhysicalConstants()) == (0, 0, 1)

    def test_unit_zeta(self):
        th, et, xi = rescaled_strengths(2.0, 2.0, PhysicalConstants())
        assert (th, et) == (1.0, 1.0)
        assert xi == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-15)

    def test_planck_restored(self):
        rng = np.random.default_rng(11)
        c = PhysicalConstants()
        for _ in range(30):
            theta, eta = rng.uniform(0.0, 2.0, size=2)
            _, _, xi = rescaled_strengths(theta, eta, c)
            restored = c.hbar * xi ** 2 * (1.0 + theta * eta / 4.0)
            assert restored == pytest.approx(c.hbar, rel=1e-15)


class TestEffectiveCoefficients:
    def test_free_particle_reduction(self):
        p = make_params(constants={"spring_k": 0.0})
        c = effective_coefficients(p, 0.7)
        assert c.m_star == p.constants.mass
        assert c.b_h == c.b_e
        assert c.k_h == c.k_e

    def test_commutative_limit_at_zero_energy(self):
        p = make_params(constants={"spring_k": 1.0})
        c = effective_coefficients(p, 0.0)
        assert c.b_h == 0.0
        assert c.k_h == 1.0
        assert c.m_star == 1.0

    # frozen values recomputed independently from the defining formulas:
    # eta = theta = 1 at E = e_ref, so b_e = 1/(2*1*1) = 0.5,
    # k_e = 1/8 = 0.125, 1/m* = 1 + 1*1/4 = 1.25, b_h = 0.5 + 0.5 = 1.0,
    # k_h = 1 + 0.125 = 1.125
    def test_reference_point(self):
        p = make_params(alpha_exp=1.0, beta_exp=1.0,
                        constants={"spring_k": 1.0})
        c = effective_coefficients(p, 1.0)
        assert c.b_e == pytest.approx(0.5, rel=1e-15)
        assert c.k_e == pytest.approx(0.125, rel=1e-15)
        assert 1.0 / c.m_star == pytest.approx(1.25, rel=1e-15)
        assert c.b_h == pytest.approx(1.0, rel=1e-15)
        assert c.k_h == pytest.approx(1.125, rel=1e-15)

    def test_stiffening_and_mass_bounds(self):
        p = make_params(constants={"spring_k": 2.0})
        for energy in np.linspace(0.0, 3.0, 20):
            c = effective_coefficients(p, energy)
            assert c.k_h >= p.constants.spring_k
            assert c.m_star <= p.constants.mass
            assert c.hbar_eff >= p.constants.hbar

    def test_mechanism_agnostic_in_the_ratio(self):
        ec = make_params(mechanism=Mechanism.EC, e_ref=2.0)
        sqf = make_params(mechanism=Mechanism.SQF, e_ref=8.0)
        a = effective_coefficients(ec, 1.0)   # ratio 0.5
        b = effective_coefficients(sqf, 4.0)  # ratio 0.5
        assert a.b_e == b.b_e and a.k_h == b.k_h and a.m_star == b.m_star


class TestJsonRoundTrip:
    def test_round_trip(self):
        p = make_params(eta0=0.4, theta0=0.2, alpha_exp=1.5, beta_exp=2.5,
                        e_ref=3.0, mechanism=Mechanism.SQF,
                        constants={"hbar": 2.0, "mass": 0.5, "charge": 1.5,
                                   "spring_k": 0.7})
        q = params_from_json(params_to_json(p))
        assert q == p

    def test_field_names(self):
        doc = json.loads(params_to_json(make_params()))
        assert set(doc) == {"eta0", "theta0", "alpha", "beta", "e_ref",
                            "mechanism", "hbar", "mass", "charge", "spring_k"}
        assert doc["mechanism"] == "ec"

    def test_mechanism_values(self):
        for name in ("sqf", "ec", "eo_i", "eo_ii"):
            p = params_from_json(json.dumps({"mechanism": name}))
            assert p.mechanism.value == name

    def test_unknown_field_rejected(self):
        with pytest.raises(ValidationError):
            params_from_json(json.dumps({"bogus": 1}))

    def test_invariants_enforced(self):
        with pytest.raises(ValidationError):
            ModelParams(e_ref=0.0)
        with pytest.raises(ValidationError):
            ModelParams(eta0=-0.1)
        with pytest.raises(ValidationError):
            PhysicalConstants(mass=0.0)
