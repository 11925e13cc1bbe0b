import math

import numpy as np
import pytest

from ncqm.algebra import (FockRep, alternative_maps, bogoliubov_frequency,
                          build_heisenberg_rep, commutator_residuals,
                          residual_report_json, sw_forward, sw_inverse)
from ncqm.errors import ValidationError
from ncqm.params import (Mechanism, ModelParams, PhysicalConstants,
                         effective_coefficients, effective_planck)


def comm(a, b):
    return a @ b - b @ a


def interior(rep: FockRep, m: np.ndarray) -> np.ndarray:
    mask = rep.interior_mask()
    return m[np.ix_(mask, mask)]


@pytest.fixture(scope="module")
def rep():
    return build_heisenberg_rep(20, PhysicalConstants())


class TestHeisenbergRep:
    def test_minimum_truncation(self):
        with pytest.raises(ValidationError):
            build_heisenberg_rep(3, PhysicalConstants())

    def test_ladder_commutator_interior(self):
        small = build_heisenberg_rep(4, PhysicalConstants())
        block = interior(small, comm(small.a, small.a.conj().T))
        assert np.allclose(block, np.eye(block.shape[0]), atol=1e-14)

    def test_modes_commute_exactly(self, rep):
        assert np.max(np.abs(comm(rep.x, rep.y))) == 0.0
        assert np.max(np.abs(comm(rep.px, rep.py))) == 0.0
        assert np.max(np.abs(comm(rep.x, rep.py))) == 0.0

    def test_canonical_commutator(self):
        rep30 = build_heisenberg_rep(30, PhysicalConstants())
        block = interior(rep30, comm(rep30.x, rep30.px))
        target = 1j * np.eye(block.shape[0])
        assert np.max(np.abs(block - target)) < 1e-12

    def test_scales_with_constants(self):
        c = PhysicalConstants(hbar=3.0, mass=0.5)
        r = build_heisenberg_rep(12, c, ref_frequency=2.0)
        block = interior(r, comm(r.x, r.px))
        assert np.max(np.abs(block - 3.0j * np.eye(block.shape[0]))) < 1e-12


class TestSwForward:
    def test_zero_strengths_identity(self, rep):
        mapped = sw_forward(rep, 0.0, 0.0)
        assert np.array_equal(mapped.x, rep.x)
        assert np.array_equal(mapped.py, rep.py)

    def test_coordinate_commutator(self, rep):
        mapped = sw_forward(rep, 0.25, 0.1)
        block = interior(rep, comm(mapped.x, mapped.y))
        assert np.max(np.abs(block - 0.25j * np.eye(block.shape[0]))) < 1e-12

    def test_effective_planck_commutator(self, rep):
        theta, eta = 0.4, 0.3
        mapped = sw_forward(rep, theta, eta)
        hbar_eff = effective_planck(theta, eta, PhysicalConstants())
        for pair in ((mapped.x, mapped.px), (mapped.y, mapped.py)):
            block = interior(rep, comm(*pair))
            assert np.max(np.abs(block - 1j * hbar_eff
                                 * np.eye(block.shape[0]))) < 1e-12

    def test_random_pairs_all_targets(self, rep):
        rng = np.random.default_rng(42)
        for _ in range(20):
            theta, eta = rng.uniform(0.0, 1.0, size=2)
            entries = commutator_residuals(sw_forward(rep, theta, eta))
            assert max(e.max_residual for e in entries) < 1e-10

    @pytest.mark.parametrize("n_trunc", [8, 16, 30])
    def test_residuals_across_truncations(self, n_trunc):
        r = build_heisenberg_rep(n_trunc, PhysicalConstants())
        entries = commutator_residuals(sw_forward(r, 0.7, 0.9))
        # residuals in units of the target magnitude
        for e in entries:
            scale = max(1.0, abs(e.target))
            assert e.max_residual / scale < 1e-10


class TestSwInverse:
    def test_zero_strengths_identity(self, rep):
        mapped = sw_forward(rep, 0.0, 0.0)
        back = sw_inverse(mapped)
        assert np.max(np.abs(back["x"] - rep.x)) == 0.0

    def test_round_trip_exact(self, rep):
        mapped = sw_forward(rep, 0.1, 0.05)
        back = sw_inverse(mapped, exact_k=True)
        for key, ref in (("x", rep.x), ("y", rep.y), ("px", rep.px),
                         ("py", rep.py)):
            assert np.max(np.abs(back[key] - ref)) < 1e-12

    def test_round_trip_k1_error_is_zeta(self, rep):
        theta, eta = 0.02, 0.02  # zeta = 1e-4
        zeta = theta * eta / 4.0
        mapped = sw_forward(rep, theta, eta)
        back = sw_inverse(mapped, exact_k=False)
        rel = np.max(np.abs(back["x"] - rep.x)) / np.max(np.abs(rep.x))
        assert rel == pytest.approx(zeta, rel=1e-9)


class TestAlternativeMaps:
    def test_zero_identity(self, rep):
        mapped = alternative_maps(rep, 0.0, 0.0, "asym_1")
        assert np.array_equal(mapped.x, rep.x)

    @pytest.mark.parametrize("variant", ["asym_1", "asym_2"])
    def test_strength_commutators(self, rep, variant):
        theta, eta = 0.3, 0.45
        mapped = alternative_maps(rep, theta, eta, variant)
        bx = interior(rep, comm(mapped.x, mapped.y))
        bp = interior(rep, comm(mapped.px, mapped.py))
        eye = np.eye(bx.shape[0])
        assert np.max(np.abs(bx - 1j * theta * eye)) < 1e-12
        assert np.max(np.abs(bp - 1j * eta * eye)) < 1e-12

    @pytest.mark.parametrize("variant", ["asym_1", "asym_2"])
    def test_no_planck_shift(self, rep, variant):
        mapped = alternative_maps(rep, 0.3, 0.45, variant)
        for pair in ((mapped.x, mapped.px), (mapped.y, mapped.py)):
            block = interior(rep, comm(*pair))
            assert np.max(np.abs(block - 1j * np.eye(block.shape[0]))) < 1e-12

    def test_difference_from_symmetric_map(self, rep):
        # [x,px] differs between the maps by exactly i hbar theta*eta/4hbar^2
        theta, eta = 0.6, 0.5
        sym = sw_forward(rep, theta, eta)
        asym = alternative_maps(rep, theta, eta, "asym_1")
        diff = interior(rep, comm(sym.x, sym.px) - comm(asym.x, asym.px))
        expected = 1j * theta * eta / 4.0 * np.eye(diff.shape[0])
        assert np.max(np.abs(diff - expected)) < 1e-12

    def test_unknown_variant(self, rep):
        with pytest.raises(ValidationError):
            alternative_maps(rep, 0.1, 0.1, "bogus")


class TestResiduals:
    def test_identity_map_clean(self, rep):
        entries = commutator_residuals(sw_forward(rep, 0.0, 0.0))
        assert max(e.max_residual for e in entries) < 1e-12

    def test_wrong_target_detected(self, rep):
        theta = 0.2
        mapped = sw_forward(rep, theta, 0.1)
        entries = commutator_residuals(mapped, targets=(theta + 1.0, 0.1,
                                                        1.0 + 0.02 / 4.0))
        by_name = {e.commutator: e for e in entries}
        assert by_name["[x,y]"].max_residual == pytest.approx(1.0, rel=1e-10)

    def test_measured_matches_effective_planck(self, rep):
        theta, eta = 0.8, 0.9
        entries = commutator_residuals(sw_forward(rep, theta, eta))
        by_name = {e.commutator: e for e in entries}
        formula = effective_planck(theta, eta, PhysicalConstants())
        assert by_name["[x,px]"].measured.imag == pytest.approx(formula,
                                                                abs=1e-12)

    def test_json_report_shape(self, rep):
        text = residual_report_json(commutator_residuals(
            sw_forward(rep, 0.1, 0.2)))
        import json
        doc = json.loads(text)
        assert {d["commutator"] for d in doc} == {
            "[x,y]", "[px,py]", "[x,px]", "[y,py]", "[x,py]", "[y,px]"}
        assert all(set(d) == {"commutator", "target", "measured",
                              "max_residual"} for d in doc)


class TestBogoliubov:
    def test_zero_field(self):
        assert bogoliubov_frequency(1.3, 0.0) == 1.3

    def test_sqf_reference_value(self):
        # compose omega_eps = sqrt(k_e/m) and B_e at unit ratio
        p = ModelParams(eta0=1.0, theta0=1.0, alpha_exp=1.0, beta_exp=1.0,
                        e_ref=1.0, mechanism=Mechanism.SQF)
        c = effective_coefficients(p, 1.0)
        omega_big = bogoliubov_frequency(c.omega_eps, c.b_e)
        assert omega_big == pytest.approx(0.5 * (1.0 + 1.0 / math.sqrt(2.0)),
                                          rel=1e-14)

    def test_power_law_scaling(self):
        p = ModelParams(eta0=1.0, theta0=0.0, alpha_exp=1.0, beta_exp=1.0,
                        e_ref=1.0, mechanism=Mechanism.SQF)
        c1 = effective_coefficients(p, 1.0)
        c2 = effective_coefficients(p, 2.0)
        w1 = bogoliubov_frequency(c1.omega_eps, c1.b_e)
        w2 = bogoliubov_frequency(c2.omega_eps, c2.b_e)
        assert w2 == pytest.approx(2.0 * w1, rel=1e-14)

    def test_linear_in_each_argument(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            w, b, s = rng.uniform(0.0, 3.0, size=3)
            assert bogoliubov_frequency(s * w, b) == pytest.approx(
                s * bogoliubov_frequency(w, 0.0) + b, rel=1e-14)
