import math

import numpy as np
import pytest

from holoris import (CorrelationKind, CorrelationMatrix, DomainError,
                     KneeUndefinedError, Normalization, asymptotic_dof,
                     correlation_matrix_isotropic, coupling_rx, coupling_tx,
                     dominant_count, effective_correlation, eigen_spectrum,
                     icsi, impedance_matrix_isotropic, knee_index,
                     make_dipole_array, make_uniform_grid)

from conftest import Z_MATCH, random_coupling


class TestEffectiveCorrelation:
    def test_identity_coupling_is_noop(self, rng, dipole_correlations):
        r0 = dipole_correlations[0.5]
        c = random_coupling(rng, r0.dim, scale=0.0)
        r = effective_correlation(c, r0)
        assert np.allclose(r.values, r0.values, atol=1e-14)
        assert r.kind is CorrelationKind.EFFECTIVE_TX

    def test_scaling_squares(self, rng, dipole_correlations):
        r0 = dipole_correlations[0.5]
        base = random_coupling(rng, r0.dim, scale=0.0)
        c = type(base)(values=2.0 * base.values, side=base.side,
                       port_impedance=base.port_impedance,
                       condition=base.condition)
        r = effective_correlation(c, r0)
        assert np.allclose(r.values, 4.0 * r0.values, rtol=1e-12)

    def test_rx_side_sets_kind(self, rng, dipole_correlations):
        r0 = dipole_correlations[0.5]
        c = random_coupling(rng, r0.dim, side="rx")
        assert effective_correlation(c, r0).kind is CorrelationKind.EFFECTIVE_RX

    def test_tx_match_raises_top_eigenvalue(self, dipole_correlations,
                                            dipole_impedances):
        r0 = dipole_correlations[0.5]
        ct = coupling_tx(dipole_impedances[0.5], Z_MATCH)
        r = effective_correlation(ct, r0)
        top0 = eigen_spectrum(r0, normalize_by_n=False).values[0]
        top = eigen_spectrum(r, normalize_by_n=False).values[0]
        assert top > top0

    def test_requires_mc_unaware_base(self, rng, dipole_correlations):
        r0 = dipole_correlations[0.5]
        c = random_coupling(rng, r0.dim)
        derived = effective_correlation(c, r0)
        with pytest.raises(DomainError):
            effective_correlation(c, derived)

    def test_dimension_mismatch(self, rng, dipole_correlations):
        c = random_coupling(rng, 5)
        with pytest.raises(DomainError):
            effective_correlation(c, dipole_correlations[0.5])


class TestEigenSpectrum:
    def test_identity_matrix(self):
        r = CorrelationMatrix(values=np.eye(5), kind=CorrelationKind.MC_UNAWARE)
        spec = eigen_spectrum(r, normalize_by_n=True)
        assert np.allclose(spec.values, 0.2)
        assert spec.normalization is Normalization.BY_N
        assert spec.knee_index is None

    def test_two_element_closed_form(self):
        g = make_dipole_array(0.25, 0.25, 1, 0.0, 1.0)
        r = correlation_matrix_isotropic(g)
        spec = eigen_spectrum(r, normalize_by_n=True)
        rho = 2 / math.pi
        assert spec.values == pytest.approx([(1 + rho) / 2, (1 - rho) / 2], abs=1e-12)

    def test_sorted_non_increasing(self, dipole_correlations):
        spec = eigen_spectrum(dipole_correlations[0.25])
        assert np.all(np.diff(spec.values) <= 1e-15)

    def test_residual_contract(self, dipole_correlations):
        r = dipole_correlations[0.5]
        w, v = np.linalg.eigh(r.values)
        residual = np.abs(r.values @ v - v * w).max()
        assert residual <= 1e-8 * np.abs(w).max()

    def test_large_aperture_third_wavelength_golden_deciles(self):
        # regression pin for the 12-wavelength, third-wavelength-spacing
        # eigenvalue trace: decile samples frozen from this implementation
        g = make_uniform_grid(12.0, 12.0, 1 / 3, 1 / 3, 1.0)
        spec = eigen_spectrum(correlation_matrix_isotropic(g))
        assert spec.n == 1369
        golden = {0: 0.00474591, 136: 0.00207898, 273: 0.00143791,
                  410: 0.00116992, 547: 0.000272748, 684: 3.01546e-07}
        for idx, want in golden.items():
            assert spec.values[idx] == pytest.approx(want, rel=0.02)
        # beyond the knee the trace is numerically negligible
        assert np.all(np.abs(spec.values[820:]) < 1e-9)

    def test_non_hermitian_rejected(self):
        bad = CorrelationMatrix(values=np.array([[1.0, 0.9], [0.1, 1.0]]),
                                kind=CorrelationKind.MC_UNAWARE)
        with pytest.raises(DomainError):
            eigen_spectrum(bad)

    def test_geometry_attaches_dof(self, dipole_geometries, dipole_correlations):
        spec = eigen_spectrum(dipole_correlations[0.5],
                              geom=dipole_geometries[0.5])
        assert spec.asymptotic_dof == math.ceil(math.pi * 4.0 * 4.14)


class TestAsymptoticDof:
    @pytest.mark.parametrize("aperture,expected", [
        (12.0, 453), (4.0, 51), (1.0, 4),
    ])
    def test_square_apertures(self, aperture, expected):
        g = make_uniform_grid(aperture, aperture, aperture / 2, aperture / 2, 1.0)
        assert asymptotic_dof(g) == expected


class TestKneeIndex:
    def test_synthetic_step(self):
        ev = np.array([1, 1, 1, 1, 1e-6, 1e-12, 1e-18, 1e-24])
        assert knee_index(ev) == 4

    def test_all_equal_undefined(self):
        with pytest.raises(KneeUndefinedError):
            knee_index(np.ones(16))

    def test_too_few_positive(self):
        with pytest.raises(DomainError):
            knee_index(np.array([1, 1, 1, 0, 0, 0, 0, 0], dtype=float))

    def test_tie_breaks_to_smallest(self):
        # constant log-slope everywhere: all bends are zero, knee at start
        ev = np.geomspace(1.0, 1e-7, 15)
        assert knee_index(ev) == 4

    def test_rx_coupling_shifts_knee_right(self, dipole_correlations,
                                           dipole_impedances):
        for sp in (0.25, 0.125):
            r0 = dipole_correlations[sp]
            cr = coupling_rx(dipole_impedances[sp], Z_MATCH)
            r = effective_correlation(cr, r0)
            k0 = eigen_spectrum(r0).knee_index
            k1 = eigen_spectrum(r).knee_index
            assert k1 > k0


class TestDominantCount:
    def test_threshold_semantics(self):
        ev = np.array([1.0, 0.5, 0.011, 0.009, 1e-6])
        assert dominant_count(ev) == 3
        assert dominant_count(ev, threshold=0.1) == 2

    def test_empty(self):
        assert dominant_count(np.array([])) == 0


class TestIcsi:
    def test_identity_is_zero(self):
        assert icsi(np.eye(7)) == 0.0

    def test_all_ones_is_one(self):
        assert icsi(np.ones((6, 6))) == pytest.approx(1.0)

    def test_reference_quarter_wavelength(self, dipole_correlations):
        assert icsi(dipole_correlations[0.25]) == pytest.approx(0.0646, abs=0.005)

    def test_zero_diagonal_rejected(self):
        m = np.ones((3, 3))
        m[1, 1] = 0.0
        with pytest.raises(DomainError):
            icsi(m)

    def test_non_square_rejected(self):
        with pytest.raises(DomainError):
            icsi(np.ones((3, 4)))

    def test_accepts_wrapper_types(self, dipole_impedances):
        v = icsi(dipole_impedances[0.5])
        assert 0.0 < v < 1.0


class TestOrderingInvariants:
    def test_tx_icsi_ordering_half_wavelength(self, dipole_correlations,
                                              dipole_impedances):
        r0 = dipole_correlations[0.5]
        z = dipole_impedances[0.5]
        vals = {"no_mc": icsi(r0)}
        for zs, name in [(Z_MATCH, "match"), (50.0, "fifty"), (300.0, "three_hundred")]:
            vals[name] = icsi(effective_correlation(coupling_tx(z, zs), r0))
        assert vals["no_mc"] < vals["fifty"] < vals["match"] < vals["three_hundred"]

    def test_rx_icsi_ordering_each_spacing(self, dipole_correlations,
                                           dipole_impedances):
        for sp in (0.5, 0.25, 0.125):
            r0 = dipole_correlations[sp]
            z = dipole_impedances[sp]
            vals = {}
            for zl, name in [(Z_MATCH, "match"), (50.0, "fifty"), (300.0, "three_hundred")]:
                vals[name] = icsi(effective_correlation(coupling_rx(z, zl), r0))
            base = icsi(r0)
            assert vals["three_hundred"] < vals["match"] < vals["fifty"]
            assert all(v > base for v in vals.values())
