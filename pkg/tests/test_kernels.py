import math

import numpy as np
import pytest

from qgft import (
    FiniteAbelianGroup,
    QSignal,
    Quaternion,
    builtin_family,
    circular_distance,
    convergence_report,
    energy_identity,
    lp_norm,
    random_signal,
    smooth,
    spatial_kernel,
)

FULL_LEVEL_Z8 = 4  # max circular distance on Z_8


def test_family_selection():
    for name in ("dirichlet", "fejer", "poisson_geometric"):
        assert builtin_family(name).name == name
    with pytest.raises(ValueError, match="unknown kernel family"):
        builtin_family("gauss")


def test_circular_distance(z8, z3x4):
    dists = [circular_distance(u) for u in z8.elements()]
    assert dists == [0, 1, 2, 3, 4, 3, 2, 1]
    assert circular_distance(z3x4.element((2, 3))) == 1 + 1


def test_envelope_values(z8):
    fej = builtin_family("fejer")
    assert fej.phi1(0, z8.element(0)) == 1.0
    # level 0: nonzero only at frequency 0
    assert [fej.phi1(0, u) for u in z8.elements()][1:] == [0.0] * 7
    pois = builtin_family("poisson_geometric")
    assert pois.phi1(3, z8.element(4)) == pytest.approx(math.exp(-0.5), rel=1e-15)
    diri = builtin_family("dirichlet")
    assert all(diri.phi1(FULL_LEVEL_Z8, u) == 1.0 for u in z8.elements())


def test_envelope_monotone_in_level(z8):
    for name in ("dirichlet", "fejer", "poisson_geometric"):
        fam = builtin_family(name)
        for l in range(8):
            lo = fam.envelope(1, l, z8)
            hi = fam.envelope(1, l + 1, z8)
            assert (hi >= lo).all()
            assert lo.min() >= 0.0 and hi.max() <= 1.0


def test_dirichlet_full_band_is_delta(z8):
    kern = spatial_kernel(builtin_family("dirichlet"), FULL_LEVEL_Z8, z8)
    want = QSignal.delta(z8).values
    assert np.allclose(kern.values.values, want, atol=1e-14)


def test_fejer_level0_is_constant(z8):
    kern = spatial_kernel(builtin_family("fejer"), 0, z8)
    assert np.allclose(kern.values.values[..., 0], 1.0 / 64.0, atol=1e-15)
    assert np.allclose(kern.values.values[..., 1:], 0.0, atol=1e-15)


def test_fejer_closed_form_row():
    # level 1 on Z_4 against (1/(m+1)) * (sin((m+1)t/2) / sin(t/2))^2, m = 1
    z4 = FiniteAbelianGroup((4,))
    kern = spatial_kernel(builtin_family("fejer"), 1, z4)

    def fejer_closed(t, m=1):
        if abs(math.sin(t / 2)) < 1e-12:
            return float(m + 1)
        return (math.sin((m + 1) * t / 2) / math.sin(t / 2)) ** 2 / (m + 1)

    # P1(x) = (1/4) * F_1(2 pi x / 4); compare the actual one-axis row
    p1 = [sum(builtin_family("fejer").phi1(1, z4.element(u)) *
              math.cos(2 * math.pi * u * x / 4) for u in range(4)) / 4
          for x in range(4)]
    for x in range(4):
        assert p1[x] == pytest.approx(fejer_closed(2 * math.pi * x / 4) / 4, abs=1e-12)
    # the product kernel row matches the separable construction
    expected = np.outer(p1, p1)
    assert np.allclose(kern.values.values[..., 0], expected, atol=1e-12)


def test_total_mass_is_one(z8, z3x4):
    for g in (z8, z3x4):
        for name in ("dirichlet", "fejer", "poisson_geometric"):
            fam = builtin_family(name)
            for level in range(5):
                kern = spatial_kernel(fam, level, g)
                assert kern.values.values[..., 0].sum() == pytest.approx(1.0, abs=1e-10)


def test_spatial_kernel_rejects_bad_level(z8):
    with pytest.raises(ValueError, match="level"):
        spatial_kernel(builtin_family("fejer"), -1, z8)


def test_smooth_identity_cases(rng, z8):
    f = random_signal(z8, rng)
    out = smooth(f, builtin_family("dirichlet"), FULL_LEVEL_Z8)
    assert lp_norm(out - f, 2) <= 1e-10 * lp_norm(f, 2)
    const = QSignal.constant(z8, Quaternion(0.5, -1.0, 2.0, 0.25))
    for name in ("dirichlet", "fejer", "poisson_geometric"):
        for level in range(3):
            out = smooth(const, builtin_family(name), level)
            assert np.allclose(out.values, const.values, atol=1e-12)


def test_convergence_report(rng, z8):
    f = random_signal(z8, rng)
    rep = convergence_report(f, builtin_family("dirichlet"), FULL_LEVEL_Z8)
    assert rep[-1] < 1e-10
    const = QSignal.constant(z8, Quaternion(1.0))
    assert max(convergence_report(const, builtin_family("fejer"), 4)) < 1e-12

    rep = convergence_report(f, builtin_family("poisson_geometric"), 8)
    # strictly decreasing until float noise
    for a, b in zip(rep, rep[1:]):
        assert b <= a + 1e-12 * rep[0]
    assert rep[-1] < rep[0]

    # 2-norm residual is bounded by the worst spectral attenuation
    fam = builtin_family("fejer")
    for level in (0, 2, 5):
        env1 = fam.envelope(1, level, z8)
        env2 = fam.envelope(2, level, z8)
        bound = (1.0 - np.outer(env1, env2)).max() * lp_norm(f, 2)
        assert convergence_report(f, fam, level)[-1] <= bound * (1 + 1e-12)

    with pytest.raises(ValueError, match="lmax"):
        convergence_report(f, fam, -1)


def test_energy_identity_flat_spectrum(z8):
    f = QSignal.delta(z8)
    fam = builtin_family("fejer")
    for level in (0, 1, 3):
        lhs, rhs = energy_identity(f, fam, level)
        env1 = fam.envelope(1, level, z8)
        env2 = fam.envelope(2, level, z8)
        expected = env1.sum() * env2.sum() / 64.0
        assert lhs == pytest.approx(expected, rel=1e-12)
        assert rhs == pytest.approx(expected, rel=1e-12)


def test_energy_identity_full_band_is_energy(rng, z8):
    f = random_signal(z8, rng)
    lhs, rhs = energy_identity(f, builtin_family("dirichlet"), FULL_LEVEL_Z8)
    assert lhs == pytest.approx(lp_norm(f, 2) ** 2, rel=1e-9)
    assert rhs == pytest.approx(lp_norm(f, 2) ** 2, rel=1e-9)


def test_energy_identity_random(rng, z8):
    f = random_signal(z8, rng)
    for name in ("dirichlet", "fejer", "poisson_geometric"):
        for level in range(5):
            lhs, rhs = energy_identity(f, builtin_family(name), level)
            assert abs(lhs - rhs) <= 1e-9 * lp_norm(f, 2) ** 2
