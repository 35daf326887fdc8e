import math

import numpy as np
import pytest

import clcst


def test_quaternion_relations():
    e1 = np.array([0, 1, 0, 0.0])
    e2 = np.array([0, 0, 1, 0.0])
    np.testing.assert_array_equal(clcst.geometric_product(e1, e1, 2), [-1, 0, 0, 0])
    np.testing.assert_array_equal(clcst.geometric_product(e1, e2, 2), [0, 0, 0, 1])
    np.testing.assert_array_equal(clcst.geometric_product(e2, e1, 2), [0, 0, 0, -1])
    np.testing.assert_allclose(clcst.pseudoscalar_exp(math.pi / 2, 2), [0, 0, 0, 1], atol=1e-16)
    with pytest.raises(ValueError):
        clcst.pseudoscalar_exp(0.0, 4)


def test_signal_round_trip_through_numpy():
    g = clcst.GridSpec(2, 6.0, 32)
    f = clcst.synthesize("example1", g)
    a = f.array
    assert a.shape == (4, 32, 32)
    x = np.array(g.coordinates())
    np.testing.assert_allclose(a[0], np.exp(-(x[:, None] ** 2 + x[None, :] ** 2)))
    h = clcst.GridSignal(g, a)
    np.testing.assert_array_equal(h.array, a)
    with pytest.raises(ValueError):
        clcst.GridSignal(g, a[:, :16])


def test_cft_matches_numpy_fft():
    # Scalar + I signals in n = 2 are complex numbers; compare with numpy.
    g = clcst.GridSpec(2, 4.0, 16)
    rng = np.random.default_rng(3)
    a = np.zeros((4, 16, 16))
    a[0] = rng.standard_normal((16, 16))
    a[3] = rng.standard_normal((16, 16))
    F = clcst.cft_forward(clcst.GridSignal(g, a)).array
    z = a[0] + 1j * a[3]
    Z = np.fft.fftshift(np.fft.fft2(np.fft.ifftshift(z))) * g.dx ** 2 / (2 * math.pi)
    np.testing.assert_allclose(F[0] + 1j * F[3], Z, atol=1e-13)
    back = clcst.cft_inverse(clcst.cft_forward(clcst.GridSignal(g, a)))
    np.testing.assert_allclose(back.array, a, atol=1e-13)


def test_paths_agree_and_volume_shape():
    g = clcst.GridSpec(2, 3.0, 12)
    f = clcst.synthesize("gaussian_mixture", g, seed=4)
    psi = clcst.Window.gaussian(2, 0.8).normalized()
    M = clcst.LCTParams(1.0, 2.0, 0.0, 1.0)
    slices = {p: clcst.clcst_slice(f, psi, M, [1.1, -0.6], 0.3, p).array for p in ("direct", "three_step", "spectral")}
    ref = np.abs(slices["direct"]).max()
    assert np.abs(slices["three_step"] - slices["direct"]).max() < 1e-12 * ref
    assert np.abs(slices["spectral"] - slices["direct"]).max() < 1e-8 * ref
    v = clcst.clcst(f, psi, M, u=[[-1.0, 1.0], [0.5]], theta=[0.0, 1.0], b=[0, 5, 7])
    assert v.shape == (4, 3, 2, 2)


def test_windows():
    assert abs(clcst.Window.gaussian(2, 0.5).normalized().integral() - 1.0) < 1e-14
    with pytest.raises(ValueError):
        clcst.Window.dog(2, 0.5).normalized()
    with pytest.raises(ValueError):
        clcst.Window.dog(2, 1.5)


def test_reconstructions():
    g = clcst.GridSpec(2, 6.0, 32)
    f = clcst.synthesize("gaussian", g, width=0.9)
    M = clcst.LCTParams(1.0, 2.0, 0.0, 1.0)
    r = clcst.reconstruct_marginal(f, clcst.Window.gaussian(2, 0.7).normalized(), M)
    assert clcst.relative_l2_error(r, f) < 1e-2
    r2, profile = clcst.reconstruct_resolution(f, clcst.Window.gaussian(2, 0.2), M)
    assert clcst.relative_l2_error(r2, f) < 5e-2
    assert profile["relative_variation"] < 0.1


def test_grid_file_io(tmp_path):
    g = clcst.GridSpec(3, 2.0, 8)
    f = clcst.synthesize("gaussian_mixture", g)
    p = str(tmp_path / "f.clcg")
    clcst.write_grid(f, p)
    np.testing.assert_array_equal(clcst.read_grid(p).array, f.array)
    with pytest.raises(OSError):
        clcst.read_grid(str(tmp_path / "missing.clcg"))


def test_verify_algebra_suite():
    [report] = clcst.verify("algebra")
    assert report["criterion"] == 1
    assert report["pass"]
