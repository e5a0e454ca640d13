import json

import numpy as np
import pytest

import convchar


def random_signal(rng, n):
    return rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)


def test_group():
    g = convchar.Group("4x3")
    assert g.order == 12
    assert g.factors == [4, 3]
    assert g.element(5) == [1, 2]
    assert g.index_of([1, 2]) == 5
    assert len(g.cosine_orbits()) == 7  # 2 self-inverse elements, 5 pairs
    with pytest.raises(ValueError):
        convchar.Group("4x")


def test_fourier_matches_numpy_fft():
    rng = np.random.default_rng(0)
    f = random_signal(rng, 8)
    np.testing.assert_allclose(convchar.fourier_transform("8", f), np.fft.fft(f), atol=1e-12)
    f2 = random_signal(rng, 12)
    expected = np.fft.fft2(f2.reshape(4, 3)).reshape(-1)
    np.testing.assert_allclose(convchar.fourier_transform("4x3", f2), expected, atol=1e-12)
    back = convchar.inverse_fourier_transform("4x3", convchar.fourier_transform("4x3", f2))
    np.testing.assert_allclose(back, f2, atol=1e-12)


def test_convolution_theorems():
    rng = np.random.default_rng(1)
    f, g = random_signal(rng, 6), random_signal(rng, 6)
    lhs = convchar.fourier_transform("2x3", convchar.fourier_convolution("2x3", f, g))
    rhs = convchar.fourier_transform("2x3", f) * convchar.fourier_transform("2x3", g)
    np.testing.assert_allclose(lhs, rhs, atol=1e-9)
    lhs = convchar.cosine_transform("2x3", convchar.cosine_convolution("2x3", f, g))
    rhs = convchar.cosine_transform("2x3", f) * convchar.cosine_transform("2x3", g)
    np.testing.assert_allclose(lhs, rhs, atol=1e-9)


def test_extract_round_trip():
    theta = [3, None, 0, 3, 2]
    kernel = convchar.build_from_theta("5", "fourier", theta)
    assert kernel.shape == (5, 5)
    assert convchar.check_multiplicativity("5", "fourier", kernel) < 1e-12
    report = convchar.extract("5", "fourier", kernel)
    assert report["ok"]
    assert report["theta"] == theta

    noisy = kernel + 0.1
    bad = convchar.extract("5", "fourier", noisy)
    assert not bad["ok"]
    assert bad["error"] == "NotMultiplicative"


def test_laplace():
    h = 0.01
    x = np.arange(0, 2001) * h
    z = [1.5, 2.0]
    kernel = np.array([np.exp(-zi * x) for zi in z], dtype=complex)
    report = convchar.extract_laplace(h, [0.5, 1.0], kernel)
    assert report["ok"]
    np.testing.assert_allclose(report["theta"], z, rtol=1e-8)
    f = np.exp(-x).astype(complex)
    assert abs(convchar.laplace_transform(h, f, 1.0) - 0.5) < 1e-4
    study = convchar.convergence_study("exp", "exp", [0.5, 1.0, 2.0], [0.01, 0.005], 30.0)
    assert 3.0 <= study["by_step"][0]["ratio"] <= 5.0


def test_identities_and_cli():
    results, ok = convchar.verify_identities("4x4", trials=3, seed=2)
    assert ok
    assert "fourier_convolution_theorem" in results
    code, out, _ = convchar.run_cli(["verify-identities", "--group", "6", "--trials", "2"])
    assert code == 0
    assert json.loads(out)["pass"]
    code, _, err = convchar.run_cli(["extract"])
    assert code == 2
