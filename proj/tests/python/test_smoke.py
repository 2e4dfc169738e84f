import math

import pytest

import artifact


def test_class_group():
    cg = artifact.class_group(-23)
    assert cg["h"] == 3
    assert (1, 1, 6) in cg["forms"]
    assert [artifact.class_group(D)["h"] for D in (-47, -71)] == [5, 7]


def test_tau():
    assert artifact.tau(6) == [0, 1, -24, 252, -1472, 4830, -6048]


def test_theta_counts_ideals():
    lam = artifact.theta(-23, k=0, chi=0, terms=12)
    assert lam[2] == pytest.approx(2.0)
    assert lam[5] == pytest.approx(0.0)


def test_heegner():
    h = artifact.heegner(-71, 3)
    assert h["lemma41"]
    assert len(h["representatives"]) == 7
    with pytest.raises(artifact.PreconditionError):
        artifact.heegner(-23, 5)


def test_whittaker_bessel():
    mpmath = pytest.importorskip("mpmath")
    for mu, y in [(0.0, 2.0), (1.3, 0.7), (4.5, 12.0)]:
        value, err = artifact.whittaker(0.0, mu, y)
        ref = float(mpmath.sqrt(y / mpmath.pi) * mpmath.besselk(mu, y / 2))
        assert value.real == pytest.approx(ref, rel=1e-10)
        assert err < 1e-10 * ref


def test_lvalue_and_moments():
    r = artifact.lvalue(-23, chi=0)
    assert r["value"].real == pytest.approx(4.219496393379, rel=1e-10)
    w = artifact.wide_moment(-23, 3)
    assert w["agree"]
    assert artifact.diagonal_moment(-23, 2)["agree"]


def test_waldspurger():
    rep = artifact.waldspurger(-23)
    assert rep["dispersion"] < 1e-3
    assert rep["normalized_ratio"] == pytest.approx(2.0, rel=1e-6)


def test_equidistribution():
    rows = artifact.equidistribution([-23, -47])
    assert [r[1] for r in rows] == [3, 5]
    assert all(r[2] >= 0 for r in rows)
    assert math.isfinite(artifact.petersson_norm())
