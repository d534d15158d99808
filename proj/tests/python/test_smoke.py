import json
import math

import pytest

import innerfun as ifn


def test_version():
    assert ifn.__version__


def test_pseudo_dist_and_mobius():
    o = ifn.DiscPoint(0.0, 0.0)
    z = ifn.DiscPoint(0.3, 0.4)
    assert ifn.pseudo_dist(o, z) == pytest.approx(0.5, abs=1e-14)
    a = ifn.DiscPoint(0.2, -0.1)
    back = ifn.mobius(a, ifn.mobius(a, z))
    assert back.re == pytest.approx(z.re, abs=1e-12)
    assert back.im == pytest.approx(z.im, abs=1e-12)


def test_cayley_round_trip():
    p = ifn.HalfPlanePoint(3.0, 2.0)
    q = ifn.cayley_inverse(ifn.cayley(p))
    assert q.re == pytest.approx(3.0, abs=1e-12)
    assert q.im == pytest.approx(2.0, abs=1e-12)


def test_finite_cross_value():
    cross = ifn.gen_finite_cross(0.1)
    res = ifn.eval_blaschke(cross, ifn.DiscPoint(0.0, 0.0))
    assert res["value"] == pytest.approx(1e-4, abs=1e-15)
    assert res["modulus_upper"] <= 1.0


def test_thin_profile_near_one():
    thin = ifn.gen_thin(12)
    prof = ifn.thin_profile(thin)
    assert prof[-1][1] > 0.99


def test_eta_curve_single_zero():
    zs = ifn.ZeroSet.from_disc_zeros([(0j, 1)])
    mu = ifn.SingularMeasure([])
    samples = ifn.eta_curve(zs, mu, [0.3, 0.6], r_max=0.99, mesh=0.05)
    assert samples[0]["estimate"] == pytest.approx(0.3, abs=0.06)
    assert samples[1]["estimate"] == pytest.approx(0.6, abs=0.06)


def test_entropy_integral_antipodal():
    val = ifn.entropy_integral([(0.0, 0.0), (0.5, 0.5)])
    expected = 2 * math.pi * (1 + math.log(2) - math.log(math.pi))
    assert val == pytest.approx(expected, rel=1e-12)


def test_sipification_counts():
    mu = ifn.SingularMeasure([(0.0, 1.0)])
    b1, b2, meta = ifn.build_sipification(mu, [(0.0, 0.0)], 8)
    info = json.loads(meta)
    assert len(b1) > 0
    assert len(b2) > len(b1)
    assert info["f_count"] >= len(b1)


def test_classify_report_shape():
    report = json.loads(ifn.classify(ifn.gen_thin(8), ifn.SingularMeasure([])))
    assert report["verdicts"]["CN"]["label"] == "evidence_for"
    assert report["verdicts"]["SIP"]["label"] == "evidence_for"
    assert "eta_curve" in report


def test_kappa_and_narrowness():
    samples = [(0.2, 0.21), (0.5, 0.52), (0.8, 0.81)]
    assert ifn.kappa(samples, 0.4) == pytest.approx(0.4, abs=0.05)
    assert ifn.kappa(samples, 0.95) == 1.0

    zs = ifn.ZeroSet.from_disc_zeros([(0j, 1)])
    res = ifn.narrowness_probe(
        zs, ifn.SingularMeasure([]), 0.5, "sip",
        center_hyp_max=0.8, center_mesh=0.1, r_min=0.05, r_max=0.6,
        r_step=0.05, disc_mesh=0.1)
    assert 0.0 < res["r_found"] <= math.atanh(0.5) / 2


def test_zeroset_json_round_trip():
    zs = ifn.gen_exponential(0.5, 6)
    back = ifn.ZeroSet(zs.to_json())
    assert len(back) == 6
    assert back.blaschke_sum() == pytest.approx(zs.blaschke_sum(), rel=1e-15)
