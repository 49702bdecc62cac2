import math

import pytest

import gib

CUBIC = [-1, 3, -1, 1]
BLOCK = [[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 2, 1], [0, 0, 1, 1]]


def test_classify_cubic():
    res = gib.classify(CUBIC)
    assert res["outcome"] == "certificate"
    assert res["multiplicities"] == [1, 2]
    a, b = res["moduli"]
    assert abs(math.log(a) + 2 * math.log(b)) < 1e-12


def test_rejections():
    assert gib.classify([-1, 0, 1])["reason"] == "UnitModulusRoot"
    assert gib.classify([-2, 0, 0, 1])["reason"] == "NotUnimodular"
    with pytest.raises(ValueError):
        gib.classify([1, 2])


def test_big_coefficients_pass_through():
    big = 10**30
    assert gib.char_poly(gib.companion_matrix([1, big, 1])) == [1, big, 1]


def test_block_matrix():
    assert gib.char_poly(BLOCK) == [1, -6, 11, -6, 1]
    assert gib.factor([1, -6, 11, -6, 1]) == [([1, -3, 1], 2)]
    cert = gib.certify(matrix=BLOCK)
    assert cert is not None
    assert gib.leaf_closure_dim(cert, "B") == 4
    out = gib.build_verify(cert)
    assert out["all_pass"]
    assert out["data"]["q"] == 2 and out["data"]["m"] == 2


def test_build_verify_cubic_and_literal_scaling():
    cert = gib.certify(CUBIC)
    assert gib.leaf_closure_dim(cert) == 3
    ok = gib.build_verify(cert, samples=100, seed=0)
    assert ok["all_pass"]
    lit = gib.build_verify(cert, literal_glide=True)
    assert not lit["all_pass"]
    failing = {e["check"] for e in lit["report"] if e["status"] == "FAIL"}
    assert "glide.pullback[N]" in failing


def test_search_and_store(tmp_path):
    spec = "degrees = 3\nbound = 3\npattern = [1, 2]\n"
    first = gib.search(spec, workers=2, store_dir=tmp_path)
    assert not first["cached"]
    assert any(r["poly"] == CUBIC for r in first["records"])
    again = gib.search(spec, workers=1, store_dir=tmp_path)
    assert again["cached"]
    assert again["records"] == first["records"]


def test_geometry():
    c = gib.curvature([[1, 0], [0, 1]], planes=20)
    assert abs(c["min"] + 1) < 1e-9 and abs(c["max"] + 1) < 1e-9
    assert c["csv"].startswith("kind,")
    j = gib.jacobi([[1.0]], [1.0], alpha=1.0)
    assert abs(j["ratio"] - math.exp(-1)) < 1e-6
    assert gib.metric_eval("uhs", [[1.0]], [0.0, 2.0], [0.0, 1.0], [0.0, 1.0]) == pytest.approx(0.25)
    with pytest.raises(gib.OutOfDomain):
        gib.metric_eval("uhs", [[1.0]], [0.0, -1.0], [0.0, 1.0], [0.0, 1.0])
