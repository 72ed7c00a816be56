"""Cross-check the compiled module against the pointwise mpmath oracle."""
import mpmath as mp
import pytest

import rotation_oracle as oracle

stiet = pytest.importorskip("stiet")

S2 = mp.sqrt(2) - 1
GOLD = (3 - mp.sqrt(5)) / 2
ALPHAS = {"quad:sqrt2-1": S2, "quad:(3-sqrt5)/2": GOLD}


@pytest.mark.parametrize("key", list(oracle.SURFACES))
@pytest.mark.parametrize("alpha_text", list(ALPHAS))
def test_trajectory(key, alpha_text):
    got = stiet.trajectory(stiet.Origami.parse(key), stiet.Alpha.parse(alpha_text), "0", 1, 500)
    assert got == oracle.skew_coding(key, ALPHAS[alpha_text], 500)


@pytest.mark.parametrize("key,q", [("fig1", 7), ("fig2", 10), ("d4-cycle", 11), ("torus-d1", 8)])
def test_defects(key, q):
    report = stiet.defect_scan(stiet.Origami.parse(key), stiet.Alpha.parse("quad:sqrt2-1"), q, q)
    want = oracle.skew_defects(key, S2, q)
    for got, exp in zip(report["rows"][0]["defects"], want):
        assert got == pytest.approx(float(exp), abs=1e-13)


@pytest.mark.parametrize("alpha_text", list(ALPHAS))
def test_bispecials(alpha_text):
    states = stiet.sturmian_run(stiet.Alpha.parse(alpha_text), 6)
    word = oracle.rotation_coding(ALPHAS[alpha_text], 5000)
    assert [s["w"] for s in states] == oracle.bispecials(word, len(states[-1]["w"]))


def test_polygon_coding():
    y = "19/7"
    got = stiet.polygon_coding(4, y, "-1/3", 300)
    assert got == oracle.polygon_coding(4, mp.mpf(19) / 7, mp.mpf(-1) / 3, 300)
