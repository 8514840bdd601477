"""Smoke tests for the compiled Python module."""

import cmath
import math

import pytest

np = pytest.importorskip("numpy")
psg = pytest.importorskip("psg")


def sy():
    return psg.example("sy")


def test_polynomial_basics():
    p = psg.Polynomial([-1, 0, 1])
    assert p.degree == 2
    assert p(2) == 3
    assert sorted(r.real for r in p.roots()) == pytest.approx([-1.0, 1.0])
    assert psg.Polynomial.monomial(0.5, 3).coeffs == [0, 0, 0, 0.5]
    g = psg.Generator.iterate(p, 2)
    assert g.degree == 4
    assert g(1) == p(p(1))
    assert g.expanded() == psg.Polynomial([0, 0, -2, 0, 1])


def test_examples_and_genfile_roundtrip():
    names = psg.example_names()
    assert {"sy", "logistic", "fincomp", "jbnq_first", "jbnq", "countprop"} <= set(names)
    for name in names:
        gs = psg.example(name)
        back = psg.parse_generator_set(psg.format_generator_set(gs))
        assert len(back) == len(gs)
        for i in range(len(gs)):
            assert back[i] == gs[i]
    with pytest.raises(IndexError):
        sy()[5]


def test_parse_error_is_value_error():
    with pytest.raises(ValueError, match="line 2"):
        psg.parse_generator_set("gen a = monomial 1 2\ngen b = cubic 3\n")


def test_check_reports():
    r = psg.pcb_check(sy())
    assert r["verdict"] == "Bounded"
    assert r["max_modulus"] <= 1.0 + 1e-12
    report = psg.check(sy())
    assert report["m_components_by_depth"][:3] == [2, 4, 8]
    slope, intercept = psg.psi(sy()[1])
    assert (slope, intercept) == (2, pytest.approx(-math.log(4.0)))
    assert psg.m_set(sy(), 1)[0][1] == pytest.approx(0.4620981204, abs=1e-9)
    count, cantor = psg.count_m_components(sy(), 10)
    assert count == 1024 and cantor
    half = psg.GeneratorSet([psg.Generator(psg.Polynomial.monomial(1, 2)),
                             psg.Generator(psg.Polynomial.monomial(0.5, 2))])
    c = psg.connectivity_check(half)
    assert c["connected"] and c["gaps"] == []


def test_render_arrays_and_determinism():
    gs = psg.example("jbnq_first")
    vp = psg.Viewport.square(0, 2.0, 64)
    a = psg.khat_raster(gs, vp, depth=6)
    psg.set_thread_count(1)
    b = psg.khat_raster(gs, vp, depth=6)
    psg.set_thread_count(0)
    ka, kb = a.kinds(), b.kinds()
    assert ka.shape == (64, 64) and ka.dtype == np.uint8
    assert np.array_equal(ka, kb)
    assert a.pgm() == b.pgm()
    assert a.pgm().startswith(b"P5")
    assert int((ka == psg.BOUNDED).sum()) == a.count(psg.BOUNDED)
    assert set(np.unique(psg.boundary_extract(a).kinds())) <= {0, 1, 2}


def test_fiber_and_sampling():
    gs = sy()
    gamma = psg.random_fiber(2, 24, seed=0)
    assert len(gamma) == 24 and set(gamma) <= {0, 1}
    r = psg.fiber_raster(gs, gamma, psg.Viewport.square(0, 1.5, 48))
    assert r.width == 48
    with pytest.raises(ValueError):
        psg.fiber_raster(gs, [0, 7], psg.Viewport.square(0, 1.5, 8))
    pts = psg.backward_sample(gs, n=500, burn_in=50, seed=3)
    assert pts.shape == (500,) and pts.dtype == np.complex128
    again = psg.backward_sample(gs, n=500, burn_in=50, seed=3)
    assert np.array_equal(pts, again)
    # The fixed points 0 and log 4 of the affine expansions bound log|z| on J.
    assert np.abs(pts).min() >= 1.0 - 1e-9
    assert np.abs(pts).max() <= 4.0 + 1e-9


def test_analyze_circle():
    gs = psg.GeneratorSet([psg.Generator(psg.Polynomial.monomial(1, 2))])
    r = psg.boundary_extract(psg.khat_raster(gs, psg.Viewport.square(0, 1.5, 128), depth=12))
    report = psg.analyze(r)
    assert report["components"]["count"] == 1
    assert psg.jordan(r)


def test_certify_and_replay():
    text = psg.certify_json("disconnected", sy(), ("annulus", 0, 0.9, 4.5))
    cert = psg.certify("disconnected", sy(), ("annulus", 0, 0.9, 4.5))
    assert cert["verdict"] == "Certified"
    assert psg.replay(text)
    # Lowering the depth below what the proof used must change the outcome.
    assert cert["max_depth_used"] == 8
    assert not psg.replay(text.replace('"max_depth": 12', '"max_depth": 5', 1))
    with pytest.raises(ValueError):
        psg.certify("disconnected", sy(), ("square", 0, 1.0))
