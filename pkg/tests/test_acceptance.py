"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Criteria 2 and 3 pin the published display coefficients verbatim.  The engine
computes every coefficient from the Recurrence Formula with Weyl orders that
are provable lower bounds (the truncated subgroup of a finite-fold class is
the class itself, so its truncated normalizer cannot overcount), and five
published coefficients are exactly twice the honestly computed ones; those
two tests therefore fail against the published values, and the companion
tests (2b, 3b) pin the honest elements exactly.  The analysis lives in the
repository notes; everything else is green.
"""

import math
import time
from fractions import Fraction as F

import numpy as np
import pytest

from revdeg import burnside as br
from revdeg.burnside import brute_orbit_product, finite_product
from revdeg.degrees import DegreeEngine
from revdeg.geometry import (
    FFamilySpec,
    alpha_bound,
    apriori_m_log,
    boundary_radius,
    check_conditions,
    circle_domain,
    curvature,
    eval_eta,
    grad_eta,
    grad_norm_on_boundary,
    octagon_published_curvature,
    octagon_published_gradient,
    octagon_domain,
    phi_integral,
    phi_integral_inv,
)
from revdeg.groups import direct_product, make_cyclic, make_dihedral, subgroup_classes
from revdeg.spectra import LinearizationSpec, cutoff_certificate, spectral_summary

DEG01_PUBLISHED = {
    "(G)": 1,
    "(O(2) x Z2m)": 1,
    "(O(2) x D2d)": -1,
    "(O(2) x D2td)": -1,
}

# published seven-term display, including the -2 at the full-graph class
DEG11_PUBLISHED = {
    "(G)": 1,
    "(D2 ^1 x_D2 ^Z2m D2tp)": 2,
    "(D2 ^1 x_D2 ^Z2m D2p)": 2,
    "(D2 ^D1 x_Z2 ^Z2m Z2p)": 1,
    "(D2 ^D1 x_Z2 ^D2td D2tp)": -1,
    "(D2 ^D1 x_Z2 ^D2d D2p)": -1,
    "(D8 ^1 x_D8 ^Z2m D8p)": -2,
}

DEG11_HONEST = {k: (v // 2 if abs(v) == 2 else v) for k, v in DEG11_PUBLISHED.items()}

OMEGA_PUBLISHED = {
    "(D1 ^1 x_Z2 ^Z2m D2d)": 2,
    "(D1 ^1 x_Z2 ^Z2m D2td)": 2,
    "(D1 x Z2m)": 2,
    "(D2 ^1 x_D2 ^Z2m D2tp)": -2,
    "(D2 ^1 x_D2 ^Z2m D2p)": -2,
    "(D2 ^D1 x_Z2 ^Z2m D2d)": -1,
    "(D1 x D2d)": -1,
    "(D2 ^D1 x_Z2 ^Z2m D2td)": -1,
    "(D1 x D2td)": -1,
    "(D2 ^D1 x_Z2 ^Z2m Z2p)": -1,
    "(D2 ^D1 x_Z2 ^D2td D2tp)": 1,
    "(D2 ^D1 x_Z2 ^D2d D2p)": 1,
    "(D8 ^1 x_D8 ^Z2m D8p)": 2,
    "(O(2) x Z2m)": -1,
    "(O(2) x D2d)": 1,
    "(O(2) x D2td)": 1,
}

# honest values: the five trivial-kernel graph classes carry half the
# published coefficient; (D1 x Z2m) keeps its 2
OMEGA_HONEST = dict(OMEGA_PUBLISHED)
for _lbl in ("(D1 ^1 x_Z2 ^Z2m D2d)", "(D1 ^1 x_Z2 ^Z2m D2td)",
             "(D2 ^1 x_D2 ^Z2m D2tp)", "(D2 ^1 x_D2 ^Z2m D2p)",
             "(D8 ^1 x_D8 ^Z2m D8p)"):
    OMEGA_HONEST[_lbl] //= 2

MAX_ORB = {
    "(D2 ^D1 x_Z2 ^D2td D2tp)",
    "(D2 ^D1 x_Z2 ^D2d D2p)",
    "(D8 ^1 x_D8 ^Z2m D8p)",
}


def _line(n, ok, msg=""):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}{' - ' + msg if msg else ''}")


def _mu_example(natural):
    return LinearizationSpec(1, {natural: (F(-3),)}, {natural: 1})


def _random_specs(natural, count=20, seed=20240):
    """Reversible exact-rational mu tables with certified modes in {0, 1}."""
    rng = np.random.default_rng(seed)
    pool = [F(-3), F(-2), F(-5, 2), F(-1, 2), F(1, 2), F(1, 4), F(-1, 4), F(1)]
    out = []
    ms = [1, 2, 3, 4, 6]
    while len(out) < count:
        m = ms[len(out) % len(ms)]
        row = [F(0)] * m
        row[0] = pool[rng.integers(0, len(pool))]
        for j in range(1, m // 2 + 1):
            v = pool[rng.integers(0, len(pool))] / 4
            row[j] = v
            row[m - j] = v
        if sum(abs(v) for v in row) >= 4:
            continue
        mult = int(rng.integers(1, 3))
        spec = LinearizationSpec(m, {natural: tuple(row)}, {natural: mult})
        if not spectral_summary(spec).nondegenerate:
            continue
        out.append(spec)
    return out


def test_criterion_1_deg01(natural):
    t0 = time.monotonic()
    eng = DegreeEngine("dihedral", 8, base_level=32)
    got = dict(eng.basic_degree(0, natural).labeled())
    dt = time.monotonic() - t0
    ok = got == DEG01_PUBLISHED and dt <= 10.0
    _line(1, ok, f"deg[V(0,1)] coefficient-exact in {dt:.1f}s")
    assert got == DEG01_PUBLISHED
    assert dt <= 10.0


def test_criterion_2_deg11_published(engine8, natural):
    t0 = time.monotonic()
    got = dict(engine8.basic_degree(1, natural).labeled())
    dt = time.monotonic() - t0
    assert dt <= 30.0
    diffs = {k: (got.get(k), DEG11_PUBLISHED.get(k))
             for k in set(got) | set(DEG11_PUBLISHED)
             if got.get(k) != DEG11_PUBLISHED.get(k)}
    ok = not diffs
    _line(2, ok, f"published seven-term display; diffs (engine, published): {diffs}")
    assert got == DEG11_PUBLISHED, (
        "engine disagrees with the published display exactly at the "
        f"doubled coefficients: {diffs}; the engine values follow from the "
        "Recurrence Formula with level-stable Weyl orders (see notes)")


def test_criterion_2b_deg11_honest(engine8, natural):
    got = dict(engine8.basic_degree(1, natural).labeled())
    _line("2b", got == DEG11_HONEST, "honest seven-term element pinned")
    assert got == DEG11_HONEST


def test_criterion_3_omega_published(engine8, natural):
    t0 = time.monotonic()
    om1 = engine8.omega(spectral_summary(_mu_example(natural)))
    spec2 = LinearizationSpec(4, {natural: (F(-5, 2), F(1, 4), F(1, 2), F(1, 4))},
                              {natural: 1})
    om2 = engine8.omega(spectral_summary(spec2))
    dt = time.monotonic() - t0
    assert dt <= 60.0
    assert om1.coeffs == om2.coeffs, "omega must be mu-independent in the region"
    got = dict(om1.labeled())
    diffs = {k: (got.get(k), OMEGA_PUBLISHED.get(k))
             for k in set(got) | set(OMEGA_PUBLISHED)
             if got.get(k) != OMEGA_PUBLISHED.get(k)}
    ok = not diffs
    _line(3, ok, f"published sixteen-term omega; diffs (engine, published): {diffs}")
    assert got == OMEGA_PUBLISHED, (
        f"engine omega differs from the published display at: {diffs}")


def test_criterion_3b_omega_honest(engine8, natural):
    om = engine8.omega(spectral_summary(_mu_example(natural)))
    got = dict(om.labeled())
    ok = got == OMEGA_HONEST and len(got) == 16
    _line("3b", ok, "honest sixteen-term omega pinned, mu-independent")
    assert got == OMEGA_HONEST


def test_criterion_4_maximal_types_and_certificates(engine8, natural):
    rep = engine8.existence_analysis(_mu_example(natural))
    mots = set(rep.maximal_orbit_types[1])
    parities = {lbl: rep.parities[(lbl, 1)] for lbl in mots}
    certs = rep.certificates
    ok = (mots == MAX_ORB and all(p == 1 for p in parities.values())
          and len(certs) == 3 and all(c.fold == 1 and c.non_constant for c in certs))
    _line(4, ok, f"3 maximal types, parity 1 each, 3 non-constant fold-1 certificates")
    assert mots == MAX_ORB
    assert all(p == 1 for p in parities.values())
    assert len(certs) == 3
    assert all(c.fold == 1 and c.non_constant and c.extended_orbit_type
               for c in certs)


def test_criterion_5_route_equivalence(engine8, natural):
    specs = [_mu_example(natural)] + _random_specs(natural)
    for spec in specs:
        summ = spectral_summary(spec)
        prod_route = engine8.degree_of_linearization(summ)  # raises on mismatch
        direct = engine8._degree_direct(summ)
        assert prod_route.coeffs == direct.coeffs
    _line(5, True, f"both routes bit-identical on {len(specs)} specs")


def test_criterion_6_truncation_stability(engine8, natural):
    engine8.basic_degree(0, natural)
    engine8.basic_degree(1, natural)
    lat = engine8.lattice
    ids = [c for c in range(len(lat.classes))]
    diffs = []
    for i in ids:
        for j in ids:
            counts = []
            for level in (lat.m_lo, lat.m_hi):
                h = set(lat._rep_at(i, level))
                conjs = lat._class_conjugates(j, level)
                counts.append(sum(1 for c in conjs if h <= set(c)))
            if counts[0] != counts[1]:
                diffs.append((lat.labels[i], lat.labels[j], counts))
        if lat.finite_weyl(i) and lat._weyl_at(i, lat.m_lo) != lat._weyl_at(i, lat.m_hi):
            diffs.append((lat.labels[i], "weyl"))
    # generator products are verified at both levels inside product_classes;
    # exercise a sample explicitly
    fw = [c for c in ids if lat.finite_weyl(c)][:8]
    for i in fw:
        for j in fw:
            lat.product_classes(i, j)
    ok = not diffs
    _line(6, ok, f"empty stability diff over {len(ids)} classes at levels "
                 f"{lat.m_lo}/{lat.m_hi}")
    assert not diffs


def test_criterion_7_burnside_axioms(engine8, natural):
    engine8.basic_degree(0, natural)
    engine8.basic_degree(1, natural)
    lat = engine8.lattice
    fw = [c for c in range(len(lat.classes)) if lat.finite_weyl(c)]
    rng = np.random.default_rng(99)
    triples = [(int(a), int(b), int(c))
               for a, b, c in rng.choice(fw, size=(100, 3))]
    for a, b, c in triples:
        ga, gb, gc = (br.generator(lat, x) for x in (a, b, c))
        ab = ga.multiply(gb)
        assert ab.coeffs == gb.multiply(ga).coeffs, "commutativity"
        assert ab.multiply(gc).coeffs == ga.multiply(gb.multiply(gc)).coeffs, \
            "associativity"
        assert br.unit(lat).multiply(ga).coeffs == ga.coeffs, "identity"
    for k in (0, 1):
        d = engine8.basic_degree(k, natural)
        assert d.multiply(d).labeled() == [("(G)", 1)], "basic degree squares"
    _line(7, True, f"axioms on {len(triples)} random triples; squares are (G)")


def test_criterion_8_finite_group_oracle():
    g = direct_product(make_dihedral(8), make_cyclic(2))
    classes = subgroup_classes(g)
    assert len(classes) == 38
    mismatches = 0
    for i in range(38):
        for j in range(i, 38):
            if finite_product(g, classes, i, j) != brute_orbit_product(g, classes, i, j):
                mismatches += 1
    _line(8, mismatches == 0, "double cosets vs orbit partition on all 38x38 pairs")
    assert mismatches == 0


def test_criterion_9_geometry_golden():
    dom = octagon_domain()
    thetas = np.linspace(0.0, 2 * np.pi, 10_000, endpoint=False)
    kappas = np.array([curvature(dom, float(t)) for t in thetas])
    grads = np.array([grad_norm_on_boundary(dom, float(t)) for t in thetas])
    disp_k = np.array([octagon_published_curvature(float(t)) for t in thetas])
    disp_g = np.array([octagon_published_gradient(float(t)) for t in thetas])

    kappa_match = float(np.max(np.abs(kappas - disp_k)))
    kappa_range_ok = kappas.min() > -5.8 and kappas.max() <= 17.0 + 1e-12
    grad_range_ok = grads.min() >= 4.0 - 1e-9 and grads.max() <= 21.0 + 1e-9
    fig3_min = float(np.min(disp_g + disp_k))
    honest_min = float(np.min(grads + kappas))
    k0 = abs(curvature(dom, 0.0) - 17.0)
    g0 = abs(grad_norm_on_boundary(dom, 0.0) - 4.0)
    ok = (kappa_match <= 1e-9 and kappa_range_ok and grad_range_ok
          and abs(fig3_min - 1.22522) <= 1e-3 and k0 <= 1e-9 and g0 <= 1e-9)
    _line(9, ok, f"kappa display match {kappa_match:.1e}; published-display "
                 f"min {fig3_min:.5f}; honest min {honest_min:.5f}")
    assert kappa_match <= 1e-9
    assert kappa_range_ok and grad_range_ok
    assert abs(fig3_min - 1.22522) <= 1e-3
    assert k0 <= 1e-9 and g0 <= 1e-9
    # the honest boundary gradient disagrees with the published display; the
    # honest minimum is pinned so any change is visible
    assert honest_min == pytest.approx(-0.43869, abs=1e-4)


def test_criterion_10_finite_differences():
    dom = octagon_domain()
    rng = np.random.default_rng(12)
    h = 1e-5
    checked = 0
    while checked < 100:
        x, y = rng.uniform(-0.95, 0.95, 2)
        if math.hypot(x, y) < 0.1 or eval_eta(dom, x, y) > -1e-3:
            continue
        gx, gy = grad_eta(dom, x, y)
        fx = (eval_eta(dom, x + h, y) - eval_eta(dom, x - h, y)) / (2 * h)
        fy = (eval_eta(dom, x, y + h) - eval_eta(dom, x, y - h)) / (2 * h)
        scale = max(1.0, abs(gx), abs(gy))
        assert abs(gx - fx) / scale <= 1e-6
        assert abs(gy - fy) / scale <= 1e-6
        checked += 1
    c = circle_domain(1.0)
    assert abs(curvature(c, 0.37) - 1.0) <= 1e-12
    assert abs(grad_norm_on_boundary(c, 1.1) - 2.0) <= 1e-12
    _line(10, True, "gradients within 1e-6 of central differences; circle exact")


def test_criterion_11_apriori_constants():
    for a, b in ((24.0, 21.0), (5.0, 2.0)):
        for w in (0.1, 1.0, 10.0):
            assert abs(phi_integral_inv(a, b, phi_integral(a, b, w)) - w) <= 1e-10
    for ks in ([1.0, 2.0, 5.0],):
        vals = [apriori_m_log(24.0, 21.0, 14.4, k) for k in ks]
        assert vals == sorted(vals)
    grid = [(k, p, al, r)
            for k in (1.0, 10.0) for p in (1.0, 6.28)
            for al in (0.5, 14.4) for r in (0.5, 1.0)]
    for i, (k, p, al, r) in enumerate(grid):
        base = apriori_m_log(24.0, 21.0, al, k, period=p, radius=r)
        assert apriori_m_log(24.0, 21.0, al, k + 1, period=p, radius=r) >= base
        assert apriori_m_log(24.0, 21.0, al, k, period=p + 0.5, radius=r) >= base
        assert apriori_m_log(24.0, 21.0, al + 0.5, k, period=p, radius=r) >= base
        assert apriori_m_log(24.0, 21.0, al, k, period=p, radius=r + 0.5) >= base
    dom = octagon_domain()
    alpha = alpha_bound(dom)
    assert alpha == pytest.approx(4 * math.sqrt(13), abs=1e-12)
    rep = check_conditions(FFamilySpec(dom, (-3.0,)), grid=1024)
    assert rep.constants["K"] == pytest.approx((1 + alpha) * (21 + 3), rel=1e-12)
    _line(11, True, "Phi roundtrip 1e-10; M monotone; alpha = 4*sqrt(13); "
                    "K = (1+alpha)(21+sum|mu|)")


def test_criterion_12_sign_oracle_and_cutoff(engine8, natural):
    specs = [_mu_example(natural)] + _random_specs(natural, count=20, seed=777)
    for spec in specs:
        summ = spectral_summary(spec)
        assert cutoff_certificate(spec, summ.kstar), "cutoff bound must certify"
        engine8.degree_of_linearization(summ)
        lat = engine8.lattice
        for cid in range(len(lat.classes)):
            if not lat.finite_weyl(cid):
                continue
            parity = sum(m * engine8.fixed_dim(k, l, cid)
                         for (k, l), m in summ.multiplicities.items() if m)
            assert engine8.d_sign_oracle(spec, cid, summ) == (-1) ** parity
    _line(12, True, f"determinant oracle matches parity formula on {len(specs)} specs")
