"""Degree pipeline: basic degrees, maximal orbit types, existence analysis."""

from fractions import Fraction as F

import pytest

from revdeg import burnside as br
from revdeg.degrees import DegreeEngine
from revdeg.spectra import LinearizationSpec, spectral_summary

# the honest seven-term mode-1 basic degree of the octagonal example
DEG11_EXPECTED = {
    "(G)": 1,
    "(D2 ^1 x_D2 ^Z2m D2tp)": 1,
    "(D2 ^1 x_D2 ^Z2m D2p)": 1,
    "(D2 ^D1 x_Z2 ^Z2m Z2p)": 1,
    "(D2 ^D1 x_Z2 ^D2td D2tp)": -1,
    "(D2 ^D1 x_Z2 ^D2d D2p)": -1,
    "(D8 ^1 x_D8 ^Z2m D8p)": -1,
}

DEG01_EXPECTED = {
    "(G)": 1,
    "(O(2) x Z2m)": 1,
    "(O(2) x D2d)": -1,
    "(O(2) x D2td)": -1,
}

MAX_ORB_EXPECTED = {
    "(D2 ^D1 x_Z2 ^D2td D2tp)",
    "(D2 ^D1 x_Z2 ^D2d D2p)",
    "(D8 ^1 x_D8 ^Z2m D8p)",
}


def labeled_dict(e):
    return dict(e.labeled())


def test_basic_degree_mode0(engine8, natural):
    assert labeled_dict(engine8.basic_degree(0, natural)) == DEG01_EXPECTED


def test_basic_degree_mode1(engine8, natural):
    assert labeled_dict(engine8.basic_degree(1, natural)) == DEG11_EXPECTED


def test_basic_degrees_square_to_unit(engine8, natural):
    for k in (0, 1):
        d = engine8.basic_degree(k, natural)
        assert d.multiply(d).labeled() == [("(G)", 1)]


def test_mode0_maximal_types(engine8, natural):
    mots = {engine8.lattice.labels[c] for c in engine8.maximal_orbit_types(0, natural)}
    assert mots == {"(O(2) x D2d)", "(O(2) x D2td)"}


def test_mode1_maximal_types(engine8, natural):
    mots = {engine8.lattice.labels[c] for c in engine8.maximal_orbit_types(1, natural)}
    assert mots == MAX_ORB_EXPECTED


def test_goursat_data_of_maximal_types(engine8, natural):
    # the two finite-fold classes: H = D2, Z = D1, L = Z2; the third is the
    # full graph D8 x_{D8} D8p over the central kernel
    lat = engine8.lattice
    for cid in engine8.maximal_orbit_types(1, natural):
        data = lat.classes[cid]
        if data.o2.fold == 2:
            assert data.truncated_order(lat.m_lo) == 16
        else:
            assert data.o2.fold == 8
            assert data.truncated_order(lat.m_lo) == 32
        assert engine8.fixed_dim(1, natural, cid) == 1


def test_frak_n_values(engine8, natural):
    spec = LinearizationSpec(1, {natural: (F(-3),)}, {natural: 1})
    summ = spectral_summary(spec)
    for cid in engine8.maximal_orbit_types(1, natural):
        assert engine8.frak_n(cid, 1, summ) == 1
    # doubling the multiplicity makes every parity even
    spec2 = LinearizationSpec(1, {natural: (F(-3),)}, {natural: 2})
    summ2 = spectral_summary(spec2)
    for cid in engine8.maximal_orbit_types(1, natural):
        assert engine8.frak_n(cid, 1, summ2) % 2 == 0


def test_existence_analysis_certificates(engine8, natural):
    spec = LinearizationSpec(1, {natural: (F(-3),)}, {natural: 1})
    rep = engine8.existence_analysis(spec)
    assert not rep.degenerate
    assert len(rep.certificates) == 3
    assert {c.label for c in rep.certificates} == MAX_ORB_EXPECTED
    assert all(c.fold == 1 for c in rep.certificates)
    assert all(c.non_constant for c in rep.certificates)
    assert all(c.extended_orbit_type for c in rep.certificates)
    assert rep.omega is not None and rep.omega.coeff(0) == 0


def test_no_negative_spectrum_gives_unit_degree(engine8, natural):
    spec = LinearizationSpec(1, {natural: (F(1),)}, {natural: 1})
    summ = spectral_summary(spec)
    assert summ.negative == ()
    deg = engine8.degree_of_linearization(summ)
    assert deg.labeled() == [("(G)", 1)]
    assert engine8.omega(summ).is_zero()
    rep = engine8.existence_analysis(spec)
    assert rep.certificates == []


def test_even_multiplicity_collapses(engine8, natural):
    spec = LinearizationSpec(1, {natural: (F(-3),)}, {natural: 2})
    deg = engine8.degree_of_linearization(spectral_summary(spec))
    assert deg.labeled() == [("(G)", 1)]


def test_degenerate_path(natural):
    # the degenerate fold s = 2 probes mode 2, whose graph classes fold at 16,
    # so this needs the level-64 truncation
    eng = DegreeEngine("dihedral", 8, base_level=64)
    spec = LinearizationSpec(1, {natural: (F(-1),)}, {natural: 1})  # xi_1 = 0
    rep = eng.existence_analysis(spec)
    assert rep.degenerate
    assert rep.degenerate_fold == 2
    assert rep.omega is None
    # modes tested are the odd multiples of s up to the cutoff; no negative
    # spectrum at those modes here, so no certificates
    assert all(p % 2 == 0 for p in rep.parities.values())
    assert rep.certificates == []


def test_route_equivalence_worked_example(engine8, natural):
    spec = LinearizationSpec(1, {natural: (F(-3),)}, {natural: 1})
    summ = spectral_summary(spec)
    # degree_of_linearization raises RouteDisagreement unless both routes agree
    deg = engine8.degree_of_linearization(summ)
    direct = engine8._degree_direct(summ)
    assert deg.coeffs == direct.coeffs


def test_sign_oracle_worked_example(engine8, natural):
    spec = LinearizationSpec(1, {natural: (F(-3),)}, {natural: 1})
    summ = spectral_summary(spec)
    lat = engine8.lattice
    engine8.basic_degree(1, natural)
    for cid in range(len(lat.classes)):
        if not lat.finite_weyl(cid):
            continue
        parity = sum(m * engine8.fixed_dim(k, l, cid)
                     for (k, l), m in summ.multiplicities.items() if m)
        assert engine8.d_sign_oracle(spec, cid, summ) == (-1) ** parity


def test_gamma_trivial_group(tmp_path):
    # Gamma = 1: G = O(2) x Z2; single minus component of dimension 1
    eng = DegreeEngine("cyclic", 1, base_level=8)
    assert eng.component_count() == 1
    d = eng.basic_degree(1, 0)
    labels = dict(d.labeled())
    assert labels["(G)"] == 1
    assert len(labels) == 2  # (G) and one maximal type
    assert d.multiply(d).labeled() == [("(G)", 1)]


def test_gamma_trivial_minus_component(engine8):
    # k = 0 on the Gamma-trivial antipodal line: a single sign flip
    d = engine8.basic_degree(0, 0)
    assert dict(d.labeled()) == {"(G)": 1, "(O(2) x D8)": -1}
    assert d.multiply(d).labeled() == [("(G)", 1)]
