"""Functions on the closed boundary: product, coproduct, module compatibility."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcginv.cyclo import CycScalar
from mcginv.linmap import LinMap, compose, kron
from mcginv.hopf import hopf_from_bundle, read_r_vector
from mcginv.ribbon import derive_ribbon, ribbon_from_bundle
from mcginv.bimod import braiding, braiding_inverse, verify_bimodule
from mcginv.errors import AutomorphismRejected
from mcginv.examples import automorphism_from_group_aut, drinfeld_double_cyclic
from mcginv.frob import (checked_automorphism, frobenius_bimodule,
                         frobenius_coproduct, frobenius_counit,
                         frobenius_product, frobenius_unit,
                         twisted_frobenius_bimodule, verify_frobenius)
from .algebras import double_of_group, sweedler_bundle, symmetric_group_3


@pytest.fixture(scope="module")
def rd2():
    return ribbon_from_bundle(drinfeld_double_cyclic(2))


@pytest.fixture(scope="module")
def rd3():
    return ribbon_from_bundle(drinfeld_double_cyclic(3))


@pytest.fixture(scope="module")
def rds():
    return ribbon_from_bundle(double_of_group(*symmetric_group_3()))


@pytest.fixture(scope="module")
def rdsw():
    blob = sweedler_bundle()
    h = hopf_from_bundle(blob)
    return derive_ribbon(h, read_r_vector(blob, h.dim),
                         ribbon_vector=LinMap.basis_vector((4,), 0))


def test_certificate_on_cyclic_doubles(rd2, rd3):
    for rd, k in ((rd2, 2), (rd3, 3)):
        rep = verify_frobenius(rd)
        assert rep.all_pass, (rd.hopf.name, rep.failures())
        # counit of unit = dim of the group algebra inside the double
        want = CycScalar.from_rational(k)
        assert rep.derived["counit_of_unit"].entries == {(0, 0): want}


def test_certificate_on_nonabelian_double(rds):
    rep = verify_frobenius(rds)
    assert rep.all_pass, rep.failures()
    assert rep.derived["counit_of_unit"].entries == {
        (0, 0): CycScalar.from_rational(6)}


def test_one_sided_integral_breaks_exactly_the_right_handed_laws(rdsw):
    # Sweedler's integral is one-sided, so the right-action compatibilities
    # built from it must fail while everything left-handed survives
    rep = verify_frobenius(rdsw)
    assert sorted(rep.failures()) == [
        "braided_cocommutative",
        "coproduct_respects_right_action",
        "counit_respects_right_action",
    ]
    assert rep.checks["product_respects_left_action"][0]
    assert rep.checks["coproduct_respects_left_action"][0]
    assert rep.derived["counit_of_unit"].entries == {}


def test_product_transposes_coproduct_with_reversed_legs(rd3):
    h = rd3.hopf
    n = h.dim
    m = frobenius_product(h)
    assert len(m.entries) == len(h.coproduct.entries)
    for (r, c), v in m.entries.items():
        i, j = divmod(c, n)
        assert h.coproduct.entries[(j * n + i, r)] == v


def test_coproduct_snake_laws(rd3):
    h = rd3.hopf
    n = h.dim
    m = frobenius_product(h)
    d = frobenius_coproduct(rd3)
    e = frobenius_unit(h)
    u = frobenius_counit(rd3)
    idf = LinMap.identity((n,))
    cut = kron(u, idf).with_shapes((n, n), (n,))
    assert compose(cut, compose(d, compose(m, kron(e, idf)))) == idf
    cut2 = kron(idf, u).with_shapes((n, n), (n,))
    assert compose(cut2, compose(d, compose(m, kron(idf, e)))) == idf


def test_coproduct_frozen_on_smallest_double(rd2):
    one = CycScalar.one()
    want = {(0, 0): one, (2, 2): one, (5, 1): one, (7, 3): one,
            (8, 2): one, (10, 0): one, (13, 3): one, (15, 1): one}
    assert frobenius_coproduct(rd2).entries == want


def test_braided_commutativity_both_ways(rd3):
    f = frobenius_bimodule(rd3)
    m = frobenius_product(rd3.hopf)
    assert compose(m, braiding(rd3, f, f)) == m
    assert compose(m, braiding_inverse(rd3, f, f)) == m


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9),
       st.lists(st.integers(-3, 3), min_size=9, max_size=9),
       st.integers(0, 8))
def test_product_evaluation_against_coproduct_sum(rd3, xs, ps, r):
    # (xi * psi)(e_r) sums xi(second leg) psi(first leg) over the coproduct
    h = rd3.hopf
    n = h.dim
    xi = LinMap((), (n,), {(i, 0): CycScalar.from_rational(c)
                           for i, c in enumerate(xs) if c})
    psi = LinMap((), (n,), {(i, 0): CycScalar.from_rational(c)
                            for i, c in enumerate(ps) if c})
    got = compose(frobenius_product(h), kron(xi, psi)).entries.get((r, 0),
                                                                   CycScalar.zero())
    want = CycScalar.zero()
    for (rc, cc), cv in h.coproduct.entries.items():
        if cc != r:
            continue
        a, b = divmod(rc, n)
        xb = xi.entries.get((b, 0))
        pa = psi.entries.get((a, 0))
        if xb is not None and pa is not None:
            want = want + cv * xb * pa
    assert got == want


def test_automorphism_gate_passes_group_inversion(rd3):
    w = automorphism_from_group_aut(3, 2)
    assert checked_automorphism(rd3, w) is w


def test_automorphism_gate_rejects_antipode_when_noncommutative(rds):
    # the antipode reverses products, so it only squeaks past the gate on
    # commutative doubles; here it must be thrown out
    with pytest.raises(AutomorphismRejected):
        checked_automorphism(rds, rds.hopf.antipode)


def test_automorphism_gate_rejects_corrupted_map(rd3):
    w = automorphism_from_group_aut(3, 2)
    bad = w + LinMap((9,), (9,), {(0, 5): CycScalar.one()})
    with pytest.raises(AutomorphismRejected):
        checked_automorphism(rd3, bad)


def test_twisted_module_still_certifies_and_differs(rd3):
    w = automorphism_from_group_aut(3, 2)
    f = frobenius_bimodule(rd3)
    for side in ("left", "right"):
        tw = twisted_frobenius_bimodule(rd3, w, side=side)
        rep = verify_bimodule(tw)
        assert rep.all_pass, (side, rep.failures())
        changed = tw.left != f.left if side == "left" else tw.right != f.right
        assert changed
