"""Two-sided modules: axioms, tensor/dual constructions, braiding, twist."""

import pytest

from mcginv.cyclo import CycScalar
from mcginv.linmap import LinMap, compose, kron, rank
from mcginv.hopf import hopf_from_bundle, read_r_vector
from mcginv.ribbon import derive_ribbon
from mcginv.bimod import (Bimodule, trivial_bimodule, regular_bimodule,
                          tensor_bimodule, dual_bimodule, verify_bimodule,
                          evaluation, coevaluation, action_operator,
                          braiding, twist, pivot_pairings, hom_space)
from mcginv.errors import ContextMismatch, ShapeMismatch
from mcginv.examples import drinfeld_double_cyclic
from .algebras import sweedler_bundle


@pytest.fixture(scope="module")
def rd3():
    blob = drinfeld_double_cyclic(3)
    h = hopf_from_bundle(blob)
    return derive_ribbon(h, read_r_vector(blob, h.dim))


@pytest.fixture(scope="module")
def rdsw():
    blob = sweedler_bundle()
    h = hopf_from_bundle(blob)
    return derive_ribbon(h, read_r_vector(blob, h.dim),
                         ribbon_vector=LinMap.basis_vector((4,), 0))


def test_bimodule_axioms(rd3, rdsw):
    for rd in (rd3, rdsw):
        reg = regular_bimodule(rd.hopf)
        for x in (trivial_bimodule(rd.hopf), reg, dual_bimodule(reg),
                  tensor_bimodule(reg, reg)):
            rep = verify_bimodule(x)
            assert rep.all_pass, (x.name, rep.failures())


def test_tensor_with_trivial_unit(rd3):
    reg = regular_bimodule(rd3.hopf)
    lx = tensor_bimodule(trivial_bimodule(rd3.hopf), reg)
    assert lx.left.with_shapes(reg.left.dom, reg.left.cod) == reg.left
    assert lx.right.with_shapes(reg.right.dom, reg.right.cod) == reg.right


def test_double_dual_is_identity_when_antipode_squares_to_one(rd3):
    reg = regular_bimodule(rd3.hopf)
    dd = dual_bimodule(dual_bimodule(reg))
    assert dd.left == reg.left
    assert dd.right == reg.right


def test_zigzags(rd3):
    reg = regular_bimodule(rd3.hopf)
    d = reg.dim
    ev = evaluation(reg)
    coev = coevaluation(reg)
    idd = reg.id_map()
    z1 = compose(kron(ev, idd).with_shapes((d, d, d), (d,)),
                 kron(idd, coev).with_shapes((d,), (d, d, d)))
    assert z1 == idd
    z2 = compose(kron(idd, ev).with_shapes((d, d, d), (d,)),
                 kron(coev, idd).with_shapes((d,), (d, d, d)))
    assert z2 == idd


def _is_map_to_trivial(m, dom_bm):
    h = dom_bm.hopf
    lhs = compose(m, dom_bm.left)
    if lhs != kron(h.counit, m).with_shapes(lhs.dom, lhs.cod):
        return False
    lhs = compose(m, dom_bm.right)
    return lhs == kron(m, h.counit).with_shapes(lhs.dom, lhs.cod)


def test_evaluation_is_intertwiner(rd3, rdsw):
    for rd in (rd3, rdsw):
        reg = regular_bimodule(rd.hopf)
        pair = tensor_bimodule(dual_bimodule(reg), reg)
        assert _is_map_to_trivial(evaluation(reg), pair)


def test_braiding_is_intertwiner(rd3, rdsw):
    for rd in (rd3, rdsw):
        h = rd.hopf
        reg = regular_bimodule(h)
        xy = tensor_bimodule(reg, reg)
        c = braiding(rd, reg, reg)
        idh = LinMap.identity((h.dim,))
        assert compose(c, xy.left) == compose(xy.left, kron(idh, c))
        assert compose(c, xy.right) == compose(xy.right, kron(c, idh))
        assert rank(c) == c.dom_dim


def test_braiding_hexagons(rd3, rdsw):
    for rd in (rd3, rdsw):
        reg = regular_bimodule(rd.hopf)
        xy = tensor_bimodule(reg, reg)
        idd = reg.id_map()
        lhs = braiding(rd, xy, reg)
        rhs = compose(kron(braiding(rd, reg, reg), idd),
                      kron(idd, braiding(rd, reg, reg)))
        assert lhs.with_shapes(rhs.dom, rhs.cod) == rhs
        lhs2 = braiding(rd, reg, xy)
        rhs2 = compose(kron(idd, braiding(rd, reg, reg)),
                       kron(braiding(rd, reg, reg), idd))
        assert lhs2.with_shapes(rhs2.dom, rhs2.cod) == rhs2


def test_twist_axiom(rd3, rdsw):
    for rd in (rd3, rdsw):
        reg = regular_bimodule(rd.hopf)
        xy = tensor_bimodule(reg, reg)
        cc = compose(braiding(rd, reg, reg), braiding(rd, reg, reg))
        th = twist(rd, reg)
        lhs = twist(rd, xy)
        rhs = compose(cc, kron(th, th)).with_shapes(lhs.dom, lhs.cod)
        assert lhs == rhs


def test_twist_trivial_on_regular_module(rd3):
    # the ribbon element is central, so two-sided conjugation cancels here
    reg = regular_bimodule(rd3.hopf)
    assert twist(rd3, reg) == reg.id_map()
    assert twist(rd3, trivial_bimodule(rd3.hopf)) == LinMap.identity(())


def test_pivot_pairings(rdsw):
    # the balancing element is nontrivial here, so the dressing matters
    reg = regular_bimodule(rdsw.hopf)
    d = reg.dim
    ev_t, coev_t = pivot_pairings(rdsw, reg)
    idd = reg.id_map()
    z3 = compose(kron(ev_t, idd).with_shapes((d, d, d), (d,)),
                 kron(idd, coev_t).with_shapes((d,), (d, d, d)))
    assert z3 == idd
    z4 = compose(kron(idd, ev_t).with_shapes((d, d, d), (d,)),
                 kron(coev_t, idd).with_shapes((d,), (d, d, d)))
    assert z4 == idd
    pair = tensor_bimodule(reg, dual_bimodule(reg))
    assert _is_map_to_trivial(ev_t, pair)


def test_pivot_evaluation_matches_braided_formula(rdsw):
    reg = regular_bimodule(rdsw.hopf)
    dual = dual_bimodule(reg)
    d = reg.dim
    ev_t, _ = pivot_pairings(rdsw, reg)
    braided = compose(evaluation(reg),
                      compose(braiding(rdsw, reg, dual),
                              kron(twist(rdsw, reg), dual.id_map())))
    assert ev_t == braided.with_shapes(ev_t.dom, ev_t.cod)


def test_hom_from_trivial_picks_out_integrals(rd3):
    maps = hom_space(trivial_bimodule(rd3.hopf), regular_bimodule(rd3.hopf))
    assert len(maps) == 1
    found = maps[0].with_shapes((), (rd3.hopf.dim,))
    # the invariant vector is the integral up to scale
    lam_of = {r for (r, _) in rd3.integral.entries}
    assert {r for (r, _) in found.entries} == lam_of


def test_endomorphisms_of_regular_module(rd3, rdsw):
    assert len(hom_space(regular_bimodule(rd3.hopf),
                         regular_bimodule(rd3.hopf))) == 9
    # Sweedler has a one-dimensional center
    assert len(hom_space(regular_bimodule(rdsw.hopf),
                         regular_bimodule(rdsw.hopf))) == 1


def test_action_operator_is_linear(rd3):
    h = rd3.hopf
    reg = regular_bimodule(h)
    assert action_operator(reg, rd3.u, "left") == \
        compose(h.product, kron(rd3.u, reg.id_map()).with_shapes(
            reg.space, (h.dim,) + reg.space))


def test_mixed_algebras_rejected(rd3, rdsw):
    with pytest.raises(ContextMismatch):
        tensor_bimodule(regular_bimodule(rd3.hopf),
                        regular_bimodule(rdsw.hopf))
    with pytest.raises(ContextMismatch):
        hom_space(regular_bimodule(rd3.hopf), regular_bimodule(rdsw.hopf))


def test_bad_action_shape_rejected(rd3):
    h = rd3.hopf
    with pytest.raises(ShapeMismatch):
        Bimodule(h, (2,), h.product, h.product)
