"""Commutative Frobenius algebra on the dual space.

Boundary components of a surface carry F = H* with the conjugation-free
two-sided module structure of the dual of the regular module.  Multiplying
functionals transposes the coproduct through the nested duality pairing,
which reverses the two tensor legs; the unit is the counit.  The counit
of F evaluates at the integral, and the coproduct of F is the unique
splitting Frobenius-compatible with that form, built from the inverse of
the pairing matrix.  Every structure map is a two-sided module map, and
inside the braided module category F is commutative and cocommutative
with trivial twist; all of that is certified, not assumed.  The module
map property of the counit needs the integral to be two-sided, so it
fails (honestly) over a non-unimodular base.
"""

from .errors import AutomorphismRejected
from .hopf import AxiomReport
from .linmap import LinMap, compose, kron, flip, invert
from .bimod import (Bimodule, dual_bimodule, regular_bimodule, braiding,
                    twist, tensor_bimodule, verify_bimodule)
from .ribbon import verify_ribbon_automorphism


def frobenius_bimodule(rd):
    """F = H* as a two-sided module, dual of the regular module."""
    return rd.op("frob:bimodule", lambda: _build_frobenius_bimodule(rd))


def _build_frobenius_bimodule(rd):
    f = dual_bimodule(regular_bimodule(rd.hopf))
    return Bimodule(f.hopf, f.space, f.left, f.right, name="F")


def frobenius_product(h):
    """Multiply functionals: the coproduct transposed with reversed legs.

    Transposing a map into a tensor square through nested duality caps
    swaps the two output legs, so the first input functional pairs with
    the second coproduct leg.  The reversal is forced: it is the only
    orientation for which the product is a two-sided module map once the
    base algebra stops being commutative.
    """
    n = h.dim
    return compose(h.coproduct.transpose(),
                   flip(n, n).with_shapes((n, n), (n, n)))


def frobenius_unit(h):
    """The counit, viewed as a vector of dual coordinates."""
    return h.counit.transpose()


def frobenius_coproduct(rd):
    """The splitting inverse to the product under the integral pairing.

    Evaluating a product of two functionals at the integral gives a
    pairing on F whose matrix is invertible; feeding one leg of the
    inverse copairing back into the product yields the unique coproduct
    satisfying both snake laws with evaluation at the integral as
    counit."""
    return rd.op("frob:coproduct", lambda: _build_frobenius_coproduct(rd))


def _build_frobenius_coproduct(rd):
    h = rd.hopf
    n = h.dim
    assert rd.integral is not None, "needs the integral"
    m = frobenius_product(h)
    kap = compose(rd.integral.transpose(), m)
    km = {}
    for (_, c), v in kap.entries.items():
        km[divmod(c, n)] = v
    cinv = invert(LinMap((n,), (n,), km))
    cvec = LinMap((), (n, n),
                  {(r * n + c, 0): v for (r, c), v in cinv.entries.items()})
    idf = LinMap.identity((n,))
    return compose(kron(m, idf), kron(idf, cvec))


def frobenius_counit(rd):
    """Evaluate a functional at the integral."""
    assert rd.integral is not None
    return rd.integral.transpose()


def verify_frobenius(rd):
    """Certify the Frobenius structure, its module map property on every
    structure morphism, and its braided commutativity."""
    h = rd.hopf
    n = h.dim
    rep = AxiomReport(f"Frobenius checks for {h.name}")
    f = frobenius_bimodule(rd)
    verify_bimodule(f).merged_into(rep)
    m = frobenius_product(h)
    e = frobenius_unit(h)
    d = frobenius_coproduct(rd)
    u = frobenius_counit(rd)
    idf = LinMap.identity((n,))
    idh = LinMap.identity((n,))
    rep.record_equality(
        "product_associative",
        compose(m, kron(m, idf)), compose(m, kron(idf, m)))
    rep.record_equality("unit_left", compose(m, kron(e, idf)), idf)
    rep.record_equality("unit_right", compose(m, kron(idf, e)), idf)
    rep.record_equality(
        "coproduct_coassociative",
        compose(kron(d, idf), d), compose(kron(idf, d), d))
    rep.record_equality("counit_left", compose(kron(u, idf), d), idf)
    rep.record_equality("counit_right", compose(kron(idf, u), d), idf)
    rep.record_equality(
        "frobenius_compatibility_left",
        compose(kron(idf, m), kron(d, idf)), compose(d, m))
    rep.record_equality(
        "frobenius_compatibility_right",
        compose(kron(m, idf), kron(idf, d)), compose(d, m))
    c = braiding(rd, f, f)
    rep.record_equality("braided_commutative", compose(m, c), m)
    rep.record_equality("braided_cocommutative", compose(c, d), d)
    rep.record_equality("twist_trivial", twist(rd, f), idf)
    ff = tensor_bimodule(f, f)
    rep.record_equality(
        "product_respects_left_action",
        compose(m, ff.left),
        compose(f.left, kron(idh, m).with_shapes((n, n, n), (n, n))))
    rep.record_equality(
        "product_respects_right_action",
        compose(m, ff.right),
        compose(f.right, kron(m, idh).with_shapes((n, n, n), (n, n))))
    rep.record_equality(
        "coproduct_respects_left_action",
        compose(ff.left, kron(idh, d).with_shapes((n, n), (n, n, n))),
        compose(d, f.left))
    rep.record_equality(
        "coproduct_respects_right_action",
        compose(ff.right, kron(d, idh).with_shapes((n, n), (n, n, n))),
        compose(d, f.right))
    rep.record_equality(
        "unit_respects_left_action",
        compose(f.left, kron(idh, e).with_shapes((n,), (n, n))),
        compose(e, h.counit))
    rep.record_equality(
        "unit_respects_right_action",
        compose(f.right, kron(e, idh).with_shapes((n,), (n, n))),
        compose(e, h.counit))
    rep.record_equality(
        "counit_respects_left_action",
        compose(u, f.left),
        compose(h.counit, kron(idh, u).with_shapes((n, n), (n,))))
    rep.record_equality(
        "counit_respects_right_action",
        compose(u, f.right),
        compose(h.counit, kron(u, idh).with_shapes((n, n), (n,))))
    rep.derived["counit_of_unit"] = compose(u, e)
    return rep


def checked_automorphism(rd, w):
    """Gate: reject any map that fails the structure-preservation checks."""
    rep = verify_ribbon_automorphism(rd, w)
    if not rep.all_pass:
        raise AutomorphismRejected(
            "automorphism rejected: " + ", ".join(rep.failures()))
    return w


def twist_module_structure(x, w, side="left"):
    """Pull one action of a bimodule back through an algebra map."""
    n = x.hopf.dim
    idx = LinMap.identity(x.space)
    if side == "left":
        left = compose(x.left, kron(w, idx).with_shapes(
            (n,) + x.space, (n,) + x.space))
        return Bimodule(x.hopf, x.space, left, x.right,
                        name=f"{x.name}^tw")
    assert side == "right"
    right = compose(x.right, kron(idx, w).with_shapes(
        x.space + (n,), x.space + (n,)))
    return Bimodule(x.hopf, x.space, x.left, right,
                    name=f"{x.name}^tw")


def twisted_frobenius_bimodule(rd, w, side="left"):
    """F with one action pulled back through a certified automorphism."""
    return twist_module_structure(
        frobenius_bimodule(rd), checked_automorphism(rd, w), side=side)
