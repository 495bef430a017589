"""Two-sided modules over a certified Hopf algebra.

A bimodule is a space with commuting left and right actions of the same
algebra.  Tensor products split the acting element with the coproduct, duals
dress the transposed actions with the antipode, and when a ribbon structure
is present the category becomes braided with a twist.  Every convention
below is certified by the axiom checks in verify_bimodule and the braiding
tests, never assumed.
"""

from .cyclo import CycScalar
from .errors import ContextMismatch, PivotMissing, ShapeMismatch
from .hopf import AxiomReport, antipode_inverse
from .linmap import LinMap, compose, kron, flip, nullspace


class Bimodule:
    __slots__ = ("hopf", "space", "left", "right", "name")

    def __init__(self, hopf, space, left, right, name="X"):
        # left: H (x) X -> X, right: X (x) H -> X, both over flat bases
        n = hopf.dim
        d = 1
        for s in space:
            d *= s
        if left.dom_dim != n * d or left.cod_dim != d:
            raise ShapeMismatch(f"left action of {name} has wrong shape")
        if right.dom_dim != d * n or right.cod_dim != d:
            raise ShapeMismatch(f"right action of {name} has wrong shape")
        self.hopf = hopf
        self.space = tuple(space)
        self.left = left.with_shapes((n,) + tuple(space), tuple(space))
        self.right = right.with_shapes(tuple(space) + (n,), tuple(space))
        self.name = name

    @property
    def dim(self):
        return self.left.cod_dim

    def id_map(self):
        return LinMap.identity(self.space)

    def __repr__(self):
        return f"Bimodule({self.name}, dim={self.dim})"


def trivial_bimodule(h):
    """The ground field with both actions through the counit."""
    eps = h.counit.with_shapes((h.dim,), ())
    return Bimodule(h, (), eps, eps, name="1")


def regular_bimodule(h):
    """The algebra acting on itself by multiplication on both sides."""
    return Bimodule(h, (h.dim,), h.product, h.product, name="H")


def verify_bimodule(x):
    h = x.hopf
    n = h.dim
    idx = x.id_map()
    idh = LinMap.identity((n,))
    rep = AxiomReport(f"bimodule checks for {x.name} over {h.name}")
    rep.record_equality("left_unital",
                        compose(x.left, kron(h.unit, idx)), idx)
    rep.record_equality("right_unital",
                        compose(x.right, kron(idx, h.unit)), idx)
    rep.record_equality("left_associative",
                        compose(x.left, kron(h.product, idx)),
                        compose(x.left, kron(idh, x.left)))
    rep.record_equality("right_associative",
                        compose(x.right, kron(idx, h.product)),
                        compose(x.right, kron(x.right, idh)))
    rep.record_equality("actions_commute",
                        compose(x.left, kron(idh, x.right)),
                        compose(x.right, kron(x.left, idh)))
    return rep


def tensor_bimodule(x, y):
    """Tensor product; the acting element is split by the coproduct."""
    if x.hopf is not y.hopf:
        raise ContextMismatch("tensor factors live over different algebras")
    h = x.hopf
    n = h.dim
    sp = x.space + y.space
    idx = x.id_map()
    idy = y.id_map()
    idh = LinMap.identity((n,))
    # h (x) x (x) y -> h1 (x) x (x) h2 (x) y -> x' (x) y'
    shuffle = kron(kron(idh, flip(n, x.dim).with_shapes(
        (n,) + x.space, x.space + (n,))), idy)
    left = compose(kron(x.left, y.left),
                   compose(shuffle, kron(h.coproduct, kron(idx, idy))))
    # x (x) y (x) h -> x (x) h1 (x) y (x) h2 -> x' (x) y'
    shuffle_r = kron(kron(idx, flip(y.dim, n).with_shapes(
        y.space + (n,), (n,) + y.space)), idh)
    right = compose(kron(x.right, y.right),
                    compose(shuffle_r, kron(kron(idx, idy), h.coproduct)))
    return Bimodule(h, sp, left, right, name=f"({x.name}*{y.name})")


def dual_bimodule(x):
    """Linear dual; actions are transposed and dressed with S / S inverse."""
    h = x.hopf
    n = h.dim
    d = x.dim
    sinv = antipode_inverse(h)
    ml = compose(x.left, kron(h.antipode, x.id_map()))
    dl = {}
    for (r, c), val in ml.entries.items():
        hcol, xcol = divmod(c, d)
        dl[(xcol, hcol * d + r)] = val
    mr = compose(x.right, kron(x.id_map(), sinv))
    dr = {}
    for (r, c), val in mr.entries.items():
        xcol, hcol = divmod(c, n)
        dr[(xcol, r * n + hcol)] = val
    return Bimodule(h, (d,),
                    LinMap((n, d), (d,), dl),
                    LinMap((d, n), (d,), dr),
                    name=f"{x.name}^")


def evaluation(x):
    """Pairing X^ (x) X -> 1, a bimodule map for the dual conventions."""
    d = x.dim
    one = CycScalar.one()
    ent = {(0, j * d + j): one for j in range(d)}
    return LinMap((d, d), (), ent)


def coevaluation(x):
    """1 -> X (x) X^, the other zig-zag partner of evaluation."""
    d = x.dim
    one = CycScalar.one()
    ent = {(i * d + i, 0): one for i in range(d)}
    return LinMap((), (d, d), ent)


def action_operator(x, vec, side="left"):
    """Matrix of acting with a fixed coefficient vector on one side."""
    d = x.dim
    n = x.hopf.dim
    coeffs = {}
    for (r, _), v in vec.entries.items():
        coeffs[r] = v
    ent = {}
    src = x.left if side == "left" else x.right
    for (r, c), val in src.entries.items():
        if side == "left":
            hcol, xcol = divmod(c, d)
        else:
            xcol, hcol = divmod(c, n)
        s = coeffs.get(hcol)
        if s is None:
            continue
        key = (r, xcol)
        cur = ent.get(key)
        acc = val * s if cur is None else cur + val * s
        if acc:
            ent[key] = acc
        elif cur is not None:
            del ent[key]
    return LinMap(x.space, x.space, ent)


def braiding(rd, x, y):
    """Over-crossing X (x) Y -> Y (x) X.

    Three layers, read bottom to top: the inverse R-matrix dresses the
    left actions of the incoming pair (second leg acting on x, first leg
    on y), the factors flip, and the R-matrix dresses the right actions
    of the outgoing pair (first leg on y, second leg on x).  Among the
    dressing family this is the member that survives H-linearity on both
    sides, both hexagons, the twist law, and commutativity of the
    boundary algebra over a noncommutative base; the mirrored member is
    its two-sided inverse, braiding_inverse.
    """
    h = x.hopf
    if y.hopf is not h:
        raise ContextMismatch("braiding needs bimodules over one algebra")
    n = h.dim
    sw = flip(x.dim, y.dim).with_shapes(x.space + y.space, y.space + x.space)
    lower = None
    for (rb, _), sb in rd.Rinv.entries.items():
        b1, b2 = divmod(rb, n)
        term = kron(action_operator(x, LinMap.basis_vector((n,), b2), "left"),
                    action_operator(y, LinMap.basis_vector((n,), b1), "left"))
        term = term.scale(sb)
        lower = term if lower is None else lower + term
    upper = None
    for (ra, _), sa in rd.R.entries.items():
        a1, a2 = divmod(ra, n)
        term = kron(action_operator(y, LinMap.basis_vector((n,), a1), "right"),
                    action_operator(x, LinMap.basis_vector((n,), a2), "right"))
        term = term.scale(sa)
        upper = term if upper is None else upper + term
    return compose(upper, compose(sw, lower))


def braiding_inverse(rd, x, y):
    """Inverse crossing Y (x) X -> X (x) Y, undoing braiding(rd, x, y).

    Mirror of the braiding: the R-matrix dresses the incoming left
    actions (first leg on y, second on x), the factors flip back, and
    the inverse R-matrix dresses the outgoing right actions (second leg
    on x, first on y).  Certified as a two-sided inverse.
    """
    h = x.hopf
    if y.hopf is not h:
        raise ContextMismatch("braiding needs bimodules over one algebra")
    n = h.dim
    sw = flip(y.dim, x.dim).with_shapes(y.space + x.space, x.space + y.space)
    lower = None
    for (ra, _), sa in rd.R.entries.items():
        a1, a2 = divmod(ra, n)
        term = kron(action_operator(y, LinMap.basis_vector((n,), a1), "left"),
                    action_operator(x, LinMap.basis_vector((n,), a2), "left"))
        term = term.scale(sa)
        lower = term if lower is None else lower + term
    upper = None
    for (rb, _), sb in rd.Rinv.entries.items():
        b1, b2 = divmod(rb, n)
        term = kron(action_operator(x, LinMap.basis_vector((n,), b2), "right"),
                    action_operator(y, LinMap.basis_vector((n,), b1), "right"))
        term = term.scale(sb)
        upper = term if upper is None else upper + term
    return compose(upper, compose(sw, lower))


def twist(rd, x):
    """Ribbon twist on a bimodule: v acts on the left, its inverse on the right."""
    lv = action_operator(x, rd.v, "left")
    rv = action_operator(x, rd.vinv, "right")
    return compose(lv, rv)


def pivot_pairings(rd, x):
    """The second duality pair, dressed with the balancing element.

    Returns (ev_t: X (x) X^ -> 1, coev_t: 1 -> X^ (x) X) so that the four
    zig-zag identities hold together with evaluation/coevaluation.
    """
    if rd.t is None:
        raise PivotMissing("no balancing element available")
    d = x.dim
    tl = action_operator(x, rd.t, "left")
    tr = action_operator(x, rd.tinv, "right")
    piv = compose(tl, tr)
    one = CycScalar.one()
    ev = LinMap((d, d), (), {(0, j * d + j): one for j in range(d)})
    coev = LinMap((), (d, d), {(i * d + i, 0): one for i in range(d)})
    idd = LinMap.identity((d,))
    ev_t = compose(ev, kron(piv, idd).with_shapes((d, d), (d, d)))
    piv_inv = compose(action_operator(x, rd.tinv, "left"),
                      action_operator(x, rd.t, "right"))
    coev_t = compose(kron(idd, piv_inv).with_shapes((d, d), (d, d)), coev)
    return ev_t.with_shapes(x.space + (d,), ()), \
        coev_t.with_shapes((), (d,) + x.space)


def hom_space(x, y):
    """Basis of the simultaneous intertwiners for both actions."""
    if x.hopf is not y.hopf:
        raise ContextMismatch("hom needs bimodules over one algebra")
    h = x.hopf
    n = h.dim
    dx, dy = x.dim, y.dim
    rows = {}
    nrows = 0
    for i in range(n):
        basis = LinMap.basis_vector((n,), i)
        for side in ("left", "right"):
            mx = action_operator(x, basis, side)
            my = action_operator(y, basis, side)
            # condition My f - f Mx = 0, unknowns f[(r, c)] at r*dx + c
            block = {}
            for (r, c), val in my.entries.items():
                for cc in range(dx):
                    key = (nrows + r * dx + cc, c * dx + cc)
                    cur = block.get(key)
                    block[key] = val if cur is None else cur + val
            for (r, c), val in mx.entries.items():
                for rr in range(dy):
                    key = (nrows + rr * dx + c, rr * dx + r)
                    cur = block.get(key)
                    acc = -val if cur is None else cur - val
                    block[key] = acc
            for key, val in block.items():
                if val:
                    cur = rows.get(key)
                    rows[key] = val if cur is None else cur + val
            nrows += dy * dx
    big = LinMap((dy * dx,), (nrows,),
                 {k: v for k, v in rows.items() if v})
    out = []
    for vec in nullspace(big):
        ent = {}
        for (r, _), val in vec.entries.items():
            rr, cc = divmod(r, dx)
            ent[(rr, cc)] = val
        out.append(LinMap(x.space, y.space, ent))
    return out
