"""Finite-dimensional Hopf algebras from structure constants.

Nothing is trusted: every axiom the structure maps are supposed to
satisfy is an executable check producing a report, with a witness basis
index for each failure.
"""

from __future__ import annotations

from .cyclo import CycScalar, scalar_from_json, scalar_to_json
from .diagram import MorphismContext
from .errors import FormatError, ShapeMismatch, Singular
from .linmap import LinMap, flip, invert, kron, unflatten


class AxiomReport:
    """Ordered pass/fail table with witnesses, plus derived byproducts."""

    def __init__(self, title=""):
        self.title = title
        self.checks = {}
        self.derived = {}
        self.sources = {}

    def record_equality(self, name, lhs, rhs, source=None):
        assert name not in self.checks
        if lhs.dom_dim != rhs.dom_dim or lhs.cod_dim != rhs.cod_dim:
            raise ShapeMismatch(
                f"check {name!r}: comparing {lhs!r} with {rhs!r}")
        witness = None
        for key in sorted(lhs.entries.keys() | rhs.entries.keys()):
            a = lhs.entries.get(key, CycScalar.zero())
            b = rhs.entries.get(key, CycScalar.zero())
            if a != b:
                r, c = key
                witness = (unflatten(lhs.cod, r), unflatten(lhs.dom, c),
                           str(a), str(b))
                break
        self.checks[name] = witness is None, witness
        if source is not None:
            self.sources[name] = source
        return witness is None

    def record_flag(self, name, ok, witness=None):
        assert name not in self.checks
        self.checks[name] = (bool(ok), None if ok else witness)
        return bool(ok)

    @property
    def all_pass(self):
        return all(ok for ok, _ in self.checks.values())

    def failures(self):
        return [name for name, (ok, _) in self.checks.items() if not ok]

    def lines(self):
        out = []
        for name, (ok, witness) in self.checks.items():
            line = f"{'PASS' if ok else 'FAIL'}  {name}"
            if witness is not None:
                line += f"  witness={witness}"
            out.append(line)
        return out

    def __str__(self):
        head = [self.title] if self.title else []
        return "\n".join(head + self.lines())

    def merged_into(self, other):
        for name, val in self.checks.items():
            assert name not in other.checks
            other.checks[name] = val
        other.derived.update(self.derived)
        other.sources.update(self.sources)
        return other


class HopfData:
    """Structure maps of one algebra over Q(zeta_order), dim n."""

    __slots__ = ("name", "order", "dim", "product", "unit", "coproduct",
                 "counit", "antipode")

    def __init__(self, name, order, dim, product, unit, coproduct, counit,
                 antipode):
        n = dim
        self.name = name
        self.order = order
        self.dim = n
        for label, m, dom, cod in [
                ("product", product, (n, n), (n,)),
                ("unit", unit, (), (n,)),
                ("coproduct", coproduct, (n,), (n, n)),
                ("counit", counit, (n,), ()),
                ("antipode", antipode, (n,), (n,))]:
            if m.dom != dom or m.cod != cod:
                raise ShapeMismatch(
                    f"{label} has shape {m.dom}->{m.cod}, expected "
                    f"{dom}->{cod}")
        self.product = product
        self.unit = unit
        self.coproduct = coproduct
        self.counit = counit
        self.antipode = antipode

    @property
    def shape(self):
        return (self.dim,)

    def id_map(self):
        return LinMap.identity(self.shape)


def verify_hopf(h):
    """Check all defining identities; failures become report rows."""
    n = h.dim
    idh = h.id_map()
    tau = flip(n, n)
    m, eta, dlt, eps, s = (h.product, h.unit, h.coproduct, h.counit,
                           h.antipode)
    rep = AxiomReport(f"hopf axioms: {h.name}")

    rep.record_equality("associativity",
                        m @ kron(m, idh), m @ kron(idh, m))
    rep.record_equality("unit_left", m @ kron(eta, idh),
                        idh.with_shapes((n,), (n,)))
    rep.record_equality("unit_right", m @ kron(idh, eta), idh)
    rep.record_equality("coassociativity",
                        kron(dlt, idh) @ dlt, kron(idh, dlt) @ dlt)
    rep.record_equality("counit_left", kron(eps, idh) @ dlt, idh)
    rep.record_equality("counit_right", kron(idh, eps) @ dlt, idh)
    rep.record_equality(
        "coproduct_multiplicative",
        dlt @ m,
        kron(m, m) @ kron(kron(idh, tau), idh) @ kron(dlt, dlt))
    rep.record_equality("coproduct_unit", dlt @ eta, kron(eta, eta))
    rep.record_equality("counit_multiplicative", eps @ m, kron(eps, eps))
    rep.record_equality("counit_unit", eps @ eta, LinMap.identity(()))
    eta_eps = eta @ eps
    rep.record_equality("antipode_left", m @ kron(s, idh) @ dlt, eta_eps)
    rep.record_equality("antipode_right", m @ kron(idh, s) @ dlt, eta_eps)

    # consequences; failing here while the axioms pass would be a bug
    try:
        sinv = antipode_inverse(h)
    except Singular:
        sinv = None
        rep.record_flag("antipode_invertible", False, "singular matrix")
    else:
        rep.record_flag("antipode_invertible", True)
        rep.derived["antipode_inverse"] = sinv
    ss = kron(s, s)
    rep.record_equality("antipode_antimultiplicative",
                        s @ m, m @ tau @ ss)
    rep.record_equality("antipode_anticomultiplicative",
                        dlt @ s, tau @ ss @ dlt)
    rep.derived["antipode_squared"] = s @ s
    return rep


def antipode_inverse(h):
    return invert(h.antipode)


def hopf_context(h):
    """Expression-language context with the base structure maps bound."""
    ctx = MorphismContext()
    ctx.register_object("H", h.shape)
    ctx.register("m", h.product)
    ctx.register("eta", h.unit)
    ctx.register("delta", h.coproduct)
    ctx.register("eps", h.counit)
    ctx.register("S", h.antipode)
    ctx.register("Sinv", antipode_inverse(h))
    return ctx


# ---------------------------------------------------------------------------
# bundle serialization
#
# {"name": str, "order": M, "dim": n,
#  "product":   [[i, j, l, s], ...]   e_i e_j = sum_l s e_l,
#  "coproduct": [[i, j, l, s], ...]   coproduct(e_i) has term s e_j (x) e_l,
#  "unit":    [n scalar literals],
#  "counit":  [n scalar literals],
#  "antipode": [n rows of n scalar literals],
#  optional "R":  [[i, j, s], ...]    term s e_i (x) e_j,
#  optional "ribbon": [n scalar literals]}


def _require(cond, msg):
    if not cond:
        raise FormatError(msg)


def _read_triplets4(items, n, what):
    ent = {}
    _require(isinstance(items, list), f"{what}: expected a list")
    for item in items:
        _require(isinstance(item, list) and len(item) == 4,
                 f"{what}: expected [i, j, l, scalar], got {item!r}")
        i, j, l, s = item
        _require(all(isinstance(x, int) and 0 <= x < n for x in (i, j, l)),
                 f"{what}: index out of range in {item!r}")
        key = (i, j, l)
        _require(key not in ent, f"{what}: duplicate entry for {key}")
        ent[key] = scalar_from_json(s)
    return ent


def _read_vector(items, n, what):
    _require(isinstance(items, list) and len(items) == n,
             f"{what}: expected {n} scalar literals")
    return [scalar_from_json(s) for s in items]


def hopf_from_bundle(blob):
    _require(isinstance(blob, dict), "algebra bundle must be a JSON object")
    for key in ("order", "dim", "product", "coproduct", "unit", "counit",
                "antipode"):
        _require(key in blob, f"algebra bundle is missing {key!r}")
    n = blob["dim"]
    _require(isinstance(n, int) and n >= 1, f"bad dim {n!r}")
    order = blob["order"]
    _require(isinstance(order, int) and order >= 1, f"bad order {order!r}")
    name = blob.get("name", "anonymous")

    prod = {}
    for (i, j, l), s in _read_triplets4(blob["product"], n, "product").items():
        prod[(l, i * n + j)] = s
    cop = {}
    for (i, j, l), s in _read_triplets4(blob["coproduct"], n,
                                        "coproduct").items():
        cop[(j * n + l, i)] = s
    unit = LinMap.vector((n,), _read_vector(blob["unit"], n, "unit"))
    counit = LinMap.covector((n,), _read_vector(blob["counit"], n, "counit"))
    anti = blob["antipode"]
    _require(isinstance(anti, list) and len(anti) == n,
             f"antipode: expected {n} rows")
    s_ent = {}
    for r, row in enumerate(anti):
        for c, lit in enumerate(_read_vector(row, n, f"antipode row {r}")):
            if lit:
                s_ent[(r, c)] = lit
    return HopfData(name, order, n,
                    product=LinMap((n, n), (n,), prod),
                    unit=unit,
                    coproduct=LinMap((n,), (n, n), cop),
                    counit=counit,
                    antipode=LinMap((n,), (n,), s_ent))


def read_r_vector(blob, n):
    """Optional R entry of a bundle as a vector in H (x) H, or None."""
    if "R" not in blob:
        return None
    ent = {}
    items = blob["R"]
    _require(isinstance(items, list), "R: expected a list")
    for item in items:
        _require(isinstance(item, list) and len(item) == 3,
                 f"R: expected [i, j, scalar], got {item!r}")
        i, j, s = item
        _require(all(isinstance(x, int) and 0 <= x < n for x in (i, j)),
                 f"R: index out of range in {item!r}")
        key = (i * n + j, 0)
        _require(key not in ent, f"R: duplicate entry for ({i}, {j})")
        ent[key] = scalar_from_json(s)
    return LinMap((), (n, n), ent)


def read_ribbon_vector(blob, n):
    if "ribbon" not in blob:
        return None
    return LinMap.vector((n,), _read_vector(blob["ribbon"], n, "ribbon"))


def hopf_to_bundle(h, r_vector=None, ribbon_vector=None):
    n = h.dim
    prod = []
    for (l, col), s in sorted(h.product.entries.items()):
        prod.append([col // n, col % n, l, scalar_to_json(s)])
    cop = [[c, r // n, r % n, scalar_to_json(v)]
           for (r, c), v in sorted(h.coproduct.entries.items(),
                                   key=lambda kv: (kv[0][1], kv[0][0]))]
    blob = {
        "name": h.name,
        "order": h.order,
        "dim": n,
        "product": prod,
        "coproduct": cop,
        "unit": [scalar_to_json(h.unit.entry(i, 0)) for i in range(n)],
        "counit": [scalar_to_json(h.counit.entry(0, i)) for i in range(n)],
        "antipode": [[scalar_to_json(h.antipode.entry(r, c))
                      for c in range(n)] for r in range(n)],
    }
    if r_vector is not None:
        blob["R"] = [[r // n, r % n, scalar_to_json(v)]
                     for (r, _), v in sorted(r_vector.entries.items())]
    if ribbon_vector is not None:
        blob["ribbon"] = [scalar_to_json(ribbon_vector.entry(i, 0))
                          for i in range(n)]
    return blob
