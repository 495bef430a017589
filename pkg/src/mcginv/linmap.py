"""Sparse exact linear maps between tensor products of finite spaces.

A space is a shape tuple of positive leg dimensions; the empty tuple is
the ground field.  Flat indexing makes the first leg most significant.
LinMap stores only nonzero entries, keyed (row, col), with CycScalar
values.  FactoredOp chains maps that each touch a contiguous block of
legs, so large tensor powers are never materialized.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclo import CycScalar, scalar_from_json, scalar_to_json
from .errors import FormatError, ShapeMismatch, Singular


def shape_dim(shape):
    return math.prod(shape)


def unflatten(shape, idx):
    """Multi-index for a flat index; first leg is most significant."""
    out = []
    for d in reversed(shape):
        out.append(idx % d)
        idx //= d
    assert idx == 0
    return tuple(reversed(out))


def flatten(shape, multi):
    idx = 0
    for d, m in zip(shape, multi):
        assert 0 <= m < d
        idx = idx * d + m
    return idx


def _coerce_value(v):
    if isinstance(v, CycScalar):
        return v
    return CycScalar.from_rational(v)


class LinMap:
    """Exact linear map dom -> cod, sparse over the flat tensor bases."""

    __slots__ = ("dom", "cod", "entries", "_adj")

    def __init__(self, dom, cod, entries=None):
        self.dom = tuple(int(d) for d in dom)
        self.cod = tuple(int(d) for d in cod)
        assert all(d >= 1 for d in self.dom + self.cod)
        nd, nc = shape_dim(self.dom), shape_dim(self.cod)
        clean = {}
        for (r, c), v in (entries or {}).items():
            assert 0 <= r < nc and 0 <= c < nd, (r, c, self.cod, self.dom)
            v = _coerce_value(v)
            if v:
                clean[(r, c)] = v
        self.entries = clean
        self._adj = None

    # shape info -------------------------------------------------------

    @property
    def dom_dim(self):
        return shape_dim(self.dom)

    @property
    def cod_dim(self):
        return shape_dim(self.cod)

    @property
    def nnz(self):
        return len(self.entries)

    def density(self):
        cells = self.dom_dim * self.cod_dim
        return Fraction(self.nnz, cells) if cells else Fraction(0)

    def entry(self, r, c):
        return self.entries.get((r, c), CycScalar.zero())

    def is_zero(self):
        return not self.entries

    def with_shapes(self, dom, cod):
        """Same matrix, re-read with different leg bookkeeping."""
        if shape_dim(dom) != self.dom_dim or shape_dim(cod) != self.cod_dim:
            raise ShapeMismatch(
                f"cannot reshape {self.dom}->{self.cod} as {dom}->{cod}")
        return LinMap(dom, cod, self.entries)

    # constructors -----------------------------------------------------

    @staticmethod
    def zero(dom, cod):
        return LinMap(dom, cod, {})

    @staticmethod
    def identity(shape):
        one = CycScalar.one()
        return LinMap(shape, shape,
                      {(i, i): one for i in range(shape_dim(shape))})

    @staticmethod
    def from_function(dom, cod, fn):
        """Entries fn(row, col) over the full index range (small maps only)."""
        ent = {}
        for r in range(shape_dim(cod)):
            for c in range(shape_dim(dom)):
                v = fn(r, c)
                if v:
                    ent[(r, c)] = v
        return LinMap(dom, cod, ent)

    @staticmethod
    def vector(shape, coeffs):
        """Column vector in the space of the given shape (dom = ground field)."""
        if isinstance(coeffs, dict):
            ent = {(i, 0): v for i, v in coeffs.items()}
        else:
            ent = {(i, 0): v for i, v in enumerate(coeffs)}
        return LinMap((), shape, ent)

    @staticmethod
    def covector(shape, coeffs):
        if isinstance(coeffs, dict):
            ent = {(0, i): v for i, v in coeffs.items()}
        else:
            ent = {(0, i): v for i, v in enumerate(coeffs)}
        return LinMap(shape, (), ent)

    @staticmethod
    def basis_vector(shape, index):
        return LinMap((), shape, {(index, 0): CycScalar.one()})

    # adjacency caches -------------------------------------------------

    def by_col(self):
        if self._adj is None:
            by_col, by_row = {}, {}
            for (r, c), v in self.entries.items():
                by_col.setdefault(c, []).append((r, v))
                by_row.setdefault(r, []).append((c, v))
            self._adj = (by_col, by_row)
        return self._adj[0]

    def by_row(self):
        self.by_col()
        return self._adj[1]

    # algebra ----------------------------------------------------------

    def compose(self, other):
        """self after other (matrix product self . other)."""
        if not isinstance(other, LinMap):
            raise ShapeMismatch("compose needs a LinMap")
        if self.dom_dim != other.cod_dim:
            raise ShapeMismatch(
                f"compose: {self.dom} (dim {self.dom_dim}) does not match "
                f"{other.cod} (dim {other.cod_dim})")
        acc = {}
        mine = self.by_col()
        for (b, a), v in other.entries.items():
            hits = mine.get(b)
            if not hits:
                continue
            for r, fv in hits:
                key = (r, a)
                cur = acc.get(key)
                acc[key] = fv * v if cur is None else cur + fv * v
        return LinMap(other.dom, self.cod, acc)

    __matmul__ = compose

    def tensor(self, other):
        dd2, cd2 = other.dom_dim, other.cod_dim
        acc = {}
        for (r1, c1), v1 in self.entries.items():
            base_r, base_c = r1 * cd2, c1 * dd2
            for (r2, c2), v2 in other.entries.items():
                acc[(base_r + r2, base_c + c2)] = v1 * v2
        return LinMap(self.dom + other.dom, self.cod + other.cod, acc)

    def __add__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        if self.dom_dim != other.dom_dim or self.cod_dim != other.cod_dim:
            raise ShapeMismatch("add: shapes differ")
        acc = dict(self.entries)
        for k, v in other.entries.items():
            cur = acc.get(k)
            acc[k] = v if cur is None else cur + v
        return LinMap(self.dom, self.cod, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LinMap(self.dom, self.cod,
                      {k: -v for k, v in self.entries.items()})

    def scale(self, s):
        s = _coerce_value(s)
        if not s:
            return LinMap.zero(self.dom, self.cod)
        return LinMap(self.dom, self.cod,
                      {k: v * s for k, v in self.entries.items()})

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def transpose(self):
        return LinMap(self.cod, self.dom,
                      {(c, r): v for (r, c), v in self.entries.items()})

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        if self.dom_dim != other.dom_dim or self.cod_dim != other.cod_dim:
            return False
        for k in self.entries.keys() | other.entries.keys():
            a, b = self.entries.get(k), other.entries.get(k)
            if a is None:
                if b:
                    return False
            elif b is None:
                if a:
                    return False
            elif a != b:
                return False
        return True

    __hash__ = None

    def __repr__(self):
        return (f"LinMap({self.dom}->{self.cod}, nnz={self.nnz})")

    # serialization ----------------------------------------------------

    def to_json(self):
        blob = {"dom": list(self.dom), "cod": list(self.cod)}
        cells = self.dom_dim * self.cod_dim
        if cells and 4 * self.nnz > cells:
            rows = []
            for r in range(self.cod_dim):
                rows.append([scalar_to_json(self.entry(r, c))
                             for c in range(self.dom_dim)])
            blob["dense"] = rows
        else:
            blob["entries"] = [[r, c, scalar_to_json(v)]
                               for (r, c), v in sorted(self.entries.items())]
        return blob

    @staticmethod
    def from_json(blob):
        if not isinstance(blob, dict) or "dom" not in blob or "cod" not in blob:
            raise FormatError("matrix object needs 'dom' and 'cod'")
        dom, cod = tuple(blob["dom"]), tuple(blob["cod"])
        ent = {}
        if "dense" in blob:
            rows = blob["dense"]
            if len(rows) != shape_dim(cod):
                raise FormatError("dense matrix has wrong row count")
            for r, row in enumerate(rows):
                if len(row) != shape_dim(dom):
                    raise FormatError("dense matrix has wrong column count")
                for c, lit in enumerate(row):
                    v = scalar_from_json(lit)
                    if v:
                        ent[(r, c)] = v
        elif "entries" in blob:
            for item in blob["entries"]:
                if len(item) != 3:
                    raise FormatError(f"bad triplet {item!r}")
                r, c, lit = item
                ent[(int(r), int(c))] = scalar_from_json(lit)
        else:
            raise FormatError("matrix object needs 'entries' or 'dense'")
        try:
            return LinMap(dom, cod, ent)
        except AssertionError as exc:
            raise FormatError(f"matrix entry out of range: {exc}") from exc


def compose(f, g):
    return f.compose(g)


def kron(f, g):
    return f.tensor(g)


def kron_all(maps):
    out = None
    for m in maps:
        out = m if out is None else out.tensor(m)
    return LinMap.identity(()) if out is None else out


def flip(dim_a, dim_b):
    """The swap A (x) B -> B (x) A on standard bases."""
    one = CycScalar.one()
    ent = {}
    for a in range(dim_a):
        for b in range(dim_b):
            ent[(b * dim_a + a, a * dim_b + b)] = one
    return LinMap((dim_a, dim_b), (dim_b, dim_a), ent)


# ---------------------------------------------------------------------------
# exact elimination.  Rows are dicts col -> CycScalar; forward pass is
# one-step fraction-free (each 2x2 determinant divided by the previous
# pivot), pivot choice is always the first nonzero, scanning columns
# left to right.  Division is exact in the field, so every intermediate
# value is an honest field element.


def _rows_of(f):
    rows = [dict() for _ in range(f.cod_dim)]
    for (r, c), v in f.entries.items():
        rows[r][c] = v
    return rows


def _forward_eliminate(rows, ncols):
    pivots = []
    prev = None
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i].get(c):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        top = rows[r]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            if not row:
                continue
            fic = row.get(c)
            new = {}
            for j, a in row.items():
                if j == c:
                    continue
                t = piv * a
                if fic:
                    s = top.get(j)
                    if s:
                        t = t - fic * s
                if prev is not None:
                    t = t / prev
                if t:
                    new[j] = t
            if fic:
                for j, s in top.items():
                    if j == c or j in row:
                        continue
                    t = -(fic * s)
                    if prev is not None:
                        t = t / prev
                    if t:
                        new[j] = t
            rows[i] = new
        pivots.append((r, c))
        prev = piv
        r += 1
        if r == len(rows):
            break
    return pivots


def _back_substitute(rows, pivots):
    # normalize pivots to 1 and clear entries above them (reduced echelon)
    for k in range(len(pivots) - 1, -1, -1):
        r, c = pivots[k]
        inv = rows[r][c].inverse()
        rows[r] = {j: v * inv for j, v in rows[r].items()}
        top = rows[r]
        for r2, _ in pivots[:k]:
            fac = rows[r2].get(c)
            if not fac:
                continue
            row = dict(rows[r2])
            for j, v in top.items():
                t = row.get(j)
                t = -fac * v if t is None else t - fac * v
                if t:
                    row[j] = t
                elif j in row:
                    del row[j]
            rows[r2] = row


def rank(f):
    return len(_forward_eliminate(_rows_of(f), f.dom_dim))


def nullspace(f):
    """Deterministic exact kernel basis (reduced echelon, pivots 1)."""
    rows = _rows_of(f)
    pivots = _forward_eliminate(rows, f.dom_dim)
    _back_substitute(rows, pivots)
    pivot_cols = {c: r for r, c in pivots}
    basis = []
    for j in range(f.dom_dim):
        if j in pivot_cols:
            continue
        vec = {j: CycScalar.one()}
        for r, c in pivots:
            v = rows[r].get(j)
            if v:
                vec[c] = -v
        basis.append(LinMap.vector(f.dom, vec))
    return basis


def invert(f):
    n = f.dom_dim
    if f.cod_dim != n:
        raise ShapeMismatch(f"invert needs a square map, got {f!r}")
    rows = _rows_of(f)
    one = CycScalar.one()
    for i in range(n):
        rows[i][n + i] = one
    pivots = _forward_eliminate(rows, n)
    if len(pivots) < n:
        raise Singular(f"map of rank {len(pivots)} < {n} has no inverse")
    _back_substitute(rows, pivots)
    ent = {}
    for (r, c) in pivots:
        for j, v in rows[r].items():
            if j >= n:
                ent[(c, j - n)] = v
    return LinMap(f.cod, f.dom, ent)


def solve_unique(f, b):
    """The unique x with f(x) = b; Singular if none or many."""
    if b.cod_dim != f.cod_dim:
        raise ShapeMismatch("solve: right-hand side lives in the wrong space")
    n = f.dom_dim
    rows = _rows_of(f)
    for (r, _), v in b.entries.items():
        rows[r][n] = v
    pivots = _forward_eliminate(rows, n)
    if len(pivots) < n:
        raise Singular("system is underdetermined")
    _back_substitute(rows, pivots)
    for i in range(len(pivots), len(rows)):
        if rows[i]:
            raise Singular("system is inconsistent")
    vec = {}
    for r, c in pivots:
        v = rows[r].get(n)
        if v:
            vec[c] = v
    return LinMap.vector(f.dom, vec)


# ---------------------------------------------------------------------------
# staged pipelines


class FactoredOp:
    """Ordered stages, each a LinMap on a contiguous leg block.

    Stage (map, pos) rewrites legs [pos, pos + len(map.dom)) of the
    current shape into map.cod.  Evaluation never builds the full
    Kronecker product.
    """

    __slots__ = ("dom_shape", "stages", "shapes")

    def __init__(self, dom_shape, stages):
        shapes = [tuple(dom_shape)]
        clean = []
        for smap, pos in stages:
            cur = shapes[-1]
            k = len(smap.dom)
            if pos < 0 or pos + k > len(cur) or smap.dom != cur[pos:pos + k]:
                raise ShapeMismatch(
                    f"stage {smap!r} at leg {pos} does not fit shape {cur}")
            clean.append((smap, pos))
            shapes.append(cur[:pos] + smap.cod + cur[pos + k:])
        self.dom_shape = tuple(dom_shape)
        self.stages = clean
        self.shapes = shapes

    @property
    def cod_shape(self):
        return self.shapes[-1]

    def then(self, smap, pos):
        return FactoredOp(self.dom_shape, self.stages + [(smap, pos)])

    # planning ---------------------------------------------------------

    def _cost(self, i):
        smap, pos = self.stages[i]
        cur = self.shapes[i]
        bypass = shape_dim(cur[:pos]) * shape_dim(cur[pos + len(smap.dom):])
        return smap.nnz * bypass

    def plan(self):
        """Execution order: cheapest-first among commuting neighbors."""
        def commutes(i, j):
            mi, pi = self.stages[i]
            mj, pj = self.stages[j]
            if len(mi.dom) != len(mi.cod) or len(mj.dom) != len(mj.cod):
                return False
            ai, bi = pi, pi + len(mi.dom)
            aj, bj = pj, pj + len(mj.dom)
            return bi <= aj or bj <= ai

        remaining = list(range(len(self.stages)))
        order = []
        while remaining:
            front = []
            for k, idx in enumerate(remaining):
                if all(commutes(j, idx) for j in remaining[:k]):
                    front.append(idx)
            best = min(front, key=lambda i: (self._cost(i), i))
            order.append(best)
            remaining.remove(best)
        return order

    # evaluation -------------------------------------------------------

    def apply(self, x, order=None):
        """self composed after x (x maps into dom_shape)."""
        if x.cod_dim != shape_dim(self.dom_shape):
            raise ShapeMismatch(
                f"operand lands in dim {x.cod_dim}, pipeline starts at "
                f"{self.dom_shape}")
        if order is None:
            order = self.plan()
        assert sorted(order) == list(range(len(self.stages)))
        entries = x.entries
        cur = tuple(self.dom_shape)
        done = [False] * len(self.stages)
        for idx in order:
            smap, pos = self.stages[idx]
            k = len(smap.dom)
            assert smap.dom == cur[pos:pos + k]
            right = shape_dim(cur[pos + k:])
            entries = _push_rows(entries, smap, smap.dom_dim,
                                 smap.cod_dim, right)
            cur = cur[:pos] + smap.cod + cur[pos + k:]
            done[idx] = True
        assert all(done) and shape_dim(cur) == shape_dim(self.cod_shape)
        return LinMap(x.dom, self.cod_shape, entries)

    def precompose_into(self, y, order=None):
        """y composed after self (y maps out of cod_shape)."""
        if y.dom_dim != shape_dim(self.cod_shape):
            raise ShapeMismatch(
                f"operand consumes dim {y.dom_dim}, pipeline ends at "
                f"{self.cod_shape}")
        if order is None:
            order = self.plan()
        entries = y.entries
        for idx in reversed(order):
            smap, pos = self.stages[idx]
            # shape seen by this stage on its output side
            cur = self._shape_after(idx, order)
            k = len(smap.cod)
            assert smap.cod == cur[pos:pos + k]
            right = shape_dim(cur[pos + k:])
            entries = _push_cols(entries, smap, smap.dom_dim,
                                 smap.cod_dim, right)
        return LinMap(self.dom_shape, y.cod, entries)

    def _shape_after(self, idx, order):
        # shape once every stage scheduled before idx (in `order`) has run,
        # including idx itself
        cur = list(self.dom_shape)
        for j in order:
            smap, pos = self.stages[j]
            cur[pos:pos + len(smap.dom)] = list(smap.cod)
            if j == idx:
                return tuple(cur)
        raise AssertionError("stage not in plan")

    def materialize(self):
        return self.apply(LinMap.identity(self.dom_shape),
                          order=list(range(len(self.stages))))


def _push_rows(entries, smap, mid_in, mid_out, right):
    # row index (l*mid_in + m)*right + r  ->  rows of smap applied at m
    by_col = smap.by_col()
    acc = {}
    for (ridx, c), val in entries.items():
        r_ = ridx % right
        lm = ridx // right
        m = lm % mid_in
        l = lm // mid_in
        hits = by_col.get(m)
        if not hits:
            continue
        base = l * mid_out
        for row, sv in hits:
            key = ((base + row) * right + r_, c)
            cur = acc.get(key)
            acc[key] = sv * val if cur is None else cur + sv * val
    return {k: v for k, v in acc.items() if v}


def _push_cols(entries, smap, mid_in, mid_out, right):
    # column index over the stage's output shape; pull back along smap
    by_row = smap.by_row()
    acc = {}
    for (r, cidx), val in entries.items():
        c_ = cidx % right
        lm = cidx // right
        m = lm % mid_out
        l = lm // mid_out
        hits = by_row.get(m)
        if not hits:
            continue
        base = l * mid_in
        for col, sv in hits:
            key = (r, (base + col) * right + c_)
            cur = acc.get(key)
            acc[key] = val * sv if cur is None else cur + val * sv
    return {k: v for k, v in acc.items() if v}


def plan_and_apply(op, x, order=None):
    return op.apply(x, order=order)
