"""Extra algebras used only by tests as discriminators and oracles.

Sweedler's four-dimensional algebra is the smallest noncommutative,
noncocommutative quasitriangular Hopf algebra; it is *not* unimodular,
so it only serves checks that need no integrals.  The general double
of a (possibly nonabelian) finite group covers the rest.
"""

from fractions import Fraction


def sweedler_bundle(alpha=Fraction(1)):
    """Basis 1, g, x, gx (indices 0..3); g*g=1, x*x=0, x*g=-g*x."""
    alpha = Fraction(alpha)
    half = "1/2"
    ah = str(alpha / 2)
    nah = str(-alpha / 2)
    # product table rows: e_i * e_j = sum s e_l
    table = {
        (0, 0): [(0, 1)], (0, 1): [(1, 1)], (0, 2): [(2, 1)],
        (0, 3): [(3, 1)],
        (1, 0): [(1, 1)], (1, 1): [(0, 1)], (1, 2): [(3, 1)],
        (1, 3): [(2, 1)],
        (2, 0): [(2, 1)], (2, 1): [(3, -1)], (2, 2): [], (2, 3): [],
        (3, 0): [(3, 1)], (3, 1): [(2, -1)], (3, 2): [], (3, 3): [],
    }
    product = []
    for (i, j), terms in table.items():
        for l, c in terms:
            product.append([i, j, l, str(c)])
    # coproduct: 1 -> 1x1; g -> gxg; x -> x(x)1 + g(x)x; gx -> gx(x)g + 1(x)gx
    coproduct = [
        [0, 0, 0, "1"],
        [1, 1, 1, "1"],
        [2, 2, 0, "1"], [2, 1, 2, "1"],
        [3, 3, 1, "1"], [3, 0, 3, "1"],
    ]
    unit = ["1", "0", "0", "0"]
    counit = ["1", "1", "0", "0"]
    # S(1)=1, S(g)=g, S(x)=-gx, S(gx)=x; S squares to conjugation by g
    antipode = [
        ["1", "0", "0", "0"],
        ["0", "1", "0", "0"],
        ["0", "0", "0", "1"],
        ["0", "0", "-1", "0"],
    ]
    r_matrix = [
        [0, 0, half], [0, 1, half], [1, 0, half], [1, 1, str(Fraction(-1, 2))],
        [2, 2, ah], [2, 3, nah], [3, 2, ah], [3, 3, ah],
    ]
    return {
        "name": "sweedler",
        "order": 1,
        "dim": 4,
        "product": product,
        "coproduct": coproduct,
        "unit": unit,
        "counit": counit,
        "antipode": antipode,
        "R": r_matrix,
    }


def double_of_group(elements, mult, inverse, unit):
    """Bundle for the Drinfeld double of a finite group algebra.

    elements: list of hashable group elements; mult(a, b), inverse(a),
    unit give the group structure.  Basis delta_g (x) h at flat index
    g_index * |G| + h_index.  R = sum_g (delta_g (x) e) (x) (1 (x) g).
    """
    order = {g: i for i, g in enumerate(elements)}
    n_grp = len(elements)
    n = n_grp * n_grp

    def idx(g, h):
        return order[g] * n_grp + order[h]

    product = []
    # (delta_g (x) h)(delta_g' (x) h') = [g' = h^-1 g h] delta_g (x) hh'
    for g in elements:
        for h in elements:
            conj = mult(mult(inverse(h), g), h)
            for h2 in elements:
                product.append([idx(g, h), idx(conj, h2),
                                idx(g, mult(h, h2)), "1"])
    coproduct = []
    for g in elements:
        for h in elements:
            for a in elements:
                b = mult(inverse(a), g)
                coproduct.append([idx(g, h), idx(a, h), idx(b, h), "1"])
    unit_vec = ["0"] * n
    for g in elements:
        unit_vec[idx(g, unit)] = "1"
    counit = ["0"] * n
    for h in elements:
        counit[idx(unit, h)] = "1"
    # S(delta_g (x) h) = delta_{h^-1 g^-1 h} (x) h^-1
    antipode = [["0"] * n for _ in range(n)]
    for g in elements:
        for h in elements:
            hi = inverse(h)
            antipode[idx(mult(mult(hi, inverse(g)), h), hi)][idx(g, h)] = "1"
    r_matrix = []
    for g in elements:
        for h in elements:
            r_matrix.append([idx(g, unit), idx(h, g), "1"])
    return {
        "name": f"double_group_{n_grp}",
        "order": 4 * n_grp,
        "dim": n,
        "product": product,
        "coproduct": coproduct,
        "unit": unit_vec,
        "counit": counit,
        "antipode": antipode,
        "R": r_matrix,
    }


def symmetric_group_3():
    """S3 as permutation tuples, for double_of_group."""
    elements = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1),
                (2, 1, 0)]

    def mult(a, b):
        return tuple(a[b[i]] for i in range(3))

    def inverse(a):
        out = [0, 0, 0]
        for i, v in enumerate(a):
            out[v] = i
        return tuple(out)

    return elements, mult, inverse, (0, 1, 2)
