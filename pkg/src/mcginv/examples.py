"""Shipped example algebras: Drinfeld doubles of cyclic group algebras.

The double of k[Z/n] has basis delta_g (x) h for g, h in Z/n, flat
index g*n + h.  Everything here emits plain JSON-able bundles; no
structure is assumed correct anywhere else, the verifiers re-derive and
certify all of it.
"""

from __future__ import annotations

from .errors import NotCoprime
from .linmap import LinMap


def drinfeld_double_cyclic(k):
    """Algebra bundle for the double of the cyclic group algebra on k elements.

    Scalar order is 4k: enough room for the integral normalization square
    root should a rescaled cointegral ever need one.
    """
    assert k >= 1
    n = k * k

    def idx(g, h):
        return (g % k) * k + (h % k)

    product = []
    for g in range(k):
        for h in range(k):
            for h2 in range(k):
                product.append([idx(g, h), idx(g, h2), idx(g, h + h2), "1"])
    coproduct = []
    for g in range(k):
        for h in range(k):
            for a in range(k):
                coproduct.append([idx(g, h), idx(a, h), idx(g - a, h), "1"])
    unit = ["0"] * n
    for g in range(k):
        unit[idx(g, 0)] = "1"
    counit = ["0"] * n
    for h in range(k):
        counit[idx(0, h)] = "1"
    antipode = [["0"] * n for _ in range(n)]
    for g in range(k):
        for h in range(k):
            antipode[idx(-g, -h)][idx(g, h)] = "1"
    r_matrix = []
    for g in range(k):
        for h in range(k):
            r_matrix.append([idx(g, 0), idx(h, g), "1"])
    return {
        "name": f"double_cyclic_{k}",
        "order": 4 * k,
        "dim": n,
        "product": product,
        "coproduct": coproduct,
        "unit": unit,
        "counit": counit,
        "antipode": antipode,
        "R": r_matrix,
    }


def group_algebra_cyclic(k):
    """The plain group algebra of Z/k (no R-matrix)."""
    assert k >= 1
    product = [[i, j, (i + j) % k, "1"] for i in range(k) for j in range(k)]
    coproduct = [[i, i, i, "1"] for i in range(k)]
    unit = ["1"] + ["0"] * (k - 1)
    counit = ["1"] * k
    antipode = [["0"] * k for _ in range(k)]
    for i in range(k):
        antipode[(-i) % k][i] = "1"
    return {
        "name": f"group_algebra_cyclic_{k}",
        "order": 1,
        "dim": k,
        "product": product,
        "coproduct": coproduct,
        "unit": unit,
        "counit": counit,
        "antipode": antipode,
    }


def automorphism_from_group_aut(k, a):
    """The twist of the cyclic double induced by g -> a*g on the group.

    Needs gcd(a, k) = 1, otherwise the map is not invertible and
    NotCoprime is raised.  Returns a LinMap on the double.
    """
    import math
    if math.gcd(a, k) != 1:
        raise NotCoprime(f"{a} is not a unit modulo {k}")
    n = k * k

    def idx(g, h):
        return (g % k) * k + (h % k)

    one = 1
    ent = {}
    for g in range(k):
        for h in range(k):
            ent[(idx(a * g, a * h), idx(g, h))] = one
    return LinMap((n,), (n,), ent)
