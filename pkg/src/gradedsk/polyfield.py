"""Polynomials over a FieldTower, with factorization of small polynomials.

Polynomials are ascending coefficient lists of FieldElements.  The
factorization routine is norm-based: pick a shift element beta = x + s*alpha
in the quotient algebra B = L[x]/(p), compute its minimal polynomial over Q
by linear dependence of powers, factor that over Q (sympy), and recover the
factors of p by gcds over L.  Only used on polynomials of degree <= 4, for
step-irreducibility certification and residue-algebra zero-divisor search.
"""

from __future__ import annotations

import itertools

import sympy

from .numberfield import FieldElement, FieldTower, TowerError
from .rational import QQ, QQ0, QQ1


def poly_trim(p):
    while p and p[-1].is_zero():
        p = p[:-1]
    return p


def poly_add(p, q):
    t = (p or q)[0].tower
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else t.zero()
        b = q[i] if i < len(q) else t.zero()
        out.append(a + b)
    return poly_trim(out)


def poly_scale(p, c):
    return poly_trim([a * c for a in p])


def poly_mul(p, q):
    if not p or not q:
        return []
    t = p[0].tower
    out = [t.zero() for _ in range(len(p) + len(q) - 1)]
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return poly_trim(out)


def poly_divmod(p, q):
    q = poly_trim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    t = q[0].tower
    lead_inv = q[-1].inverse()
    rem = list(p)
    quo = [t.zero()] * max(0, len(p) - len(q) + 1)
    while len(poly_trim(rem)) >= len(q):
        rem = poly_trim(rem)
        shift = len(rem) - len(q)
        c = rem[-1] * lead_inv
        quo[shift] = quo[shift] + c
        for i, b in enumerate(q):
            rem[shift + i] = rem[shift + i] - c * b
    return poly_trim(quo), poly_trim(rem)


def poly_monic(p):
    p = poly_trim(list(p))
    if not p:
        return p
    inv = p[-1].inverse()
    return [a * inv for a in p]


def poly_gcd(p, q):
    a, b = poly_trim(list(p)), poly_trim(list(q))
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def poly_diff(p):
    return poly_trim([p[i] * i for i in range(1, len(p))])


def poly_eval(p, x: FieldElement) -> FieldElement:
    t = x.tower
    acc = t.zero()
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_shift_substitute(fq, s: int, alpha: FieldElement):
    """f(x + s*alpha) as a polynomial over alpha's tower, f rational."""
    t = alpha.tower
    x_poly = [alpha * s, t.one()]  # x + s*alpha evaluated at the unknown
    acc = [t.zero()]
    for c in reversed(fq):
        acc = poly_mul(acc, x_poly)
        acc = poly_add(acc, [t.from_rational(c)])
    return acc


class _QuotientAlgebra:
    """B = L[x]/(p) for monic p over a tower L; elements are poly lists."""

    def __init__(self, tower: FieldTower, p):
        self.tower = tower
        self.p = poly_monic(p)
        self.deg = len(self.p) - 1
        self.dim = self.deg * tower.degree

    def mul(self, a, b):
        return poly_divmod(poly_mul(a, b), self.p)[1]

    def flatten(self, a):
        out = [QQ0] * self.dim
        for i, c in enumerate(a):
            for j, v in enumerate(c.coeffs):
                out[i * self.tower.degree + j] = v
        return out


def _min_poly_rational(B: _QuotientAlgebra, beta):
    """Minimal polynomial of beta over Q, or None if it has degree < dim.

    Returns the ascending monic rational coefficient list when the degree
    equals dim(B) (the only case the factorization sweep accepts).
    """
    rows = []  # incremental echelon of flattened powers, with combo tracking
    power = [B.tower.one()]
    for k in range(B.dim + 1):
        vec = B.flatten(power)
        combo = [QQ0] * (B.dim + 1)
        combo[k] = QQ1
        for piv, row, cmb in rows:
            if vec[piv] != 0:
                f = vec[piv] / row[piv]
                vec = [a - f * b for a, b in zip(vec, row)]
                combo = [a - f * b for a, b in zip(combo, cmb)]
        piv = next((i for i, v in enumerate(vec) if v != 0), None)
        if piv is None:
            if k < B.dim:
                return None
            lead = combo[k]  # dependency: sum combo[i] * beta^i = 0
            return [c / lead for c in combo[: k + 1]]
        rows.append((piv, vec, combo))
        power = B.mul(power, beta)
    return None


def _sympy_factor_rational(coeffs):
    """Factor a monic rational polynomial; return list of monic factor lists."""
    x = sympy.Symbol("x")
    expr = sum(
        sympy.Rational(int(c.numerator), int(c.denominator)) * x**i
        for i, c in enumerate(coeffs)
    )
    _, factors = sympy.Poly(expr, x, domain="QQ").factor_list()
    out = []
    for fac, mult in factors:
        cs = [QQ(int(c.p), int(c.q)) for c in fac.all_coeffs()[::-1]]
        lead = cs[-1]
        monic = [c / lead for c in cs]
        for _ in range(mult):
            out.append(monic)
    return out


def _alpha_candidates(tower: FieldTower):
    gens = [tower.gen(i) for i in range(len(tower.steps))]
    if not gens:
        yield tower.one()
        return
    for g in gens:
        yield g
    for weights in itertools.product(range(1, 4), repeat=len(gens)):
        acc = tower.zero()
        for w, g in zip(weights, gens):
            acc = acc + g * w
        yield acc


def factor_over_field(tower: FieldTower, p):
    """Full factorization of a monic polynomial of degree <= 4 over the tower.

    Returns a list of monic irreducible factors (with multiplicity).
    """
    p = poly_monic(p)
    deg = len(p) - 1
    if deg > 4:
        raise TowerError("factorization implemented only for degree <= 4")
    if deg <= 1:
        return [p] if deg == 1 else []
    g = poly_gcd(p, poly_diff(p))
    if len(g) > 1:
        rest = poly_divmod(p, g)[0]
        return factor_over_field(tower, g) + factor_over_field(tower, rest)
    B = _QuotientAlgebra(tower, p)
    for alpha, s in itertools.islice(
        itertools.product(list(_alpha_candidates(tower)), range(0, 12)), 240
    ):
        beta = [alpha * s, tower.one()]  # x + s*alpha in B
        m = _min_poly_rational(B, beta)
        if m is None:
            continue
        rational_factors = _sympy_factor_rational(m)
        if len(rational_factors) == 1:
            return [p]
        factors = []
        ok = True
        for f in rational_factors:
            shifted = poly_shift_substitute(f, s, alpha)
            gcd = poly_gcd(p, shifted)
            if len(gcd) <= 1:
                ok = False
                break
            factors.append(gcd)
        if not ok:
            continue
        prod = [tower.one()]
        for f in factors:
            prod = poly_mul(prod, f)
        if prod == p:
            return factors
    raise AssertionError("factorization sweep exhausted (no generating shift)")


def is_irreducible_over(tower: FieldTower, p) -> bool:
    return len(factor_over_field(tower, p)) == 1


def roots_in_tower(tower: FieldTower, p):
    """All roots of a monic degree <= 4 polynomial lying in the tower."""
    roots = []
    for f in factor_over_field(tower, p):
        if len(f) == 2:
            roots.append(-f[0])
    return roots
