"""Abelian crossed products and their graded versions.

A presentation consists of a tower M with a distinguished base prefix K,
commuting automorphism generators with given orders, the commutator units
u[i][j] (degree 0) and the generator powers b[i].  In the graded case each
coefficient is a homogeneous element of the split inertial extension of a
Laurent graded field: a residue coefficient in M together with an integer
monomial degree; the monomial degrees of the generator lifts then grade
the whole algebra.

Multiplication is driven by a normal-form rewriting engine that moves
generator letters into sorted block order, picking up u- and b-factors and
their conjugates exactly; the resulting structure factor on basis
monomials is cached per presentation.
"""

from __future__ import annotations

import itertools

from .gradegroup import (
    GradeSubgroup,
    grade_vector,
    independence_check,
    quotient,
)
from .numberfield import (
    FieldAutomorphism,
    FieldElement,
    FieldTower,
    TowerError,
    relative_norm,
)
from .rational import QQ, qq


class PresentationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# homogeneous coefficients


def deg_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def deg_scale(a, n):
    return tuple(x * n for x in a)


def deg_zero(rank):
    return tuple(QQ(0) for _ in range(rank))


def deg_is_integral(a) -> bool:
    return all(int(x.denominator) == 1 for x in a)


class Homog:
    """A homogeneous coefficient: residue element times a split monomial."""

    __slots__ = ("coef", "deg")

    def __init__(self, coef: FieldElement, deg=()):
        self.coef = coef
        self.deg = tuple(qq(d) for d in deg)

    def is_zero(self) -> bool:
        return self.coef.is_zero()

    def is_one(self) -> bool:
        return self.coef.is_one() and all(d == 0 for d in self.deg)

    def __mul__(self, other: "Homog") -> "Homog":
        return Homog(self.coef * other.coef, deg_add(self.deg, other.deg))

    def __truediv__(self, other: "Homog") -> "Homog":
        return Homog(
            self.coef / other.coef,
            tuple(a - b for a, b in zip(self.deg, other.deg)),
        )

    def inverse(self) -> "Homog":
        return Homog(self.coef.inverse(), tuple(-d for d in self.deg))

    def __neg__(self) -> "Homog":
        return Homog(-self.coef, self.deg)

    def __eq__(self, other):
        return (
            isinstance(other, Homog)
            and self.coef == other.coef
            and self.deg == other.deg
        )

    def __hash__(self):
        return hash((self.coef, self.deg))

    def __repr__(self):
        if self.deg:
            return "<%r @ %s>" % (self.coef, tuple(str(d) for d in self.deg))
        return repr(self.coef)


# ---------------------------------------------------------------------------
# presentation data


class ValidationIssue:
    def __init__(self, relation: str, where: str, detail: str = ""):
        self.relation = relation
        self.where = where
        self.detail = detail

    def __repr__(self):
        return "[%s] at %s %s" % (self.relation, self.where, self.detail)


class ValidationReport:
    def __init__(self, issues):
        self.issues = list(issues)

    @property
    def ok(self) -> bool:
        return not self.issues

    def __repr__(self):
        if self.ok:
            return "<validation ok>"
        return "<validation failed: %s>" % "; ".join(map(repr, self.issues))


class CrossedProductData:
    """Presentation (M/K, generators, u, b[, monomial degrees])."""

    def __init__(self, tower, base_level, gens, orders, u, b, rank=0, laurent_names=None):
        self.tower = tower
        self.base_level = base_level
        self.gens = tuple(gens)
        self.orders = tuple(int(r) for r in orders)
        self.rank = rank
        self.laurent_names = list(laurent_names or ("x", "y", "z", "w")[:rank])
        self.u = [[self._coerce(v) for v in row] for row in u]
        self.b = [self._coerce(v) for v in b]
        k = len(self.gens)
        if len(self.orders) != k or len(self.b) != k or len(self.u) != k:
            raise PresentationError("generator/order/u/b size mismatch")
        self.k = k
        self.index_set = list(itertools.product(*[range(r) for r in self.orders]))
        self._sigma_cache: dict[tuple, FieldAutomorphism] = {}
        self._f_cache: dict[tuple, Homog] = {}

    def _coerce(self, v) -> Homog:
        if isinstance(v, Homog):
            if len(v.deg) != self.rank:
                raise PresentationError("coefficient degree rank mismatch")
            return v
        if isinstance(v, FieldElement):
            return Homog(v, deg_zero(self.rank))
        return Homog(self.tower.from_rational(v), deg_zero(self.rank))

    @property
    def graded(self) -> bool:
        return self.rank > 0

    def one_coef(self) -> Homog:
        return Homog(self.tower.one(), deg_zero(self.rank))

    def degree(self) -> int:
        n = 1
        for r in self.orders:
            n *= r
        return n

    def sigma(self, idx) -> FieldAutomorphism:
        idx = tuple(i % r for i, r in zip(idx, self.orders))
        hit = self._sigma_cache.get(idx)
        if hit is None:
            acc = FieldAutomorphism.identity(self.tower)
            for g, e in zip(self.gens, idx):
                for _ in range(e):
                    acc = g.after(acc)
            self._sigma_cache[idx] = acc
            hit = acc
        return hit

    def sigma_inverse_index(self, idx):
        return tuple((-i) % r for i, r in zip(idx, self.orders))

    def apply_sigma(self, idx, h: Homog) -> Homog:
        return Homog(self.sigma(idx).apply(h.coef), h.deg)

    def subgroup_norm(self, i: int, h: Homog) -> Homog:
        """Norm along the cyclic group of generator i."""
        r = self.orders[i]
        out = self.one_coef()
        for t in range(r):
            idx = tuple(t if j == i else 0 for j in range(self.k))
            out = out * self.apply_sigma(idx, h)
        return out

    # -- normal form engine ------------------------------------------------

    def _append_letter(self, exps, letter):
        """Multiply the normal word z^exps on the right by one z_letter.

        Returns (coefficient-factor, new exponents).
        """
        factor = self.one_coef()
        # crossing factors from blocks with index above `letter`
        for t in range(self.k - 1, letter, -1):
            ct = exps[t]
            if ct == 0:
                continue
            block = self.one_coef()
            for j in range(ct):
                idx = tuple(j if s == t else 0 for s in range(self.k))
                block = block * self.apply_sigma(idx, self.u[t][letter])
            prefix = tuple(
                exps[s] if letter < s < t else 0 for s in range(self.k)
            )
            factor = factor * self.apply_sigma(prefix, block)
        # conjugate through the unchanged left part (blocks 1..letter)
        left = tuple(exps[s] if s <= letter else 0 for s in range(self.k))
        factor = self.apply_sigma(left, factor)
        new = list(exps)
        new[letter] += 1
        if new[letter] == self.orders[letter]:
            new[letter] = 0
            low = tuple(exps[s] if s < letter else 0 for s in range(self.k))
            factor = factor * self.apply_sigma(low, self.b[letter])
        return factor, new

    def structure_factor(self, i, j) -> Homog:
        """f(i, j) with z^i * z^j = f(i, j) * z^(i mod+ j)."""
        key = (tuple(i), tuple(j))
        hit = self._f_cache.get(key)
        if hit is None:
            factor = self.one_coef()
            exps = list(key[0])
            for letter in range(self.k):
                for _ in range(key[1][letter]):
                    step, exps = self._append_letter(exps, letter)
                    factor = factor * step
            self._f_cache[key] = factor
            hit = factor
        return hit

    def reversed_monomial_factor(self, i) -> Homog:
        """a with z_k^(i_k) ... z_1^(i_1) = a * z^i (letters in reverse order)."""
        factor = self.one_coef()
        exps = [0] * self.k
        for letter in range(self.k - 1, -1, -1):
            for _ in range(i[letter]):
                step, exps = self._append_letter(exps, letter)
                factor = factor * step
        if tuple(exps) != tuple(i):
            raise AssertionError("reversed word normalized to a different index")
        return factor

    def index_add(self, i, j):
        return tuple((a + b) % r for a, b, r in zip(i, j, self.orders))

    def index_neg(self, i):
        return tuple((-a) % r for a, r in zip(i, self.orders))

    # -- grading -------------------------------------------------------------

    def monomial_degree(self, i):
        """deg(z^i) = sum_j (i_j / r_j) * deg(b_j)."""
        out = deg_zero(self.rank)
        for j in range(self.k):
            if i[j]:
                out = deg_add(out, deg_scale(self.b[j].deg, QQ(i[j], self.orders[j])))
        return out

    def slot_degrees(self):
        return [deg_scale(self.b[j].deg, QQ(1, self.orders[j])) for j in range(self.k)]

    def grade_group_total(self) -> GradeSubgroup:
        base = GradeSubgroup.standard_lattice(self.rank)
        return base.join(self.slot_degrees())

    def homogeneous_conjugation(self, gamma) -> FieldAutomorphism:
        """Conjugation action on the residue field of any unit of degree gamma."""
        gamma = grade_vector(gamma)
        base = GradeSubgroup.standard_lattice(self.rank)
        for i in self.index_set:
            diff = tuple(a - b for a, b in zip(gamma, self.monomial_degree(i)))
            if base.contains(diff):
                return self.sigma(i)
        raise PresentationError(
            "no homogeneous unit of degree %r in the presentation"
            % (tuple(str(g) for g in gamma),)
        )

    def fundamental_equality_data(self):
        base = GradeSubgroup.standard_lattice(self.rank)
        resdim = self.tower.degree // self.tower.level_degree(self.base_level)
        total = len(self.index_set) * resdim
        res0 = (
            sum(1 for i in self.index_set if base.contains(self.monomial_degree(i)))
            * resdim
        )
        from .gradedfield import GradedExtensionView

        return GradedExtensionView(total, res0, self.grade_group_total(), base)

    # -- presentation surgery ---------------------------------------------

    def replace(self, u=None, b=None) -> "CrossedProductData":
        return CrossedProductData(
            self.tower,
            self.base_level,
            self.gens,
            self.orders,
            u if u is not None else self.u,
            b if b is not None else self.b,
            self.rank,
            self.laurent_names,
        )

    def describe(self) -> str:
        kind = "graded " if self.graded else ""
        return "%scrossed product of degree %d over level-%d base of %s" % (
            kind,
            self.degree(),
            self.base_level,
            self.tower.describe(),
        )


# ---------------------------------------------------------------------------
# validation

REL_GROUP_ORDER = "generator-order"
REL_GROUP_COMMUTE = "generator-commutation"
REL_GROUP_SIZE = "generator-group-size"
REL_U_DIAGONAL = "commutator-diagonal"
REL_U_INVERSE = "commutator-inverse-pair"
REL_U_TRIPLE = "commutator-triple-cocycle"
REL_U_NORM = "commutator-norm-power-compat"
REL_U_DEGREE = "commutator-degree-zero"
REL_B_DEGREE = "power-degree-integral"
REL_SEMI_ORDER = "ramification-order"
REL_SEMI_INDEP = "ramification-independence"
REL_UNITARY_U = "involution-commutator-norm"
REL_UNITARY_B = "involution-power-fixed"


def validate(data: CrossedProductData, claim_semiramified: bool = False) -> ValidationReport:
    issues = []
    k = data.k
    for i, (g, r) in enumerate(zip(data.gens, data.orders)):
        if not (g ** r).is_identity():
            issues.append(ValidationIssue(REL_GROUP_ORDER, "generator %d" % i))
        for t in range(1, r):
            if (g ** t).is_identity():
                issues.append(
                    ValidationIssue(REL_GROUP_ORDER, "generator %d" % i, "order < %d" % r)
                )
                break
    for i in range(k):
        for j in range(i + 1, k):
            if data.gens[i].after(data.gens[j]) != data.gens[j].after(data.gens[i]):
                issues.append(ValidationIssue(REL_GROUP_COMMUTE, "(%d,%d)" % (i, j)))
    if not issues:
        mats = {data.sigma(i)._mat_key for i in data.index_set}
        if len(mats) != data.degree():
            issues.append(ValidationIssue(REL_GROUP_SIZE, "whole group"))
    one = data.one_coef()
    for i in range(k):
        if data.u[i][i] != one:
            issues.append(ValidationIssue(REL_U_DIAGONAL, "u[%d][%d]" % (i, i)))
        for j in range(k):
            if not (data.u[j][i] * data.u[i][j]).is_one():
                issues.append(ValidationIssue(REL_U_INVERSE, "u[%d][%d]" % (i, j)))
            if data.graded and any(d != 0 for d in data.u[i][j].deg):
                issues.append(ValidationIssue(REL_U_DEGREE, "u[%d][%d]" % (i, j)))
    ei = lambda i: tuple(1 if s == i else 0 for s in range(k))
    for i in range(k):
        for j in range(k):
            for l in range(k):
                lhs = (
                    data.apply_sigma(ei(i), data.u[j][l])
                    * data.apply_sigma(ei(j), data.u[l][i])
                    * data.apply_sigma(ei(l), data.u[i][j])
                )
                rhs = data.u[j][l] * data.u[l][i] * data.u[i][j]
                if lhs != rhs:
                    issues.append(
                        ValidationIssue(REL_U_TRIPLE, "(%d,%d,%d)" % (i, j, l))
                    )
    for i in range(k):
        if data.graded and not deg_is_integral(data.b[i].deg):
            issues.append(ValidationIssue(REL_B_DEGREE, "b[%d]" % i))
        for j in range(k):
            lhs = data.subgroup_norm(i, data.u[i][j])
            rhs = data.b[i] / data.apply_sigma(ei(j), data.b[i])
            if lhs != rhs:
                issues.append(ValidationIssue(REL_U_NORM, "(i=%d, j=%d)" % (i, j)))
    if claim_semiramified:
        ok, _ = semiramified_check(data)
        if not ok:
            issues.append(ValidationIssue(REL_SEMI_INDEP, "grading"))
    return ValidationReport(issues)


# ---------------------------------------------------------------------------
# algebra elements


class AlgebraElement:
    """Finite sum of monomials coef * z^i with homogeneous coefficients."""

    __slots__ = ("data", "terms")

    def __init__(self, data: CrossedProductData, terms):
        self.data = data
        self.terms = {
            tuple(i): c for i, c in terms.items() if not c.is_zero()
        }

    @classmethod
    def monomial(cls, data, i, coef=None) -> "AlgebraElement":
        c = data._coerce(coef) if coef is not None else data.one_coef()
        return cls(data, {tuple(i): c})

    @classmethod
    def scalar(cls, data, coef) -> "AlgebraElement":
        return cls.monomial(data, (0,) * data.k, coef)

    @classmethod
    def one(cls, data) -> "AlgebraElement":
        return cls.scalar(data, data.one_coef())

    def __add__(self, other):
        self._compat(other)
        out = dict(self.terms)
        for i, c in other.terms.items():
            cur = out.get(i)
            if cur is None:
                out[i] = c
            elif cur.deg == c.deg:
                out[i] = Homog(cur.coef + c.coef, cur.deg)
            else:
                raise PresentationError(
                    "adding parts of different degrees in one monomial slot"
                )
        return AlgebraElement(self.data, out)

    def __neg__(self):
        return AlgebraElement(self.data, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Homog, FieldElement, int)):
            other = AlgebraElement.scalar(self.data, self.data._coerce(other))
        self._compat(other)
        data = self.data
        out: dict[tuple, Homog] = {}
        for i, a in self.terms.items():
            for j, c in other.terms.items():
                f = data.structure_factor(i, j)
                val = a * data.apply_sigma(i, c) * f
                tgt = data.index_add(i, j)
                cur = out.get(tgt)
                if cur is None:
                    out[tgt] = val
                elif cur.deg == val.deg:
                    out[tgt] = Homog(cur.coef + val.coef, cur.deg)
                else:
                    raise PresentationError(
                        "sum of different degrees in one monomial slot; use "
                        "homogeneous operands for graded division steps"
                    )
        return AlgebraElement(self.data, out)

    def __rmul__(self, other):
        return AlgebraElement.scalar(self.data, self.data._coerce(other)) * self

    def _compat(self, other):
        if self.data is not other.data:
            raise PresentationError("elements of different presentations")

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_residue_scalar(self) -> bool:
        if len(self.terms) != 1:
            return False
        (i, c), = self.terms.items()
        return all(e == 0 for e in i) and all(d == 0 for d in c.deg)

    def residue_scalar(self) -> FieldElement:
        if not self.is_residue_scalar():
            raise PresentationError("element is not a degree-0 residue scalar")
        return next(iter(self.terms.values())).coef

    def monomial_parts(self):
        (i, c), = self.terms.items()
        return i, c

    def total_degree(self):
        degs = {
            deg_add(c.deg, self.data.monomial_degree(i))
            for i, c in self.terms.items()
        }
        if len(degs) != 1:
            raise PresentationError("element is not homogeneous")
        return next(iter(degs))

    def inverse(self) -> "AlgebraElement":
        if not self.is_monomial():
            raise PresentationError("only monomial units are inverted directly")
        (i, c), = self.terms.items()
        j = self.data.index_neg(i)
        f = self.data.structure_factor(i, j)
        d = self.data.apply_sigma(self.data.sigma_inverse_index(i), (c * f).inverse())
        return AlgebraElement.monomial(self.data, j, d)

    def __pow__(self, n: int) -> "AlgebraElement":
        if n < 0:
            return self.inverse() ** (-n)
        out = AlgebraElement.one(self.data)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraElement)
            and self.data is other.data
            and self.terms == other.terms
        )

    def __repr__(self):
        return "<alg %s>" % (
            " + ".join("%r z^%s" % (c, list(i)) for i, c in sorted(self.terms.items()))
            or "0"
        )


def multiply(a: AlgebraElement, b: AlgebraElement, data=None) -> AlgebraElement:
    return a * b


# ---------------------------------------------------------------------------
# spec operations


def cocycle_product(a: CrossedProductData, b: CrossedProductData) -> CrossedProductData:
    if a.tower is not b.tower or a.base_level != b.base_level:
        raise PresentationError("tower mismatch in cocycle product")
    if a.orders != b.orders or any(x != y for x, y in zip(a.gens, b.gens)):
        raise PresentationError("generator mismatch in cocycle product")
    rank = max(a.rank, b.rank)

    def lift(h: Homog, from_rank: int) -> Homog:
        if from_rank == rank:
            return h
        return Homog(h.coef, tuple(h.deg) + (QQ(0),) * (rank - from_rank))

    w = [
        [lift(a.u[i][j], a.rank) * lift(b.u[i][j], b.rank) for j in range(a.k)]
        for i in range(a.k)
    ]
    d = [lift(a.b[i], a.rank) * lift(b.b[i], b.rank) for i in range(a.k)]
    return CrossedProductData(
        a.tower, a.base_level, a.gens, a.orders, w, d, rank,
        a.laurent_names if a.rank == rank else b.laurent_names,
    )


def presentation_change(data: CrossedProductData, cs) -> CrossedProductData:
    """Re-present with generator lifts scaled by units: z_i' = c_i z_i."""
    cs = [data._coerce(c) for c in cs]
    if any(c.is_zero() for c in cs):
        raise PresentationError("presentation change with a zero unit")
    k = data.k
    ei = lambda i: tuple(1 if s == i else 0 for s in range(k))
    u2 = [
        [
            (cs[i] * data.apply_sigma(ei(i), cs[j]))
            / (cs[j] * data.apply_sigma(ei(j), cs[i]))
            * data.u[i][j]
            for j in range(k)
        ]
        for i in range(k)
    ]
    b2 = [data.subgroup_norm(i, cs[i]) * data.b[i] for i in range(k)]
    return data.replace(u=u2, b=b2)


def bicyclic_change(data: CrossedProductData, c1, c2) -> CrossedProductData:
    if data.k != 2:
        raise PresentationError("bicyclic change requires two generators")
    return presentation_change(data, [c1, c2])


def semiramified_check(data: CrossedProductData):
    """Ramification test for graded data; returns (bool, description)."""
    if not data.graded:
        return False, {"reason": "ungraded presentation"}
    base = GradeSubgroup.standard_lattice(data.rank)
    deltas = data.slot_degrees()
    ok = independence_check(deltas, list(data.orders), base)
    desc = {
        "slot_degrees": [tuple(str(c) for c in d) for d in deltas],
        "grade_group": data.grade_group_total(),
    }
    if ok:
        desc["residue"] = "inertial-lift residue field"
        desc["grade_quotient"] = quotient(data.grade_group_total(), base).group
    return ok, desc


def reduced_norm(a: AlgebraElement, data: CrossedProductData = None, bound: int = 8):
    """Determinant of left multiplication on the right residue-module basis.

    Returns a FieldElement of the base prefix (checked) for ungraded data;
    for graded data returns a Homog whose coefficient lies in the base
    prefix, with degree = deg(A) * deg(a) for homogeneous a.
    """
    data = data or a.data
    n = data.degree()
    if n > bound:
        raise PresentationError("degree %d exceeds reduced-norm bound %d" % (n, bound))
    idx = {i: t for t, i in enumerate(data.index_set)}
    cols = []
    for j in data.index_set:
        col = {}
        for i, c in a.terms.items():
            f = data.structure_factor(i, j)
            tgt = data.index_add(i, j)
            val = data.apply_sigma(data.sigma_inverse_index(tgt), c * f)
            cur = col.get(tgt)
            col[tgt] = val if cur is None else _hom_sum(cur, val)
        cols.append(col)
    if not data.graded:
        mat = [
            [
                (cols[jt].get(it_key).coef if cols[jt].get(it_key) else data.tower.zero())
                for jt in range(n)
            ]
            for it_key in data.index_set
        ]
        det = _det_field(mat, data.tower)
        if not det.in_prefix(data.base_level):
            raise PresentationError("reduced norm landed outside the base field")
        return det
    # graded path: entries are Laurent polynomials over the residue field
    mat = [
        [_spoly_from_homog(cols[jt].get(it_key)) for jt in range(n)]
        for it_key in data.index_set
    ]
    det = _det_laurent(mat, data.tower, data.rank)
    if len(det) > 1:
        parts = sorted(det.items())
        raise PresentationError("reduced norm of a non-homogeneous graded element: %r" % parts)
    if not det:
        return Homog(data.tower.zero(), deg_zero(data.rank))
    (dg, c), = det.items()
    if not c.in_prefix(data.base_level):
        raise PresentationError("reduced norm landed outside the base field")
    return Homog(c, dg)


def _hom_sum(a: Homog, b: Homog) -> Homog:
    if a.deg != b.deg:
        raise PresentationError("inhomogeneous sum in norm column")
    return Homog(a.coef + b.coef, a.deg)


def _det_field(mat, tower: FieldTower) -> FieldElement:
    n = len(mat)
    m = [row[:] for row in mat]
    det = tower.one()
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            return tower.zero()
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            if not m[r][col].is_zero():
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


# sparse Laurent polynomials over the residue field: dict degree -> coef


def _spoly_from_homog(h):
    if h is None or h.is_zero():
        return {}
    return {h.deg: h.coef}


def _spoly_add(a, b):
    out = dict(a)
    for g, c in b.items():
        cur = out.get(g)
        s = c if cur is None else cur + c
        if s.is_zero():
            out.pop(g, None)
        else:
            out[g] = s
    return out


def _spoly_mul(a, b):
    out = {}
    for g, c in a.items():
        for h, d in b.items():
            gh = deg_add(g, h)
            v = c * d
            cur = out.get(gh)
            s = v if cur is None else cur + v
            if s.is_zero():
                out.pop(gh, None)
            else:
                out[gh] = s
    return out


def _spoly_neg(a):
    return {g: -c for g, c in a.items()}


def _det_laurent(mat, tower: FieldTower, rank: int):
    """Determinant over the Laurent coefficient ring by subset expansion.

    Columns are consumed left to right; the state is the set of used rows,
    so the cost is O(2^n * n) sparse ring operations (n <= 8 here).
    """
    n = len(mat)
    states = {0: {deg_zero(rank): tower.one()}}
    for col in range(n):
        new: dict[int, dict] = {}
        for mask, val in states.items():
            if not val:
                continue
            seen = 0
            for row in range(n):
                if mask & (1 << row):
                    seen += 1
                    continue
                entry = mat[row][col]
                if not entry:
                    continue
                term = _spoly_mul(val, entry)
                if (row - seen) % 2 == 1:
                    term = _spoly_neg(term)
                key = mask | (1 << row)
                cur = new.get(key)
                new[key] = term if cur is None else _spoly_add(cur, term)
        states = new
    return states.get((1 << n) - 1, {})


def i_n_decompose(data: CrossedProductData, check: bool = True):
    """Split graded semiramified data into monomial-power data and an
    inertial degree-0 part; their cocycle product is the input, exactly.

    Returns (n_data, i0_data) with n_data graded (all u = 1, powers are
    base monomials) and i0_data ungraded over the residue field.
    """
    if not data.graded:
        raise PresentationError("decomposition requires graded data")
    ok, _ = semiramified_check(data)
    if not ok:
        raise PresentationError("presentation is not semiramified")
    one = data.one_coef()
    c = []
    for i in range(data.k):
        if not deg_is_integral(data.b[i].deg):
            raise PresentationError("no base monomial of the required degree")
        c.append(Homog(data.tower.one(), data.b[i].deg))
    e = [data.b[i] / c[i] for i in range(data.k)]
    if any(any(d != 0 for d in h.deg) for h in e):
        raise AssertionError("inertial part has nonzero degree")
    n_data = data.replace(
        u=[[one for _ in range(data.k)] for _ in range(data.k)], b=c
    )
    i0_data = CrossedProductData(
        data.tower,
        data.base_level,
        data.gens,
        data.orders,
        [[h.coef for h in row] for row in data.u],
        [h.coef for h in e],
        rank=0,
    )
    if check:
        lifted = CrossedProductData(
            data.tower,
            data.base_level,
            data.gens,
            data.orders,
            data.u,
            [Homog(h.coef, deg_zero(data.rank)) for h in e],
            data.rank,
            data.laurent_names,
        )
        back = cocycle_product(lifted, n_data)
        if any(
            back.u[i][j] != data.u[i][j]
            for i in range(data.k)
            for j in range(data.k)
        ) or any(back.b[i] != data.b[i] for i in range(data.k)):
            raise AssertionError("decomposition does not multiply back")
    return n_data, i0_data


def dsr_cyclic_factors(n_data: CrossedProductData):
    """The cyclic factor list of an all-commutator-trivial presentation."""
    if any(
        not n_data.u[i][j].is_one()
        for i in range(n_data.k)
        for j in range(n_data.k)
    ):
        raise PresentationError("presentation has nontrivial commutator units")
    return [
        {
            "generator": i,
            "order": n_data.orders[i],
            "power": n_data.b[i],
        }
        for i in range(n_data.k)
    ]
