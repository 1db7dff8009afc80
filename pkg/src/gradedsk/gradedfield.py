"""Graded fields: Laurent-type presentations with inertial and totally
ramified extension steps.

A graded field here is a residue number field F0 together with a grade
subgroup of Q^k, a split Laurent monomial section for the integer part,
and a list of ramified generators z_j with z_j^(r_j) equal to a stated
homogeneous unit of the earlier stage.  The factor set phi recording
t_gamma * t_delta = phi(gamma, delta) * t_(gamma+delta) is derived from
these relations; the integer (Laurent) part is split, so phi is 1 there.
"""

from __future__ import annotations

from .gradegroup import (
    FiniteAbelianGroup,
    GradeError,
    GradeSubgroup,
    coset_order,
    grade_vector,
    quotient,
)
from .numberfield import FieldElement, FieldTower
from .polyfield import is_irreducible_over
from .rational import QQ, qq


class GradedFieldError(ValueError):
    pass


class RamifiedGen:
    __slots__ = ("name", "degree", "order", "rhs_coef", "rhs_degree")

    def __init__(self, name, degree, order, rhs_coef, rhs_degree):
        self.name = name
        self.degree = degree
        self.order = order
        self.rhs_coef = rhs_coef
        self.rhs_degree = rhs_degree


class GradedField:
    """A graded field presentation over a Laurent base."""

    def __init__(self, residue: FieldTower, rank: int, laurent_names=None):
        self.residue = residue
        self.rank = rank
        self.laurent_names = list(laurent_names or ("x", "y", "z", "w")[:rank])
        if len(self.laurent_names) != rank:
            raise GradedFieldError("need one Laurent name per ambient rank")
        self.base_lattice = GradeSubgroup.standard_lattice(rank)
        self.grade_group = GradeSubgroup.standard_lattice(rank)
        self.ramified: list[RamifiedGen] = []

    # -- construction ----------------------------------------------------

    def extend_inertial(self, name: str, coeffs) -> "GradedField":
        """Adjoin a residue-field step; grade data and phi are unchanged."""
        new_res = self.residue.extend(name, coeffs)
        out = GradedField.__new__(GradedField)
        out.residue = new_res
        out.rank = self.rank
        out.laurent_names = list(self.laurent_names)
        out.base_lattice = self.base_lattice
        out.grade_group = self.grade_group
        out.ramified = [
            RamifiedGen(
                g.name,
                g.degree,
                g.order,
                new_res.embed_from_prefix(g.rhs_coef, len(self.residue.steps)),
                g.rhs_degree,
            )
            for g in self.ramified
        ]
        return out

    def extend_totally_ramified(self, name: str, r: int, b) -> "GradedField":
        """Adjoin z with z^r = b for a homogeneous unit b of this field."""
        if r < 1:
            raise GradedFieldError("ramification order must be >= 1")
        coef, beta = self._as_homogeneous(b)
        if coef.is_zero():
            raise GradedFieldError("ramified relation needs a homogeneous unit")
        if r == 1:
            return self
        new_deg = tuple(c / r for c in beta)
        if coset_order(new_deg, self.grade_group) != r:
            raise GradedFieldError(
                "ramification-order: image of the relation degree does not "
                "have order %d over the current grade group" % r
            )
        out = GradedField.__new__(GradedField)
        out.residue = self.residue
        out.rank = self.rank
        out.laurent_names = list(self.laurent_names)
        out.base_lattice = self.base_lattice
        out.grade_group = self.grade_group.join([new_deg])
        out.ramified = self.ramified + [RamifiedGen(name, new_deg, r, coef, beta)]
        return out

    def _as_homogeneous(self, b):
        if isinstance(b, GradedElement):
            if len(b.parts) != 1:
                raise GradedFieldError("element is not homogeneous")
            (deg, coef), = b.parts.items()
            return coef, deg
        coef, deg = b
        return coef, grade_vector(deg)

    # -- structural data ---------------------------------------------------

    def total_degree_over(self, base: "GradedField") -> int:
        d = self.residue.degree // base.residue.degree
        for g in self.ramified:
            if all(h.name != g.name for h in base.ramified):
                d *= g.order
        return d

    def grade_quotient_over(self, base: "GradedField") -> FiniteAbelianGroup:
        return quotient(self.grade_group, base.grade_group).group

    # -- monomial section ----------------------------------------------------

    def decompose_degree(self, gamma):
        """gamma = sum e_j * d_j + lambda with e_j in [0, r_j), lambda integral."""
        gamma = grade_vector(gamma)
        exps = [range(g.order) for g in self.ramified]
        from itertools import product

        for e in product(*exps):
            rest = list(gamma)
            for k, g in enumerate(self.ramified):
                for i in range(self.rank):
                    rest[i] -= e[k] * g.degree[i]
            if self.base_lattice.contains(rest):
                return list(e), tuple(rest)
        raise GradedFieldError("degree %r is not in the grade group" % (gamma,))

    def in_grade_group(self, gamma) -> bool:
        try:
            self.decompose_degree(gamma)
            return True
        except GradedFieldError:
            return False

    def phi(self, gamma, delta) -> FieldElement:
        """Residue coefficient with t_gamma * t_delta = phi * t_(gamma+delta)."""
        e1, _ = self.decompose_degree(gamma)
        e2, _ = self.decompose_degree(delta)
        exps = [a + b for a, b in zip(e1, e2)]
        coef = self.residue.one()
        for j in range(len(self.ramified) - 1, -1, -1):
            g = self.ramified[j]
            while exps[j] >= g.order:
                exps[j] -= g.order
                coef = coef * g.rhs_coef
                extra_e, _ = self.decompose_degree(g.rhs_degree)
                if any(extra_e[k] for k in range(j, len(extra_e))):
                    raise GradedFieldError("ramified relation degree not prior")
                for k in range(j):
                    exps[k] += extra_e[k]
        return coef

    def monomial(self, gamma) -> "GradedElement":
        self.decompose_degree(gamma)
        return GradedElement(self, {grade_vector(gamma): self.residue.one()})

    def element(self, parts) -> "GradedElement":
        return GradedElement(
            self, {grade_vector(g): c for g, c in parts if not c.is_zero()}
        )

    def zero(self) -> "GradedElement":
        return GradedElement(self, {})

    def one(self) -> "GradedElement":
        zero_deg = grade_vector([0] * self.rank)
        return GradedElement(self, {zero_deg: self.residue.one()})

    # -- invariants -----------------------------------------------------------

    def check_phi_cocycle(self) -> bool:
        """2-cocycle identity of phi on all canonical representative triples."""
        reps = self._coset_reps()
        for a in reps:
            for b in reps:
                for c in reps:
                    ab = tuple(x + y for x, y in zip(a, b))
                    bc = tuple(x + y for x, y in zip(b, c))
                    lhs = self.phi(a, b) * self.phi(ab, c)
                    rhs = self.phi(b, c) * self.phi(a, bc)
                    if lhs != rhs:
                        return False
                    if self.phi(tuple(QQ(0) for _ in a), a) != self.residue.one():
                        return False
        return True

    def _coset_reps(self):
        from itertools import product

        reps = []
        for e in product(*[range(g.order) for g in self.ramified]):
            vec = [QQ(0)] * self.rank
            for k, g in enumerate(self.ramified):
                for i in range(self.rank):
                    vec[i] += e[k] * g.degree[i]
            reps.append(tuple(vec))
        return reps or [tuple(QQ(0) for _ in range(self.rank))]

    def describe(self) -> str:
        base = "%s[%s]" % (
            self.residue.describe(),
            ", ".join("%s^+-" % n for n in self.laurent_names),
        )
        if self.ramified:
            base += " with " + ", ".join(
                "%s^%d" % (g.name, g.order) for g in self.ramified
            )
        return base


class GradedElement:
    """Finite sum of homogeneous components of a graded field."""

    __slots__ = ("field", "parts")

    def __init__(self, field: GradedField, parts):
        self.field = field
        self.parts = {g: c for g, c in parts.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.parts

    def is_homogeneous(self) -> bool:
        return len(self.parts) <= 1

    def degree(self):
        if len(self.parts) != 1:
            raise GradedFieldError("degree of a non-homogeneous element")
        return next(iter(self.parts))

    def coefficient(self, gamma) -> FieldElement:
        return self.parts.get(grade_vector(gamma), self.field.residue.zero())

    def __add__(self, other):
        out = dict(self.parts)
        for g, c in other.parts.items():
            out[g] = out.get(g, self.field.residue.zero()) + c
        return GradedElement(self.field, out)

    def __neg__(self):
        return GradedElement(self.field, {g: -c for g, c in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for g, c in self.parts.items():
            for h, d in other.parts.items():
                gh = tuple(a + b for a, b in zip(g, h))
                val = c * d * self.field.phi(g, h)
                out[gh] = out.get(gh, self.field.residue.zero()) + val
        return GradedElement(self.field, out)

    def inverse(self) -> "GradedElement":
        if len(self.parts) != 1:
            raise GradedFieldError("only homogeneous units are invertible")
        (g, c), = self.parts.items()
        ginv = tuple(-a for a in g)
        corr = self.field.phi(g, ginv)
        return GradedElement(self.field, {ginv: (c * corr).inverse()})

    def __eq__(self, other):
        return (
            isinstance(other, GradedElement)
            and self.field is other.field
            and self.parts == other.parts
        )

    def __repr__(self):
        names = self.field.laurent_names + [g.name for g in self.field.ramified]
        return "<graded %s>" % self.parts


def fundamental_equality_check(view) -> bool:
    """[E:T] == [E0:T0] * |Gamma_E : Gamma_T|, all sides exact.

    ``view`` is any object with attributes total_dim, residue_dim,
    grade_big, grade_small.
    """
    try:
        index = quotient(view.grade_big, view.grade_small).group.order()
    except GradeError:
        return False
    return view.total_dim == view.residue_dim * index


class GradedExtensionView:
    """Plain data bundle for fundamental-equality checks."""

    def __init__(self, total_dim, residue_dim, grade_big, grade_small):
        self.total_dim = total_dim
        self.residue_dim = residue_dim
        self.grade_big = grade_big
        self.grade_small = grade_small


def theta_map(algebra, gamma):
    """Conjugation action of a degree on the residue center.

    Delegates to the algebra object (a graded crossed product), which knows
    a homogeneous unit in each available degree of its presentation.
    """
    return algebra.homogeneous_conjugation(gamma)


def graded_division_check(base_residue: FieldTower, steps) -> bool:
    """Zero-divisor test for a commutative residue algebra given by steps.

    Each step is (name, coefficient list); the algebra is the iterated
    quotient by the stated monic polynomials.  True iff every step is
    irreducible over the tower below (so the algebra is a field); steps of
    degree > 4 are outside the implemented decision and raise.
    """
    tower = base_residue
    for name, coeffs in steps:
        if len(coeffs) > 4:
            raise GradedFieldError(
                "residue step %r has degree %d > 4: outside the implemented "
                "zero-divisor decision" % (name, len(coeffs))
            )
        poly = [
            c if isinstance(c, FieldElement) else tower.from_rational(c)
            for c in coeffs
        ] + [tower.one()]
        if not is_irreducible_over(tower, poly):
            return False
        tower = tower.extend(name, coeffs, check=False)
    return True
