"""Unitary involutions on crossed products.

An involution is determined by a period-2 automorphism of the maximal
subfield acting nontrivially on the base, together with the images of the
generator lifts (identity by default, optionally scaled by units as for
tensor products of quaternion involutions).  The map is represented by its
action on coefficients and basis monomials, never as a dense matrix, and
is verified to be an anti-automorphism of period 2 on construction.
"""

from __future__ import annotations

import random

from .crossedproduct import (
    AlgebraElement,
    CrossedProductData,
    Homog,
    PresentationError,
    REL_UNITARY_B,
    REL_UNITARY_U,
    ValidationIssue,
    ValidationReport,
    deg_zero,
)
from .numberfield import FieldAutomorphism, TowerError, generate_group, hilbert90_witness


class InvolutionError(ValueError):
    pass


class InvolutionSpec:
    """A candidate restriction: period-2 map inverting the subfield group."""

    def __init__(self, theta: FieldAutomorphism, h_gens):
        self.theta = theta
        if not theta.after(theta).is_identity():
            raise InvolutionError("restriction does not square to the identity")
        for h in h_gens:
            if theta.after(h).after(theta) != h.inverse():
                raise InvolutionError(
                    "restriction does not invert the subfield automorphisms"
                )
        self.h_gens = tuple(h_gens)


def is_generalized_dihedral(g_gens, h_gens, bound: int = 64) -> bool:
    """Index-2 test plus order-2 test for every element outside the subgroup."""
    G = generate_group(list(g_gens) + list(h_gens), bound=bound)
    H = generate_group(list(h_gens), bound=bound)
    keys = {h._mat_key for h in H}
    if len(G) != 2 * len(H):
        raise InvolutionError(
            "subgroup has index %r, not 2" % (len(G) / len(H))
        )
    return all(
        g.after(g).is_identity() for g in G if g._mat_key not in keys
    )


def validate_unitary_conditions(
    data: CrossedProductData, theta: FieldAutomorphism
) -> ValidationReport:
    """Checks u[i][j] * (s_i s_j theta)(u[i][j]) = 1 and theta(b_i) = b_i."""
    issues = []
    k = data.k
    for i in range(k):
        for j in range(k):
            idx = tuple((1 if s == i else 0) + (1 if s == j else 0) for s in range(k))
            conj = data.sigma(idx).after(theta)
            val = data.u[i][j] * Homog(conj.apply(data.u[i][j].coef), data.u[i][j].deg)
            if not val.is_one():
                issues.append(ValidationIssue(REL_UNITARY_U, "u[%d][%d]" % (i, j)))
    for i in range(k):
        if Homog(theta.apply(data.b[i].coef), data.b[i].deg) != data.b[i]:
            issues.append(ValidationIssue(REL_UNITARY_B, "b[%d]" % i))
    return ValidationReport(issues)


class Involution:
    """tau acting on algebra elements; tau(z_i) = s_i z_i, tau|_M = theta."""

    def __init__(self, data: CrossedProductData, theta: FieldAutomorphism,
                 gen_signs=None, verify: bool = True, rng_seed: int = 7):
        self.data = data
        self.theta = theta
        if gen_signs is None:
            self.gen_coefs = [data.one_coef() for _ in range(data.k)]
        else:
            self.gen_coefs = [data._coerce(s) for s in gen_signs]
        self._monomial_cache: dict[tuple, Homog] = {}
        if verify:
            self._verify(rng_seed)

    def restriction(self) -> FieldAutomorphism:
        return self.theta

    def _monomial_image_factor(self, i) -> Homog:
        """a with tau(z^i) = a * z^i (reversed word of scaled lifts)."""
        hit = self._monomial_cache.get(tuple(i))
        if hit is None:
            data = self.data
            rev = data.reversed_monomial_factor(i)
            scale = data.one_coef()
            # tau(z^i) = (s_k z_k)^(i_k) ... (s_1 z_1)^(i_1); collect the s's
            # by conjugating each through the letters to its left.
            exps = [0] * data.k
            acc = data.one_coef()
            for letter in range(data.k - 1, -1, -1):
                for _ in range(i[letter]):
                    acc = acc * data.apply_sigma(tuple(exps), self.gen_coefs[letter])
                    exps[letter] += 1
            hit = acc * rev
            self._monomial_cache[tuple(i)] = hit
        return hit

    def apply(self, elem: AlgebraElement) -> AlgebraElement:
        if elem.data is not self.data:
            raise InvolutionError("element belongs to a different presentation")
        data = self.data
        out = {}
        for i, c in elem.terms.items():
            th = Homog(self.theta.apply(c.coef), c.deg)
            factor = self._monomial_image_factor(i) * data.apply_sigma(i, th)
            cur = out.get(i)
            if cur is None:
                out[i] = factor
            elif cur.deg == factor.deg:
                out[i] = Homog(cur.coef + factor.coef, cur.deg)
            else:
                raise PresentationError("inhomogeneous slot sum under involution")
        return AlgebraElement(data, out)

    def __call__(self, elem: AlgebraElement) -> AlgebraElement:
        return self.apply(elem)

    def _verify(self, rng_seed: int):
        data = self.data
        basis = [AlgebraElement.monomial(data, i) for i in data.index_set]
        for x in basis:
            if self.apply(self.apply(x)) != x:
                raise InvolutionError("involution does not square to the identity")
        for x in basis:
            for y in basis:
                if self.apply(x * y) != self.apply(y) * self.apply(x):
                    raise InvolutionError("involution is not anti-multiplicative")
        rng = random.Random(rng_seed)
        cands = [data.tower.basis_monomial(t) for t in range(data.tower.degree)]
        for _ in range(20):
            cs = [
                sum(
                    (c * rng.randrange(-2, 3) for c in cands),
                    data.tower.zero(),
                )
                for _ in range(2)
            ]
            xs = [
                AlgebraElement.monomial(
                    data, rng.choice(data.index_set), Homog(c, deg_zero(data.rank))
                )
                for c in cs
            ]
            if self.apply(xs[0] * xs[1]) != self.apply(xs[1]) * self.apply(xs[0]):
                raise InvolutionError("involution is not anti-multiplicative")
        # restriction to the residue field is theta
        for t in range(data.tower.degree):
            m = data.tower.basis_monomial(t)
            img = self.apply(AlgebraElement.scalar(data, m))
            if img != AlgebraElement.scalar(data, self.theta.apply(m)):
                raise InvolutionError("involution does not restrict to theta")


def build_involution(
    data: CrossedProductData, theta: FieldAutomorphism, gen_signs=None
) -> Involution:
    """Construct and verify the involution fixing the generator lifts.

    Requires the unitary compatibility conditions; with ``gen_signs`` the
    lift images are scaled (tensor-product involutions need -1 factors).
    """
    if gen_signs is None:
        rep = validate_unitary_conditions(data, theta)
        if not rep.ok:
            raise InvolutionError("unitary conditions fail: %r" % rep)
    return Involution(data, theta, gen_signs)


def symmetrize(y: AlgebraElement, tau: Involution) -> AlgebraElement:
    """Scale a homogeneous monomial unit to a tau-fixed one.

    With tau(y) = a*y, the scale t solves a = t / (conj o theta)(t) by a
    two-term resolvent, where conj is the residue conjugation of deg(y).
    """
    data = y.data
    if not y.is_monomial():
        raise InvolutionError("symmetrize needs a monomial unit")
    i, c = y.monomial_parts()
    ty = tau.apply(y)
    if set(ty.terms) != set(y.terms):
        raise InvolutionError("involution moved the monomial slot")
    a = ty.terms[i] / y.terms[i]
    if any(d != 0 for d in a.deg):
        raise InvolutionError("symmetrization ratio is not degree-0")
    conj = data.sigma(i).after(tau.restriction())
    norm = a.coef * conj.apply(a.coef)
    if not norm.is_one():
        raise InvolutionError(
            "norm condition fails: a * (conj theta)(a) != 1 (invalid input)"
        )
    t = hilbert90_witness(a.coef, conj, 2)
    x = AlgebraElement.scalar(data, t) * y
    if tau.apply(x) != x:
        raise AssertionError("symmetrized element is not fixed")
    return x
