"""Witnessed cosets: every "equal up to the fixed-product subgroup" claim
carries explicit factors, each certified by direct automorphism application.

Witness kinds:
  * FixedWitness(auto, value): auto(value) == value, for a reflection-type
    automorphism (an element of the nontrivial coset);
  * QuotientWitness(h, m): the factor h(m)/m for h in the subfield group,
    a generator of the twisted augmentation subgroup.

A Cong is a certified congruence: a field value claimed (and checked) to
equal the product of its witnesses, with multiplication, inversion, and
conjugation that keep the certificates verified.
"""

from __future__ import annotations

from .numberfield import FieldAutomorphism, FieldElement, hilbert90_witness


class WitnessError(ValueError):
    pass


class FixedWitness:
    def __init__(self, auto: FieldAutomorphism, value: FieldElement, label: str = ""):
        self.auto = auto
        self.value = value
        self.label = label
        if auto.apply(value) != value:
            raise WitnessError("witness %s is not fixed by its automorphism" % label)

    def conj(self, sigma: FieldAutomorphism) -> "FixedWitness":
        new_auto = sigma.after(self.auto).after(sigma.inverse())
        return FixedWitness(new_auto, sigma.apply(self.value), self.label + "^conj")

    def inverse(self) -> "FixedWitness":
        return FixedWitness(self.auto, self.value.inverse(), self.label + "^-1")

    def __repr__(self):
        return "<fixed %s>" % (self.label or "witness")


class QuotientWitness:
    """The factor h(m)/m (or its inverse)."""

    def __init__(self, h: FieldAutomorphism, m: FieldElement, power: int = 1,
                 label: str = ""):
        self.h = h
        self.m = m
        self.power = power
        self.label = label
        self.value = (h.apply(m) / m) ** power

    def conj(self, sigma: FieldAutomorphism) -> "QuotientWitness":
        new_h = sigma.after(self.h).after(sigma.inverse())
        return QuotientWitness(new_h, sigma.apply(self.m), self.power,
                               self.label + "^conj")

    def inverse(self) -> "QuotientWitness":
        return QuotientWitness(self.h, self.m, -self.power, self.label + "^-1")

    def __repr__(self):
        return "<quotient %s>" % (self.label or "witness")


def witness_product(witnesses, one: FieldElement) -> FieldElement:
    out = one
    for w in witnesses:
        out = out * w.value
    return out


class Cong:
    """Certified congruence: value == product of witnesses, exactly."""

    def __init__(self, value: FieldElement, witnesses, check: bool = True):
        self.value = value
        self.witnesses = list(witnesses)
        if check and witness_product(self.witnesses, value.tower.one()) != value:
            raise WitnessError("witness product does not reproduce the value")

    def __mul__(self, other: "Cong") -> "Cong":
        return Cong(self.value * other.value, self.witnesses + other.witnesses,
                    check=False)

    def inverse(self) -> "Cong":
        return Cong(self.value.inverse(),
                    [w.inverse() for w in self.witnesses], check=False)

    def conj(self, sigma: FieldAutomorphism) -> "Cong":
        return Cong(sigma.apply(self.value),
                    [w.conj(sigma) for w in self.witnesses], check=False)

    def verify(self) -> bool:
        return witness_product(self.witnesses, self.value.tower.one()) == self.value

    @classmethod
    def trivial(cls, tower) -> "Cong":
        return cls(tower.one(), [])

    def __repr__(self):
        return "<cong %d witnesses>" % len(self.witnesses)


class WitnessedCoset:
    """representative = base * product(witnesses), all exact."""

    def __init__(self, representative: FieldElement, base: FieldElement, witnesses):
        self.representative = representative
        self.base = base
        self.witnesses = list(witnesses)
        if witness_product(self.witnesses, base.tower.one()) * base != representative:
            raise WitnessError("coset witnesses do not relate base and representative")

    def __repr__(self):
        return "<witnessed coset, %d factors>" % len(self.witnesses)


def split_fixed_product(c: FieldElement, h: FieldAutomorphism, n: int,
                        theta: FieldAutomorphism, h_fixed_basis):
    """Write c = w1 * w2 with theta(w1) = w1 and (h theta)(w2) = w2.

    Requires the cyclic norm of c along <h> to be theta-fixed; follows the
    constructive chain (resolvent over <h>, then a fixed-field resolvent
    over the order-2 composite).  ``h_fixed_basis`` spans the fixed field
    of h, supplying resolvent candidates for the second step.
    """
    tower = c.tower
    # qualification: N_<h>(c) is theta-fixed
    norm = tower.one()
    for t in range(n):
        norm = norm * (h ** t).apply(c)
    if theta.apply(norm) != norm:
        raise WitnessError("norm of the factor is not reflection-fixed")
    v = c / theta.apply(c)
    z = hilbert90_witness(v, h, n)
    th = theta.after(h)  # acts as h then theta
    v2 = z / th.apply(z)
    if h.apply(v2) != v2:
        raise WitnessError("intermediate value left the fixed field")
    # resolvent for the order-2 composite on the fixed field of h
    if not (th.after(th)).is_identity():
        raise WitnessError("composite automorphism does not have order 2")
    d = hilbert90_witness(v2, th, 2, candidates=h_fixed_basis)
    efac = z / d
    if th.apply(efac) != efac:
        raise WitnessError("shift factor is not fixed by the composite")
    w1 = c * theta.apply(efac)
    w2 = theta.apply(efac).inverse()
    fw1 = FixedWitness(theta, w1, "reflection-fixed part")
    fw2 = FixedWitness(h.after(theta), w2, "twisted part")
    if fw1.value * fw2.value != c:
        raise WitnessError("split does not multiply back")
    return fw1, fw2
