"""Built-in example algebras, generated programmatically.

These double as integration tests of the constructors: the graded symbol
algebra with its inertial/monomial decomposition, its unitary variant over
a real base, the biquaternion with the tensor involution, and the cyclic
ramified algebra with a reflection-stable monomial subfield.
"""

from __future__ import annotations

from .crossedproduct import (
    AlgebraElement,
    CrossedProductData,
    Homog,
    i_n_decompose,
    validate,
)
from .involution import Involution, build_involution, validate_unitary_conditions
from .numberfield import FieldAutomorphism, FieldTower
from .rational import QQ


class ExampleError(ValueError):
    pass


CYCLOTOMIC_STEPS = {
    2: ("zeta4", [1, 0]),              # x^2 + 1
    3: ("zeta9", [1, 0, 0, 1, 0, 0]),  # x^6 + x^3 + 1
}


class SymbolAlgebraExample:
    """Graded symbol algebra of degree n^2 over a Laurent graded field.

    Generators I, J with I^(n^2) = a x^n, J^(n^2) = b y^n, I J = omega J I;
    presented with lifts z1 = J^(-1), z2 = I over the residue field
    K(a^(1/n), b^(1/n)).
    """

    def __init__(self, n: int = 2, a: int = 2, b: int = 3, unitary: bool = True):
        if n not in CYCLOTOMIC_STEPS:
            raise ExampleError("supported root orders: %s" % list(CYCLOTOMIC_STEPS))
        self.n = n
        zname, zpoly = CYCLOTOMIC_STEPS[n]
        K = FieldTower.rationals().extend(zname, zpoly)
        root_a = [QQ(-a)] + [0] * (n - 1)
        root_b = [QQ(-b)] + [0] * (n - 1)
        M = K.extend("rad_a", root_a).extend("rad_b", root_b)
        self.tower = M
        self.base_level = 1
        zeta = M.gen(zname)
        self.omega = zeta
        omega_n = zeta ** n
        ra, rb = M.gen("rad_a"), M.gen("rad_b")
        self.s1 = FieldAutomorphism(M, [zeta, omega_n * ra, rb])
        self.s2 = FieldAutomorphism(M, [zeta, ra, omega_n * rb])
        one = M.one()
        u = [[one, self.omega], [self.omega.inverse(), one]]
        d1 = Homog(rb.inverse(), (0, -1))
        d2 = Homog(ra, (1, 0))
        self.data = CrossedProductData(
            M, 1, [self.s1, self.s2], [n, n], u, [d1, d2], rank=2,
            laurent_names=["x", "y"],
        )
        self.theta = None
        self.tau = None
        if unitary:
            zinv = zeta.inverse()
            self.theta = FieldAutomorphism(M, [zinv, ra, rb])
            self.tau = build_involution(self.data, self.theta)

    def decomposition(self):
        return i_n_decompose(self.data)

    def inertial_part(self) -> CrossedProductData:
        _, i0 = i_n_decompose(self.data)
        return i0

    def monomial_part(self) -> CrossedProductData:
        nd, _ = i_n_decompose(self.data)
        return nd


class BiquaternionExample:
    """Tensor of two monomial-slope quaternions over a quadratic base.

    Residue field Q(sqrt(a), sqrt(b), sqrt(c)) with the degree-0 center
    prefix Q(sqrt(a)); generator powers are the Laurent monomials x and y;
    the reflection negates every square root, and the involution carries
    the extra sign on both lifts (tensor of the symplectic involutions).
    """

    def __init__(self, a: int = 5, b: int = 2, c: int = 3):
        M = (
            FieldTower.rationals()
            .extend("sq_a", [-a, 0])
            .extend("sq_b", [-b, 0])
            .extend("sq_c", [-c, 0])
        )
        self.tower = M
        self.base_level = 1
        ra, rb, rc = M.gen("sq_a"), M.gen("sq_b"), M.gen("sq_c")
        self.s1 = FieldAutomorphism(M, [ra, -rb, rc])
        self.s2 = FieldAutomorphism(M, [ra, rb, -rc])
        self.theta = FieldAutomorphism(M, [-ra, -rb, -rc])
        one = M.one()
        self.data = CrossedProductData(
            M, 1, [self.s1, self.s2], [2, 2],
            [[one, one], [one, one]],
            [Homog(one, (1, 0)), Homog(one, (0, 1))],
            rank=2, laurent_names=["x", "y"],
        )
        self.tau = build_involution(self.data, self.theta,
                                    gen_signs=[-one, -one])


class CyclicRamifiedExample:
    """Cyclic graded algebra with a reflection-stable monomial subfield.

    Residue extension Q(sqrt(6), sqrt(2)) over the prefix Q(sqrt(6)); the
    single generator has square equal to the Laurent monomial x, whose
    degree has order 2 in the grade quotient.
    """

    def __init__(self):
        M = FieldTower.rationals().extend("sq6", [-6, 0]).extend("sq2", [-2, 0])
        self.tower = M
        self.base_level = 1
        r6, r2 = M.gen("sq6"), M.gen("sq2")
        self.sigma = FieldAutomorphism(M, [r6, -r2])
        self.theta = FieldAutomorphism(M, [-r6, r2])
        one = M.one()
        self.data = CrossedProductData(
            M, 1, [self.sigma], [2], [[one]], [Homog(one, (1,))],
            rank=1, laurent_names=["x"],
        )
        self.tau = build_involution(self.data, self.theta)


def build_example(name: str, n: int = 2):
    if name == "symbol":
        return SymbolAlgebraExample(n=n, unitary=False)
    if name == "symbol-unitary":
        return SymbolAlgebraExample(n=n, unitary=True)
    if name == "biquaternion":
        return BiquaternionExample()
    if name == "cyclic-ramified":
        return CyclicRamifiedExample()
    raise ExampleError("unknown example %r" % name)


EXAMPLE_NAMES = ("symbol", "symbol-unitary", "biquaternion", "cyclic-ramified")
