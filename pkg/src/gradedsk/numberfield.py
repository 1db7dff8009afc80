"""Towers of number fields over Q with exact arithmetic.

A tower is a chain Q = L_0 < L_1 < ... < L_s where each level adjoins
one generator with a monic minimal polynomial over the level below.
Elements live in a single flattened product power basis

    prod_i gen_i^(e_i),   0 <= e_i < deg_i,

so automorphism application is one matrix-vector product and subfield
membership (for a prefix of the tower) is a coordinate-support check.

Steps of degree <= 4 are certified irreducible at construction (full
factorization over the tower below); higher-degree steps are accepted
provisionally and any division failure on a nonzero element raises
ReducibleTowerError.
"""

from __future__ import annotations

import itertools

from .rational import QQ, QQ0, QQ1, left_fixed_space, qq, solve_right


class TowerError(ValueError):
    pass


class ReducibleTowerError(TowerError):
    """A provisional step turned out to be reducible (zero divisor found)."""


class TowerStep:
    __slots__ = ("name", "coeffs", "degree", "provisional")

    def __init__(self, name, coeffs, degree, provisional):
        self.name = name
        self.coeffs = coeffs  # tuple of sub-tower flat vectors, ascending
        self.degree = degree
        self.provisional = provisional


class FieldTower:
    """An explicit number field presented as a tower of monogenic steps."""

    def __init__(self):
        self.steps: list[TowerStep] = []
        self.degree = 1
        self._exponents = [()]
        self._index = {(): 0}
        self._mul_table: dict[tuple[int, int], tuple] = {}
        self._min_nested: list = []  # nested minpoly coeffs per level

    # -- construction -------------------------------------------------

    @classmethod
    def rationals(cls) -> "FieldTower":
        return cls()

    def extend(self, name: str, coeffs, check: bool = True) -> "FieldTower":
        """Return a new tower with one more step.

        ``coeffs`` are the non-leading coefficients (ascending) of the
        monic minimal polynomial; each may be a rational or an element
        of this tower.
        """
        if any(s.name == name for s in self.steps):
            raise TowerError("duplicate generator name %r" % name)
        degree = len(coeffs)
        if degree < 1:
            raise TowerError("step degree must be >= 1")
        vecs = tuple(self._coerce_vec(c) for c in coeffs)
        provisional = degree > 4
        if check and not provisional and degree > 1:
            from .polyfield import is_irreducible_over

            poly = [FieldElement(self, v) for v in vecs] + [self.one()]
            if not is_irreducible_over(self, poly):
                raise TowerError(
                    "step %r of degree %d is reducible over the tower below"
                    % (name, degree)
                )
        new = FieldTower.__new__(FieldTower)
        new.steps = self.steps + [TowerStep(name, vecs, degree, provisional)]
        new.degree = self.degree * degree
        new._exponents = [
            e + (k,) for k in range(degree) for e in self._exponents
        ]
        new._index = {e: i for i, e in enumerate(new._exponents)}
        new._mul_table = {}
        new._min_nested = []
        return new

    def _coerce_vec(self, value):
        if isinstance(value, FieldElement):
            if value.tower is not self:
                raise TowerError("tower mismatch in minimal polynomial")
            return value.coeffs
        vec = [QQ0] * self.degree
        vec[0] = qq(value)
        return tuple(vec)

    # -- basic data ----------------------------------------------------

    @property
    def names(self):
        return [s.name for s in self.steps]

    def level_degree(self, level: int) -> int:
        d = 1
        for s in self.steps[:level]:
            d *= s.degree
        return d

    def exponents(self, idx: int):
        return self._exponents[idx]

    def basis_size(self) -> int:
        return self.degree

    def is_prefix_index(self, idx: int, level: int) -> bool:
        return all(e == 0 for e in self._exponents[idx][level:])

    def describe(self) -> str:
        if not self.steps:
            return "Q"
        return "Q(" + ", ".join(self.names) + ")"

    # -- elements -------------------------------------------------------

    def zero(self) -> "FieldElement":
        return FieldElement(self, (QQ0,) * self.degree)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def from_rational(self, r) -> "FieldElement":
        vec = [QQ0] * self.degree
        vec[0] = qq(r)
        return FieldElement(self, tuple(vec))

    def from_coeffs(self, coeffs) -> "FieldElement":
        if len(coeffs) != self.degree:
            raise TowerError(
                "expected %d coefficients, got %d" % (self.degree, len(coeffs))
            )
        return FieldElement(self, tuple(qq(c) for c in coeffs))

    def gen(self, which) -> "FieldElement":
        if isinstance(which, str):
            which = self.names.index(which)
        exp = tuple(1 if i == which else 0 for i in range(len(self.steps)))
        vec = [QQ0] * self.degree
        vec[self._index[exp]] = QQ1
        return FieldElement(self, tuple(vec))

    def basis_monomial(self, idx: int) -> "FieldElement":
        vec = [QQ0] * self.degree
        vec[idx] = QQ1
        return FieldElement(self, tuple(vec))

    def basis(self):
        return [self.basis_monomial(i) for i in range(self.degree)]

    def embed_from_prefix(self, elem: "FieldElement", level: int) -> "FieldElement":
        """Embed an element of the level-`level` prefix tower into self."""
        sub_deg = elem.tower.degree
        if sub_deg != self.level_degree(level):
            raise TowerError("prefix level mismatch")
        vec = [QQ0] * self.degree
        vec[:sub_deg] = elem.coeffs
        return FieldElement(self, tuple(vec))

    def prefix_tower(self, level: int) -> "FieldTower":
        t = FieldTower.rationals()
        for s in self.steps[:level]:
            sub = t  # coefficients of step s live in the prefix below
            coeffs = [FieldElement(sub, c[: sub.degree]) for c in s.coeffs]
            t = t.extend(s.name, coeffs, check=False)
        return t

    # -- nested machinery ------------------------------------------------

    def _nested_minpolys(self):
        if not self._min_nested and self.steps:
            nested = []
            for lvl, s in enumerate(self.steps):
                nested.append([self._to_nested(c, lvl) for c in s.coeffs])
            self._min_nested = nested
        return self._min_nested

    def _to_nested(self, flat, level):
        """Flat vector over the level-`level` prefix -> nested value."""
        if level == 0:
            return flat[0]
        d_low = self.level_degree(level - 1)
        deg = self.steps[level - 1].degree
        return [
            self._to_nested(flat[k * d_low : (k + 1) * d_low], level - 1)
            for k in range(deg)
        ]

    def _to_flat(self, nested, level, out, offset):
        if level == 0:
            out[offset] = nested
            return
        d_low = self.level_degree(level - 1)
        for k, part in enumerate(nested):
            self._to_flat(part, level - 1, out, offset + k * d_low)

    def _nzero(self, level):
        if level == 0:
            return QQ0
        return [self._nzero(level - 1) for _ in range(self.steps[level - 1].degree)]

    def _nadd(self, a, b, level):
        if level == 0:
            return a + b
        return [self._nadd(x, y, level - 1) for x, y in zip(a, b)]

    def _nmul(self, a, b, level):
        if level == 0:
            return a * b
        deg = self.steps[level - 1].degree
        prod = [self._nzero(level - 1) for _ in range(2 * deg - 1)]
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                prod[i + j] = self._nadd(
                    prod[i + j], self._nmul(ai, bj, level - 1), level - 1
                )
        mins = self._nested_minpolys()[level - 1]
        for dpos in range(2 * deg - 2, deg - 1, -1):
            c = prod[dpos]
            for k in range(deg):
                term = self._nmul(c, mins[k], level - 1)
                prod[dpos - deg + k] = self._nsub(
                    prod[dpos - deg + k], term, level - 1
                )
        return prod[:deg]

    def _nsub(self, a, b, level):
        if level == 0:
            return a - b
        return [self._nsub(x, y, level - 1) for x, y in zip(a, b)]

    def _basis_product(self, i: int, j: int):
        """Sparse product of basis monomials i and j: list of (index, QQ)."""
        key = (i, j) if i <= j else (j, i)
        hit = self._mul_table.get(key)
        if hit is None:
            lvl = len(self.steps)
            a = self._to_nested(self.basis_monomial(key[0]).coeffs, lvl)
            b = self._to_nested(self.basis_monomial(key[1]).coeffs, lvl)
            prod = self._nmul(a, b, lvl) if lvl else a * b
            flat = [QQ0] * self.degree
            if lvl:
                # top-level nested value is a poly in the last generator
                self._to_flat(prod, lvl, flat, 0)
            else:
                flat[0] = prod
            hit = tuple((k, v) for k, v in enumerate(flat) if v != 0)
            self._mul_table[key] = hit
        return hit

    # -- arithmetic entry points -----------------------------------------

    def _mul(self, avec, bvec):
        out = [QQ0] * self.degree
        for i, ai in enumerate(avec):
            if ai == 0:
                continue
            for j, bj in enumerate(bvec):
                if bj == 0:
                    continue
                c = ai * bj
                for k, v in self._basis_product(i, j):
                    out[k] += c * v
        return tuple(out)

    def _mul_matrix(self, bvec):
        """Rows m -> coefficients of basis_m * b (for inversion solves)."""
        rows = []
        for m in range(self.degree):
            row = [QQ0] * self.degree
            for j, bj in enumerate(bvec):
                if bj == 0:
                    continue
                for k, v in self._basis_product(m, j):
                    row[k] += bj * v
            rows.append(row)
        return rows

    def _inverse(self, bvec):
        # solve x * b = 1 over the basis: columns of the transpose system
        rows = self._mul_matrix(bvec)
        # x @ rows = e0  <=>  rows^T @ x^T = e0
        mat = [[rows[r][c] for r in range(self.degree)] for c in range(self.degree)]
        rhs = [QQ1] + [QQ0] * (self.degree - 1)
        sol = solve_right(mat, rhs)
        if sol is None:
            if any(v != 0 for v in bvec) and any(s.provisional for s in self.steps):
                raise ReducibleTowerError(
                    "division failed on a nonzero element; a provisional "
                    "tower step is reducible"
                )
            raise ZeroDivisionError("division by zero field element")
        return tuple(sol)


class FieldElement:
    """An element of a FieldTower, stored in the flattened product basis."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, tower: FieldTower, coeffs):
        self.tower = tower
        self.coeffs = tuple(coeffs)

    def _check(self, other):
        if not isinstance(other, FieldElement):
            other = self.tower.from_rational(other)
        elif other.tower is not self.tower:
            raise TowerError("tower mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(
            self.tower, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.tower, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + self._check(other)

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.tower, self.tower._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def inverse(self) -> "FieldElement":
        return FieldElement(self.tower, self.tower._inverse(self.coeffs))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.tower.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.tower is other.tower and self.coeffs == other.coeffs
        if isinstance(other, (int, str)) or type(other).__name__ in ("mpq", "Fraction"):
            return self == self.tower.from_rational(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self == self.tower.one()

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise TowerError("element is not rational")
        return self.coeffs[0]

    def in_prefix(self, level: int) -> bool:
        """True iff the element lies in the level-`level` prefix subfield."""
        t = self.tower
        return all(
            c == 0 or t.is_prefix_index(i, level) for i, c in enumerate(self.coeffs)
        )

    def __repr__(self):
        t = self.tower
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "*".join(
                "%s^%d" % (n, e) if e > 1 else n
                for n, e in zip(t.names, t.exponents(i))
                if e
            )
            parts.append(("%s" % c) + ("*" + mono if mono else ""))
        return "<%s>" % (" + ".join(parts) or "0")


class FieldAutomorphism:
    """An automorphism of a tower, given by the images of the generators."""

    __slots__ = ("tower", "images", "matrix", "_mat_key")

    def __init__(self, tower: FieldTower, images, verify: bool = True, _matrix=None):
        self.tower = tower
        if _matrix is not None:
            self.images = images
            self.matrix = _matrix
        else:
            imgs = []
            for im in images:
                if not isinstance(im, FieldElement) or im.tower is not tower:
                    raise TowerError("automorphism images must lie in the tower")
                imgs.append(im)
            if len(imgs) != len(tower.steps):
                raise TowerError("one image per tower generator required")
            self.images = tuple(imgs)
            self.matrix = self._build_matrix()
        self._mat_key = tuple(self.matrix)
        if verify and _matrix is None:
            self._verify()

    def _build_matrix(self):
        t = self.tower
        pows = []
        for i, s in enumerate(t.steps):
            p = [t.one()]
            for _ in range(1, s.degree):
                p.append(p[-1] * self.images[i])
            pows.append(p)
        rows = []
        for idx in range(t.degree):
            acc = t.one()
            for i, e in enumerate(t.exponents(idx)):
                if e:
                    acc = acc * pows[i][e]
            rows.append(acc.coeffs)
        return tuple(rows)

    def _verify(self):
        t = self.tower
        for i, s in enumerate(t.steps):
            # the image must be a root of the (mapped) minimal polynomial
            acc = t.zero()
            x = t.one()
            for c in s.coeffs:
                coeff_full = t.from_coeffs(tuple(c) + (QQ0,) * (t.degree - len(c)))
                acc = acc + self.apply(coeff_full) * x
                x = x * self.images[i]
            acc = acc + x  # monic leading term
            if not acc.is_zero():
                raise TowerError(
                    "image of %r is not a root of its minimal polynomial"
                    % s.name
                )
        # multiplicativity against the spanning basis (generator slots
        # suffice: the matrix is built multiplicatively from the images,
        # and the root checks pin the reduction relations)
        gen_images = [(t.gen(i), self.images[i]) for i in range(len(t.steps))]
        for i in range(t.degree):
            bi = t.basis_monomial(i)
            fi = self.apply(bi)
            for gen, img in gen_images:
                if self.apply(bi * gen) != fi * img:
                    raise TowerError("automorphism is not multiplicative")

    @classmethod
    def identity(cls, tower: FieldTower) -> "FieldAutomorphism":
        gens = [tower.gen(i) for i in range(len(tower.steps))]
        rows = tuple(tower.basis_monomial(i).coeffs for i in range(tower.degree))
        return cls(tower, tuple(gens), verify=False, _matrix=rows)

    def apply(self, elem: FieldElement) -> FieldElement:
        if elem.tower is not self.tower:
            raise TowerError("tower mismatch")
        out = [QQ0] * self.tower.degree
        for m, c in enumerate(elem.coeffs):
            if c == 0:
                continue
            row = self.matrix[m]
            for k, v in enumerate(row):
                if v != 0:
                    out[k] += c * v
        return FieldElement(self.tower, tuple(out))

    def __call__(self, elem: FieldElement) -> FieldElement:
        return self.apply(elem)

    def after(self, other: "FieldAutomorphism") -> "FieldAutomorphism":
        """self o other (apply ``other`` first)."""
        if other.tower is not self.tower:
            raise TowerError("tower mismatch")
        rows = tuple(
            self.apply(FieldElement(self.tower, row)).coeffs for row in other.matrix
        )
        images = tuple(self.apply(im) for im in other.images)
        return FieldAutomorphism(self.tower, images, verify=False, _matrix=rows)

    def is_identity(self) -> bool:
        t = self.tower
        return all(
            self.matrix[i] == t.basis_monomial(i).coeffs for i in range(t.degree)
        )

    def order(self, bound: int = 64) -> int:
        acc = self
        for n in range(1, bound + 1):
            if acc.is_identity():
                return n
            acc = acc.after(self)
        raise TowerError("automorphism order exceeds bound %d" % bound)

    def inverse(self) -> "FieldAutomorphism":
        return self ** (self.order() - 1)

    def __pow__(self, n: int) -> "FieldAutomorphism":
        if n < 0:
            return self.inverse() ** (-n)
        acc = FieldAutomorphism.identity(self.tower)
        for _ in range(n):
            acc = acc.after(self)
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, FieldAutomorphism)
            and self.tower is other.tower
            and self._mat_key == other._mat_key
        )

    def __hash__(self):
        return hash(self._mat_key)

    def __repr__(self):
        ims = ", ".join(
            "%s->%r" % (n, im) for n, im in zip(self.tower.names, self.images)
        )
        return "<auto %s>" % ims


def generate_group(autos, bound: int = 64):
    """Close a list of automorphisms under composition (BFS)."""
    if not autos:
        return []
    tower = autos[0].tower
    seen = {FieldAutomorphism.identity(tower)._mat_key: FieldAutomorphism.identity(tower)}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for g in frontier:
            for a in autos:
                h = a.after(g)
                if h._mat_key not in seen:
                    if len(seen) >= bound:
                        raise TowerError("group generation exceeded bound %d" % bound)
                    seen[h._mat_key] = h
                    nxt.append(h)
        frontier = nxt
    return list(seen.values())


def is_composition_closed(autos) -> bool:
    keys = {a._mat_key for a in autos}
    return all(x.after(y)._mat_key in keys for x in autos for y in autos)


def relative_norm(a: FieldElement, subgroup) -> FieldElement:
    """Product of the conjugates of ``a`` under a finite automorphism group.

    The list must be closed under composition; the result is checked to be
    fixed by every listed automorphism.
    """
    if not subgroup:
        raise TowerError("empty automorphism list")
    if not is_composition_closed(subgroup):
        raise TowerError("automorphism list is not closed under composition")
    out = a.tower.one()
    for s in subgroup:
        out = out * s.apply(a)
    for s in subgroup:
        if s.apply(out) != out:
            raise TowerError("norm is not fixed by the group")
    return out


def hilbert90_witness(
    u: FieldElement, sigma: FieldAutomorphism, n: int, candidates=None
) -> FieldElement:
    """Return q with u = q / sigma(q), given that the sigma-norm of u is 1.

    Uses the classical resolvent sum over a deterministic sweep of basis
    candidates.  For u = 1 the witness 1 is returned directly.
    """
    t = u.tower
    if not (sigma ** n).is_identity():
        raise TowerError("automorphism does not have order dividing %d" % n)
    # prefix[i] = u * sigma(u) * ... * sigma^(i-1)(u)
    prefix = [t.one()]
    for i in range(1, n + 1):
        prefix.append(prefix[-1] * (sigma ** (i - 1)).apply(u))
    if not prefix[n].is_one():
        raise TowerError("norm of u along the cyclic group is not 1")
    if u.is_one():
        return t.one()
    sweep = candidates if candidates is not None else t.basis()
    powers = [sigma ** i for i in range(n)]
    for c in sweep:
        b = t.zero()
        for i in range(n):
            b = b + prefix[i] * powers[i].apply(c)
        if not b.is_zero():
            if b / sigma.apply(b) != u:
                raise AssertionError("resolvent postcondition failed")
            return b
    raise AssertionError("no nonzero resolvent found (independence of characters)")


def fixed_space(autos, tower: FieldTower):
    """Spanning set of the common fixed field of the listed automorphisms."""
    mats = [a.matrix for a in autos]
    basis = left_fixed_space(mats, tower.degree)
    return [FieldElement(tower, tuple(v)) for v in basis]


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Spec-surface arithmetic dispatcher (add | mul | div)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown op %r" % op)
