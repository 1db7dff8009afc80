"""Finite abelian group calculus: ambients, subgroups, morphisms, quotients.

An ambient is prod_i Z/mods[i]; a subgroup is stored as the Hermite basis of
its preimage lattice in Z^N (which always contains diag(mods)).  Quotients
big/small are put into invariant-factor coordinates via mod-e Smith form,
with exact project and lift maps; e is the ambient exponent, and all
arithmetic stays within int64.
"""

from __future__ import annotations

from math import gcd, lcm

import numpy as np

from . import backend as K


class FinAbError(ValueError):
    pass


class FinAb:
    """Ambient finite abelian group prod Z/mods[i]."""

    def __init__(self, mods):
        self.mods = np.asarray(mods, dtype=np.int64)
        if self.mods.ndim != 1 or (self.mods < 1).any():
            raise FinAbError("moduli must be positive")
        self.n = int(self.mods.shape[0])
        self.exponent = 1
        for m in self.mods:
            self.exponent = lcm(self.exponent, int(m))

    def order(self) -> int:
        out = 1
        for m in self.mods:
            out *= int(m)
        return out

    def reduce(self, vec) -> np.ndarray:
        return np.asarray(vec, dtype=np.int64) % self.mods

    def zero(self) -> np.ndarray:
        return np.zeros(self.n, dtype=np.int64)

    def elements(self, cap: int = 1 << 20) -> np.ndarray:
        total = self.order()
        if total > cap:
            raise FinAbError("ambient too large to enumerate (%d)" % total)
        out = np.zeros((total, self.n), dtype=np.int64)
        idx = np.arange(total)
        for j in range(self.n):
            out[:, j] = idx % int(self.mods[j])
            idx //= int(self.mods[j])
        return out

    def __eq__(self, other):
        return isinstance(other, FinAb) and np.array_equal(self.mods, other.mods)

    def __repr__(self):
        return "<FinAb %s>" % self.mods.tolist()


class Morphism:
    """x |-> x @ mat from src to dst (row convention)."""

    def __init__(self, src: FinAb, dst: FinAb, mat, check: bool = True):
        self.src = src
        self.dst = dst
        self.mat = np.asarray(mat, dtype=np.int64) % dst.mods
        if self.mat.shape != (src.n, dst.n):
            raise FinAbError("morphism shape mismatch")
        if check:
            bad = (self.mat * self.src.mods[:, None]) % self.dst.mods[None, :]
            if bad.any():
                raise FinAbError("matrix does not define a morphism")

    def apply(self, vec) -> np.ndarray:
        return (np.asarray(vec, dtype=np.int64) @ self.mat) % self.dst.mods

    def then(self, other: "Morphism") -> "Morphism":
        if self.dst != other.src:
            raise FinAbError("composition mismatch")
        return Morphism(self.src, other.dst, self.mat @ other.mat)

    @classmethod
    def identity(cls, amb: FinAb) -> "Morphism":
        return cls(amb, amb, np.eye(amb.n, dtype=np.int64))

    def kernel(self) -> "Sublat":
        basis = K.kernel_mod(
            np.ascontiguousarray(self.mat.T), self.dst.mods, self.src.mods
        )
        return Sublat(self.src, basis)

    def image(self) -> "Sublat":
        return Sublat.from_gens(self.dst, self.mat)

    def is_automorphism(self) -> bool:
        if self.src != self.dst:
            return False
        if self.image() != Sublat.full(self.dst):
            return False
        return self.kernel() == Sublat.trivial(self.src)


class Sublat:
    """Subgroup of an ambient, as the Hermite basis of its preimage lattice."""

    def __init__(self, amb: FinAb, basis):
        self.amb = amb
        self.basis = np.asarray(basis, dtype=np.int64)

    @classmethod
    def from_gens(cls, amb: FinAb, gens) -> "Sublat":
        gens = np.asarray(gens, dtype=np.int64).reshape(-1, amb.n)
        if gens.size == 0:
            gens = np.zeros((1, amb.n), dtype=np.int64)
        return cls(amb, K.hermite_mod(np.ascontiguousarray(gens), amb.mods))

    @classmethod
    def trivial(cls, amb: FinAb) -> "Sublat":
        return cls(amb, np.diag(amb.mods))

    @classmethod
    def full(cls, amb: FinAb) -> "Sublat":
        return cls(amb, np.eye(amb.n, dtype=np.int64))

    def contains(self, vec) -> bool:
        return bool(
            K.lattice_contains(self.basis, self.amb.mods, self.amb.reduce(vec))
        )

    def contains_sublat(self, other: "Sublat") -> bool:
        return all(self.contains(row) for row in other.basis)

    def join(self, other: "Sublat") -> "Sublat":
        return Sublat.from_gens(self.amb, np.vstack([self.basis, other.basis]))

    def join_gens(self, gens) -> "Sublat":
        gens = np.asarray(gens, dtype=np.int64).reshape(-1, self.amb.n)
        return Sublat.from_gens(self.amb, np.vstack([self.basis, gens]))

    def order(self) -> int:
        out = 1
        for i in range(self.amb.n):
            out *= int(self.amb.mods[i]) // gcd(int(self.amb.mods[i]), int(self.basis[i, i]))
        return out

    def image_under(self, phi: Morphism) -> "Sublat":
        return Sublat.from_gens(phi.dst, (self.basis @ phi.mat) % phi.dst.mods)

    def elements(self, cap: int = 1 << 20) -> np.ndarray:
        if self.amb.order() > cap:
            raise FinAbError("ambient too large for subgroup enumeration")
        count, buf = K.closure_subgroup(
            np.ascontiguousarray(self.basis), self.amb.mods, self.amb.order()
        )
        if count < 0:
            raise FinAbError("closure overflow")
        return buf[:count]

    def __eq__(self, other):
        return (
            isinstance(other, Sublat)
            and self.amb == other.amb
            and np.array_equal(self.basis, other.basis)
        )

    def __repr__(self):
        return "<sublat order %d of %r>" % (self.order(), self.amb)


class Quotient:
    """big/small with invariant factors and exact project/lift maps."""

    def __init__(self, big: Sublat, small: Sublat, check: bool = True):
        if big.amb != small.amb:
            raise FinAbError("quotient ambient mismatch")
        if check and not big.contains_sublat(small):
            raise FinAbError("not a subgroup")
        self.amb = big.amb
        self.big = big
        self.small = small
        e = self.amb.exponent
        self.e = e
        # coordinates on big/eZ^N: SNF of big's basis
        diag_b, Vb, Vb_inv = K.snf_mod(np.ascontiguousarray(big.basis), e)
        self._lb = np.array([gcd(int(d), e) for d in diag_b], dtype=np.int64)
        self._Vb = Vb
        self._Vb_inv = Vb_inv
        self._tmods = np.array([e // int(l) for l in self._lb], dtype=np.int64)
        # relations: images of small's basis in the t-coordinates
        rel = np.array([self._tcoords(row) for row in small.basis], dtype=np.int64)
        tamb_mods = self._tmods
        diag_r, Vr, Vr_inv = K.snf_mod(
            np.ascontiguousarray(np.vstack([rel, np.diag(tamb_mods)])), e
        )
        self._Vr = Vr
        self._Vr_inv = Vr_inv
        self._dr = np.array([gcd(int(d), e) for d in diag_r], dtype=np.int64)
        self._keep = [i for i in range(len(self._dr)) if self._dr[i] > 1]
        self.invariants = tuple(
            sorted((int(self._dr[i]) for i in self._keep))
        )

    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return not self.invariants

    def _tcoords(self, vec) -> np.ndarray:
        """Coordinates of a big-element on big/eZ^N (exact, int64-safe)."""
        t = (np.asarray(vec, dtype=np.int64) @ self._Vb) % self.e
        if (t % self._lb).any():
            raise FinAbError("vector is not in the big subgroup (mod e)")
        return (t // self._lb) % self._tmods

    def project(self, vec):
        """Invariant-factor coordinates of the class of vec (in big)."""
        t = self._tcoords(self.amb.reduce(vec))
        z = (t @ self._Vr) % self.e
        return tuple(int(z[i] % self._dr[i]) for i in self._keep)

    def lift(self, coords) -> np.ndarray:
        """An ambient representative of the class with the given coordinates."""
        z = np.zeros(len(self._dr), dtype=np.int64)
        for pos, i in enumerate(self._keep):
            z[i] = coords[pos] % self._dr[i]
        t = (z @ self._Vr_inv) % self.e
        x = ((t * self._lb) @ self._Vb_inv) % self.e
        return self.amb.reduce(x)

    def project_many(self, vecs):
        return [self.project(v) for v in vecs]

    def zero_class(self):
        return tuple(0 for _ in self._keep)

    def __repr__(self):
        return "<quotient invariants %s>" % (list(self.invariants),)


def invariants_key(invs) -> tuple:
    return tuple(sorted(int(d) for d in invs if int(d) > 1))


class FinQuotGroup:
    """A quotient with group structure on coordinate tuples (for reports)."""

    def __init__(self, q: Quotient):
        self.q = q
        self.mods = [int(q._dr[i]) for i in q._keep]

    def add(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.mods))

    def neg(self, a):
        return tuple((-x) % m for x, m in zip(a, self.mods))

    def scale(self, a, n):
        return tuple((x * n) % m for x, m in zip(a, self.mods))


def solve_affine(src: FinAb, dst: FinAb, mat, rhs):
    """One x with x @ mat == rhs (mod dst.mods), or None.

    Solved by adjoining a scale unknown s with modulus e (the combined
    exponent): (x, s) in the kernel of [mat; -rhs], then a Euclidean
    combination with s == 1 mod e.  Because dst.mods divide e, s only
    matters mod e.
    """
    mat = np.asarray(mat, dtype=np.int64)
    rhs = np.asarray(rhs, dtype=np.int64)
    if ((mat * src.mods[:, None]) % dst.mods[None, :]).any():
        raise FinAbError("solve_affine: matrix is not a morphism")
    e = lcm(src.exponent, dst.exponent)
    n = src.n
    congs = np.zeros((dst.n, n + 1), dtype=np.int64)
    congs[:, :n] = mat.T
    congs[:, n] = -rhs % dst.mods
    aug_mods = np.concatenate([src.mods, [e]]).astype(np.int64)
    basis = K.kernel_mod(
        np.ascontiguousarray(congs), dst.mods, aug_mods
    )
    # euclidean combination of rows with s-component gcd'ing to a unit mod e
    cur = None
    cur_s = 0
    for row in basis:
        s = int(row[n]) % e
        if s == 0:
            continue
        if cur is None:
            cur = row.copy()
            cur_s = s
            continue
        g, a, b = _ext_gcd_py(cur_s, s)
        cur = (a * cur + b * row) % aug_mods
        cur_s = g
    if cur is None:
        cur = np.zeros(n + 1, dtype=np.int64)
        cur_s = 0
    g, inv, _ = _ext_gcd_py(cur_s, e)
    if g != 1:
        return None
    x = (cur[:n] * inv) % src.mods
    if not np.array_equal((x @ mat) % dst.mods, rhs % dst.mods):
        return None
    return x


def _ext_gcd_py(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def subgroup_generated_quotient(q: Quotient, coord_gens):
    """Invariant factors of q / <coord_gens> via relations in q-coordinates."""
    mods = np.array([int(q._dr[i]) for i in q._keep], dtype=np.int64)
    if mods.size == 0:
        return ()
    e = q.e
    rel = np.array([list(g) for g in coord_gens], dtype=np.int64).reshape(
        -1, mods.size
    )
    rel = np.vstack([rel, np.diag(mods)])
    diag, _, _ = K.snf_mod(np.ascontiguousarray(rel), e)
    return invariants_key([gcd(int(d), e) for d in diag])
