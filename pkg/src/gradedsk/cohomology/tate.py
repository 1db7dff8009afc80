"""Tate cohomology of finite modules in degrees -1..2, with oracles.

Degrees -1 and 0 are norm kernels and fixed points; degrees 1 and 2 use
the normalized bar resolution with dense integer matrices.  Brute-force
element-enumeration oracles, the Shapiro comparison, and the twisted long
exact sequence live here as well.
"""

from __future__ import annotations

import itertools
from math import gcd, lcm

import numpy as np

from . import backend as K
from .finab import (
    FinAb,
    FinAbError,
    Morphism,
    Quotient,
    Sublat,
    invariants_key,
    subgroup_generated_quotient,
)
from .groups import FiniteGroup
from .module import FiniteGModule, ModuleError

BAR_CELL_BOUND = 1 << 23  # total matrix entries allowed for a coboundary


class CohomologyResult:
    """Invariant factors plus a section from classes to representatives."""

    def __init__(self, degree, quotient: Quotient, kind, tuples=None, module=None):
        self.degree = degree
        self.quotient = quotient
        self.invariants = quotient.invariants
        self.kind = kind  # "element" or "cochain"
        self.tuples = tuples
        self.module = module

    def order(self) -> int:
        return self.quotient.order()

    def lift(self, coords):
        return self.quotient.lift(coords)

    def project(self, rep):
        return self.quotient.project(rep)

    def generator_classes(self):
        out = []
        for pos in range(len(self.invariants)):
            c = [0] * len(self.invariants)
            c[pos] = 1
            out.append(tuple(c))
        return out

    def __repr__(self):
        return "<H^%s invariants %s>" % (self.degree, list(self.invariants))


def nonidentity_tuples(group: FiniteGroup, n: int):
    non = [i for i in range(group.size) if i != group.identity]
    return list(itertools.product(non, repeat=n))


def cochain_ambient(module: FiniteGModule, n: int) -> FinAb:
    t = len(nonidentity_tuples(module.group, n))
    return FinAb(np.tile(module.amb.mods, t))


def coboundary_matrix(module: FiniteGModule, n: int) -> np.ndarray:
    """Dense matrix of d: C^n -> C^(n+1) on normalized inhomogeneous cochains."""
    if n < 1:
        raise ModuleError("coboundary_matrix needs n >= 1")
    g = module.group
    amb = module.amb
    src_tuples = nonidentity_tuples(g, n)
    dst_tuples = nonidentity_tuples(g, n + 1)
    src_index = {t: i for i, t in enumerate(src_tuples)}
    m = amb.n
    rows = len(src_tuples) * m
    cols = len(dst_tuples) * m
    if rows * cols > BAR_CELL_BOUND:
        raise ModuleError("bar-resolution size bound exceeded")
    D = np.zeros((rows, cols), dtype=np.int64)
    for ti, T in enumerate(dst_tuples):
        base_c = ti * m
        # leading term: g1 . c(g2..g_{n+1}); the tail has no identity entries
        head, tail = T[0], T[1:]
        si = src_index[tail] * m
        D[si : si + m, base_c : base_c + m] += module.actions[head]
        # middle terms
        for k in range(1, n + 1):
            merged = g.mult(T[k - 1], T[k])
            if merged == g.identity:
                continue
            S = T[: k - 1] + (merged,) + T[k + 1 :]
            si = src_index[S] * m
            sign = -1 if k % 2 == 1 else 1
            D[si : si + m, base_c : base_c + m] += sign * np.eye(m, dtype=np.int64)
        # trailing term
        S = T[:n]
        if n > 0:
            si = src_index[S] * m
            sign = -1 if (n + 1) % 2 == 1 else 1
            D[si : si + m, base_c : base_c + m] += sign * np.eye(m, dtype=np.int64)
    return D % np.tile(amb.mods, len(dst_tuples))


def _coboundary_from_c0(module: FiniteGModule) -> np.ndarray:
    """d: C^0 = A -> C^1, (dc)(g) = g.a - a."""
    g = module.group
    tuples = nonidentity_tuples(g, 1)
    m = module.amb.n
    D = np.zeros((m, len(tuples) * m), dtype=np.int64)
    eye = np.eye(m, dtype=np.int64)
    for ti, (gi,) in enumerate(tuples):
        D[:, ti * m : (ti + 1) * m] = (module.actions[gi] - eye)
    return D % np.tile(module.amb.mods, len(tuples))


def tate(i: int, module: FiniteGModule) -> CohomologyResult:
    """Tate cohomology in degree i in {-1, 0, 1, 2} with representative lifts."""
    amb = module.amb
    if i == -1:
        norm = Morphism(amb, amb, module.norm_matrix(), check=False)
        Z = norm.kernel()
        B = module.augmentation_sublat()
        return CohomologyResult(-1, Quotient(Z, B), "element", module=module)
    if i == 0:
        Z = module.fixed_sublat(range(module.group.size))
        B = Sublat.from_gens(amb, module.norm_matrix())
        return CohomologyResult(0, Quotient(Z, B), "element", module=module)
    if i in (1, 2):
        n = i
        D_up = coboundary_matrix(module, n)
        camb = cochain_ambient(module, n)
        upamb = cochain_ambient(module, n + 1)
        Z = Morphism(camb, upamb, D_up, check=False).kernel()
        if n == 1:
            D_dn = _coboundary_from_c0(module)
        else:
            D_dn = coboundary_matrix(module, n - 1)
        B = Sublat.from_gens(camb, D_dn)
        return CohomologyResult(
            n, Quotient(Z, B), "cochain",
            tuples=nonidentity_tuples(module.group, n), module=module,
        )
    raise ModuleError("tate degree must be in {-1, 0, 1, 2}")


# ---------------------------------------------------------------------------
# brute-force oracles


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _int_log(p: int, x: int) -> int:
    k = 0
    while x > 1 and x % p == 0:
        x //= p
        k += 1
    return k


def _invariants_from_orders(orders) -> tuple:
    """Invariant factors of a finite abelian group from its element orders.

    For each prime p, counting elements of order dividing p^k recovers the
    conjugate partition of the p-exponent multiset; aligning the largest
    exponents across primes yields the divisibility chain.
    """
    total = len(orders)
    if total <= 1:
        return ()
    mus = {}
    for p in _prime_factors(total):
        f_prev = 1  # only the identity has order dividing p^0
        mu = []
        k = 1
        while True:
            fk = sum(1 for o in orders if (p**k) % o == 0)
            step = _int_log(p, fk // f_prev)
            if step == 0:
                break
            mu.append(step)
            f_prev = fk
            k += 1
        mus[p] = mu
    nfac = max((mu[0] for mu in mus.values() if mu), default=0)
    invs = []
    for pos in range(nfac):  # position 0 = largest invariant factor
        d = 1
        for p, mu in mus.items():
            expo = sum(1 for kk in range(len(mu)) if mu[kk] > pos)
            d *= p**expo
        invs.append(d)
    return invariants_key(invs)


def brute_quotient_invariants(kernel_elems: np.ndarray, sub_elems: np.ndarray,
                              mods: np.ndarray) -> tuple:
    """Invariant factors of <kernel_elems>/<sub_elems> by element counting."""
    keys = K.min_coset_keys(
        np.ascontiguousarray(kernel_elems), np.ascontiguousarray(sub_elems), mods
    )
    reps = {}
    for idx, key in enumerate(keys):
        if key not in reps:
            reps[int(key)] = kernel_elems[idx]
    sub_keys = set(K.ravel_elements(np.ascontiguousarray(sub_elems), mods).tolist())
    orders = []
    for rep in reps.values():
        t = 1
        acc = rep % mods
        while True:
            key = int(K.ravel_elements(acc.reshape(1, -1), mods)[0])
            if key in sub_keys:
                break
            acc = (acc + rep) % mods
            t += 1
            if t > 1 << 17:
                raise ModuleError("coset order runaway")
        orders.append(t)
    return _invariants_from_orders(orders)


def brute_tate(i: int, module: FiniteGModule, cap: int = 1 << 11) -> tuple:
    """Element-enumeration values of tate(-1) and tate(0) invariants."""
    amb = module.amb
    if amb.order() > cap:
        raise ModuleError("module too large for the brute-force oracle")
    elems = amb.elements()
    if i == -1:
        norm = module.norm_matrix()
        vals = (elems @ norm) % amb.mods
        kern = elems[(vals == 0).all(axis=1)]
        sub = module.augmentation_sublat().elements()
    elif i == 0:
        keep = np.ones(len(elems), dtype=bool)
        for gi in range(module.group.size):
            keep &= ((elems @ module.actions[gi]) % amb.mods == elems).all(axis=1)
        kern = elems[keep]
        sub = Sublat.from_gens(amb, module.norm_matrix()).elements()
    else:
        raise ModuleError("brute oracle only covers degrees -1 and 0")
    return brute_quotient_invariants(kern, sub, amb.mods)


# ---------------------------------------------------------------------------
# comparisons and sequences


def herbrand_check(module: FiniteGModule) -> bool:
    """|H^0| == |H^-1| for modules over cyclic groups."""
    return tate(0, module).order() == tate(-1, module).order()


def shapiro_check(module: FiniteGModule, degrees=(-1, 0, 1, 2)) -> bool:
    """Invariants of H^i(G, Ind A) match H^i(H, A) for i in degrees."""
    ind = module.induce_from_h()
    res, _ = module.h_restriction()
    for i in degrees:
        if invariants_key(tate(i, ind).invariants) != invariants_key(
            tate(i, res).invariants
        ):
            return False
    return True
