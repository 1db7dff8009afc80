"""Seeded random finite modules for the cohomology sweeps.

Recipes are permutation modules on subgroup cosets, sign characters,
direct sums, and conjugation by random automorphisms of the underlying
group; relations hold by construction and are re-verified on assembly.
Regular modules of the whole group satisfy the degree-1 vanishing
hypotheses needed by the dihedral pipelines.
"""

from __future__ import annotations

import random
from math import gcd

import numpy as np

from .finab import FinAb
from .groups import FiniteGroup
from .module import FiniteGModule


def coset_permutation_module(group: FiniteGroup, sub_indices, d: int,
                             sign_on_reflection: bool = False) -> FiniteGModule:
    """Z/d on the cosets of a subgroup, optionally sign-twisted outside H."""
    cosets = []
    seen = set()
    sub = list(sub_indices)
    for i in range(group.size):
        if i in seen:
            continue
        coset = sorted(group.mult(i, s) for s in sub)
        for x in coset:
            seen.add(x)
        cosets.append(tuple(coset))
    pos = {c: k for k, c in enumerate(cosets)}
    n = len(cosets)
    hset = set(group.h_indices)

    def act_matrix(gi):
        m = np.zeros((n, n), dtype=np.int64)
        s = -1 if (sign_on_reflection and gi not in hset) else 1
        for k, coset in enumerate(cosets):
            img = tuple(sorted(group.mult(gi, x) for x in coset))
            m[k, pos[img]] = s
        return m

    gen_actions = {label: act_matrix(gi) for label, gi in group.gens}
    return FiniteGModule(group, FinAb([d] * n), gen_actions=gen_actions)


def regular_module(group: FiniteGroup, d: int) -> FiniteGModule:
    return coset_permutation_module(group, [group.identity], d)


def trivial_module(group: FiniteGroup, d: int) -> FiniteGModule:
    eye = np.array([[1]], dtype=np.int64)
    gen_actions = {label: eye for label, _ in group.gens}
    return FiniteGModule(group, FinAb([d]), gen_actions=gen_actions)


def sign_module(group: FiniteGroup, d: int) -> FiniteGModule:
    """Z/d with the reflection acting by -1 (needs an index-2 subgroup)."""
    hset = set(group.h_indices)
    gen_actions = {
        label: np.array([[1 if gi in hset else -1]], dtype=np.int64)
        for label, gi in group.gens
    }
    return FiniteGModule(group, FinAb([d]), gen_actions=gen_actions)


def direct_sum(a: FiniteGModule, b: FiniteGModule) -> FiniteGModule:
    if a.group is not b.group:
        raise ValueError("direct sum needs a shared group")
    amb = FinAb(np.concatenate([a.amb.mods, b.amb.mods]))
    acts = []
    for i in range(a.group.size):
        blk = np.zeros((a.amb.n + b.amb.n, a.amb.n + b.amb.n), dtype=np.int64)
        blk[: a.amb.n, : a.amb.n] = a.actions[i]
        blk[a.amb.n :, a.amb.n :] = b.actions[i]
        acts.append(blk)
    return FiniteGModule(a.group, amb, elem_actions=acts)


def random_ambient_automorphism(amb: FinAb, rng: random.Random) -> np.ndarray:
    """A random automorphism of the ambient (elementary transvections)."""
    n = amb.n
    u = np.eye(n, dtype=np.int64)
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        # adding c * (row j <- row i) is a morphism iff mods[i]*c == 0 mod mods[j]
        step = int(amb.mods[j]) // gcd(int(amb.mods[i]), int(amb.mods[j]))
        c = step * rng.randrange(0, max(1, int(amb.mods[j]) // max(step, 1)))
        if c == 0:
            continue
        t = np.eye(n, dtype=np.int64)
        t[i, j] = c
        u = (u @ t) % amb.mods
    return u


def conjugate_module(module: FiniteGModule, u: np.ndarray) -> FiniteGModule:
    """Transport the action along an ambient automorphism."""
    from .finab import Morphism, Sublat

    amb = module.amb
    mor = Morphism(amb, amb, u)
    if not mor.is_automorphism():
        raise ValueError("conjugation matrix is not an automorphism")
    # inverse by column solves
    from .finab import solve_affine

    eye = np.eye(amb.n, dtype=np.int64)
    rows = []
    for c in range(amb.n):
        x = solve_affine(amb, amb, u, eye[c] % amb.mods)
        rows.append(x)
    uinv = np.array(rows, dtype=np.int64)
    acts = [(uinv @ m @ u) % amb.mods for m in module.actions]
    return FiniteGModule(module.group, amb, elem_actions=acts,
                         designated=None, check=True)


def random_module(group: FiniteGroup, rng: random.Random,
                  max_order: int = 512) -> FiniteGModule:
    """A seeded random module with |A| <= max_order."""
    from .module import ModuleError

    for _ in range(200):
        try:
            pieces = []
            for _ in range(rng.randrange(1, 3)):
                kind = rng.choice(["coset", "trivial", "sign", "regular"])
                d = rng.choice([2, 2, 3, 4, 5, 8])
                if kind == "coset":
                    gen_pool = [gi for _, gi in group.gens]
                    k = rng.randrange(0, len(gen_pool) + 1)
                    sub = group.subgroup_indices(
                        rng.sample(gen_pool, k) if k else []
                    )
                    ncosets = group.size // len(sub)
                    if d**ncosets > max_order:
                        continue
                    m = coset_permutation_module(
                        group, sub, d, sign_on_reflection=rng.random() < 0.3
                    )
                elif kind == "regular":
                    if 2**group.size > max_order:
                        continue
                    m = regular_module(group, 2)
                elif kind == "sign":
                    m = sign_module(group, d)
                else:
                    m = trivial_module(group, d)
                pieces.append(m)
            if not pieces:
                continue
            mod = pieces[0]
            for extra in pieces[1:]:
                if mod.amb.order() * extra.amb.order() > max_order:
                    break
                mod = direct_sum(mod, extra)
        except ModuleError:
            continue
        if mod.amb.order() <= max_order:
            if rng.random() < 0.5:
                u = random_ambient_automorphism(mod.amb, rng)
                try:
                    mod = conjugate_module(mod, u)
                except ValueError:
                    pass
            return mod
    raise ValueError("could not build a module within the size bound")


def hypothesis_friendly_module(group: FiniteGroup, rng: random.Random,
                               max_order: int = 512) -> FiniteGModule:
    """Random module with vanishing degree-1 hypotheses (regular flavors)."""
    from .dihedral import check_h1_hypotheses, HypothesisError

    for _ in range(40):
        d = rng.choice([2, 3, 4, 5])
        mod = regular_module(group, d)
        if mod.amb.order() > max_order:
            continue
        if rng.random() < 0.5:
            u = random_ambient_automorphism(mod.amb, rng)
            try:
                mod = conjugate_module(mod, u)
            except ValueError:
                pass
        try:
            check_h1_hypotheses(mod)
            return mod
        except HypothesisError:
            continue
    raise ValueError("no hypothesis-satisfying module found")
