"""Finite G-modules with explicit action matrices, twisting, and induction."""

from __future__ import annotations

import numpy as np

from .finab import FinAb, FinAbError, Morphism, Quotient, Sublat
from .groups import FiniteGroup, GroupError

GROUP_SIZE_BOUND = 16
MODULE_SIZE_BOUND = 1 << 16


class ModuleError(ValueError):
    pass


class FiniteGModule:
    """A finite abelian group with one action matrix per group element.

    ``gen_actions`` maps generator labels to matrices (row convention:
    a |-> a @ M); per-element matrices are composed along the Cayley graph
    and the entire multiplication table is verified as matrix identities.
    """

    def __init__(self, group: FiniteGroup, amb: FinAb, gen_actions=None,
                 elem_actions=None, designated=None, check: bool = True):
        if group.size > GROUP_SIZE_BOUND:
            raise ModuleError("group order exceeds bound %d" % GROUP_SIZE_BOUND)
        if amb.order() > MODULE_SIZE_BOUND:
            raise ModuleError("module order exceeds bound %d" % MODULE_SIZE_BOUND)
        self.group = group
        self.amb = amb
        if elem_actions is not None:
            self.actions = [np.asarray(m, dtype=np.int64) % amb.mods for m in elem_actions]
        else:
            self.actions = self._build_actions(gen_actions or {})
        self.designated = designated or {}
        if check:
            self._verify()

    def _build_actions(self, gen_actions):
        g = self.group
        acts: list = [None] * g.size
        acts[g.identity] = np.eye(self.amb.n, dtype=np.int64) % self.amb.mods
        frontier = [g.identity]
        gen_mats = {}
        for label, gi in g.gens:
            m = gen_actions.get(label)
            if m is None:
                raise ModuleError("missing action for generator %r" % label)
            gen_mats[gi] = np.asarray(m, dtype=np.int64) % self.amb.mods
        while frontier:
            nxt = []
            for x in frontier:
                for gi, mg in gen_mats.items():
                    y = g.mult(gi, x)
                    if acts[y] is None:
                        # action of (g * x): apply x then g
                        acts[y] = (acts[x] @ mg) % self.amb.mods
                        nxt.append(y)
            frontier = nxt
        if any(a is None for a in acts):
            raise ModuleError("generators do not generate the group")
        return acts

    def _verify(self):
        amb = self.amb
        for i, m in enumerate(self.actions):
            mor = Morphism(amb, amb, m)  # checks well-definedness
            if not mor.is_automorphism():
                raise ModuleError("action of element %d is not an automorphism" % i)
        g = self.group
        for i in range(g.size):
            for j in range(g.size):
                # act by j then i  ==  act by (i * j)
                lhs = (self.actions[j] @ self.actions[i]) % amb.mods
                if not np.array_equal(lhs, self.actions[g.mult(i, j)]):
                    raise ModuleError(
                        "multiplication table fails at (%d, %d)" % (i, j)
                    )
        for name, sub in self.designated.items():
            fix = self.fixed_sublat(
                self.group.h_indices if name == "k_part" else range(self.group.size)
            )
            for row in sub.basis:
                if not fix.contains(row):
                    raise ModuleError(
                        "designated %s is not fixed by its subgroup" % name
                    )

    # -- basic maps -------------------------------------------------------

    def act(self, gi: int, vec) -> np.ndarray:
        return (np.asarray(vec, dtype=np.int64) @ self.actions[gi]) % self.amb.mods

    def action_morphism(self, gi: int) -> Morphism:
        return Morphism(self.amb, self.amb, self.actions[gi], check=False)

    def norm_matrix(self, indices=None) -> np.ndarray:
        idx = range(self.group.size) if indices is None else indices
        out = np.zeros((self.amb.n, self.amb.n), dtype=np.int64)
        for i in idx:
            out = (out + self.actions[i]) % self.amb.mods
        return out

    def fixed_sublat(self, indices) -> Sublat:
        eye = np.eye(self.amb.n, dtype=np.int64)
        congs = []
        cmods = []
        for i in indices:
            diff = (self.actions[i] - eye) % self.amb.mods
            for c in range(self.amb.n):
                congs.append(diff[:, c])
                cmods.append(int(self.amb.mods[c]))
        if not congs:
            return Sublat.full(self.amb)
        from . import backend as K

        basis = K.kernel_mod(
            np.ascontiguousarray(np.array(congs, dtype=np.int64)),
            np.array(cmods, dtype=np.int64),
            self.amb.mods,
        )
        return Sublat(self.amb, basis)

    def augmentation_sublat(self, indices=None) -> Sublat:
        idx = range(self.group.size) if indices is None else indices
        eye = np.eye(self.amb.n, dtype=np.int64)
        rows = [
            (self.actions[i] - eye) % self.amb.mods for i in idx
        ]
        return Sublat.from_gens(self.amb, np.vstack(rows))

    # -- constructions ----------------------------------------------------

    def twist(self, h_indices=None) -> "FiniteGModule":
        """Negate the action outside an index-2 subgroup (default canonical)."""
        hs = list(self.group.h_indices if h_indices is None else h_indices)
        if not self.group.is_index_two(hs):
            raise ModuleError("twisting subgroup does not have index 2")
        hset = set(hs)
        acts = [
            self.actions[i] if i in hset else (-self.actions[i]) % self.amb.mods
            for i in range(self.group.size)
        ]
        return FiniteGModule(self.group, self.amb, elem_actions=acts, check=True)

    def induce_from_h(self) -> "FiniteGModule":
        """Ind_{H -> G} of the restriction to the canonical subgroup H."""
        g = self.group
        hs = set(g.h_indices)
        if not g.is_index_two(g.h_indices):
            raise ModuleError("canonical subgroup is not index 2")
        theta = g.theta_index
        if theta is None:
            theta = next(i for i in range(g.size) if i not in hs)
        n = self.amb.n
        amb2 = FinAb(np.concatenate([self.amb.mods, self.amb.mods]))
        theta_inv = g.inverse(theta)
        acts = []
        for gi in range(g.size):
            blk = np.zeros((2 * n, 2 * n), dtype=np.int64)
            if gi in hs:
                blk[:n, :n] = self.actions[gi]
                conj = g.mult(g.mult(theta_inv, gi), theta)
                blk[n:, n:] = self.actions[conj]
            else:
                blk[:n, n:] = self.actions[g.mult(theta_inv, gi)]
                blk[n:, :n] = self.actions[g.mult(gi, theta)]
            acts.append(blk)
        return FiniteGModule(self.group, amb2, elem_actions=acts, check=True)

    def restrict_to_subgroup(self, indices, orders_labels) -> "FiniteGModule":
        """View over an abelian subgroup given by generator indices."""
        sub = FiniteGroup.abelian([o for _, o in orders_labels],
                                  [l for l, _ in orders_labels])
        gen_actions = {}
        for (label, _), gi in zip(orders_labels, indices):
            gen_actions[label] = self.actions[gi]
        return FiniteGModule(sub, self.amb, gen_actions=gen_actions, check=True)

    def h_restriction(self):
        """Restriction to the canonical index-2 subgroup, with the element
        correspondence: returns (submodule, list mapping subgroup element
        index -> this group's element index)."""
        g = self.group
        if g.kind != "generalized_dihedral":
            raise ModuleError(
                "canonical restriction needs a generalized dihedral group"
            )
        h_orders = []
        gen_pairs = []
        for label, gi in g.gens:
            if label == "t":
                continue
            order = 1
            acc = gi
            while acc != g.identity:
                acc = g.mult(gi, acc)
                order += 1
            h_orders.append((label, order))
            gen_pairs.append(gi)
        sub_module = self.restrict_to_subgroup(gen_pairs, h_orders)
        # element correspondence by matching products of generators
        mapping = []
        for el in sub_module.group.elements:
            gi = g.identity
            for exp, hg in zip(el, gen_pairs):
                for _ in range(exp):
                    gi = g.mult(hg, gi)
            mapping.append(gi)
        return sub_module, mapping

    def describe(self) -> str:
        return "module %s over %s" % (self.amb.mods.tolist(), self.group.describe())
