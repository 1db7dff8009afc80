"""Finite group presentations: abelian and generalized dihedral only.

Elements are stored explicitly (|G| <= 16) with a multiplication table;
abelian elements are exponent tuples, generalized dihedral elements are
(exponent tuple, reflection bit) over the abelian part.
"""

from __future__ import annotations

import itertools


class GroupError(ValueError):
    pass


class FiniteGroup:
    def __init__(self, elements, mult, gens, h_indices, kind, theta_index=None):
        self.elements = list(elements)
        self.size = len(self.elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._mult = mult  # size x size table of indices
        self.gens = list(gens)  # (label, element index)
        self.h_indices = list(h_indices)  # canonical index-2 subgroup (or all)
        self.kind = kind
        self.theta_index = theta_index
        self.identity = self._index[self.elements[0]]

    @classmethod
    def abelian(cls, orders, labels=None) -> "FiniteGroup":
        orders = [int(r) for r in orders]
        if any(r < 1 for r in orders):
            raise GroupError("orders must be positive")
        labels = labels or ["g%d" % i for i in range(len(orders))]
        elements = [
            tuple(reversed(e))
            for e in itertools.product(*[range(r) for r in reversed(orders)])
        ]
        index = {e: i for i, e in enumerate(elements)}
        size = len(elements)
        mult = [[0] * size for _ in range(size)]
        for a in elements:
            for b in elements:
                c = tuple((x + y) % r for x, y, r in zip(a, b, orders))
                mult[index[a]][index[b]] = index[c]
        gens = [
            (labels[i], index[tuple(1 if j == i else 0 for j in range(len(orders)))])
            for i in range(len(orders))
            if orders[i] > 1
        ]
        return cls(elements, mult, gens, list(range(size)), "abelian")

    @classmethod
    def generalized_dihedral(cls, h_orders, labels=None) -> "FiniteGroup":
        """<H, t> with t^2 = 1 and t h t = h^-1; dihedral when H is cyclic."""
        h_orders = [int(r) for r in h_orders]
        labels = labels or ["h%d" % i for i in range(len(h_orders))]
        habs = [
            tuple(reversed(e))
            for e in itertools.product(*[range(r) for r in reversed(h_orders)])
        ]
        elements = [(h, 0) for h in habs] + [(h, 1) for h in habs]
        index = {e: i for i, e in enumerate(elements)}
        size = len(elements)
        mult = [[0] * size for _ in range(size)]
        for a, ea in elements:
            for b, eb in elements:
                if ea == 0:
                    h = tuple((x + y) % r for x, y, r in zip(a, b, h_orders))
                else:
                    h = tuple((x - y) % r for x, y, r in zip(a, b, h_orders))
                c = (h, (ea + eb) % 2)
                mult[index[(a, ea)]][index[(b, eb)]] = index[c]
        gens = [
            (
                labels[i],
                index[(tuple(1 if j == i else 0 for j in range(len(h_orders))), 0)],
            )
            for i in range(len(h_orders))
            if h_orders[i] > 1
        ]
        zero = tuple(0 for _ in h_orders)
        gens.append(("t", index[(zero, 1)]))
        h_indices = [index[(h, 0)] for h in habs]
        return cls(
            elements, mult, gens, h_indices, "generalized_dihedral",
            theta_index=index[(zero, 1)],
        )

    @classmethod
    def dihedral(cls, n: int) -> "FiniteGroup":
        return cls.generalized_dihedral([n])

    def mult(self, i: int, j: int) -> int:
        return self._mult[i][j]

    def inverse(self, i: int) -> int:
        for j in range(self.size):
            if self.mult(i, j) == self.identity:
                return j
        raise GroupError("no inverse found")

    def in_h(self, i: int) -> bool:
        return i in self._h_set()

    def _h_set(self):
        if not hasattr(self, "_h_cache"):
            self._h_cache = set(self.h_indices)
        return self._h_cache

    def subgroup_indices(self, gen_indices) -> list[int]:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gen_indices:
                    y = self.mult(g, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def is_index_two(self, indices) -> bool:
        sub = set(indices)
        if 2 * len(sub) != self.size:
            return False
        return all(
            self.mult(a, b) in sub for a in sub for b in sub
        )

    def non_h_elements(self):
        hs = self._h_set()
        return [i for i in range(self.size) if i not in hs]

    def describe(self) -> str:
        return "%s group of order %d" % (self.kind, self.size)
