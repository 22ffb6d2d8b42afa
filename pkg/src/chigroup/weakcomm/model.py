from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..enumerator import DEFAULT_LIMIT, CosetTable, enumerate_cosets, regular_representation
from ..permsys import Perm, PermGroup, derived_subgroup, quotient
from ..words import Presentation, Word


class ConstructionError(RuntimeError):
    """An internal consistency check failed while building a group."""


class BudgetExceeded(RuntimeError):
    """A brute-force computation would exceed its configured budget."""


@dataclass(eq=False)
class FiniteGroupModel:
    """A finite group H given by a presentation, realized through its coset table.

    Elements are the points ``0..n-1`` of the regular representation (0 is
    the identity); ``words[p]`` is the shortlex-least word for point ``p``.
    """

    presentation: Presentation
    table: CosetTable
    group: PermGroup
    words: list[Word]
    mult: np.ndarray
    inv: np.ndarray
    derived: PermGroup
    derived_coset: np.ndarray
    transversal: list[int]
    name: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.table.index

    @property
    def rank(self) -> int:
        return self.presentation.rank

    def is_abelian(self) -> bool:
        return bool((self.mult == self.mult.T).all())

    def point_of(self, w: Word) -> int:
        return self.table.trace(0, w)

    def multiply(self, p: int, q: int) -> int:
        return int(self.mult[p, q])

    def conjugate(self, p: int, t: int) -> int:
        """Point of t^-1 p t."""
        return int(self.mult[self.mult[self.inv[t], p], t])

    def generator_points(self) -> list[int]:
        return [self.point_of(self.presentation.gen(i)) for i in range(self.rank)]

    def transversal_words(self) -> list[Word]:
        return [self.words[t] for t in self.transversal]

    def random_transversal(self, rng: random.Random) -> list[int]:
        """One uniformly chosen element from each coset of H'."""
        cosets: dict[int, list[int]] = {}
        for p in range(self.order):
            cosets.setdefault(int(self.derived_coset[p]), []).append(p)
        return [rng.choice(cosets[k]) for k in sorted(cosets)]

    def element_perm(self, p: int) -> Perm:
        return self.group.element(p)


def model_group(p: Presentation, budget: int = DEFAULT_LIMIT, name: str = "") -> FiniteGroupModel:
    table = enumerate_cosets(p, (), budget)
    group = regular_representation(table)
    words = table.element_words()
    n = table.index
    mult = np.empty((n, n), dtype=np.int64)
    for q in range(n):
        mult[:, q] = table.trace_all(words[q])
    inv = np.empty(n, dtype=np.int64)
    inv[np.nonzero(mult == 0)[0]] = np.nonzero(mult == 0)[1]
    derived = derived_subgroup(group)
    Q = quotient(group, derived)
    coset = Q.projection.point_map[:n].copy()
    transversal = []
    seen = set()
    # points are numbered in shortlex order, so the first hit per coset is shortlex-least
    for pt in range(n):
        k = int(coset[pt])
        if k not in seen:
            seen.add(k)
            transversal.append(pt)
    m = FiniteGroupModel(p, table, group, words, mult, inv, derived, coset, transversal, name)
    if len(m.transversal) * derived.order() != n:
        raise ConstructionError("transversal size does not match |H : H'|")
    return m
