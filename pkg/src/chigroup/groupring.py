"""The integral group ring ZH, its augmentation ideal A(H) and the quotient A(H)/I_2(H).

I_2(H) is the two-sided ideal generated by the squares (h - 1)^2.  As an
abelian group it is spanned by a (h - 1)^2 b for a, b, h in H.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .weakcomm.model import BudgetExceeded, FiniteGroupModel
from .weakcomm.report import CheckReport
from .zlin import InvariantFactors, Lattice, invariants_from_relations

TRIPLE_BUDGET = 200_000


class ModelMismatch(ValueError):
    """Group ring elements attached to different groups were combined."""


@dataclass(frozen=True, eq=False)
class GroupRingVector:
    """A finitely supported integer combination of elements of H (points of its model)."""

    model: FiniteGroupModel
    coeffs: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for p, c in self.coeffs.items():
            p, c = int(p), int(c)
            if not 0 <= p < self.model.order:
                raise ValueError(f"element index {p} out of range")
            if c:
                clean[p] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def element(cls, m: FiniteGroupModel, p: int, c: int = 1) -> "GroupRingVector":
        return cls(m, {p: c})

    @classmethod
    def one(cls, m: FiniteGroupModel) -> "GroupRingVector":
        return cls(m, {0: 1})

    def _check(self, other: "GroupRingVector") -> None:
        if other.model is not self.model:
            raise ModelMismatch("group ring elements belong to different groups")

    def __add__(self, other: "GroupRingVector") -> "GroupRingVector":
        self._check(other)
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, 0) + c
        return GroupRingVector(self.model, out)

    def __neg__(self) -> "GroupRingVector":
        return GroupRingVector(self.model, {p: -c for p, c in self.coeffs.items()})

    def __sub__(self, other: "GroupRingVector") -> "GroupRingVector":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupRingVector":
        return GroupRingVector(self.model, {p: k * c for p, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return ring_multiply(self, other, self.model)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingVector) and other.model is self.model and other.coeffs == self.coeffs

    def dense(self) -> list[int]:
        out = [0] * self.model.order
        for p, c in self.coeffs.items():
            out[p] = c
        return out

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{self.model.words[p].format()}" for p, c in self.coeffs.items())


def ring_multiply(u: GroupRingVector, v: GroupRingVector, m: FiniteGroupModel) -> GroupRingVector:
    if u.model is not m or v.model is not m:
        raise ModelMismatch("group ring elements are not attached to this model")
    out: dict[int, int] = {}
    for p, a in u.coeffs.items():
        for q, b in v.coeffs.items():
            r = int(m.mult[p, q])
            out[r] = out.get(r, 0) + a * b
    return GroupRingVector(m, out)


def augmentation(u: GroupRingVector) -> int:
    return sum(u.coeffs.values())


def square_relations(m: FiniteGroupModel, reduced: bool = False, budget: int = TRIPLE_BUDGET) -> np.ndarray:
    """Rows a (h-1)^2 b over all a, b, h (or a (h-1)^2 only when ``reduced``), dense in the element basis.

    The reduced family spans the same subgroup because
    (h-1)^2 b = b (b^-1 h b - 1)^2.
    """
    n = m.order
    count = n * n if reduced else n ** 3
    if count > budget:
        raise BudgetExceeded(f"{count} relation rows exceed the budget {budget}")
    mult = m.mult
    a = np.arange(n)
    rows = []
    for h in range(n):
        h2 = int(mult[h, h])
        if reduced:
            blocks = [(mult[a, h2], mult[a, h], a)]
        else:
            blocks = [(mult[mult[ai, h2], a], mult[mult[ai, h], a], mult[ai, a]) for ai in range(n)]
        for hh, hs, one in blocks:
            block = np.zeros((n, n), dtype=np.int64)
            idx = np.arange(n)
            np.add.at(block, (idx, hh), 1)
            np.add.at(block, (idx, hs), -2)
            np.add.at(block, (idx, one), 1)
            rows.append(block)
    mat = np.unique(np.concatenate(rows), axis=0) if rows else np.zeros((0, n), dtype=np.int64)
    return mat[(mat != 0).any(axis=1)]


@dataclass
class AugmentationQuotient:
    """A(H)/I_2(H) in the basis {g - 1 : g != 1}."""

    model: FiniteGroupModel
    basis: list[int]
    relations: list[list[int]]
    invariants: InvariantFactors

    def to_tsv(self) -> str:
        buf = io.StringIO()
        buf.write("\t".join(f"{self.model.words[g].format()}-1" for g in self.basis) + "\n")
        for row in self.relations:
            buf.write("\t".join(str(x) for x in row) + "\n")
        return buf.getvalue()


def build_aug_quotient(m: FiniteGroupModel, reduced: bool = False, budget: int = TRIPLE_BUDGET) -> AugmentationQuotient:
    dense = square_relations(m, reduced, budget)
    if dense.size and (dense.sum(axis=1) != 0).any():
        raise AssertionError("an I_2 generator has nonzero augmentation")
    # sum c_g g with zero augmentation equals sum over g != 1 of c_g (g - 1)
    rows = dense[:, 1:].tolist()
    basis = list(range(1, m.order))
    return AugmentationQuotient(m, basis, rows, invariants_from_relations(len(basis), rows))


def _ideal_lattice(m: FiniteGroupModel, budget: int = TRIPLE_BUDGET) -> Lattice:
    lat = Lattice(m.order)
    for row in square_relations(m, reduced=True, budget=budget).tolist():
        lat.add(row)
    return lat


def verify_relation_calculus(m: FiniteGroupModel, budget: int = TRIPLE_BUDGET) -> CheckReport:
    """The identities among generators a_i that hold modulo I_2(H)."""
    rep = CheckReport("relation calculus modulo I_2(H)")
    lat = _ideal_lattice(m, budget)

    def E(p: int) -> GroupRingVector:
        return GroupRingVector.element(m, p)

    one = GroupRingVector.one(m)
    inv = m.inv

    def holds(lhs: GroupRingVector, rhs: GroupRingVector) -> bool:
        return lat.contains((lhs - rhs).dense())

    gens = m.generator_points()
    ok = all(holds(E(int(m.mult[a, a])), 2 * E(a) - one) for a in gens)
    rep.add("a_i^2 = 2a_i - 1", ok)
    ok = True
    for a in gens:
        p = 0
        for k in range(m.order + 1):
            ok &= holds(E(p), k * E(a) - (k - 1) * one)
            p = int(m.mult[p, a])
    rep.add("a_i^k = k a_i - (k-1)", ok)
    pairs = [(a, b) for a in gens for b in gens]
    rep.add("(a_j a_i)^-1 = 2 - a_j a_i",
            all(holds(E(int(inv[m.mult[b, a]])), 2 * one - E(int(m.mult[b, a]))) for a, b in pairs))
    rep.add("a_i^-1 a_j^-1 = a_i a_j - 2a_i - 2a_j + 4",
            all(holds(E(int(m.mult[inv[a], inv[b]])),
                      E(int(m.mult[a, b])) - 2 * E(a) - 2 * E(b) + 4 * one) for a, b in pairs))
    rep.add("a_j a_i = -a_i a_j + 2a_j + 2a_i - 2",
            all(holds(E(int(m.mult[b, a])),
                      -E(int(m.mult[a, b])) + 2 * E(b) + 2 * E(a) - 2 * one) for a, b in pairs))
    products = []
    for s in range(len(gens) + 1):
        for idx in combinations(range(len(gens)), s):
            p = 0
            for i in idx:
                p = int(m.mult[p, gens[i]])
            products.append(p)
    rows = [r for r in lat.basis()] + [E(p).dense() for p in products]
    span = invariants_from_relations(m.order, rows)
    rep.add("ordered generator products span ZH/I_2", span.is_trivial(), len(products), 2 ** len(gens))
    return rep


def compare_L_abelianization(m: FiniteGroupModel, c) -> CheckReport:
    """Invariants of L/L' from chi(H) against those of A(H)/I_2(H)."""
    from .weakcomm.checks import quotient_invariants

    rep = CheckReport("L/L' against A(H)/I_2(H)")
    lhs = quotient_invariants(c.L, c.Lprime)
    rhs = build_aug_quotient(m).invariants
    rep.add("L/L' ~ A(H)/I_2(H)", lhs == rhs, str(lhs), str(rhs))
    return rep
