"""The weak commutativity group chi(H) = <H, H^psi | [h, h^psi] = 1 for all h>.

chi(H) is presented on generators ``x1..xn`` (the copy of H) and ``y1..yn``
(the copy H^psi).  Everything is realized inside its regular representation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..enumerator import DEFAULT_LIMIT, enumerate_cosets, regular_representation
from ..permsys import (
    Homomorphism,
    Perm,
    PermGroup,
    commutator_subgroup,
    evaluate,
    homomorphism,
    intersection,
    is_normal,
    normal_closure,
    subgroup_join,
)
from ..words import Presentation, Word, commutator
from .model import BudgetExceeded, ConstructionError, FiniteGroupModel

ORACLE_TRIPLE_BUDGET = 50_000


def family_names(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


def doubled_names(n: int) -> list[str]:
    return family_names("x", n) + family_names("y", n)


def chi_presentation(m: FiniteGroupModel) -> Presentation:
    """H's relators on both copies plus one commutator relator per element of H."""
    n = m.rank
    names = doubled_names(n)
    xs = [Word.generator(names, i) for i in range(n)]
    ys = [Word.generator(names, n + i) for i in range(n)]
    rels = [r.substitute(xs) for r in m.presentation.relators]
    rels += [r.substitute(ys) for r in m.presentation.relators]
    rels += [commutator(w.substitute(xs), w.substitute(ys)) for w in m.words[1:]]
    return Presentation.from_names(names, rels)


def direct_power_perms(perms: list[Perm], pattern: tuple[bool, ...]) -> Perm:
    """Act by ``perms`` on the copies of the domain flagged in ``pattern``, trivially elsewhere."""
    n = perms[0].degree if perms else 0
    parts = []
    for k, on in enumerate(pattern):
        base = perms[0].a if on else np.arange(n)
        parts.append(base + k * n)
    return Perm._raw(np.concatenate(parts))


@dataclass(eq=False)
class ChiContext:
    model: FiniteGroupModel
    presentation: Presentation
    chi: PermGroup
    X: PermGroup
    Y: PermGroup
    psi: np.ndarray
    L: PermGroup
    D: PermGroup
    W: PermGroup
    DL: PermGroup
    Lprime: PermGroup
    LprimeW: PermGroup
    Lprime_cap_W: PermGroup
    rho_H: Homomorphism
    rho_HxH: Homomorphism
    rho_T: Homomorphism
    HxH: PermGroup
    T: PermGroup
    R: PermGroup | None = None

    @property
    def n(self) -> int:
        return self.model.rank

    @property
    def x_gens(self) -> tuple[Perm, ...]:
        return self.chi.gens[: self.n]

    @property
    def y_gens(self) -> tuple[Perm, ...]:
        return self.chi.gens[self.n:]

    @property
    def order(self) -> int:
        return self.chi.order()

    def x_elem(self, p: int) -> Perm:
        """The copy of element ``p`` of H inside chi(H)."""
        return evaluate(self.model.words[p], self.x_gens, self.chi.degree)

    def y_elem(self, p: int) -> Perm:
        """The psi-copy of element ``p`` of H."""
        return evaluate(self.model.words[p], self.y_gens, self.chi.degree)

    def psi_image_points(self, S: PermGroup) -> np.ndarray:
        return np.sort(self.psi[S.points()])

    def is_psi_invariant(self, S: PermGroup) -> bool:
        return bool(np.array_equal(self.psi_image_points(S), S.points()))

    def subgroups(self) -> dict[str, PermGroup]:
        out = {"L": self.L, "D": self.D, "W": self.W, "DL": self.DL, "L'": self.Lprime,
               "L'W": self.LprimeW, "L' cap W": self.Lprime_cap_W}
        if self.R is not None:
            out["R"] = self.R
        return out


def build_chi(m: FiniteGroupModel, budget: int = DEFAULT_LIMIT) -> ChiContext:
    pres = chi_presentation(m)
    chi = regular_representation(enumerate_cosets(pres, (), budget))
    n = m.rank
    xg, yg = chi.gens[:n], chi.gens[n:]
    X, Y = chi.subgroup(xg), chi.subgroup(yg)

    psi_hom = homomorphism(chi, list(yg) + list(xg), target=chi)
    psi = psi_hom.point_images.copy()
    if not np.array_equal(psi[psi], np.arange(chi.degree)):
        raise ConstructionError("psi is not an involution")

    hg = list(m.group.gens)
    rho_H = homomorphism(chi, hg + hg, target=m.group)
    left = [direct_power_perms([a], (True, False)) for a in hg]
    right = [direct_power_perms([a], (False, True)) for a in hg]
    HxH = PermGroup(left + right)
    rho_HxH = homomorphism(chi, left + right, target=HxH)
    t_left = [direct_power_perms([a], (True, True, False)) for a in hg]
    t_right = [direct_power_perms([a], (False, True, True)) for a in hg]
    T = PermGroup(t_left + t_right)
    rho_T = homomorphism(chi, t_left + t_right, target=T)

    L = normal_closure(chi, [x.inverse() * y for x, y in zip(xg, yg)])
    if L != rho_H.kernel:
        raise ConstructionError("L differs from the kernel of chi(H) -> H")
    D = commutator_subgroup(chi, X, Y)
    if D != rho_HxH.kernel:
        raise ConstructionError("D differs from the kernel of chi(H) -> H x H")
    W = intersection(L, D)
    if W != rho_T.kernel:
        raise ConstructionError("L cap D differs from the kernel of chi(H) -> T(H)")
    Lprime = commutator_subgroup(chi, L, L)
    ctx = ChiContext(
        model=m, presentation=pres, chi=chi, X=X, Y=Y, psi=psi, L=L, D=D, W=W,
        DL=subgroup_join(chi, D, L), Lprime=Lprime, LprimeW=subgroup_join(chi, Lprime, W),
        Lprime_cap_W=intersection(Lprime, W), rho_H=rho_H, rho_HxH=rho_HxH, rho_T=rho_T,
        HxH=HxH, T=T,
    )
    ctx.R = build_R(ctx, m)
    return ctx


def generator_defects(c: ChiContext) -> list[Perm]:
    """[x_i, y_j]^{x_k} [x_i^{x_k}, (y_j)^{y_k}]^-1 over all generator triples."""
    xg, yg = c.x_gens, c.y_gens
    out = []
    for i, j, k in itertools.product(range(c.n), repeat=3):
        lhs = xg[i].comm(yg[j]).conj(xg[k])
        rhs = xg[i].conj(xg[k]).comm(yg[j].conj(yg[k]))
        out.append(lhs * rhs.inverse())
    return out


def build_R(c: ChiContext, m: FiniteGroupModel, transversal: list[int] | None = None,
            check: bool = True) -> PermGroup:
    """R(H) generated by the generator-triple defects conjugated by an H'-transversal."""
    tpoints = m.transversal if transversal is None else transversal
    conj = [c.x_elem(t) for t in tpoints]
    gens = []
    seen = set()
    for d in generator_defects(c):
        for t in conj:
            g = d.conj(t)
            pt = int(g.a[0])
            if pt and pt not in seen:
                seen.add(pt)
                gens.append(g)
    gens.sort(key=lambda g: int(g.a[0]))
    R = c.chi.subgroup(gens)
    if check:
        if not is_normal(R, c.chi):
            raise ConstructionError("transversal-generated R is not normal in chi(H)")
        if not c.is_psi_invariant(R):
            raise ConstructionError("transversal-generated R is not psi-invariant")
    return R


def element_defect_seeds(c: ChiContext, m: FiniteGroupModel, budget: int = ORACLE_TRIPLE_BUDGET) -> list[Perm]:
    """Distinct nontrivial defects [h1, h2^psi]^{h3} [h1^{h3}, (h2^{h3})^psi]^-1 over all element triples."""
    n = m.order
    if n ** 3 > budget:
        raise BudgetExceeded(f"{n ** 3} element triples exceed the oracle budget {budget}")
    px = [c.x_elem(p) for p in range(n)]
    py = [c.y_elem(p) for p in range(n)]
    comm = {}

    def cm(a, b):
        if (a, b) not in comm:
            comm[a, b] = px[a].comm(py[b])
        return comm[a, b]

    seeds: dict[int, Perm] = {}
    for h1, h2, h3 in itertools.product(range(n), repeat=3):
        k1, k2 = m.conjugate(h1, h3), m.conjugate(h2, h3)
        d = cm(h1, h2).conj(px[h3]) * cm(k1, k2).inverse()
        pt = int(d.a[0])
        if pt and pt not in seeds:
            seeds[pt] = d
    return [seeds[p] for p in sorted(seeds)]


def build_R_oracle(c: ChiContext, m: FiniteGroupModel, budget: int = ORACLE_TRIPLE_BUDGET) -> PermGroup:
    """Normal closure in chi(H) of the defects over all element triples."""
    return normal_closure(c.chi, element_defect_seeds(c, m, budget))


def build_R_definition(c: ChiContext) -> PermGroup:
    """R(H) = [H, L(H), H^psi] computed literally as [[X, L], Y]."""
    XL = commutator_subgroup(c.chi, c.X, c.L)
    return commutator_subgroup(c.chi, XL, c.Y)


def emit_presentation(c: ChiContext) -> str:
    from ..words import format_presentation

    return format_presentation(c.presentation)
