"""The group nu(H) whose subgroup [H, H^psi] is the non-abelian tensor square H (x) H.

nu(H) = <H, H^psi | [h1, h2^psi]^(h3^psi) = [h1, h2^psi]^h3 = [h1^h3, (h2^h3)^psi]>,
with both relator families taken over all triples of elements of H.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..enumerator import DEFAULT_LIMIT, EnumerationLimitExceeded, enumerate_cosets, regular_representation
from ..permsys import (
    Homomorphism,
    PermGroup,
    commutator_subgroup,
    evaluate,
    homomorphism,
    intersection,
    is_normal,
)
from ..words import Presentation, Word, commutator, conjugate
from .chi import doubled_names
from .model import BudgetExceeded, ConstructionError, FiniteGroupModel

RELATOR_TRIPLE_BUDGET = 50_000


def _families(m: FiniteGroupModel):
    n = m.rank
    names = doubled_names(n)
    xs = [Word.generator(names, i) for i in range(n)]
    ys = [Word.generator(names, n + i) for i in range(n)]
    return names, xs, ys


def _base_relators(m: FiniteGroupModel, xs, ys) -> list[Word]:
    return ([r.substitute(xs) for r in m.presentation.relators]
            + [r.substitute(ys) for r in m.presentation.relators])


def nu_presentation(m: FiniteGroupModel, budget: int = RELATOR_TRIPLE_BUDGET) -> Presentation:
    """Two relators per triple of elements of H, elements written as canonical words."""
    if m.order ** 3 > budget:
        raise BudgetExceeded(f"{m.order ** 3} element triples exceed the relator budget {budget}")
    names, xs, ys = _families(m)
    wx = [w.substitute(xs) for w in m.words]
    wy = [w.substitute(ys) for w in m.words]
    rels = _base_relators(m, xs, ys)
    for h1, h2, h3 in itertools.product(range(m.order), repeat=3):
        c = commutator(wx[h1], wy[h2])
        cx = conjugate(c, wx[h3])
        rels.append(conjugate(c, wy[h3]) * cx.inverse())
        k1, k2 = m.conjugate(h1, h3), m.conjugate(h2, h3)
        rels.append(cx * commutator(wx[k1], wy[k2]).inverse())
    return Presentation.from_names(names, rels)


def nu_generator_presentation(m: FiniteGroupModel) -> Presentation:
    """The same relator shapes restricted to triples of generators."""
    names, xs, ys = _families(m)
    rels = _base_relators(m, xs, ys)
    n = m.rank
    for i, j, k in itertools.product(range(n), repeat=3):
        c = commutator(xs[i], ys[j])
        cx = conjugate(c, xs[k])
        rels.append(conjugate(c, ys[k]) * cx.inverse())
        rels.append(cx * commutator(conjugate(xs[i], xs[k]), conjugate(ys[j], ys[k])).inverse())
    return Presentation.from_names(names, rels)


@dataclass(eq=False)
class NuContext:
    model: FiniteGroupModel
    presentation: Presentation
    nu: PermGroup
    X: PermGroup
    Y: PermGroup
    tau: PermGroup
    Delta: PermGroup
    J: PermGroup
    rho: Homomorphism
    tau_to_Hprime: PermGroup

    @property
    def order(self) -> int:
        return self.nu.order()

    def subgroups(self) -> dict[str, PermGroup]:
        return {"tau": self.tau, "Delta": self.Delta, "J": self.J}


def build_nu(m: FiniteGroupModel, budget: int = DEFAULT_LIMIT,
             triple_budget: int = RELATOR_TRIPLE_BUDGET) -> NuContext:
    pres = nu_presentation(m, triple_budget)
    nu = regular_representation(enumerate_cosets(pres, (), budget))
    n = m.rank
    xg, yg = nu.gens[:n], nu.gens[n:]
    X, Y = nu.subgroup(xg), nu.subgroup(yg)
    tau = commutator_subgroup(nu, X, Y)
    diag = []
    for w in m.words[1:]:
        g = evaluate(w, xg, nu.degree).comm(evaluate(w, yg, nu.degree))
        if not g.is_identity():
            diag.append(g)
    Delta = nu.subgroup(diag)
    if not is_normal(Delta, nu):
        raise ConstructionError("Delta is not normal in nu(H)")
    hg = list(m.group.gens)
    rho = homomorphism(nu, hg + hg, target=m.group)
    image = rho.image_of(tau)
    if image != m.derived:
        raise ConstructionError("tau does not map onto H'")
    J = intersection(tau, rho.kernel)
    if not (Delta.is_subgroup_of(J) and J.is_subgroup_of(tau)):
        raise ConstructionError("Delta <= J <= tau fails")
    return NuContext(m, pres, nu, X, Y, tau, Delta, J, rho, image)


@dataclass
class GeneratorVariant:
    closed: bool
    order: int | None
    full_order: int | None
    limit: int

    @property
    def agrees(self) -> bool:
        return self.closed and self.order == self.full_order


def nu_generator_variant(m: FiniteGroupModel, full_order: int | None = None,
                         limit: int = DEFAULT_LIMIT) -> GeneratorVariant:
    """Enumerate the generator-triple presentation and compare orders."""
    try:
        t = enumerate_cosets(nu_generator_presentation(m), (), limit)
    except EnumerationLimitExceeded:
        return GeneratorVariant(False, None, full_order, limit)
    return GeneratorVariant(True, t.index, full_order, limit)


def emit_presentation(c: NuContext) -> str:
    from ..words import format_presentation

    return format_presentation(c.presentation)
