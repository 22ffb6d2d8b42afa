"""Verification routines over built chi(H) and nu(H) contexts.

Each routine returns a CheckReport; failing claims are recorded, not raised.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..permsys import (
    PermGroup,
    abelian_invariants,
    commutator_subgroup,
    evaluate,
    homomorphism,
    is_normal,
    quotient,
)
from ..words import Word
from ..zlin import InvariantFactors
from .chi import (
    ChiContext,
    ORACLE_TRIPLE_BUDGET,
    build_R,
    build_R_definition,
    build_R_oracle,
    element_defect_seeds,
    generator_defects,
)
from .model import FiniteGroupModel
from .nu import NuContext
from .report import CheckReport


@dataclass(frozen=True)
class SchurReport:
    via_chi: InvariantFactors
    via_nu: InvariantFactors

    @property
    def agree(self) -> bool:
        return self.via_chi == self.via_nu

    def order(self) -> int | None:
        return self.via_chi.order()


def quotient_invariants(G: PermGroup, N: PermGroup) -> InvariantFactors:
    return abelian_invariants(quotient(G, N))


def schur_multiplier(c: ChiContext, n: NuContext) -> SchurReport:
    """M(H) computed as W/R inside chi(H) and as J/Delta inside nu(H)."""
    return SchurReport(quotient_invariants(c.W, c.R), quotient_invariants(n.J, n.Delta))


def commute(A: PermGroup, B: PermGroup) -> bool:
    return all(a * b == b * a for a in A.gens for b in B.gens)


def is_trivial_group(S: PermGroup) -> bool:
    return S.order() == 1


def _ord(S: PermGroup) -> int:
    return S.order()


def verify_lemma_chain(c: ChiContext, oracle_budget: int = ORACLE_TRIPLE_BUDGET) -> CheckReport:
    rep = CheckReport("basic properties of R, W, D and L")
    chi, R, W, D, L = c.chi, c.R, c.W, c.D, c.L
    rep.add("R normal in chi", is_normal(R, chi))
    rep.add("R psi-invariant", c.is_psi_invariant(R))
    WH = commutator_subgroup(chi, W, c.X)
    rep.add("[W,H] <= R", WH.is_subgroup_of(R), _ord(WH), f"divides {_ord(R)}")
    rep.add("R <= W", R.is_subgroup_of(W), _ord(R), f"divides {_ord(W)}")
    rep.add("W <= D", W.is_subgroup_of(D), _ord(W), f"divides {_ord(D)}")
    xg, yg = c.x_gens, c.y_gens
    bad = [(i, j, k) for i in range(c.n) for j in range(c.n) for k in range(c.n)
           if xg[i].comm(yg[j]).conj(xg[k]) != xg[i].comm(yg[j]).conj(yg[k])]
    rep.add("[x_i,y_j]^x_k = [x_i,y_j]^y_k", not bad, len(bad), 0)
    rep.add("[D,L] = 1", commute(D, L))
    rep.add("generator defects lie in R", all(R.contains(d) for d in generator_defects(c)))
    if c.model.order ** 3 <= oracle_budget:
        seeds = element_defect_seeds(c, c.model, oracle_budget)
        rep.add("element defects lie in R", all(R.contains(d) for d in seeds), len(seeds))
    psi = c.psi
    rep.add("psi fixes D setwise", c.is_psi_invariant(D))
    fixed = all(int(psi[x.comm(y).a[0]]) == int(x.comm(y).a[0]) for x, y in zip(xg, yg))
    rep.add("psi fixes each [x_i,y_i]", fixed)
    return rep


def verify_canonical_quotients(c: ChiContext, m: FiniteGroupModel) -> CheckReport:
    rep = CheckReport("canonical quotients of chi(H)")
    chi, h = c.chi, m.order
    hprime = m.derived.order()
    qD = quotient(chi, c.D)
    rep.add("|chi/D| = |H|^2", qD.order() == h * h, qD.order(), h * h)
    inv_D, inv_HH = abelian_invariants(qD), abelian_invariants(c.HxH)
    rep.add("chi/D ~ H x H (abelianization)", inv_D == inv_HH, str(inv_D), str(inv_HH))
    qDL = quotient(chi, c.DL)
    inv_DL, inv_H = abelian_invariants(qDL), abelian_invariants(m.group)
    rep.add("|chi/DL| = |H/H'|", qDL.order() == h // hprime, qDL.order(), h // hprime)
    rep.add("chi/DL ~ H/H' (invariants)", inv_DL == inv_H, str(inv_DL), str(inv_H))
    qW = quotient(chi, c.W)
    rep.add("|chi/W| = |T(H)|", qW.order() == c.T.order(), qW.order(), c.T.order())
    inv_W, inv_T = abelian_invariants(qW), abelian_invariants(c.T)
    rep.add("chi/W ~ T(H) (abelianization)", inv_W == inv_T, str(inv_W), str(inv_T))
    rep.add("|chi| = |L||H|", chi.order() == c.L.order() * h, chi.order(), c.L.order() * h)
    dl_d = c.DL.order() // c.D.order()
    l_w = c.L.order() // c.W.order()
    rep.add("|DL/D| = |L/W|", dl_d == l_w, dl_d, l_w)
    rep.add("|L/W| = |H||H'|", l_w == h * hprime, l_w, h * hprime)
    a = c.LprimeW.order() // c.W.order()
    b = c.Lprime.order() // c.Lprime_cap_W.order()
    rep.add("|L'W/W| = |L'/(L' cap W)|", a == b, a, b)
    rep.add("L' cap W <= Z(L)", commute(c.Lprime_cap_W, c.L))
    return rep


def verify_corollary_chimodR(c: ChiContext, n: NuContext, schur: SchurReport | None = None) -> CheckReport:
    rep = CheckReport("chi/R against nu/Delta")
    schur = schur or schur_multiplier(c, n)
    qR = quotient(c.chi, c.R)
    qDelta = quotient(n.nu, n.Delta)
    rep.add("|chi/R| = |nu/Delta|", qR.order() == qDelta.order(), qR.order(), qDelta.order())
    a, b = abelian_invariants(qR), abelian_invariants(qDelta)
    rep.add("chi/R and nu/Delta abelianizations agree", a == b, str(a), str(b))
    h = c.model.order
    mo = schur.order()
    t = c.T.order()
    rep.add("|chi/R| = |T(H)| |M(H)|", qR.order() == t * mo, qR.order(), t * mo)
    if c.model.is_abelian():
        rep.add("|chi/R| = |H|^2 |M(H)|", qR.order() == h * h * mo, qR.order(), h * h * mo)
    return rep


def _squares_subgroup(G: PermGroup, parent: PermGroup) -> PermGroup:
    """Subgroup generated by the squares of all elements of a semiregular group."""
    sq = []
    for pt in G.points():
        g = parent.element(int(pt))
        s = g * g
        if not s.is_identity():
            sq.append(s)
    return parent.subgroup(sq)


def verify_abelian_theorem(c: ChiContext, m: FiniteGroupModel) -> CheckReport:
    if not m.is_abelian():
        raise ValueError("the structure theorem applies to abelian H only")
    rep = CheckReport("structure of chi(H) for abelian H")
    chi, X, Y = c.chi, c.X, c.Y
    LH = commutator_subgroup(chi, c.L, X)
    rep.add("D = W", c.D == c.W, _ord(c.D), _ord(c.W))
    rep.add("W = [L,H]", c.W == LH, _ord(c.W), _ord(LH))
    DH = commutator_subgroup(chi, c.D, X)
    rep.add("R = [D,H]", c.R == DH, _ord(c.R), _ord(DH))
    LHH = commutator_subgroup(chi, LH, X)
    rep.add("R = [[L,H],H]", c.R == LHH, _ord(c.R), _ord(LHH))
    X2 = _squares_subgroup(X, chi)
    LX2 = commutator_subgroup(chi, c.L, X2)
    rep.notes["[L,H^2]"] = _ord(LX2)
    rep.notes["[L,H^2] equals R"] = LX2 == c.R
    L3 = commutator_subgroup(chi, c.Lprime, c.L)
    rep.add("L nilpotent of class <= 2", is_trivial_group(L3), _ord(L3), 1)
    rep.add("L' <= Z(chi)", commute(c.Lprime, chi))
    D2 = _squares_subgroup(c.D, chi)
    rep.add("L' = <squares of D>", c.Lprime == D2, _ord(c.Lprime), _ord(D2))
    X2Y = commutator_subgroup(chi, X2, Y)
    rep.add("L' = [squares of H, H^psi]", c.Lprime == X2Y, _ord(c.Lprime), _ord(X2Y))
    exp2 = all((chi.element(int(p)) ** 2).is_identity() for p in c.R.points())
    rep.add("R^2 = 1", exp2)
    return rep


def is_elementary_abelian_2(m: FiniteGroupModel) -> bool:
    return m.is_abelian() and all(int(m.mult[p, p]) == 0 for p in range(m.order))


def verify_gamma_series(c: ChiContext) -> CheckReport:
    if not is_elementary_abelian_2(c.model):
        raise ValueError("the lower central series claims need an elementary abelian 2-group")
    rep = CheckReport("lower central series of chi(H)")
    g2 = commutator_subgroup(c.chi, c.chi, c.chi)
    g3 = commutator_subgroup(c.chi, g2, c.chi)
    rep.add("gamma_2(chi) = D", g2 == c.D, _ord(g2), _ord(c.D))
    rep.add("gamma_3(chi) = R", g3 == c.R, _ord(g3), _ord(c.R))
    return rep


def verify_R_oracle(c: ChiContext, m: FiniteGroupModel, rng: random.Random | None = None,
                    budget: int = ORACLE_TRIPLE_BUDGET) -> CheckReport:
    """Transversal-generated R against the full normal closure and the commutator definition."""
    rep = CheckReport("generating sets for R")
    oracle = build_R_oracle(c, m, budget)
    rep.add("R = normal closure of element defects", c.R == oracle, _ord(c.R), _ord(oracle))
    defn = build_R_definition(c)
    rep.add("R = [H, L, H^psi]", c.R == defn, _ord(c.R), _ord(defn))
    rng = rng or random.Random(0)
    tr = m.random_transversal(rng)
    alt = build_R(c, m, tr, check=False)
    rep.add("R independent of the transversal", alt == c.R, _ord(alt), _ord(c.R), note=f"transversal {tr}")
    return rep


def _as_words(phi: Sequence, k: FiniteGroupModel) -> list[Word]:
    return [k.presentation.word(w) if isinstance(w, str) else w for w in phi]


def induced_epimorphism(src: ChiContext, tgt: ChiContext, phi: Sequence[Word | str]) -> CheckReport:
    """Extend an epimorphism H -> K (generator images as words over K) to chi(H) -> chi(K)."""
    H, K = src.model, tgt.model
    words = _as_words(phi, K)
    if len(words) != H.rank:
        raise ValueError(f"need {H.rank} generator images, got {len(words)}")
    kimgs = [evaluate(w, K.group.gens, K.group.degree) for w in words]
    for r in H.presentation.relators:
        if not evaluate(r, kimgs, K.group.degree).is_identity():
            raise ValueError(f"relator {r} is not respected by the generator images")
    if K.group.subgroup(kimgs).order() != K.order:
        raise ValueError("generator images do not generate K")
    rep = CheckReport("induced map chi(H) -> chi(K)")
    ximg = [evaluate(w, tgt.x_gens, tgt.chi.degree) for w in words]
    yimg = [evaluate(w, tgt.y_gens, tgt.chi.degree) for w in words]
    hom = homomorphism(src.chi, ximg + yimg, target=tgt.chi)
    img = hom.point_images
    pts = src.chi.points()
    rep.add("induced map is onto", hom.image.order() == tgt.chi.order(), hom.image.order(), tgt.chi.order())
    rep.add("commutes with psi", bool(np.array_equal(tgt.psi[img[pts]], img[src.psi[pts]])))
    for name in ("L", "D", "R"):
        a = np.unique(img[getattr(src, name).points()])
        b = getattr(tgt, name).points()
        rep.add(f"{name}(H) maps onto {name}(K)", bool(np.array_equal(a, b)), int(a.size), int(b.size))
    # W need not map onto W(K); record what happens
    a = np.unique(img[src.W.points()])
    rep.notes["|image of W(H)|"] = int(a.size)
    rep.notes["|W(K)|"] = tgt.W.order()
    return rep
