import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chigroup.enumerator import EnumerationLimitExceeded, enumerate_cosets
from chigroup.permsys import evaluate, is_normal, quotient
from chigroup.weakcomm import (
    BudgetExceeded,
    build_R,
    build_R_definition,
    build_R_oracle,
    chi_presentation,
    induced_epimorphism,
    model_group,
    nu_generator_variant,
    nu_presentation,
    schur_multiplier,
    verify_abelian_theorem,
    verify_canonical_quotients,
    verify_corollary_chimodR,
    verify_gamma_series,
    verify_lemma_chain,
    verify_R_oracle,
)
from chigroup.weakcomm.chi import emit_presentation as emit_chi
from chigroup.weakcomm.nu import emit_presentation as emit_nu
from chigroup.words import parse_presentation

from cache import chi, model, nu
from oracles import concrete_model

SMALL = ["triv", "cyc:2", "cyc:3", "cyc:4", "elem2:2", "dih:3", "dih:4", "quat:8"]
UP_TO_16 = SMALL + ["cyc:6", "cyc:9", "ab:3x3", "dic:3", "elem2:3"]


def sympy_order(p):
    fp = pytest.importorskip("sympy.combinatorics.fp_groups")
    from sympy.combinatorics.free_groups import free_group

    F, *gens = free_group(",".join(p.names))

    def conv(w):
        out = F.identity
        for i, s in w.letters:
            out = out * gens[i] ** s
        return out

    return fp.FpGroup(F, [conv(r) for r in p.relators]).order()


# -- model_group --------------------------------------------------------------


def test_model_group_examples():
    assert [w.format() for w in model("cyc:2").words] == ["1", "a"]
    assert len(model("elem2:2").words) == 4
    s3 = model("dih:3")
    assert len(s3.words) == 6 and len(s3.transversal) == 2


@pytest.mark.parametrize("key", UP_TO_16)
def test_model_invariants(key):
    m = model(key)
    assert len(m.words) == m.order
    for p, w in enumerate(m.words):
        assert evaluate(w, m.group.gens, m.group.degree) == m.group.element(p)
    cosets = [int(m.derived_coset[t]) for t in m.transversal]
    assert sorted(cosets) == list(range(m.order // m.derived.order()))
    # element words agree with the concrete realization
    G = concrete_model(key)
    assert len({G.evaluate(w) for w in m.words}) == m.order


def test_model_group_budget():
    with pytest.raises(EnumerationLimitExceeded):
        model_group(parse_presentation("generators: a\nrelators: a^100"), budget=20)


# -- chi ----------------------------------------------------------------------


@pytest.mark.parametrize("key,order", [("triv", 1), ("cyc:2", 4), ("elem2:2", 32), ("elem2:3", 1024)])
def test_chi_orders(key, order):
    assert chi(key).order == order


def test_chi_order_formula_elementary_abelian():
    # 2^(n-1) n with n = |H|
    for key in ("cyc:2", "elem2:2", "elem2:3"):
        n = model(key).order
        assert chi(key).order == 2 ** (n - 1) * n


@pytest.mark.parametrize("key", ["cyc:2", "cyc:3", "elem2:2", "dih:3"])
def test_chi_order_against_sympy(key):
    assert sympy_order(chi_presentation(model(key))) == chi(key).order


def test_chi_has_one_commutator_relator_per_element():
    m = model("dih:3")
    p = chi_presentation(m)
    assert len(p.relators) == 2 * len(m.presentation.relators) + m.order - 1
    assert p.names == ("x1", "x2", "y1", "y2")


def test_per_generator_relators_give_a_larger_group():
    text = "generators: x1 x2 y1 y2\nrelators: x1^2 x2^2 [x1,x2] y1^2 y2^2 [y1,y2] [x1,y1] [x2,y2]"
    assert chi("elem2:2").order == 32
    with pytest.raises(EnumerationLimitExceeded):
        enumerate_cosets(parse_presentation(text), (), 20_000)


@pytest.mark.parametrize("key", UP_TO_16)
def test_chi_context_invariants(key):
    c, m = chi(key), model(key)
    psi = c.psi
    assert (psi[psi] == range(len(psi))).all()
    assert c.chi.order() == c.L.order() * m.order
    assert quotient(c.chi, c.D).order() == m.order ** 2
    assert c.W.is_subgroup_of(c.L) and c.W.is_subgroup_of(c.D)
    assert c.T.order() == m.order ** 2 * m.derived.order()


# -- R --------------------------------------------------------------------------


@pytest.mark.parametrize("key,order", [("elem2:2", 1), ("elem2:3", 2), ("dih:4", 1), ("cyc:9", 1),
                                       ("triv", 1), ("cyc:2", 1)])
def test_R_orders(key, order):
    assert chi(key).R.order() == order


@pytest.mark.parametrize("key", UP_TO_16)
def test_R_equals_oracle_and_definition(key):
    c, m = chi(key), model(key)
    oracle = build_R_oracle(c, m)
    assert c.R == oracle
    assert build_R_definition(c) == oracle


def test_R_oracle_examples():
    assert build_R_oracle(chi("triv"), model("triv")).order() == 1
    assert build_R_oracle(chi("elem2:3"), model("elem2:3")).order() == 2


def test_R_oracle_budget():
    with pytest.raises(BudgetExceeded):
        build_R_oracle(chi("dih:4"), model("dih:4"), budget=100)


@pytest.mark.parametrize("key", ["dih:3", "dih:4", "quat:8", "dic:3", "elem2:3"])
def test_R_independent_of_transversal(key):
    c, m = chi(key), model(key)
    rng = random.Random(5)
    for _ in range(4):
        assert build_R(c, m, m.random_transversal(rng)) == c.R
    assert verify_R_oracle(c, m, random.Random(1)).ok


@pytest.mark.parametrize("key", ["elem2:3", "ab:2x2x4"])
def test_R_nontrivial_for_rank_three(key):
    assert chi(key).R.order() > 1


# -- nu -------------------------------------------------------------------------


def test_nu_examples():
    assert nu("triv").order == 1
    n2 = nu("cyc:2")
    assert n2.order == 8 and n2.tau.order() == 2
    n4 = nu("elem2:2")
    assert n4.order == n4.tau.order() * 16
    assert n4.tau.order() % n4.Delta.order() == 0


def test_nu_c2_against_sympy():
    assert sympy_order(nu_presentation(model("cyc:2"))) == 8


@pytest.mark.parametrize("key", SMALL)
def test_nu_context_invariants(key):
    n = nu(key)
    assert n.Delta.is_subgroup_of(n.J) and n.J.is_subgroup_of(n.tau)
    assert is_normal(n.Delta, n.nu)
    m = model(key)
    assert n.order == m.order ** 2 * n.tau.order()


def test_nu_budget():
    with pytest.raises(BudgetExceeded):
        nu_presentation(model("dih:4"), budget=100)


@pytest.mark.parametrize("key", ["cyc:2", "elem2:2", "dih:3", "quat:8"])
def test_generator_triple_variant_agrees_on_small_groups(key):
    v = nu_generator_variant(model(key), nu(key).order)
    assert v.closed and v.agrees


# -- Schur multiplier -------------------------------------------------------------


@pytest.mark.parametrize("key,order", [("cyc:2", 1), ("elem2:2", 2), ("elem2:3", 8), ("dih:4", 2),
                                       ("quat:8", 1), ("dih:3", 1), ("ab:3x3", 3)])
def test_schur_two_routes(key, order):
    s = schur_multiplier(chi(key), nu(key))
    assert s.agree
    assert s.order() == order


# -- verification reports ------------------------------------------------------


@pytest.mark.parametrize("key", ["triv", "elem2:3", "dih:3", "quat:8", "dic:3"])
def test_lemma_chain(key):
    rep = verify_lemma_chain(chi(key))
    assert rep.ok, rep.failures()


@pytest.mark.parametrize("key", ["triv", "elem2:2", "dih:3", "dih:4", "heis:2"])
def test_canonical_quotients(key):
    rep = verify_canonical_quotients(chi(key), model(key))
    assert rep.ok, rep.failures()


def test_canonical_quotient_values():
    rep = verify_canonical_quotients(chi("elem2:2"), model("elem2:2"))
    assert rep["|chi/D| = |H|^2"].measured == 16
    assert rep["|chi/W| = |T(H)|"].measured == 16
    assert verify_canonical_quotients(chi("dih:3"), model("dih:3"))["|chi/D| = |H|^2"].measured == 36


@pytest.mark.parametrize("key,order", [("elem2:3", 512), ("elem2:2", 32), ("cyc:2", 4)])
def test_corollary_examples(key, order):
    rep = verify_corollary_chimodR(chi(key), nu(key))
    assert rep.ok, rep.failures()
    assert rep["|chi/R| = |nu/Delta|"].measured == order


@pytest.mark.parametrize("key", ["dih:3", "dih:4", "quat:8"])
def test_corollary_general_form_for_nonabelian(key):
    rep = verify_corollary_chimodR(chi(key), nu(key))
    assert rep.ok
    with pytest.raises(KeyError):
        rep["|chi/R| = |H|^2 |M(H)|"]


@pytest.mark.parametrize("key", ["elem2:3", "cyc:6", "cyc:9", "ab:3x3", "cyc:4"])
def test_abelian_theorem(key):
    rep = verify_abelian_theorem(chi(key), model(key))
    assert rep.ok, rep.failures()


def test_abelian_theorem_values():
    assert chi("elem2:3").R.order() == 2
    assert chi("cyc:6").R.order() == 1
    assert chi("cyc:9").R.order() == 1


def test_abelian_theorem_rejects_nonabelian():
    with pytest.raises(ValueError):
        verify_abelian_theorem(chi("dih:3"), model("dih:3"))


@pytest.mark.parametrize("key,r", [("cyc:2", 1), ("elem2:2", 1), ("elem2:3", 2)])
def test_gamma_series(key, r):
    rep = verify_gamma_series(chi(key))
    assert rep.ok
    assert rep["gamma_3(chi) = R"].measured == r


def test_gamma_series_precondition():
    with pytest.raises(ValueError):
        verify_gamma_series(chi("cyc:4"))


def test_induced_epimorphisms():
    assert induced_epimorphism(chi("elem2:2"), chi("elem2:2"), ["a", "b"]).ok
    rep = induced_epimorphism(chi("elem2:3"), chi("elem2:2"), ["a", "b", "1"])
    assert rep.ok, rep.failures()
    assert induced_epimorphism(chi("elem2:3"), chi("elem2:3"), ["b", "c", "a*b"]).ok
    assert induced_epimorphism(chi("dih:4"), chi("elem2:2"), ["a", "b"]).ok


def test_induced_epimorphism_errors():
    with pytest.raises(ValueError):
        induced_epimorphism(chi("elem2:2"), chi("elem2:2"), ["a", "1"])
    with pytest.raises(ValueError):
        induced_epimorphism(chi("cyc:3"), chi("cyc:2"), ["a"])


@pytest.mark.parametrize("key", ["cyc:2", "elem2:2", "dih:3"])
def test_emitted_presentations_reparse(key):
    c, n = chi(key), nu(key)
    p = parse_presentation(emit_chi(c))
    assert p == c.presentation
    assert enumerate_cosets(p).index == c.order
    q = parse_presentation(emit_nu(n))
    assert q == n.presentation


# -- properties ----------------------------------------------------------------


keys = st.sampled_from(["elem2:2", "dih:3", "dih:4", "quat:8", "cyc:6"])


@given(keys, st.data())
def test_weak_commutativity_of_every_element(key, data):
    c, m = chi(key), model(key)
    p = data.draw(st.integers(0, m.order - 1))
    assert c.x_elem(p).comm(c.y_elem(p)).is_identity()


@given(keys, st.data())
def test_psi_swaps_families(key, data):
    c, m = chi(key), model(key)
    p = data.draw(st.integers(0, m.order - 1))
    x, y = c.x_elem(p), c.y_elem(p)
    assert int(c.psi[x.a[0]]) == int(y.a[0])
    assert int(c.psi[y.a[0]]) == int(x.a[0])


@given(keys, st.data())
def test_element_triple_defects_lie_in_R(key, data):
    c, m = chi(key), model(key)
    h1, h2, h3 = (data.draw(st.integers(0, m.order - 1)) for _ in range(3))
    x1, y2, x3 = c.x_elem(h1), c.y_elem(h2), c.x_elem(h3)
    k1, k2 = m.conjugate(h1, h3), m.conjugate(h2, h3)
    defect = x1.comm(y2).conj(x3) * c.x_elem(k1).comm(c.y_elem(k2)).inverse()
    assert c.R.contains(defect)


@given(keys, st.data())
def test_D_centralizes_L(key, data):
    c = chi(key)
    d = data.draw(st.sampled_from(list(c.D.gens) or [c.chi.identity()]))
    l_pts = c.L.points()
    l = c.chi.element(int(data.draw(st.sampled_from(list(l_pts)))))
    assert d * l == l * d
