from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chigroup.groupring import (
    GroupRingVector,
    ModelMismatch,
    augmentation,
    build_aug_quotient,
    compare_L_abelianization,
    ring_multiply,
    square_relations,
    verify_relation_calculus,
)
from chigroup.weakcomm import BudgetExceeded

from cache import chi, model
from oracles import concrete_model

UP_TO_16 = ["triv", "cyc:2", "cyc:3", "cyc:4", "cyc:6", "cyc:9", "elem2:2", "elem2:3",
            "ab:3x3", "dih:3", "dih:4", "quat:8", "dic:3"]


def vec(key, coeffs):
    return GroupRingVector(model(key), coeffs)


def concrete_invariants(key):
    """A(H)/I_2(H) from the concrete realization, reduced with sympy."""
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import invariant_factors

    G = concrete_model(key)
    elems = sorted(G.closure())
    ident = G.identity
    others = [g for g in elems if g != ident]
    index = {g: i for i, g in enumerate(others)}
    rows = []
    for a, b, h in product(elems, repeat=3):
        row = [0] * len(others)
        # a (h-1)^2 b = a h^2 b - 2 a h b + a b, written in the basis g - 1
        for g, c in ((G.mul(G.mul(a, G.mul(h, h)), b), 1), (G.mul(G.mul(a, h), b), -2), (G.mul(a, b), 1)):
            if g != ident:
                row[index[g]] += c
        if any(row):
            rows.append(row)
    if not others:
        return ()
    M = sympy.Matrix(rows) if rows else sympy.zeros(1, len(others))
    facs = [abs(int(d)) for d in invariant_factors(M)]
    facs += [0] * (len(others) - len(facs))
    assert 0 not in facs
    return tuple(d for d in facs if d > 1)


def test_ring_multiply_examples():
    m = model("cyc:2")
    h = GroupRingVector.element(m, 1)
    one = GroupRingVector.one(m)
    u = 3 * h + one
    assert ring_multiply(u, one, m) == u
    assert (h - one) * (h - one) == 2 * one - 2 * h
    s3 = model("dih:3")
    a, b = s3.generator_points()
    A, B, E = (GroupRingVector.element(s3, p) for p in (a, b, 0))
    ab = GroupRingVector.element(s3, int(s3.mult[a, b]))
    assert (A - E) * (B - E) == ab - A - B + E


def test_ring_multiply_model_mismatch():
    u = GroupRingVector.one(model("cyc:2"))
    v = GroupRingVector.one(model("cyc:3"))
    with pytest.raises(ModelMismatch):
        ring_multiply(u, v, model("cyc:2"))
    with pytest.raises(ModelMismatch):
        u + v


def test_vector_rejects_bad_index():
    with pytest.raises(ValueError):
        vec("cyc:2", {5: 1})


def test_augmentation_examples():
    m = model("dih:3")
    assert augmentation(GroupRingVector.one(m)) == 1
    assert augmentation(vec("dih:3", {1: 1, 0: -1})) == 0
    assert augmentation(vec("dih:3", {1: 3, 2: 2})) == 5


@pytest.mark.parametrize("key,factors", [("cyc:2", (2,)), ("cyc:3", (3,)), ("elem2:2", (2, 2, 2)),
                                         ("triv", ())])
def test_aug_quotient_examples(key, factors):
    q = build_aug_quotient(model(key))
    assert q.invariants.factors == factors and q.invariants.free_rank == 0
    assert len(q.basis) == model(key).order - 1


@pytest.mark.parametrize("key", ["cyc:2", "cyc:3", "cyc:4", "elem2:2", "dih:3", "quat:8"])
def test_aug_quotient_against_concrete_oracle(key):
    assert build_aug_quotient(model(key)).invariants.factors == concrete_invariants(key)


def test_elementary_abelian_order_formula():
    for key in ("cyc:2", "elem2:2", "elem2:3"):
        n = model(key).order
        assert build_aug_quotient(model(key)).invariants.factors == (2,) * (n - 1)


@pytest.mark.parametrize("key", UP_TO_16)
def test_relation_rows_have_augmentation_zero(key):
    for reduced in (False, True):
        rel = square_relations(model(key), reduced)
        assert (rel.sum(axis=1) == 0).all()


@pytest.mark.parametrize("key", UP_TO_16)
def test_reduced_family_gives_same_invariants(key):
    m = model(key)
    assert build_aug_quotient(m).invariants == build_aug_quotient(m, reduced=True).invariants


def test_budget():
    with pytest.raises(BudgetExceeded):
        build_aug_quotient(model("dih:4"), budget=100)


@pytest.mark.parametrize("key", ["elem2:2", "cyc:3", "dih:3", "quat:8", "ab:3x3"])
def test_relation_calculus(key):
    rep = verify_relation_calculus(model(key))
    assert rep.ok, rep.failures()


def test_spanning_set_size():
    rep = verify_relation_calculus(model("elem2:2"))
    assert rep["ordered generator products span ZH/I_2"].measured == 4


@pytest.mark.parametrize("key,factors", [("cyc:2", (2,)), ("cyc:3", (3,)), ("elem2:3", (2,) * 7)])
def test_compare_L_abelianization_examples(key, factors):
    rep = compare_L_abelianization(model(key), chi(key))
    assert rep.ok
    assert build_aug_quotient(model(key)).invariants.factors == factors


@pytest.mark.parametrize("key", UP_TO_16)
def test_L_abelianization_matches_for_catalog(key):
    assert compare_L_abelianization(model(key), chi(key)).ok


def test_tsv_export():
    q = build_aug_quotient(model("cyc:3"))
    lines = q.to_tsv().splitlines()
    assert lines[0].split("\t") == [f"{model('cyc:3').words[g].format()}-1" for g in q.basis]
    assert all(len(line.split("\t")) == 2 for line in lines[1:])
    assert len(lines) == 1 + len(q.relations)


coeff_maps = st.dictionaries(st.integers(0, 7), st.integers(-50, 50), max_size=8)


@given(st.sampled_from(["dih:4", "quat:8", "elem2:3"]), coeff_maps, coeff_maps)
def test_augmentation_is_multiplicative(key, cu, cv):
    u, v = vec(key, cu), vec(key, cv)
    assert augmentation(u * v) == augmentation(u) * augmentation(v)
    assert augmentation(u + v) == augmentation(u) + augmentation(v)


@given(st.sampled_from(["dih:4", "quat:8"]), coeff_maps, coeff_maps, coeff_maps)
def test_ring_multiply_is_associative_and_distributive(key, cu, cv, cw):
    u, v, w = vec(key, cu), vec(key, cv), vec(key, cw)
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w
