import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chigroup.enumerator import (
    EnumerationLimitExceeded,
    enumerate_cosets,
    prepare_relators,
    regular_representation,
)
from chigroup.harness.catalog import catalog
from chigroup.permsys import evaluate
from chigroup.words import Word, conjugate, parse_presentation

from oracles import closure_order

C6 = parse_presentation("generators: a\nrelators: a^6")
S3 = parse_presentation("generators: a b\nrelators: a^2 b^2 (a*b)^3")


def test_cyclic_order_six():
    assert enumerate_cosets(C6, (), 100).index == 6


def test_s3_from_involutions():
    t = enumerate_cosets(S3, (), 100)
    assert t.index == 6
    t.check()


def test_subgroup_index():
    a = C6.gen(0)
    t = enumerate_cosets(C6, [a * a], 100)
    assert t.index == 2
    t.check()


def test_limit_exceeded_is_an_error():
    free = parse_presentation("generators: a b\nrelators: a^2")
    with pytest.raises(EnumerationLimitExceeded):
        enumerate_cosets(free, (), 500)
    with pytest.raises(EnumerationLimitExceeded):
        enumerate_cosets(parse_presentation("generators: a\nrelators: a^50"), (), 10)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        enumerate_cosets(C6, [Word.generator(("z",), 0)])
    with pytest.raises(ValueError):
        enumerate_cosets(C6, (), 0)


def test_regular_representation_examples():
    c2 = regular_representation(enumerate_cosets(parse_presentation("generators: a\nrelators: a^2")))
    assert c2.order() == 2 and c2.gens[0].cycles() == [(0, 1)]
    s3 = regular_representation(enumerate_cosets(S3))
    assert s3.degree == 6 and s3.order() == 6
    triv = regular_representation(enumerate_cosets(parse_presentation("generators: a\nrelators: a")))
    assert triv.degree == 1 and triv.gens[0].is_identity()


def test_regular_representation_needs_trivial_subgroup():
    t = enumerate_cosets(C6, [C6.gen(0) ** 2])
    with pytest.raises(ValueError):
        regular_representation(t)


@pytest.mark.parametrize("entry", catalog(), ids=lambda e: e.key)
def test_catalog_orders_match_closure_oracle(entry):
    p = entry.presentation
    t = enumerate_cosets(p)
    t.check()
    assert t.index == closure_order(entry.key, p) == entry.expected["order"].value


@pytest.mark.parametrize("key", ["cyc:6", "dih:4", "quat:8", "dic:3", "heis:3", "ab:2x2x4"])
def test_catalog_orders_match_sympy(key):
    sympy_fp = pytest.importorskip("sympy.combinatorics.fp_groups")
    from sympy.combinatorics.free_groups import free_group

    entry = [e for e in catalog() if e.key == key][0]
    p = entry.presentation
    F, *gens = free_group(",".join(p.names))

    def to_sympy(w):
        out = F.identity
        for i, s in w.letters:
            out = out * gens[i] ** s
        return out

    G = sympy_fp.FpGroup(F, [to_sympy(r) for r in p.relators])
    assert G.order() == enumerate_cosets(p).index


def test_subgroup_index_times_subgroup_order():
    p = parse_presentation("generators: a b\nrelators: a^4 b^2 (a*b)^2")
    G = regular_representation(enumerate_cosets(p))
    a, b = p.gens()
    for sub in ([a], [b], [a * a], [a, b], [a * a, b]):
        t = enumerate_cosets(p, sub)
        t.check()
        H = G.subgroup([evaluate(w, G.gens, G.degree) for w in sub])
        assert t.index * H.order() == G.order()


def test_deterministic_tables():
    p = parse_presentation("generators: a b c\nrelators: a^2 b^2 c^2 [a,b] [a,c] [b,c]")
    assert np.array_equal(enumerate_cosets(p).table, enumerate_cosets(p).table)


def test_element_words_are_shortlex_and_distinct():
    t = enumerate_cosets(S3)
    ws = t.element_words()
    assert ws[0].is_identity()
    assert [t.trace(0, w) for w in ws] == list(range(6))
    assert [len(w) for w in ws] == sorted(len(w) for w in ws)


def test_tsv_dump_is_one_based():
    lines = enumerate_cosets(C6).to_tsv().splitlines()
    assert lines[0].split("\t") == ["coset", "a", "a^-1"]
    assert lines[1].split("\t")[:2] == ["1", "2"]
    assert len(lines) == 7


def test_prepare_relators_merges_rotations_and_inverses():
    p = parse_presentation("generators: a b\nrelators: a*b*a^-1*b^-1 b*a^-1*b^-1*a b^-1*a*b*a^-1 a^2 a^-2")
    assert len(prepare_relators(p.relators)) == 2


dihedral_n = st.integers(2, 12)


@given(dihedral_n, st.lists(st.tuples(st.integers(0, 2), st.integers(0, 1)), max_size=4))
def test_redundant_conjugated_relators_do_not_change_the_order(n, extra):
    p = parse_presentation(f"generators: a b\nrelators: a^{n} b^2 (a*b)^2")
    a, b = p.gens()
    rels = list(p.relators)
    for r, t in extra:
        rels.append(conjugate(p.relators[r], [a, b][t]))
    q = type(p).from_names(p.names, rels)
    assert enumerate_cosets(q).index == 2 * n


@given(st.integers(1, 40), st.integers(1, 40))
def test_cyclic_with_two_exponents(m, k):
    from math import gcd

    p = parse_presentation(f"generators: a\nrelators: a^{m} a^{k}")
    assert enumerate_cosets(p).index == gcd(m, k)


@given(st.integers(1, 6), st.integers(1, 6))
def test_abelian_products(m, k):
    p = parse_presentation(f"generators: a b\nrelators: a^{m} b^{k} [a,b]")
    t = enumerate_cosets(p)
    t.check()
    assert t.index == m * k
