import pytest
from hypothesis import given
from hypothesis import strategies as st

from chigroup.words import (
    AlphabetMismatch,
    Presentation,
    PresentationSyntaxError,
    Word,
    WordError,
    commutator,
    conjugate,
    format_presentation,
    left_normed_commutator,
    parse_presentation,
    reduce,
)

NAMES = ("a", "b", "c")
A, B, C = (Word.generator(NAMES, i) for i in range(3))
E = Word.identity(NAMES)

letters = st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=14)
words = letters.map(lambda ls: reduce(ls, NAMES))


def test_reduce_examples():
    assert reduce([(0, 1), (0, -1)], NAMES) == E
    assert reduce([(0, 1), (1, 1), (1, -1), (0, 1)], NAMES).letters == ((0, 1), (0, 1))
    assert reduce([(0, 1), (1, -1), (1, 1), (0, -1)], NAMES) == E


def test_reduce_rejects_unknown_generator():
    with pytest.raises(WordError):
        reduce([(5, 1)], NAMES)


def test_commutator_examples():
    assert commutator(A, A) == E
    assert commutator(A, E) == E
    assert commutator(A, B).letters == ((0, -1), (1, -1), (0, 1), (1, 1))


def test_conjugate_examples():
    assert conjugate(A, E) == A
    assert conjugate(A, A) == A
    assert conjugate(A, B).letters == ((1, -1), (0, 1), (1, 1))


def test_alphabet_mismatch():
    other = Word.generator(("a", "z"), 0)
    with pytest.raises(AlphabetMismatch):
        commutator(A, other)
    with pytest.raises(AlphabetMismatch):
        conjugate(A, other)


def test_left_normed_commutator():
    assert left_normed_commutator(A, B, C) == commutator(commutator(A, B), C)


def test_format():
    assert E.format() == "1"
    assert (A * A * B.inverse()).format() == "a^2*b^-1"


def test_parse_examples():
    p = parse_presentation("generators: a\nrelators: a^2")
    assert p.rank == 1 and len(p.relators) == 1
    p = parse_presentation("generators: a b\nrelators: a^2 b^2 [a,b]")
    assert p.names == ("a", "b")
    assert p.relators[2] == commutator(p.gen(0), p.gen(1))
    p = parse_presentation("generators: a\nrelators:")
    assert p.rank == 1 and p.relators == ()


def test_parse_atoms_and_comments():
    p = parse_presentation("# dihedral\ngenerators: a b\nrelators: a^4 b^2 (a*b)^2  # tail\n")
    a, b = p.gens()
    assert p.relators == (a ** 4, b ** 2, (a * b) ** 2)
    p = parse_presentation("generators: x y\nrelators: [x, y, x] x^-1y")
    x, y = p.gens()
    assert p.relators[0] == left_normed_commutator(x, y, x)
    assert p.relators[1] == x.inverse() * y


def test_parse_errors_carry_position():
    with pytest.raises(PresentationSyntaxError) as exc:
        parse_presentation("generators: a\nrelators: a^2 b")
    assert exc.value.line == 2
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("generators:\nrelators:")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("generators: a\nrelators: [a,a")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("generators: a a\nrelators:")


def test_presentation_rejects_foreign_relator():
    with pytest.raises(WordError):
        Presentation.from_names(["a"], [Word.generator(("a", "b"), 1)])


@given(letters)
def test_reduce_idempotent_and_never_longer(ls):
    w = reduce(ls, NAMES)
    assert reduce(w.letters, NAMES) == w
    assert len(w) <= len(ls)
    assert all(not (x[0] == y[0] and x[1] == -y[1]) for x, y in zip(w.letters, w.letters[1:]))


@given(words)
def test_word_times_inverse_is_identity(w):
    assert w * w.inverse() == E
    assert w.inverse().inverse() == w


@given(words, words)
def test_commutator_is_inverse_times_conjugate(u, v):
    assert commutator(u, v) == u.inverse() * conjugate(u, v)
    assert (u * v).inverse() == v.inverse() * u.inverse()


@given(words, words, words)
def test_conjugation_is_a_right_action(u, s, t):
    assert conjugate(conjugate(u, s), t) == conjugate(u, s * t)


@given(words)
def test_format_parses_back(w):
    p = Presentation.from_names(NAMES)
    assert p.word(w.format()) == w


@given(st.lists(words, max_size=5))
def test_presentation_round_trip(rels):
    p = Presentation.from_names(NAMES, rels)
    assert parse_presentation(format_presentation(p)) == p


@given(words, st.integers(-4, 4))
def test_powers_and_exponent_sums(w, k):
    assert (w ** k).exponent_sums() == [k * s for s in w.exponent_sums()]
