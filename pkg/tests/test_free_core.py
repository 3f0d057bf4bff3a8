"""Words, free-group maps and Whitehead minimization"""

import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limgrp.algebra.free_core import (
    Alphabet,
    FreeMap,
    Word,
    apply_moves,
    commutator,
    commute,
    cyclic_length,
    cyclic_normal_form,
    cyclic_reduce,
    enumerate_ball,
    enumerate_words,
    free_reduce,
    multiplier_moves,
    occurrence_count,
    permutation_moves,
    primitive_root,
    whitehead_minimize,
    whitehead_moves,
)
from limgrp.exceptions import InputError
from limgrp.language.parser import parse_word

F2 = Alphabet(("a", "b"))

words = st.lists(st.sampled_from([1, 2, -1, -2]), max_size=12).map(
    lambda letters: Word(F2, tuple(letters))
)


def w(text):
    return parse_word(text, F2)


def test_words_are_reduced_on_construction():
    assert Word(F2, (1, 2, -2, -1, 1)) == w("a")
    assert len(Word(F2, (1, -1, 2, -2))) == 0


def test_format_groups_powers():
    assert str(Word(F2, (1, 1, -2))) == "a^2 b^-1"
    assert str(F2.identity()) == "1"
    assert repr(w("a b")) == "Word('a b')"


def test_letters_outside_the_alphabet_are_rejected():
    with pytest.raises(InputError):
        Word(F2, (3,))
    with pytest.raises(InputError):
        Word(F2, (0,))
    with pytest.raises(InputError):
        free_reduce(F2, [(2, 1)])


def test_alphabet_validation():
    with pytest.raises(InputError):
        Alphabet(("a", "a"))
    with pytest.raises(InputError):
        Alphabet(("1a",))
    with pytest.raises(InputError, match="Unknown generator 'z'"):
        F2.index("z")
    assert Alphabet.standard(3).names == ("x1", "x2", "x3")
    assert Alphabet(()).rank == 0


def test_shortlex_letter_order():
    assert F2.letters() == [1, 2, -1, -2]
    assert [str(x) for x in enumerate_words(F2, 1)] == ["a", "b", "a^-1", "b^-1"]
    assert [str(x) for x in enumerate_words(F2, 2)][:3] == ["a^2", "a b", "a b^-1"]


def test_enumeration_counts():
    assert len(list(enumerate_words(F2, 2))) == 12
    assert len(list(enumerate_ball(F2, 2))) == 17
    assert list(enumerate_words(Alphabet(()), 1)) == []


def test_commutator():
    assert str(commutator(w("a"), w("b"))) == "a b a^-1 b^-1"
    assert commutator(w("a"), w("a^3")).is_identity


def test_commute():
    assert commute(w("a b a b"), w("a b") ** -3)
    assert commute(w("b a b^-1"), w("b a^-2 b^-1"))
    assert not commute(w("a"), w("b"))
    assert commute(F2.identity(), w("b"))


def test_cyclic_reduce():
    core, conjugator = cyclic_reduce(w("b a b^-1"))
    assert core == w("a")
    assert conjugator == w("b")
    assert cyclic_length(w("a b a b^-1 a^-1")) == 1


def test_cyclic_normal_form_is_rotation_invariant():
    assert cyclic_normal_form(w("a b a^-1 b^-1")) == cyclic_normal_form(w("b^-1 a b a^-1"))
    assert cyclic_normal_form(w("a b")) == cyclic_normal_form(w("b^-1 a^-1"))


def test_primitive_root():
    assert primitive_root(w("a b a b a b")) == (w("a b"), 3)
    assert primitive_root(w("b a^2 b^-1")) == (w("b a b^-1"), 2)
    assert primitive_root(w("a b a")) == (w("a b a"), 1)
    assert primitive_root(F2.identity()) == (F2.identity(), 0)


def test_occurrence_count():
    assert occurrence_count(w("a b a^-1 b^2"), "b") == 3
    with pytest.raises(InputError):
        occurrence_count(w("a"), "c")


def test_lift_and_translate():
    big = Alphabet(("a", "b", "c", "d"))
    assert str(w("a b^-1").lift(big, 2)) == "c d^-1"
    assert w("b a").translate(Alphabet(("b", "a"))).letters == (1, 2)


def test_free_map_apply_and_compose():
    swap = FreeMap.from_mapping(F2, F2, {"a": w("b"), "b": w("a")})
    assert swap(w("a b^-1")) == w("b a^-1")
    assert swap.compose(swap).is_identity()
    killing = FreeMap.from_mapping(F2, F2, {"a": w("a b")})
    assert killing.image("b").is_identity
    assert killing.as_dict() == {"a": "a b", "b": "1"}
    assert killing.length == 2


def test_free_map_validation():
    with pytest.raises(InputError):
        FreeMap(F2, F2, (w("a"),))
    with pytest.raises(InputError):
        FreeMap.from_mapping(F2, F2, {"c": w("a")})
    with pytest.raises(InputError):
        FreeMap.identity(F2).compose(FreeMap.identity(Alphabet(("x",))))


def test_move_enumeration_sizes():
    assert len(list(permutation_moves(F2))) == 7
    assert len(list(multiplier_moves(F2))) == 12
    assert len(list(whitehead_moves(F2))) == 19


def test_whitehead_moves_warn_beyond_the_envelope(caplog):
    moves = whitehead_moves(Alphabet.standard(7), include_permutations=False)
    with caplog.at_level(logging.WARNING, logger="limgrp.algebra.free_core"):
        next(moves)
    assert "beyond the envelope" in caplog.text


def test_whitehead_minimize_primitive_word():
    result = whitehead_minimize(w("a b"))
    assert len(result.minimal) == 1
    assert not result.whitehead_reduced
    assert apply_moves(w("a b"), result.moves) == result.minimal


def test_commutator_is_whitehead_reduced():
    result = whitehead_minimize(w("a b a^-1 b^-1"))
    assert result.whitehead_reduced
    assert result.minimal == w("a b a^-1 b^-1")


def test_whitehead_minimize_starts_from_the_cyclic_core():
    result = whitehead_minimize(w("b a b^-1"))
    assert result.minimal == w("a")
    assert result.whitehead_reduced


@pytest.mark.property_based
@given(words)
@settings(max_examples=100)
def test_inverse_cancels(x):
    assert (x * x.inverse()).is_identity
    assert (x.inverse() * x).is_identity


@pytest.mark.property_based
@given(words, words)
@settings(max_examples=100)
def test_inverse_of_product(x, y):
    assert (x * y).inverse() == y.inverse() * x.inverse()


@pytest.mark.property_based
@given(words, words)
@settings(max_examples=100)
def test_cyclic_normal_form_is_a_conjugacy_invariant(x, y):
    assert cyclic_normal_form(x.conjugate(y)) == cyclic_normal_form(x)


@pytest.mark.property_based
@given(words)
@settings(max_examples=100)
def test_primitive_root_power(x):
    root, k = primitive_root(x)
    assert root**k == x


@pytest.mark.property_based
@given(words)
@settings(max_examples=50, deadline=None)
def test_whitehead_replay_and_length(x):
    result = whitehead_minimize(x)
    assert apply_moves(x, result.moves) == result.minimal
    assert result.minimal.is_cyclically_reduced
    assert len(result.minimal) <= cyclic_length(x)


@pytest.mark.property_based
@given(st.sampled_from(list(whitehead_moves(F2))), words)
@settings(max_examples=100)
def test_every_move_is_inverted(move, x):
    assert move.inverse().apply(move.apply(x)) == x
