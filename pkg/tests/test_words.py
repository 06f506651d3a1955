import pytest
from hypothesis import given, strategies as st

from fiberkit.words import (
    Word,
    concat,
    cyclic_reduce,
    exponent_sum,
    reduce_word,
    substitute,
)

GENS = ("x", "y", "z")

syllable = st.tuples(st.sampled_from(GENS), st.integers(-5, 5).filter(bool))
raw_syllables = st.lists(syllable, max_size=12)
words = raw_syllables.map(reduce_word)


def w(*sylls):
    return Word.of(*sylls)


class TestReduce:
    def test_forced_cancellation(self):
        assert reduce_word([("x", 1), ("x", 1), ("y", -1), ("y", 1)]) == w(("x", 2))

    def test_empty(self):
        assert reduce_word([]) == Word()

    def test_already_reduced_relator_unchanged(self):
        sylls = (("x", 2), ("y", 2), ("x", 2), ("y", -1))
        assert reduce_word(sylls).syllables == sylls

    def test_zero_exponents_dropped(self):
        assert reduce_word([("x", 0), ("y", 2)]) == w(("y", 2))

    @given(raw_syllables)
    def test_idempotent(self, sylls):
        once = reduce_word(sylls)
        assert reduce_word(once.syllables) == once

    @given(words, words)
    def test_length_subadditive(self, u, v):
        assert len(u * v) <= len(u) + len(v)

    def test_unreduced_constructor_rejected(self):
        with pytest.raises(ValueError):
            Word((("x", 1), ("x", 2)))
        with pytest.raises(ValueError):
            Word((("x", 0),))


class TestInverse:
    @given(words)
    def test_inverse_cancels(self, u):
        assert u * u.inverse() == Word()
        assert u.inverse() * u == Word()

    @given(words)
    def test_involution(self, u):
        assert u.inverse().inverse() == u


class TestExponentSum:
    def test_relator_sums(self):
        r = w(("x", 2), ("y", 2), ("x", 2), ("y", -1))
        assert exponent_sum(r, "x") == 4
        assert exponent_sum(r, "y") == 1

    def test_empty(self):
        assert exponent_sum(Word(), "x") == 0

    @given(words, words, st.sampled_from(GENS))
    def test_additive_under_concat(self, u, v, g):
        assert exponent_sum(u * v, g) == exponent_sum(u, g) + exponent_sum(v, g)


class TestSubstitute:
    def test_straightening_move(self):
        word = w(("u", 1), ("y", 2), ("u", 1), ("y", -1))
        images = {"u": w(("u", 1), ("y", 1)), "y": Word.gen("y")}
        assert substitute(word, images) == w(("u", 1), ("y", 3), ("u", 1))

    @given(words)
    def test_identity_assignment(self, word):
        images = {g: Word.gen(g) for g in GENS}
        assert substitute(word, images) == word

    def test_inversion_twice(self):
        images = {"x": Word.gen("x", -1)}
        assert substitute(substitute(Word.gen("x"), images), images) == Word.gen("x")

    def test_missing_image(self):
        with pytest.raises(ValueError):
            substitute(Word.gen("x"), {"y": Word.gen("y")})

    @given(words, st.lists(st.tuples(st.sampled_from(GENS), words), max_size=3).map(dict),
           st.lists(st.tuples(st.sampled_from(GENS), words), max_size=3).map(dict))
    def test_functorial(self, word, alpha, beta):
        # substitution along composed assignments equals iterated substitution
        full_alpha = {g: alpha.get(g, Word.gen(g)) for g in GENS}
        full_beta = {g: beta.get(g, Word.gen(g)) for g in GENS}
        composed = {g: substitute(full_beta[g], full_alpha) for g in GENS}
        assert substitute(word, composed) == substitute(
            substitute(word, full_beta), full_alpha
        )


class TestCyclicReduce:
    def test_merges_across_the_ends(self):
        assert cyclic_reduce(w(("u", 1), ("y", 3), ("u", 1))) == w(("u", 2), ("y", 3))

    def test_conjugation_stripped(self):
        assert cyclic_reduce(w(("x", 1), ("y", 1), ("x", -1))) == Word.gen("y")

    def test_empty(self):
        assert cyclic_reduce(Word()) == Word()

    def test_canonical_rotation_prefers_first_generator(self):
        assert cyclic_reduce(w(("y", 3), ("x", 2)), order=("x", "y")) == w(
            ("x", 2), ("y", 3)
        )

    def test_positive_before_negative(self):
        # both rotations start with x; the sign ordering breaks the tie
        word = w(("x", 1), ("y", 1), ("x", -1), ("y", 1))
        reduced = cyclic_reduce(word, order=("x", "y"))
        assert reduced.syllables[0] == ("x", 1)

    @given(words)
    def test_idempotent(self, word):
        once = cyclic_reduce(word)
        assert cyclic_reduce(once) == once

    @given(words, words)
    def test_conjugation_invariant(self, word, conjugator):
        conjugated = conjugator * word * conjugator.inverse()
        assert cyclic_reduce(conjugated) == cyclic_reduce(word)

    @given(words, st.sampled_from(GENS))
    def test_preserves_exponent_sums(self, word, g):
        assert exponent_sum(cyclic_reduce(word), g) == exponent_sum(word, g)

    @given(words)
    def test_no_shorter_rotation(self, word):
        reduced = cyclic_reduce(word)
        letters = reduced.letters()
        for i in range(len(letters)):
            rotation = reduce_word(letters[i:] + letters[:i])
            assert len(rotation) >= len(reduced)


class TestFormatting:
    def test_str(self):
        assert str(w(("x", 2), ("y", -1))) == "x^2 y^-1"
        assert str(Word.gen("x")) == "x"
        assert str(Word()) == "1"

    def test_pow(self):
        assert Word.gen("x") ** 3 == w(("x", 3))
        assert Word.gen("x") ** -2 == w(("x", -2))
        assert Word.gen("x") ** 0 == Word()
