"""
Words in finitely generated free groups

Freely reduced words over a ranked alphabet, free-group homomorphisms given
by generator images, and Whitehead minimization of cyclic words.

A letter is a nonzero int: generator i (0-based) is i + 1, its inverse
-(i + 1).  Words are reduced on construction, so equality of `Word` objects
is equality of group elements.
"""

import itertools
import logging
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Tuple

from limgrp.exceptions import InputError
from limgrp.settings import WHITEHEAD_RANK_ENVELOPE

log = logging.getLogger(__name__)

GENERATOR_NAME = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


def _reduce(letters):
    stack = []
    for letter in letters:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator names of a free group"""

    names: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        for name in self.names:
            if not isinstance(name, str) or not GENERATOR_NAME.match(name):
                raise InputError(f"Invalid generator name {name!r}")
        if len(set(self.names)) != len(self.names):
            raise InputError(f"Duplicate generator names in {list(self.names)}")

    @classmethod
    def standard(cls, rank, prefix="x"):
        """Alphabet x1..xn
        Example: Alphabet.standard(2) -> (x1, x2)
        """
        return cls(tuple(f"{prefix}{i + 1}" for i in range(rank)))

    @property
    def rank(self):
        return len(self.names)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self.names

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(
                f"Unknown generator '{name}' (expected one of {', '.join(self.names)})"
            ) from None

    def letter(self, name, sign=1):
        return (self.index(name) + 1) * (1 if sign > 0 else -1)

    def letters(self):
        """Letters in shortlex order: x1 < ... < xr < x1^-1 < ... < xr^-1"""
        return list(range(1, self.rank + 1)) + list(range(-1, -self.rank - 1, -1))

    def letter_key(self, letter):
        if letter > 0:
            return letter - 1
        return self.rank - letter - 1

    def generator(self, name):
        return Word(self, (self.letter(name),))

    def generators(self):
        return tuple(Word(self, (i + 1,)) for i in range(self.rank))

    def identity(self):
        return Word(self, ())


@dataclass(frozen=True)
class Word:
    """Freely reduced word over an alphabet"""

    alphabet: Alphabet
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(int(letter) for letter in self.letters)
        rank = self.alphabet.rank
        for letter in letters:
            if letter == 0 or abs(letter) > rank:
                raise InputError(f"Letter {letter} outside an alphabet of rank {rank}")
        object.__setattr__(self, "letters", _reduce(letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    @property
    def is_identity(self):
        return not self.letters

    @property
    def pairs(self):
        """Letters as (generator index, sign) pairs"""
        return tuple((abs(letter) - 1, 1 if letter > 0 else -1) for letter in self.letters)

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        if other.alphabet != self.alphabet:
            raise InputError("Cannot combine words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def inverse(self):
        return Word(self.alphabet, tuple(-letter for letter in reversed(self.letters)))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, exponent):
        base = self if exponent >= 0 else self.inverse()
        return Word(self.alphabet, base.letters * abs(exponent))

    def conjugate(self, by):
        """by * self * by^-1"""
        return by * self * by.inverse()

    def shortlex_key(self):
        return (len(self.letters), tuple(self.alphabet.letter_key(l) for l in self.letters))

    def generators_used(self):
        return {self.alphabet.names[abs(letter) - 1] for letter in self.letters}

    def lift(self, alphabet, offset=0):
        """Same letters read in a larger alphabet, shifted by `offset` generators"""
        return Word(
            alphabet,
            tuple(letter + offset if letter > 0 else letter - offset for letter in self.letters),
        )

    def translate(self, alphabet):
        """Re-read the word in `alphabet` by generator names"""
        return Word(
            alphabet,
            tuple(
                alphabet.letter(self.alphabet.names[abs(letter) - 1], letter)
                for letter in self.letters
            ),
        )

    @property
    def is_cyclically_reduced(self):
        return len(self.letters) < 2 or self.letters[0] != -self.letters[-1]

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


def free_reduce(alphabet, raw):
    """Reduce a sequence of (generator index, sign) pairs
    Example: [(0, 1), (1, 1), (1, -1)] -> a
    """
    letters = []
    for index, sign in raw:
        if not 0 <= index < alphabet.rank or sign not in (1, -1):
            raise InputError(f"Letter ({index}, {sign}) outside alphabet {alphabet.names}")
        letters.append((index + 1) * sign)
    return Word(alphabet, tuple(letters))


def format_word(word):
    """Text form with grouped powers, "1" for the identity
    Example: a a b^-1 -> "a^2 b^-1"
    """
    if not word.letters:
        return "1"
    tokens = []
    for letter, run in itertools.groupby(word.letters):
        exponent = len(list(run)) * (1 if letter > 0 else -1)
        name = word.alphabet.names[abs(letter) - 1]
        tokens.append(name if exponent == 1 else f"{name}^{exponent}")
    return " ".join(tokens)


def commutator(u, v):
    """[u, v] = u v u^-1 v^-1"""
    return u * v * u.inverse() * v.inverse()


def commute(u, v):
    """Two elements of a free group commute iff they are powers of a common root"""
    if u.is_identity or v.is_identity:
        return True
    root_u, root_v = primitive_root(u)[0], primitive_root(v)[0]
    return root_u == root_v or root_u == root_v.inverse()


def cyclic_reduce(word):
    """Split w = c u c^-1 with u cyclically reduced
    Returns (u, c).
    """
    letters = word.letters
    start, end = 0, len(letters)
    while end - start >= 2 and letters[start] == -letters[end - 1]:
        start += 1
        end -= 1
    core = Word(word.alphabet, letters[start:end])
    conjugator = Word(word.alphabet, letters[:start])
    return core, conjugator


def cyclic_length(word):
    return len(cyclic_reduce(word)[0])


def cyclic_normal_form(word):
    """Shortlex-least rotation of the cyclic reduction of w or of w^-1"""
    core = cyclic_reduce(word)[0]
    if core.is_identity:
        return core
    candidates = []
    for base in (core, core.inverse()):
        for shift in range(len(base)):
            candidates.append(Word(word.alphabet, base.letters[shift:] + base.letters[:shift]))
    return min(candidates, key=Word.shortlex_key)


def primitive_root(word):
    """(root, k) with w = root^k, k >= 1 maximal
    The root of c u^k c^-1 is c u c^-1.  The identity has root 1 and k = 0.
    """
    if word.is_identity:
        return word, 0
    core, conjugator = cyclic_reduce(word)
    letters = core.letters
    n = len(letters)
    for period in range(1, n + 1):
        if n % period == 0 and letters == letters[:period] * (n // period):
            root = Word(word.alphabet, letters[:period])
            return conjugator * root * conjugator.inverse(), n // period
    raise AssertionError("unreachable")


def occurrence_count(word, name):
    """Number of occurrences of a generator or its inverse"""
    target = word.alphabet.index(name) + 1
    return sum(1 for letter in word.letters if abs(letter) == target)


def enumerate_words(alphabet, length):
    """Reduced words of exactly `length` letters in shortlex order"""
    letters = alphabet.letters()

    def extend(prefix):
        if len(prefix) == length:
            yield Word(alphabet, tuple(prefix))
            return
        for letter in letters:
            if prefix and prefix[-1] == -letter:
                continue
            prefix.append(letter)
            yield from extend(prefix)
            prefix.pop()

    if length == 0:
        yield alphabet.identity()
        return
    if alphabet.rank == 0:
        return
    yield from extend([])


def enumerate_ball(alphabet, radius):
    """Reduced words of length <= radius in shortlex order"""
    for length in range(radius + 1):
        yield from enumerate_words(alphabet, length)


@dataclass(frozen=True)
class FreeMap:
    """Homomorphism of free groups given by generator images"""

    domain: Alphabet
    target: Alphabet
    images: Tuple[Word, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.domain.rank:
            raise InputError(
                f"Expected {self.domain.rank} generator images, got {len(images)}"
            )
        for image in images:
            if not isinstance(image, Word) or image.alphabet != self.target:
                raise InputError(f"Image {image!r} is not a word over {self.target.names}")

    @classmethod
    def identity(cls, alphabet):
        return cls(alphabet, alphabet, alphabet.generators())

    @classmethod
    def from_mapping(cls, domain, target, mapping):
        """Images by generator name; unnamed generators go to the identity"""
        unknown = set(mapping) - set(domain.names)
        if unknown:
            raise InputError(f"Images given for unknown generators: {sorted(unknown)}")
        return cls(
            domain,
            target,
            tuple(mapping.get(name, target.identity()) for name in domain.names),
        )

    @cached_property
    def _inverse_images(self):
        return tuple(image.inverse() for image in self.images)

    def image(self, name):
        return self.images[self.domain.index(name)]

    def apply(self, word):
        if word.alphabet != self.domain:
            raise InputError(f"Word {word} is not over {self.domain.names}")
        letters = []
        for letter in word.letters:
            if letter > 0:
                letters.extend(self.images[letter - 1].letters)
            else:
                letters.extend(self._inverse_images[-letter - 1].letters)
        return Word(self.target, tuple(letters))

    __call__ = apply

    def compose(self, inner):
        """self o inner"""
        if inner.target != self.domain:
            raise InputError("Maps do not compose")
        return FreeMap(inner.domain, self.target, tuple(self.apply(w) for w in inner.images))

    @property
    def length(self):
        return max((len(image) for image in self.images), default=0)

    def is_identity(self):
        return self.domain == self.target and self.images == self.domain.generators()

    def as_dict(self):
        return {name: str(image) for name, image in zip(self.domain.names, self.images)}


def apply_map(free_map, word):
    return free_map.apply(word)


@dataclass(frozen=True)
class WhiteheadMove:
    """Whitehead automorphism

    A permutation move sends each generator to a signed generator.  A
    multiplier move fixes the multiplier letter v and sends every other
    generator x to v^l x v^-r, with (l, r) taken from `cut`.
    """

    alphabet: Alphabet
    multiplier: int = 0
    cut: Tuple[Tuple[int, int], ...] = ()
    permutation: Tuple[int, ...] = ()

    @property
    def kind(self):
        return "multiplier" if self.multiplier else "permutation"

    @cached_property
    def map(self):
        alphabet = self.alphabet
        if not self.multiplier:
            return FreeMap(
                alphabet, alphabet, tuple(Word(alphabet, (l,)) for l in self.permutation)
            )
        v = Word(alphabet, (self.multiplier,))
        images = []
        for index, (left, right) in enumerate(self.cut):
            x = Word(alphabet, (index + 1,))
            images.append(v**left * x * v ** (-right))
        return FreeMap(alphabet, alphabet, tuple(images))

    def apply(self, word):
        return self.map.apply(word)

    def inverse(self):
        if not self.multiplier:
            inverse = [0] * self.alphabet.rank
            for index, letter in enumerate(self.permutation):
                sign = 1 if letter > 0 else -1
                inverse[abs(letter) - 1] = (index + 1) * sign
            return WhiteheadMove(self.alphabet, permutation=tuple(inverse))
        return WhiteheadMove(self.alphabet, multiplier=-self.multiplier, cut=self.cut)

    def __str__(self):
        images = ", ".join(f"{k} -> {v}" for k, v in self.map.as_dict().items())
        return f"{self.kind}({images})"


def permutation_moves(alphabet):
    """Signed permutations of the generators, identity excluded"""
    rank = alphabet.rank
    for order in itertools.permutations(range(1, rank + 1)):
        for signs in itertools.product((1, -1), repeat=rank):
            permutation = tuple(letter * sign for letter, sign in zip(order, signs))
            if permutation != tuple(range(1, rank + 1)):
                yield WhiteheadMove(alphabet, permutation=permutation)


def multiplier_moves(alphabet):
    """Non-trivial multiplier moves ordered by multiplier letter, then cut"""
    rank = alphabet.rank
    options = ((0, 0), (0, 1), (1, 0), (1, 1))
    for multiplier in alphabet.letters():
        fixed = abs(multiplier) - 1
        for choices in itertools.product(options, repeat=rank - 1):
            if all(choice == (0, 0) for choice in choices):
                continue
            cut = list(choices)
            cut.insert(fixed, (0, 0))
            yield WhiteheadMove(alphabet, multiplier=multiplier, cut=tuple(cut))


def whitehead_moves(alphabet, include_permutations=True):
    """All Whitehead automorphisms: permutation moves first, then multiplier moves"""
    if alphabet.rank > WHITEHEAD_RANK_ENVELOPE:
        log.warning(
            "Enumerating Whitehead moves of rank %d beyond the envelope of rank %d",
            alphabet.rank,
            WHITEHEAD_RANK_ENVELOPE,
        )
    if include_permutations:
        yield from permutation_moves(alphabet)
    yield from multiplier_moves(alphabet)


@dataclass(frozen=True)
class WhiteheadResult:
    original: Word
    minimal: Word
    moves: Tuple[WhiteheadMove, ...]

    @property
    def whitehead_reduced(self):
        """The input admitted no length-decreasing move"""
        return not self.moves


def whitehead_minimize(word):
    """Steepest descent of cyclic length over multiplier moves

    Permutation moves never change length, so only multiplier moves are tried.
    Ties between equally good moves go to the first in enumeration order.
    """
    current = cyclic_reduce(word)[0]
    moves = []
    while True:
        best: Optional[Tuple[WhiteheadMove, Word]] = None
        for move in whitehead_moves(word.alphabet, include_permutations=False):
            candidate = cyclic_reduce(move.apply(current))[0]
            if len(candidate) < len(current) and (
                best is None or len(candidate) < len(best[1])
            ):
                best = (move, candidate)
        if best is None:
            break
        log.debug("Whitehead step %s: %d -> %d", best[0], len(current), len(best[1]))
        moves.append(best[0])
        current = best[1]
    return WhiteheadResult(word, current, tuple(moves))


def apply_moves(word, moves: Sequence[WhiteheadMove]):
    """Replay moves, cyclically reducing after each one"""
    current = cyclic_reduce(word)[0]
    for move in moves:
        current = cyclic_reduce(move.apply(current))[0]
    return current
