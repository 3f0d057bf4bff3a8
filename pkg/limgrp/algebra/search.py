"""
Bounded searches over homomorphisms into free groups

Witnesses for omega-residual freeness (images of a finite set stay
distinct) and residual freeness (an element survives), plus a probe of
the stable kernel of a twisted family of maps.  Every returned witness
has been re-checked; "none" only means "none within the budget".
"""

import logging
import time
from dataclasses import dataclass
from typing import Optional, Tuple

from limgrp.exceptions import InputError, PreconditionError
from limgrp.settings import (
    DEFAULT_MAX_IMAGE_LENGTH,
    DEFAULT_STABLE_RANGE,
    DEFAULT_TARGET_RANK,
)

from .free_core import Alphabet, FreeMap, Word, cyclic_reduce, enumerate_words
from .presentations import GroupHom, validate_hom_to_free
from .status import Status

log = logging.getLogger(__name__)

FINITE_RANGE = "finite-range"


@dataclass(frozen=True)
class SearchBudget:
    max_len: int = DEFAULT_MAX_IMAGE_LENGTH
    rank: int = DEFAULT_TARGET_RANK
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None

    def __post_init__(self):
        if self.max_len < 0 or self.rank < 1:
            raise InputError("Search budget needs max_len >= 0 and rank >= 1")
        if self.max_nodes is not None and self.max_nodes < 1:
            raise InputError("max_nodes must be positive")


@dataclass(frozen=True)
class FiniteSubset:
    words: Tuple[Word, ...]

    def __post_init__(self):
        words = tuple(self.words)
        object.__setattr__(self, "words", words)
        if not words:
            raise InputError("The finite subset is empty")
        if len(set(words)) != len(words):
            raise InputError("Subset elements must be pairwise distinct reduced words")


@dataclass(frozen=True)
class SearchResult:
    witness: Optional[GroupHom]
    nodes: int
    exhausted: bool
    budget: SearchBudget

    @property
    def found(self):
        return self.witness is not None


def forced_trivial(presentation):
    """Generators any map into a torsion-free group must kill

    A relator that involves a single surviving generator, after deleting
    those already forced, is g^e with e != 0.
    """
    alphabet = presentation.alphabet
    forced = set()
    changed = True
    while changed:
        changed = False
        for relator in presentation.relators:
            letters = [l for l in relator.letters if abs(l) - 1 not in forced]
            core = cyclic_reduce(Word(alphabet, tuple(letters)))[0]
            used = {abs(l) - 1 for l in core.letters}
            if len(used) == 1:
                forced |= used
                changed = True
    return forced


class _Enumerator:
    """Image tuples ordered by total length, then per-generator length, then shortlex"""

    def __init__(self, target, slots):
        self.target = target
        self.slots = slots
        self.words = {}

    def of_length(self, length):
        if length not in self.words:
            self.words[length] = list(enumerate_words(self.target, length))
        return self.words[length]

    def with_total(self, slots, total):
        if slots == 0:
            if total == 0:
                yield ()
            return
        if slots == 1:
            for word in self.of_length(total):
                yield (word,)
            return
        for first in range(total + 1):
            for word in self.of_length(first):
                for rest in self.with_total(slots - 1, total - first):
                    yield (word,) + rest

    def __call__(self, max_total):
        for total in range(max_total + 1):
            yield from self.with_total(self.slots, total)


def _search(presentation, budget, predicate):
    target = Alphabet.standard(budget.rank)
    forced = forced_trivial(presentation)
    free_slots = [i for i in range(presentation.rank) if i not in forced]
    if forced:
        log.info(
            "Generators %s are forced trivial",
            [presentation.generators[i] for i in sorted(forced)],
        )
    enumerate_images = _Enumerator(target, len(free_slots))
    started = time.monotonic()
    nodes = 0
    for chosen in enumerate_images(budget.max_len):
        nodes += 1
        if budget.max_nodes is not None and nodes > budget.max_nodes:
            return SearchResult(None, nodes - 1, False, budget)
        if budget.max_seconds is not None and time.monotonic() - started > budget.max_seconds:
            return SearchResult(None, nodes, False, budget)
        images = [target.identity()] * presentation.rank
        for slot, word in zip(free_slots, chosen):
            images[slot] = word
        free_map = FreeMap(presentation.alphabet, target, tuple(images))
        if any(not free_map.apply(r).is_identity for r in presentation.relators):
            continue
        if not predicate(free_map):
            continue
        # independent re-check before the witness is released
        hom = validate_hom_to_free(presentation, free_map.images, target)
        if predicate(hom.free_map):
            return SearchResult(hom, nodes, False, budget)
    return SearchResult(None, nodes, True, budget)


def orf_witness_search(presentation, subset, budget=None):
    """First map to F_r, up to the budget, injective on the subset"""
    budget = budget or SearchBudget()
    for word in subset.words:
        if word.alphabet != presentation.alphabet:
            raise InputError(f"Subset word {word} is not over {presentation.generators}")

    def separates(free_map):
        images = [free_map.apply(word) for word in subset.words]
        return len(set(images)) == len(images)

    return _search(presentation, budget, separates)


def residually_free_probe(presentation, element, budget=None):
    """First map to F_r, up to the budget, not killing `element`"""
    budget = budget or SearchBudget()
    if element.alphabet != presentation.alphabet:
        raise InputError(f"Element {element} is not over {presentation.generators}")
    if element.is_identity:
        raise InputError("The element to probe must be nontrivial")
    return _search(presentation, budget, lambda free_map: not free_map.apply(element).is_identity)


@dataclass(frozen=True)
class TwistFamily:
    """f o alpha^i for i in [start, stop]"""

    base: GroupHom
    twist: object
    start: int = DEFAULT_STABLE_RANGE[0]
    stop: int = DEFAULT_STABLE_RANGE[1]

    def __post_init__(self):
        if self.base.status != Status.VERIFIED:
            raise PreconditionError("The family needs a verified base map")
        if self.twist.group.alphabet != self.base.domain.alphabet:
            raise InputError("Twist and base map act on different groups")
        if not 0 <= self.start <= self.stop:
            raise InputError(f"Bad family range [{self.start}, {self.stop}]")

    def iterates(self, word):
        """(i, alpha^i(word)) over the range"""
        for _ in range(self.start):
            word = self.twist.apply(word)
        for i in range(self.start, self.stop + 1):
            yield i, word
            word = self.twist.apply(word)


@dataclass(frozen=True)
class StableProbe:
    """Pattern of f(alpha^i(g)) over the probed range only"""

    verdicts: Tuple[Tuple[int, bool, Word], ...]
    classification: str
    onset: Optional[int] = None
    evidence: str = FINITE_RANGE

    @property
    def span(self):
        return (self.verdicts[0][0], self.verdicts[-1][0]) if self.verdicts else None


def stable_kernel_probe(family, element):
    """Per-index triviality of f(alpha^i(g)) and its pattern over the range"""
    if element.alphabet != family.base.domain.alphabet:
        raise InputError(f"Element {element} is not a word of the group")
    verdicts = []
    for i, word in family.iterates(element):
        image = family.base.evaluate(word)
        verdicts.append((i, image.is_identity, image))
    flags = [trivial for _, trivial, _ in verdicts]
    if all(flags):
        return StableProbe(tuple(verdicts), "all-trivial-in-range")
    if not any(flags):
        return StableProbe(tuple(verdicts), "all-nontrivial-in-range")
    run = 1
    while run < len(flags) and flags[-run - 1] == flags[-1]:
        run += 1
    if run >= 2:
        onset = verdicts[-run][0]
        return StableProbe(tuple(verdicts), "eventually-constant-from", onset)
    return StableProbe(tuple(verdicts), "mixed")


def separation_probe(family, subset):
    """First index whose map separates the subset, or None"""
    for word in subset.words:
        if word.alphabet != family.base.domain.alphabet:
            raise InputError(f"Subset word {word} is not a word of the group")
    orbits = [list(family.iterates(word)) for word in subset.words]
    for position in range(len(orbits[0])):
        images = [family.base.evaluate(orbit[position][1]) for orbit in orbits]
        if len(set(images)) == len(images):
            return orbits[0][position][0]
    return None
