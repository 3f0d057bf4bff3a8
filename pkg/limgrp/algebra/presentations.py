"""
Finite presentations, homomorphisms and quotient maps

Homomorphisms carry a status: "verified" when every relator was checked
to die in the target, "asserted" when the target has no solvable word
problem and the images are taken on trust.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple, Union

from limgrp.exceptions import InputError, PreconditionError, RelatorsNotKilled

from .free_core import (
    Alphabet,
    FreeMap,
    Word,
    commutator,
    cyclic_normal_form,
    cyclic_reduce,
    primitive_root,
)
from .intlinalg import as_rows, int_matrix, smith_normal_form, unimodular_extend
from .status import Status

log = logging.getLogger(__name__)

FREE = "free"
FREE_ABELIAN = "free_abelian"
GENERAL = "general"


@dataclass(frozen=True)
class Presentation:
    """<alphabet | relators>; relators are stored cyclically reduced, trivial ones dropped"""

    alphabet: Alphabet
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        relators = []
        for relator in self.relators:
            if not isinstance(relator, Word) or relator.alphabet != self.alphabet:
                raise InputError(f"Relator {relator!r} is not a word over {self.alphabet.names}")
            core = cyclic_reduce(relator)[0]
            if not core.is_identity:
                relators.append(core)
        object.__setattr__(self, "relators", tuple(relators))

    @property
    def generators(self):
        return self.alphabet.names

    @property
    def rank(self):
        return self.alphabet.rank

    @cached_property
    def kind(self):
        if not self.relators:
            return FREE
        if self.rank >= 2:
            expected = {
                cyclic_normal_form(commutator(u, v))
                for u, v in itertools.combinations(self.alphabet.generators(), 2)
            }
            if {cyclic_normal_form(r) for r in self.relators} == expected:
                return FREE_ABELIAN
        return GENERAL

    @property
    def is_free(self):
        return self.kind == FREE

    @property
    def is_free_abelian(self):
        return self.kind == FREE_ABELIAN

    def word(self, letters):
        return Word(self.alphabet, tuple(letters))

    def __str__(self):
        relators = ", ".join(str(r) for r in self.relators)
        head = ", ".join(self.generators)
        return f"< {head} | {relators} >" if relators else f"< {head} >"


def free_group(rank, names=None, prefix="x"):
    alphabet = Alphabet(tuple(names)) if names else Alphabet.standard(rank, prefix)
    if alphabet.rank != rank:
        raise InputError(f"Expected {rank} generator names")
    return Presentation(alphabet)


def free_abelian_group(rank, names=None, prefix="e"):
    """Z^n as < e1..en | [ei, ej] >"""
    group = free_group(rank, names, prefix)
    relators = tuple(
        commutator(u, v) for u, v in itertools.combinations(group.alphabet.generators(), 2)
    )
    return Presentation(group.alphabet, relators)


def free_product(left, right):
    """Disjoint union of generators and relators"""
    overlap = set(left.generators) & set(right.generators)
    if overlap:
        raise InputError(f"Free factors share generators {sorted(overlap)}")
    alphabet = Alphabet(left.generators + right.generators)
    relators = tuple(r.lift(alphabet) for r in left.relators) + tuple(
        r.lift(alphabet, left.rank) for r in right.relators
    )
    return Presentation(alphabet, relators)


def exponent_vector(word):
    """Image of a word in the abelianization of its free group"""
    vector = [0] * word.alphabet.rank
    for letter in word.letters:
        vector[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(vector)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism from a presentation, given by generator images

    The target is a Presentation (images are words) or an int n for Z^n
    (images are integer vectors).
    """

    domain: Presentation
    target: Union[Presentation, int]
    images: tuple
    status: Status = Status.ASSERTED

    @property
    def abelian_target(self):
        return isinstance(self.target, int)

    @property
    def free_target(self):
        return not self.abelian_target and self.target.is_free

    @cached_property
    def free_map(self):
        if self.abelian_target:
            raise InputError("Homomorphism into Z^n has no word images")
        return FreeMap(self.domain.alphabet, self.target.alphabet, self.images)

    def image(self, name):
        return self.images[self.domain.alphabet.index(name)]

    def evaluate(self, word):
        if not self.abelian_target:
            return self.free_map.apply(word)
        total = [0] * self.target
        for index, sign in word.pairs:
            for i, value in enumerate(self.images[index]):
                total[i] += sign * value
        return tuple(total)

    def kills(self, word):
        value = self.evaluate(word)
        return not any(value) if self.abelian_target else value.is_identity

    @property
    def length(self):
        return hom_length(self)

    def images_by_name(self):
        return dict(zip(self.domain.generators, self.images))


def _align_images(presentation, images):
    if isinstance(images, dict):
        unknown = set(images) - set(presentation.generators)
        if unknown:
            raise InputError(f"Images given for unknown generators: {sorted(unknown)}")
        missing = [g for g in presentation.generators if g not in images]
        if missing:
            raise InputError(f"No image given for generators {missing}")
        return tuple(images[g] for g in presentation.generators)
    images = tuple(images)
    if len(images) != presentation.rank:
        raise InputError(f"Expected {presentation.rank} generator images, got {len(images)}")
    return images


def check_hom_to_free(presentation, images, target=None):
    """Relators not killed by the images (empty when they define a homomorphism)"""
    images = _align_images(presentation, images)
    if target is None:
        target = images[0].alphabet if images else Alphabet(())
    free_map = FreeMap(presentation.alphabet, target, images)
    return [r for r in presentation.relators if not free_map.apply(r).is_identity]


def validate_hom_to_free(presentation, images, target=None):
    """Verified homomorphism into a free group
    `target` is an Alphabet or free Presentation; by default the images' alphabet.
    """
    images = _align_images(presentation, images)
    if isinstance(target, Presentation):
        if not target.is_free:
            raise InputError("Target presentation is not free")
        target = target.alphabet
    if target is None:
        if not images:
            raise InputError("Cannot infer the target of a map from a rank-0 group")
        target = images[0].alphabet
    violated = check_hom_to_free(presentation, images, target)
    if violated:
        raise RelatorsNotKilled(violated)
    return GroupHom(presentation, Presentation(target), images, Status.VERIFIED)


def validate_hom_to_abelian(presentation, images, rank):
    """Verified homomorphism into Z^rank"""
    images = tuple(tuple(int(x) for x in v) for v in _align_images(presentation, images))
    for vector in images:
        if len(vector) != rank:
            raise InputError(f"Image {vector} does not lie in Z^{rank}")
    hom = GroupHom(presentation, rank, images, Status.VERIFIED)
    violated = [r for r in presentation.relators if not hom.kills(r)]
    if violated:
        raise RelatorsNotKilled(violated)
    return hom


def asserted_hom(presentation, images, target):
    """Images into a general presentation, taken on trust"""
    return GroupHom(presentation, target, _align_images(presentation, images), Status.ASSERTED)


def hom_length(hom):
    """|f| = max length of a generator image"""
    if hom.status != Status.VERIFIED:
        raise PreconditionError("Length is only defined for verified homomorphisms")
    if not hom.free_target:
        raise InputError("Length is only defined for homomorphisms into free groups")
    return max((len(image) for image in hom.images), default=0)


@dataclass(frozen=True)
class Abelianization:
    rank: int
    torsion: Tuple[int, ...]
    images: Tuple[Tuple[int, ...], ...]

    def project(self, word):
        total = [0] * self.rank
        for index, sign in word.pairs:
            for i, value in enumerate(self.images[index]):
                total[i] += sign * value
        return tuple(total)


def abelianization_quotient(presentation):
    """Free rank, torsion coefficients and the map onto the free part
    Example: < a, b | a^2 > -> rank 1, torsion (2,)
    """
    n = presentation.rank
    if not presentation.relators:
        identity = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return Abelianization(n, (), identity)
    relations = int_matrix([exponent_vector(r) for r in presentation.relators])
    form = smith_normal_form(relations)
    nonzero = form.nonzero
    s = len(nonzero)
    torsion = tuple(d for d in nonzero if d > 1)
    images = tuple(tuple(int(form.V_inv[j, i]) for i in range(s, n)) for j in range(n))
    return Abelianization(n - s, torsion, images)


@dataclass(frozen=True)
class QuotientMap:
    """G -> G / <<added>>, the identity on generators"""

    domain: Presentation
    added: Tuple[Word, ...]
    label: str = ""
    witness: Optional[Word] = None

    def __post_init__(self):
        object.__setattr__(self, "added", tuple(self.added))
        for word in self.added:
            if word.alphabet != self.domain.alphabet:
                raise InputError(f"Kernel word {word} is not over {self.domain.generators}")
        if self.witness is None and self.added:
            object.__setattr__(self, "witness", self.added[0])

    @cached_property
    def codomain(self):
        return Presentation(self.domain.alphabet, self.domain.relators + self.added)

    @cached_property
    def properness(self):
        """Whether some kernel word is known to be nontrivial in the domain"""
        if self.domain.is_free:
            if any(not word.is_identity for word in self.added):
                return Status.VERIFIED
            return Status.REFUTED
        if self.domain.is_free_abelian:
            if any(any(exponent_vector(word)) for word in self.added):
                return Status.VERIFIED
            return Status.REFUTED
        return Status.ASSERTED


def factors_through(hom, quotient) -> Optional[GroupHom]:
    """f' with f = f' o q when q's kernel words die under f, else None"""
    if hom.status != Status.VERIFIED:
        raise PreconditionError("Factoring requires a verified homomorphism")
    if quotient.domain.alphabet != hom.domain.alphabet:
        raise InputError("Quotient map and homomorphism have different domains")
    if not all(hom.kills(word) for word in quotient.added):
        return None
    return GroupHom(quotient.codomain, hom.target, hom.images, Status.VERIFIED)


@dataclass(frozen=True)
class AbelianFactorization:
    """f o alpha sends e1 to root^d and every other basis vector to 1"""

    alpha: tuple
    root: Word
    exponents: Tuple[int, ...]
    d: int
    composed: Tuple[Word, ...]


def abelian_factorization(hom):
    """Factor a verified Z^n -> F through a unimodular change of basis
    Example: (ab)^3, (ab)^5 -> alpha = [[2, 5], [-1, -3]], d = 1
    """
    if hom.status != Status.VERIFIED:
        raise PreconditionError("Factoring requires a verified homomorphism")
    if not hom.free_target:
        raise InputError("Target must be a free group")
    if not (hom.domain.is_free_abelian or (hom.domain.is_free and hom.domain.rank == 1)):
        raise InputError("Domain must be a free abelian group")
    n = hom.domain.rank
    nontrivial = [image for image in hom.images if not image.is_identity]
    target = hom.target.alphabet
    if not nontrivial:
        identity = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return AbelianFactorization(identity, target.identity(), (0,) * n, 0, hom.images)
    root = primitive_root(nontrivial[0])[0]
    exponents = []
    for image in hom.images:
        if image.is_identity:
            exponents.append(0)
            continue
        image_root, power = primitive_root(image)
        if image_root == root:
            exponents.append(power)
        elif image_root == root.inverse():
            exponents.append(-power)
        else:
            raise PreconditionError(f"Images {nontrivial[0]} and {image} do not commute")
    alpha, d = unimodular_extend(exponents)
    composed = tuple(
        root ** sum(exponents[i] * alpha[i, j] for i in range(n)) for j in range(n)
    )
    expected = (root**d,) + (target.identity(),) * (n - 1)
    if composed != expected:
        raise PreconditionError("Unimodular extension failed its post-check")
    return AbelianFactorization(as_rows(alpha), root, tuple(exponents), d, composed)


def matrix_automorphism(presentation, matrix):
    """Endomorphism of a free abelian group; column j is the image of generator j"""
    rows = as_rows(matrix)
    n = presentation.rank
    if len(rows) != n or any(len(row) != n for row in rows):
        raise InputError(f"Expected a {n}x{n} matrix")
    gens = presentation.alphabet.generators()
    images = []
    for j in range(n):
        image = presentation.alphabet.identity()
        for i in range(n):
            image = image * gens[i] ** rows[i][j]
        images.append(image)
    return FreeMap(presentation.alphabet, presentation.alphabet, tuple(images))


@dataclass(frozen=True)
class SurfaceGroup:
    presentation: Presentation
    genus: int
    orientable: bool
    retraction: Optional[GroupHom]


def surface_family(genus, orientable=True):
    """Closed surface group with its retraction onto F_g when orientable"""
    if orientable:
        if genus < 2:
            raise InputError("Orientable genus must be at least 2")
        names = tuple(name for i in range(genus) for name in (f"a{i + 1}", f"b{i + 1}"))
        alphabet = Alphabet(names)
        relator = alphabet.identity()
        for i in range(genus):
            a, b = alphabet.generator(f"a{i + 1}"), alphabet.generator(f"b{i + 1}")
            relator = relator * commutator(a, b)
        presentation = Presentation(alphabet, (relator,))
        target = Alphabet.standard(genus)
        images = []
        for i in range(genus):
            images.extend([target.generator(f"x{i + 1}"), target.identity()])
        retraction = validate_hom_to_free(presentation, images, target)
        return SurfaceGroup(presentation, genus, True, retraction)
    if genus < 1:
        raise InputError("Non-orientable genus must be at least 1")
    alphabet = Alphabet(tuple(f"a{i + 1}" for i in range(genus)))
    relator = alphabet.identity()
    for generator in alphabet.generators():
        relator = relator * generator**2
    log.info("No retraction onto a free group is produced for non-orientable surfaces")
    return SurfaceGroup(Presentation(alphabet, (relator,)), genus, False, None)
