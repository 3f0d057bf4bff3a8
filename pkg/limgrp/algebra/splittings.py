"""
Graph-of-groups decompositions and their automorphisms

A GAD (generalized abelian decomposition) labels the vertices of a graph
of groups as QH (surface with boundary), abelian or rigid.  One-edge
splittings give Dehn twists, abelian vertices give generalized Dehn twists,
and doubles of free groups along a word carry an explicit normal form.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import networkx as nx

from limgrp.exceptions import InputError, PreconditionError

from .free_core import Alphabet, FreeMap, Word, commute, cyclic_normal_form, primitive_root
from .intlinalg import (
    Lattice,
    as_rows,
    determinant,
    int_matrix,
    quotient_block,
    saturation,
    unimodular_inverse,
)
from .presentations import FREE, FREE_ABELIAN, Presentation, validate_hom_to_free
from .status import Status

log = logging.getLogger(__name__)

QH = "qh"
ABELIAN = "abelian"
RIGID = "rigid"


@dataclass(frozen=True)
class QHVertex:
    """Surface with boundary; `generators` span its fundamental group"""

    name: str
    generators: Tuple[str, ...]
    genus: int
    boundary: int
    orientable: bool = True
    free: bool = True
    kind = QH

    @property
    def euler_characteristic(self):
        if self.orientable:
            return 2 - 2 * self.genus - self.boundary
        return 2 - self.genus - self.boundary

    def check(self):
        if self.boundary < 1:
            raise InputError(f"QH vertex '{self.name}' is a closed surface")
        punctured_torus = self.orientable and self.genus == 1 and self.boundary == 1
        if self.euler_characteristic > -2 and not punctured_torus:
            raise InputError(
                f"QH vertex '{self.name}' has Euler characteristic "
                f"{self.euler_characteristic} and is not a punctured torus"
            )


@dataclass(frozen=True)
class AbelianVertex:
    """Free abelian vertex group; `peripheral` lists extra generators of P(A)"""

    name: str
    generators: Tuple[str, ...]
    peripheral: Tuple[Tuple[int, ...], ...] = ()
    kind = ABELIAN

    @property
    def rank(self):
        return len(self.generators)

    def check(self):
        if self.rank < 2:
            raise InputError(f"Abelian vertex '{self.name}' is cyclic")
        for vector in self.peripheral:
            if len(vector) != self.rank:
                raise InputError(
                    f"Peripheral vector {tuple(vector)} does not lie in Z^{self.rank}"
                )


@dataclass(frozen=True)
class RigidVertex:
    name: str
    generators: Tuple[str, ...]
    free: bool = False
    kind = RIGID

    def check(self):
        if not self.generators:
            raise InputError(f"Rigid vertex '{self.name}' has no generators")


@dataclass(frozen=True)
class GADEdge:
    """Edge group generators (words of the total group) and their image at each end

    An end at an abelian vertex lists integer vectors in the vertex basis,
    any other end lists words in the vertex generators.
    """

    source: str
    target: str
    generators: Tuple[Word, ...]
    source_image: tuple
    target_image: tuple

    @property
    def is_loop(self):
        return self.source == self.target


@dataclass(frozen=True)
class GAD:
    group: Presentation
    vertices: tuple
    edges: Tuple[GADEdge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        _validate_gad(self)

    def vertex(self, name):
        for vertex in self.vertices:
            if vertex.name == name:
                return vertex
        raise InputError(f"Unknown vertex '{name}'")

    def ends(self, name):
        """(edge, image here, other vertex, image there) for each edge end at `name`"""
        result = []
        for edge in self.edges:
            if edge.source == name:
                result.append(
                    (edge, edge.source_image, self.vertex(edge.target), edge.target_image)
                )
            if edge.target == name:
                result.append(
                    (edge, edge.target_image, self.vertex(edge.source), edge.source_image)
                )
        return result

    def abelian_vertex(self, name):
        """Abelian vertex with the incident edge groups added to its peripheral list"""
        vertex = self.vertex(name)
        if vertex.kind != ABELIAN:
            raise InputError(f"Vertex '{name}' is not abelian")
        extra = tuple(tuple(v) for _, image, _, _ in self.ends(name) for v in image)
        return replace(vertex, peripheral=tuple(vertex.peripheral) + extra)

    def vertex_element(self, vertex, vector):
        """Word of the total group for an integer vector of an abelian vertex"""
        alphabet = self.group.alphabet
        word = alphabet.identity()
        for name, exponent in zip(vertex.generators, vector):
            word = word * alphabet.generator(name) ** exponent
        return word

    def graph(self):
        graph = nx.MultiGraph()
        graph.add_nodes_from(vertex.name for vertex in self.vertices)
        graph.add_edges_from((edge.source, edge.target) for edge in self.edges)
        return graph


def _validate_gad(gad):
    names = set()
    alphabet = gad.group.alphabet
    for vertex in gad.vertices:
        if vertex.name in names:
            raise InputError(f"Duplicate vertex '{vertex.name}'")
        names.add(vertex.name)
        vertex.check()
        for generator in vertex.generators:
            alphabet.index(generator)
    if not gad.vertices:
        raise InputError("A GAD needs at least one vertex")
    for edge in gad.edges:
        count = len(edge.generators)
        for end, image in ((edge.source, edge.source_image), (edge.target, edge.target_image)):
            vertex = gad.vertex(end)
            if len(image) != count:
                raise InputError(
                    f"Edge {edge.source}-{edge.target} lists {len(image)} images "
                    f"at '{end}' for {count} generators"
                )
            for value in image:
                if vertex.kind == ABELIAN:
                    if isinstance(value, Word) or len(value) != vertex.rank:
                        raise InputError(f"Edge image {value} does not lie in Z^{vertex.rank}")
                elif not isinstance(value, Word) or value.alphabet != alphabet:
                    raise InputError(f"Edge image {value!r} is not a word of the group")
                elif not value.generators_used() <= set(vertex.generators):
                    raise InputError(f"Edge image {value} leaves vertex '{end}'")
        for word in edge.generators:
            if word.alphabet != alphabet:
                raise InputError(f"Edge generator {word!r} is not a word of the group")
    if not nx.is_connected(gad.graph()):
        raise InputError("GAD graph is not connected")


@dataclass(frozen=True)
class PeripheralClosure:
    lattice: Lattice
    index: int

    @property
    def rank(self):
        return self.lattice.rank


def peripheral_closure(vertex):
    """Saturation of the peripheral subgroup of an abelian vertex"""
    if vertex.kind != ABELIAN:
        raise InputError(f"Vertex '{vertex.name}' is not abelian")
    result = saturation(Lattice(vertex.rank, vertex.peripheral))
    return PeripheralClosure(result.lattice, result.index)


@dataclass(frozen=True)
class Amalgam:
    """G = L *_C R with C generated by left_edge = right_edge"""

    group: Presentation
    left: Tuple[str, ...]
    right: Tuple[str, ...]
    left_edge: Word
    right_edge: Word
    left_kind: str = FREE
    right_kind: str = FREE

    def __post_init__(self):
        if set(self.left) & set(self.right):
            raise InputError("Amalgam sides share generators")
        if set(self.left) | set(self.right) != set(self.group.generators):
            raise InputError("Amalgam sides must cover the generators of the group")
        for word, side in ((self.left_edge, self.left), (self.right_edge, self.right)):
            if not word.generators_used() <= set(side):
                raise InputError(f"Edge word {word} leaves its side {list(side)}")


@dataclass(frozen=True)
class HNN:
    """G = B*_C with stable letter t and t c t^-1 = partner"""

    group: Presentation
    base: Tuple[str, ...]
    stable: str
    edge: Word
    partner: Word
    base_kind: str = FREE

    def __post_init__(self):
        alphabet = self.group.alphabet
        alphabet.index(self.stable)
        if self.stable in self.base:
            raise InputError("The stable letter cannot lie in the base")
        t = alphabet.generator(self.stable)
        relation = cyclic_normal_form(t * self.edge * t.inverse() * self.partner.inverse())
        if relation not in {cyclic_normal_form(r) for r in self.group.relators}:
            raise InputError(f"Relation {self.stable} c {self.stable}^-1 = phi(c) is missing")


@dataclass(frozen=True)
class AbelianSplitting:
    """Splitting with a distinguished abelian vertex"""

    group: Presentation
    vertex: AbelianVertex

    def __post_init__(self):
        self.vertex.check()
        for name in self.vertex.generators:
            self.group.alphabet.index(name)


@dataclass(frozen=True)
class TwistAutomorphism:
    group: Presentation
    label: str
    forward: FreeMap
    backward: FreeMap
    status: Status = Status.VERIFIED
    twisting: Optional[Word] = None
    matrix: Optional[tuple] = None

    def apply(self, word):
        return self.forward.apply(word)

    def inverse(self):
        return TwistAutomorphism(
            self.group, f"{self.label}^-1", self.backward, self.forward, self.status
        )

    def compose(self, other):
        """self o other"""
        return TwistAutomorphism(
            self.group,
            f"{self.label} . {other.label}",
            self.forward.compose(other.forward),
            other.backward.compose(self.backward),
            Status.VERIFIED if self.status == other.status == Status.VERIFIED else Status.ASSERTED,
        )

    def images(self):
        return self.forward.as_dict()


def _is_power_of(word, base):
    """m with word = base^m, or None (free group)"""
    if word.is_identity:
        return 0
    if base.is_identity:
        return None
    root, exponent = primitive_root(word)
    base_root, base_exponent = primitive_root(base)
    if root == base_root.inverse():
        exponent = -exponent
    elif root != base_root:
        return None
    if exponent % base_exponent:
        return None
    return exponent // base_exponent


def _centralizer_status(z, side, edge, kind, other_side=(), other_edge=None):
    """Whether z centralizes the edge group, and how that is known"""
    if z.is_identity:
        return Status.VERIFIED
    used = z.generators_used()
    if used <= set(side):
        if kind == FREE:
            if commute(z, edge):
                return Status.VERIFIED
            raise PreconditionError(f"Twisting element {z} does not commute with {edge}")
        if kind == FREE_ABELIAN:
            return Status.VERIFIED
        # a commutator always dies in the abelianization, so nothing more is checkable
        log.info("Centralizer membership of %s is asserted", z)
        return Status.ASSERTED
    if other_edge is not None and used <= set(other_side):
        if _is_power_of(z, other_edge) is not None:
            return Status.VERIFIED
    raise PreconditionError(f"Twisting element {z} does not lie in the centralizer")


def dehn_twist(splitting, z):
    """Dehn twist along a one-edge splitting by z in the centralizer of the edge group

    Amalgam: the left side is fixed and the right side is conjugated by z.
    HNN: the base is fixed and t -> t z.
    """
    alphabet = splitting.group.alphabet
    if z.alphabet != alphabet:
        raise InputError(f"Twisting element {z} is not a word of the group")
    forward, backward = [], []
    if isinstance(splitting, Amalgam):
        status = _centralizer_status(
            z,
            splitting.right,
            splitting.right_edge,
            splitting.right_kind,
            splitting.left,
            splitting.left_edge,
        )
        for name, generator in zip(alphabet.names, alphabet.generators()):
            if name in splitting.right:
                forward.append(generator.conjugate(z))
                backward.append(generator.conjugate(z.inverse()))
            else:
                forward.append(generator)
                backward.append(generator)
    elif isinstance(splitting, HNN):
        status = _centralizer_status(z, splitting.base, splitting.edge, splitting.base_kind)
        for name, generator in zip(alphabet.names, alphabet.generators()):
            if name == splitting.stable:
                forward.append(generator * z)
                backward.append(generator * z.inverse())
            else:
                forward.append(generator)
                backward.append(generator)
    else:
        raise InputError("Dehn twists need an amalgam or HNN splitting")
    return TwistAutomorphism(
        splitting.group,
        f"D[{z}]",
        FreeMap(alphabet, alphabet, tuple(forward)),
        FreeMap(alphabet, alphabet, tuple(backward)),
        status,
        twisting=z,
    )


def _vertex_images(group, vertex, matrix):
    alphabet = group.alphabet
    images = dict(zip(alphabet.names, alphabet.generators()))
    gens = [alphabet.generator(name) for name in vertex.generators]
    for j, name in enumerate(vertex.generators):
        image = alphabet.identity()
        for i, generator in enumerate(gens):
            image = image * generator ** int(matrix[i][j])
        images[name] = image
    return FreeMap(alphabet, alphabet, tuple(images[name] for name in alphabet.names))


def generalized_dehn_twist(splitting, matrix):
    """Automorphism of an abelian vertex fixing its peripheral closure

    M must fix every vector of the closure and induce a determinant-one map on
    the quotient; everything outside the vertex is fixed.
    """
    vertex = splitting.vertex
    n = vertex.rank
    matrix = int_matrix(as_rows(matrix))
    if matrix.shape != (n, n):
        raise InputError(f"Expected a {n}x{n} matrix for vertex '{vertex.name}'")
    closure = peripheral_closure(vertex)
    for vector in closure.lattice.generators:
        column = int_matrix([vector]).T
        if [int(x) for x in matrix.dot(column)[:, 0]] != list(vector):
            raise PreconditionError(f"Matrix moves the peripheral vector {vector}")
    block = quotient_block(matrix, closure.lattice)
    block_det = determinant(block) if block.shape[0] else 1
    if block_det != 1:
        raise PreconditionError(f"Induced quotient map has determinant {block_det}")
    inverse = unimodular_inverse(matrix)
    status = Status.VERIFIED if splitting.group.is_free_abelian else Status.ASSERTED
    return TwistAutomorphism(
        splitting.group,
        f"M{as_rows(matrix)}",
        _vertex_images(splitting.group, vertex, as_rows(matrix)),
        _vertex_images(splitting.group, vertex, as_rows(inverse)),
        status,
        matrix=tuple(tuple(row) for row in as_rows(matrix)),
    )


def transvection(group, i, j, sign=1):
    """Generator j -> generator j * generator i^sign on a free abelian group"""
    if not group.is_free_abelian:
        raise InputError("Transvections are defined on free abelian groups")
    n = group.rank
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise InputError(f"Bad transvection indices ({i}, {j})")
    matrix = [[int(r == c) for c in range(n)] for r in range(n)]
    matrix[i][j] = 1 if sign > 0 else -1
    vertex = AbelianVertex("A", group.generators)
    twist = generalized_dehn_twist(AbelianSplitting(group, vertex), matrix)
    names = group.generators
    exponent = "" if sign > 0 else "^-1"
    return replace(twist, label=f"T[{names[j]} -> {names[j]} {names[i]}{exponent}]")


def inner_automorphism(group, conjugator):
    """g -> c g c^-1"""
    alphabet = group.alphabet
    forward = tuple(g.conjugate(conjugator) for g in alphabet.generators())
    backward = tuple(g.conjugate(conjugator.inverse()) for g in alphabet.generators())
    return TwistAutomorphism(
        group,
        f"i[{conjugator}]",
        FreeMap(alphabet, alphabet, forward),
        FreeMap(alphabet, alphabet, backward),
        Status.VERIFIED,
        twisting=conjugator,
    )


@dataclass(frozen=True)
class Double:
    """F *_<w> F with the right copy of F renamed"""

    group: Presentation
    left: Tuple[str, ...]
    right: Tuple[str, ...]
    left_word: Word
    right_word: Word
    splitting: Amalgam = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "splitting",
            Amalgam(self.group, self.left, self.right, self.left_word, self.right_word),
        )

    def side(self, letter):
        return 0 if abs(letter) <= len(self.left) else 1

    def edge(self, side):
        return self.right_word if side else self.left_word


def double_of_free(left, right, word):
    """Double of F(left) along a word that is not a proper power"""
    left, right = tuple(left), tuple(right)
    if len(left) != len(right):
        raise InputError("Both copies of the free group need the same rank")
    if word.alphabet.names != left:
        word = word.translate(Alphabet(left))
    if word.is_identity:
        raise InputError("Cannot double along the trivial word")
    if primitive_root(word)[1] != 1:
        raise PreconditionError(f"Word {word} is a proper power")
    total = Alphabet(left + right)
    left_word = word.lift(total)
    right_word = word.lift(total, len(left))
    group = Presentation(total, (left_word * right_word.inverse(),))
    return Double(group, left, right, left_word, right_word)


def retraction_of_double(double):
    """Verified retraction onto the left factor: each right generator -> its left twin"""
    target = Alphabet(double.left)
    images = list(target.generators()) * 2
    return validate_hom_to_free(double.group, images, target)


@dataclass(frozen=True)
class AmalgamNormalForm:
    """u = w^power s1 ... sk with each si a coset representative of C in its factor"""

    power: int
    syllables: Tuple[Tuple[int, Word], ...]

    @property
    def trivial(self):
        return not self.syllables and self.power == 0

    def __len__(self):
        return len(self.syllables)


def _syllables(double, word):
    result = []
    for letter in word.letters:
        side = double.side(letter)
        if result and result[-1][0] == side:
            result[-1][1].append(letter)
        else:
            result.append((side, [letter]))
    return [(side, Word(word.alphabet, tuple(letters))) for side, letters in result]


def _merge(syllables):
    changed = True
    while changed:
        changed = False
        merged = []
        for side, word in syllables:
            if word.is_identity:
                changed = True
                continue
            if merged and merged[-1][0] == side:
                merged[-1] = (side, merged[-1][1] * word)
                changed = True
            else:
                merged.append((side, word))
        syllables = merged
    return syllables


def _coset_representative(edge, word):
    """(m, r) with word = edge^m r and r shortlex-least among such"""
    bound = 2 * len(word) + 1
    best = None
    for m in range(-bound, bound + 1):
        candidate = (edge ** (-m)) * word
        key = candidate.shortlex_key()
        if best is None or key < best[0]:
            best = (key, m, candidate)
    return best[1], best[2]


def amalgam_normal_form(double, word):
    """Reduced form of a word of the double; trivial iff the element is trivial"""
    if word.alphabet != double.group.alphabet:
        raise InputError(f"Word {word} is not a word of the double")
    syllables = _syllables(double, word)
    changed = True
    while changed and len(syllables) >= 2:
        changed = False
        for index, (side, part) in enumerate(syllables):
            power = _is_power_of(part, double.edge(side))
            if power is None:
                continue
            replacement = double.edge(1 - side) ** power
            start, stop = max(index - 1, 0), min(index + 2, len(syllables))
            merged = replacement
            if index > 0:
                merged = syllables[index - 1][1] * merged
            if index + 1 < len(syllables):
                merged = merged * syllables[index + 1][1]
            syllables = _merge(syllables[:start] + [(1 - side, merged)] + syllables[stop:])
            changed = True
            break
    carry = 0
    representatives = []
    for side, part in reversed(syllables):
        part = part * double.edge(side) ** carry
        carry, representative = _coset_representative(double.edge(side), part)
        if not representative.is_identity:
            representatives.append((side, representative))
    representatives.reverse()
    return AmalgamNormalForm(carry, tuple(representatives))
