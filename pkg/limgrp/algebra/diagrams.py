"""
Makanin-Razborov diagrams, factor sets and CLG certificates

Everything here checks objects a user supplies; nothing builds a diagram
from scratch.  Each check reports a Status: "verified" for decided facts,
weaker statuses where the group-theoretic question is undecidable with the
data at hand.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from limgrp.exceptions import InputError, MalformedCertificate, PreconditionError
from limgrp.settings import DEFAULT_SAMPLING_RADIUS

from .free_core import (
    Alphabet,
    FreeMap,
    Word,
    commutator,
    cyclic_normal_form,
    enumerate_ball,
    primitive_root,
)
from .intlinalg import Lattice, determinant, unimodular_inverse
from .presentations import (
    GroupHom,
    Presentation,
    QuotientMap,
    abelian_factorization,
    abelianization_quotient,
    exponent_vector,
    factors_through,
    free_abelian_group,
    free_group,
    free_product,
    hom_length,
    matrix_automorphism,
    surface_family,
    validate_hom_to_free,
)
from .splittings import (
    ABELIAN,
    GAD,
    QH,
    RIGID,
    AbelianVertex,
    GADEdge,
    QHVertex,
    RigidVertex,
    double_of_free,
    peripheral_closure,
    retraction_of_double,
)
from .stallings import fold_core_graph, hom_injectivity, subgroup_index
from .status import Status, weakest

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagramEdge:
    """Proper epimorphism parent -> child given by generator images"""

    parent: str
    child: str
    images: FreeMap


@dataclass(frozen=True)
class MRDiagram:
    """Finite rooted tree of groups with free leaves"""

    root: str
    nodes: Dict[str, Presentation]
    edges: Tuple[DiagramEdge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.root not in self.nodes:
            raise InputError(f"Unknown root node '{self.root}'")
        tree = nx.DiGraph()
        tree.add_nodes_from(self.nodes)
        for edge in self.edges:
            for name in (edge.parent, edge.child):
                if name not in self.nodes:
                    raise InputError(f"Unknown diagram node '{name}'")
            if edge.images.domain != self.nodes[edge.parent].alphabet:
                raise InputError(f"Edge {edge.parent}->{edge.child} has the wrong domain")
            if edge.images.target != self.nodes[edge.child].alphabet:
                raise InputError(f"Edge {edge.parent}->{edge.child} has the wrong target")
            tree.add_edge(edge.parent, edge.child)
        if not nx.is_arborescence(tree) or tree.in_degree(self.root) != 0:
            raise InputError(f"Diagram is not a tree rooted at '{self.root}'")
        for name in self.leaves():
            if not self.nodes[name].is_free:
                raise InputError(f"Leaf '{name}' is not a free group")

    def children(self, name):
        return [edge.child for edge in self.edges if edge.parent == name]

    def leaves(self):
        return [name for name in self.nodes if not self.children(name)]

    def edge(self, parent, child):
        for edge in self.edges:
            if edge.parent == parent and edge.child == child:
                return edge
        raise InputError(f"No diagram edge {parent}->{child}")

    def check_branch(self, branch):
        branch = tuple(branch)
        if not branch or branch[0] != self.root:
            raise InputError(f"Branch must start at the root '{self.root}'")
        if self.children(branch[-1]):
            raise InputError(f"Branch must end at a leaf, not '{branch[-1]}'")
        for parent, child in zip(branch, branch[1:]):
            self.edge(parent, child)
        return branch


@dataclass(frozen=True)
class MRWitness:
    """Path to a leaf, one automorphism per non-leaf node and the terminal map

    When the branch is just the root, one automorphism of the root is given.
    """

    branch: Tuple[str, ...]
    automorphisms: Tuple[FreeMap, ...]
    terminal: FreeMap


@dataclass(frozen=True)
class StageReport:
    label: str
    status: Status
    detail: str = ""


@dataclass(frozen=True)
class GeneratorCheck:
    generator: str
    expected: Word
    obtained: Word

    @property
    def equal(self):
        return self.expected == self.obtained


@dataclass(frozen=True)
class MRReport:
    status: Status
    checks: Tuple[GeneratorCheck, ...]
    stages: Tuple[StageReport, ...]

    @property
    def ok(self):
        return self.status == Status.VERIFIED


def _surjection_status(images, child):
    """Whether generator images of a map onto `child` generate it"""
    if child.is_free:
        graph = fold_core_graph(images.images, images.target)
        return Status.VERIFIED if subgroup_index(graph) == 1 else Status.FAILED
    if child.is_free_abelian:
        lattice = Lattice(child.rank, tuple(exponent_vector(w) for w in images.images))
        return Status.VERIFIED if lattice.is_full() else Status.FAILED
    return Status.ASSERTED


def _hom_status(images, parent, child):
    """Whether generator images of parent kill its relators in child

    Into a group without a decided word problem a relator is only known to
    die when its image is freely trivial or a cyclic conjugate of a relator.
    """
    if child.is_free:
        killed = all(images.apply(r).is_identity for r in parent.relators)
        return Status.VERIFIED if killed else Status.FAILED
    if child.is_free_abelian:
        killed = all(not any(exponent_vector(images.apply(r))) for r in parent.relators)
        return Status.VERIFIED if killed else Status.FAILED
    known = {cyclic_normal_form(r) for r in child.relators}
    images_of_relators = [cyclic_normal_form(images.apply(r)) for r in parent.relators]
    if all(w.is_identity or w in known for w in images_of_relators):
        return Status.VERIFIED
    return Status.ASSERTED


def _automorphism_status(alpha, node):
    if node.is_free:
        graph = fold_core_graph(alpha.images, alpha.target)
        bijective = graph.rank == node.rank and subgroup_index(graph) == 1
        return Status.VERIFIED if bijective else Status.FAILED
    if node.is_free_abelian:
        columns = [exponent_vector(w) for w in alpha.images]
        matrix = [[columns[j][i] for j in range(node.rank)] for i in range(node.rank)]
        return Status.VERIFIED if abs(determinant(matrix)) == 1 else Status.FAILED
    return Status.ASSERTED


def verify_mr_factoring(hom, diagram, witness, root_is_limit_group=True):
    """Check f = f' o q_{m-1} o alpha_{m-1} o ... o q o alpha on every generator"""
    if hom.status != Status.VERIFIED:
        raise PreconditionError("Factoring requires a verified homomorphism")
    if not hom.free_target:
        raise InputError("Homomorphism must map into a free group")
    root = diagram.nodes[diagram.root]
    if hom.domain.alphabet != root.alphabet:
        raise InputError("Homomorphism domain does not match the diagram root")
    branch = diagram.check_branch(witness.branch)
    non_leaf = branch[:-1] or branch[:1]
    if len(witness.automorphisms) != len(non_leaf):
        raise InputError(
            f"Expected {len(non_leaf)} automorphisms along {list(branch)}, "
            f"got {len(witness.automorphisms)}"
        )
    leaf = diagram.nodes[branch[-1]]
    if witness.terminal.domain != leaf.alphabet:
        raise InputError("Terminal map does not start at the leaf")
    if witness.terminal.target != hom.target.alphabet:
        raise InputError("Terminal map does not land in the target of f")

    stages = []
    for name, alpha in zip(non_leaf, witness.automorphisms):
        node = diagram.nodes[name]
        if alpha.domain != node.alphabet or alpha.target != node.alphabet:
            raise InputError(f"Automorphism at '{name}' is not an endomorphism of it")
        status = _automorphism_status(alpha, node)
        detail = ""
        if name == diagram.root and not root_is_limit_group and not alpha.is_identity():
            status, detail = Status.FAILED, "the root is not a limit group, so alpha = id"
        stages.append(StageReport(f"alpha[{name}]", status, detail))
    for parent, child in zip(branch, branch[1:]):
        edge = diagram.edge(parent, child)
        status = weakest(
            [
                _hom_status(edge.images, diagram.nodes[parent], diagram.nodes[child]),
                _surjection_status(edge.images, diagram.nodes[child]),
            ]
        )
        stages.append(StageReport(f"q[{parent}->{child}]", status))
    stages.append(StageReport(f"f'[{branch[-1]}]", Status.VERIFIED))

    checks = []
    for name, generator in zip(root.generators, root.alphabet.generators()):
        word = generator
        for index, node in enumerate(non_leaf):
            word = witness.automorphisms[index].apply(word)
            if index + 1 < len(branch):
                word = diagram.edge(node, branch[index + 1]).images.apply(word)
        obtained = witness.terminal.apply(word)
        checks.append(GeneratorCheck(name, hom.image(name), obtained))

    stage_status = weakest(stage.status for stage in stages)
    if not all(check.equal for check in checks) or stage_status.is_failure:
        status = Status.FAILED
    elif stage_status == Status.VERIFIED:
        status = Status.VERIFIED
    else:
        status = Status.UNVERIFIABLE
    return MRReport(status, tuple(checks), tuple(stages))


def abelian_diagram(group):
    """Z^n -> Z (killing every generator but the first) -> leaf"""
    if not group.is_free_abelian:
        raise InputError("Expected a free abelian presentation")
    first = group.generators[0]
    leaf = free_group(1, names=(first,))
    images = [leaf.alphabet.generator(first)] + [leaf.alphabet.identity()] * (group.rank - 1)
    edge = DiagramEdge("G", "L", FreeMap(group.alphabet, leaf.alphabet, tuple(images)))
    return MRDiagram("G", {"G": group, "L": leaf}, (edge,))


def mr_witness_from_abelian(hom):
    """Diagram and witness for a verified Z^n -> F through its abelian factorization"""
    diagram = abelian_diagram(hom.domain)
    factorization = abelian_factorization(hom)
    inverse = unimodular_inverse(factorization.alpha)
    alpha = matrix_automorphism(hom.domain, inverse)
    leaf = diagram.nodes["L"]
    terminal = FreeMap(
        leaf.alphabet, hom.target.alphabet, (factorization.root**factorization.d,)
    )
    return diagram, MRWitness(("G", "L"), (alpha,), terminal)


@dataclass(frozen=True)
class FactorSet:
    """Proper quotients every non-injective map is meant to factor through"""

    domain: Presentation
    quotients: Tuple[QuotientMap, ...]


def assemble_factor_set(domain, kernel_words):
    """{abelianization} followed by one quotient per kernel word"""
    words = list(kernel_words)
    for word in words:
        if word.is_identity:
            raise InputError("Kernel words must be nontrivial as written")
        if word.alphabet != domain.alphabet:
            raise InputError(f"Kernel word {word} is not over {domain.generators}")
    commutators = tuple(
        commutator(u, v) for u, v in itertools.combinations(domain.alphabet.generators(), 2)
    )
    quotients = [QuotientMap(domain, commutators, "abelianization")]
    quotients.extend(QuotientMap(domain, (word,), f"kill {word}") for word in words)
    return FactorSet(domain, tuple(quotients))


def free_product_factor_set(factor_set, other):
    """{q * Id_V} for a free product U * V"""
    product = free_product(factor_set.domain, other)
    quotients = tuple(
        QuotientMap(
            product,
            tuple(word.lift(product.alphabet) for word in q.added),
            f"{q.label} * id",
        )
        for q in factor_set.quotients
    )
    return FactorSet(product, quotients)


@dataclass(frozen=True)
class FactorizationWitness:
    sequence: Tuple[str, ...]
    automorphism: FreeMap
    composed: GroupHom
    quotient_index: int
    factored: GroupHom


def _closure(twists):
    generators = []
    for twist in twists:
        generators.extend([twist, twist.inverse()])
    return generators


def _compositions(hom, twists, depth):
    """(labels, alpha, f o alpha images) in shortlex order of twist sequences"""
    alphabet = hom.domain.alphabet
    generators = _closure(twists)
    level = [((), (), FreeMap.identity(alphabet), hom.images)]
    for current in range(depth + 1):
        yield from ((labels, alpha, images) for labels, _, alpha, images in level)
        if current == depth:
            return
        next_level = []
        for labels, indices, alpha, images in level:
            image_map = FreeMap(alphabet, hom.free_map.target, images)
            for index, twist in enumerate(generators):
                if indices and indices[-1] // 2 == index // 2 and indices[-1] != index:
                    continue
                next_level.append(
                    (
                        labels + (twist.label,),
                        indices + (index,),
                        alpha.compose(twist.forward),
                        tuple(image_map.apply(w) for w in twist.forward.images),
                    )
                )
        level = next_level


def search_modular_factorization(hom, factor_set, twists, depth):
    """First f o alpha, in shortlex order of twist words, that factors through a quotient"""
    if hom.status != Status.VERIFIED:
        raise PreconditionError("Factoring requires a verified homomorphism")
    if factor_set.domain.alphabet != hom.domain.alphabet:
        raise InputError("Factor set and homomorphism have different domains")
    for twist in twists:
        if twist.group.alphabet != hom.domain.alphabet:
            raise InputError(f"Twist {twist.label} acts on a different group")
    candidates = []
    for index, quotient in enumerate(factor_set.quotients):
        if quotient.properness == Status.REFUTED:
            log.debug("Skipping %s: not a proper quotient", quotient.label)
            continue
        candidates.append((index, quotient))
    for labels, alpha, images in _compositions(hom, twists, depth):
        composed = GroupHom(hom.domain, hom.target, images, Status.VERIFIED)
        for index, quotient in candidates:
            factored = factors_through(composed, quotient)
            if factored is not None:
                log.info("Factored through %s after %s", quotient.label, list(labels))
                return FactorizationWitness(labels, alpha, composed, index, factored)
    return None


def recheck_factorization(hom, factor_set, witness):
    """Independent re-evaluation of a factorization witness"""
    expected = tuple(hom.free_map.apply(w) for w in witness.automorphism.images)
    quotient = factor_set.quotients[witness.quotient_index]
    return (
        expected == witness.composed.images
        and all(witness.composed.kills(word) for word in quotient.added)
        and witness.factored.images == expected
    )


@dataclass(frozen=True)
class ShortenResult:
    hom: GroupHom
    shortened: bool
    conjugator: Optional[Word]
    sequence: Tuple[str, ...]
    conjugator_bound: int
    depth: int


def shorten_hom(hom, twists, depth):
    """First equivalent i_c o f o alpha with strictly smaller length

    alpha ranges over twist words up to `depth`, c over the identity and
    single letters: some conjugate is shorter iff a one-letter conjugate is.
    """
    length = hom_length(hom)
    target = hom.target.alphabet
    conjugators = [target.identity()] + [Word(target, (l,)) for l in target.letters()]
    statuses = {twist.label: twist.status for twist in _closure(twists)}
    for labels, _, images in _compositions(hom, twists, depth):
        for conjugator in conjugators:
            if not labels and conjugator.is_identity:
                continue
            candidate = tuple(image.conjugate(conjugator) for image in images)
            if max((len(w) for w in candidate), default=0) < length:
                status = weakest([statuses[label] for label in labels])
                status = Status.VERIFIED if status == Status.VERIFIED else Status.ASSERTED
                return ShortenResult(
                    GroupHom(hom.domain, hom.target, candidate, status),
                    True,
                    conjugator,
                    labels,
                    2 * length,
                    depth,
                )
    return ShortenResult(hom, False, None, (), 2 * length, depth)


@dataclass(frozen=True)
class FreeCertificate:
    rank: int
    names: Optional[Tuple[str, ...]] = None
    level: Optional[int] = None

    @property
    def group(self):
        return free_group(self.rank, self.names)


@dataclass(frozen=True)
class FreeProductCertificate:
    left: object
    right: object
    level: Optional[int] = None

    @property
    def group(self):
        return free_product(self.left.group, self.right.group)


@dataclass(frozen=True)
class StepCertificate:
    """G with a GAD and a map rho onto a lower certificate"""

    group: Presentation
    rho: Tuple[Word, ...]
    gad: GAD
    lower: object
    verification_homs: Tuple[GroupHom, ...] = ()
    level: Optional[int] = None


@dataclass
class ConditionReport:
    condition: str
    status: Status
    detail: str = ""


@dataclass
class CLGReport:
    kind: str
    level: int
    status: Status
    conditions: List[ConditionReport] = field(default_factory=list)
    children: List["CLGReport"] = field(default_factory=list)


def certificate_level(cert):
    """Computed level; declared levels must match the recursion"""
    if isinstance(cert, FreeCertificate):
        computed = 0
    elif isinstance(cert, FreeProductCertificate):
        computed = max(certificate_level(cert.left), certificate_level(cert.right)) + 1
    elif isinstance(cert, StepCertificate):
        computed = certificate_level(cert.lower) + 1
    else:
        raise MalformedCertificate(f"Unknown certificate node {cert!r}")
    if cert.level is not None and cert.level != computed:
        raise MalformedCertificate(
            f"Declared level {cert.level} but the recursion gives {computed}"
        )
    return computed


def _free_lower(cert):
    return cert.lower.group.is_free


def _peripheral_check(gad, psi):
    statuses, details = [], []
    for vertex in gad.vertices:
        if vertex.kind != ABELIAN:
            continue
        closure = peripheral_closure(gad.abelian_vertex(vertex.name))
        if closure.rank == 0:
            statuses.append(Status.VERIFIED)
        elif closure.rank >= 2:
            statuses.append(Status.FAILED)
            details.append(f"{vertex.name}: peripheral closure has rank {closure.rank}")
        else:
            element = gad.vertex_element(vertex, closure.lattice.generators[0])
            if psi.apply(element).is_identity:
                statuses.append(Status.FAILED)
                details.append(f"{vertex.name}: peripheral generator {element} dies")
            else:
                statuses.append(Status.VERIFIED)
    return weakest(statuses), "; ".join(details)


def _maximal_abelian_end(vertex, image):
    """True, False, or None when undecided"""
    if vertex.kind == ABELIAN:
        return Lattice(vertex.rank, image).is_full()
    if vertex.free and len(image) == 1:
        return primitive_root(image[0])[1] == 1
    if vertex.free:
        return False
    return None


def _edge_check(gad, psi):
    statuses, details = [], []
    for edge in gad.edges:
        label = f"{edge.source}-{edge.target}"
        if len(edge.generators) != 1:
            statuses.append(Status.FAILED)
            details.append(f"{label}: a rank-{len(edge.generators)} edge group cannot inject")
            continue
        one = Alphabet(("c",))
        if not hom_injectivity(FreeMap(one, psi.target, (psi.apply(edge.generators[0]),))):
            statuses.append(Status.FAILED)
            details.append(f"{label}: edge group dies")
            continue
        ends = [
            _maximal_abelian_end(gad.vertex(edge.source), edge.source_image),
            _maximal_abelian_end(gad.vertex(edge.target), edge.target_image),
        ]
        if True in ends:
            statuses.append(Status.VERIFIED)
        elif None in ends:
            statuses.append(Status.SAMPLED)
        else:
            statuses.append(Status.FAILED)
            details.append(f"{label}: maximal abelian at neither end")
    return weakest(statuses), "; ".join(details)


def _qh_check(gad, psi):
    statuses, details = [], []
    alphabet = gad.group.alphabet
    for vertex in gad.vertices:
        if vertex.kind != QH:
            continue
        gens = [alphabet.generator(name) for name in vertex.generators]
        if any(
            not psi.apply(commutator(u, v)).is_identity
            for u, v in itertools.combinations(gens, 2)
        ):
            statuses.append(Status.VERIFIED)
        else:
            statuses.append(Status.FAILED)
            details.append(f"{vertex.name}: image is abelian")
    return weakest(statuses), "; ".join(details)


def _known_nontrivial(word, group, abelianization):
    if group.is_free:
        return not word.is_identity
    return any(abelianization.project(word))


def _rigid_check(gad, psi, radius):
    statuses, details = [], []
    alphabet = gad.group.alphabet
    abelianization = abelianization_quotient(gad.group)
    for vertex in gad.vertices:
        if vertex.kind != RIGID:
            continue
        envelope = [alphabet.generator(name) for name in vertex.generators]
        extra = []
        for _, _, other, far_image in gad.ends(vertex.name):
            if other.kind == ABELIAN:
                closure = peripheral_closure(gad.abelian_vertex(other.name))
                extra.extend(gad.vertex_element(other, v) for v in closure.lattice.generators)
                continue
            # a root of the far end that is not the edge word itself enlarges the envelope
            for word in far_image:
                root, exponent = primitive_root(word)
                if exponent > 1:
                    extra.append(root)
        extra = [w for w in extra if not w.generators_used() <= set(vertex.generators)]
        if vertex.free and not extra:
            restricted = FreeMap(
                Alphabet(vertex.generators), psi.target, tuple(psi.apply(w) for w in envelope)
            )
            if hom_injectivity(restricted):
                statuses.append(Status.VERIFIED)
            else:
                statuses.append(Status.FAILED)
                details.append(f"{vertex.name}: rho is not injective on the envelope")
            continue
        envelope += extra
        letters = Alphabet.standard(len(envelope), "y")
        substitute = FreeMap(letters, alphabet, tuple(envelope))
        killed = None
        for word in enumerate_ball(letters, radius):
            total = substitute.apply(word)
            if psi.apply(total).is_identity and _known_nontrivial(
                total, gad.group, abelianization
            ):
                killed = total
                break
        if killed is None:
            statuses.append(Status.SAMPLED)
        else:
            statuses.append(Status.FAILED)
            details.append(f"{vertex.name}: {killed} dies")
    return weakest(statuses), "; ".join(details)


def _free_checks(gad, psi, radius):
    return {
        "peripheral": _peripheral_check(gad, psi),
        "edges": _edge_check(gad, psi),
        "qh": _qh_check(gad, psi),
        "rigid": _rigid_check(gad, psi, radius),
    }


def _rho_status(cert):
    lower = cert.lower.group
    images = FreeMap(cert.group.alphabet, lower.alphabet, cert.rho)
    return _hom_status(images, cert.group, lower), images


def _visible_failures(gad, rho):
    """Conditions that fail whatever the lower group: freely trivial images and bad edges"""
    failures = {}
    for vertex in gad.vertices:
        if vertex.kind != ABELIAN:
            continue
        closure = peripheral_closure(gad.abelian_vertex(vertex.name))
        for vector in closure.lattice.generators:
            element = gad.vertex_element(vertex, vector)
            if rho.apply(element).is_identity:
                failures["peripheral"] = f"{vertex.name}: peripheral generator {element} dies"
    for edge in gad.edges:
        label = f"{edge.source}-{edge.target}"
        if any(rho.apply(word).is_identity for word in edge.generators):
            failures["edges"] = f"{label}: edge group dies"
        ends = [
            _maximal_abelian_end(gad.vertex(edge.source), edge.source_image),
            _maximal_abelian_end(gad.vertex(edge.target), edge.target_image),
        ]
        if ends == [False, False]:
            failures["edges"] = f"{label}: maximal abelian at neither end"
    alphabet = gad.group.alphabet
    for vertex in gad.vertices:
        if vertex.kind != QH:
            continue
        gens = [alphabet.generator(name) for name in vertex.generators]
        if all(
            rho.apply(commutator(u, v)).is_identity
            for u, v in itertools.combinations(gens, 2)
        ):
            failures["qh"] = f"{vertex.name}: image is abelian"
    return failures


def _check_step(cert, radius):
    if cert.gad.group != cert.group:
        raise MalformedCertificate("GAD and certificate describe different groups")
    lower = cert.lower.group
    if len(cert.rho) != cert.group.rank:
        raise InputError(f"rho needs {cert.group.rank} images, got {len(cert.rho)}")
    for word in cert.rho:
        if word.alphabet != lower.alphabet:
            raise InputError(f"rho image {word} is not a word of the lower group")
    hom_status, rho = _rho_status(cert)
    if lower.is_free:
        conditions = [ConditionReport("hom", hom_status)]
        for name, (status, detail) in _free_checks(cert.gad, rho, radius).items():
            conditions.append(ConditionReport(name, status, detail))
        return conditions
    composed = []
    for hom in cert.verification_homs:
        if hom.status != Status.VERIFIED or hom.domain.alphabet != lower.alphabet:
            raise InputError("Verification maps must be verified maps out of the lower group")
        composed.append(hom.free_map.compose(rho))
    hom_detail = ""
    if hom_status == Status.ASSERTED:
        hom_status = Status.UNVERIFIABLE
        for psi in composed:
            survivors = [r for r in cert.group.relators if not psi.apply(r).is_identity]
            if survivors:
                hom_status = Status.FAILED
                hom_detail = f"relator {survivors[0]} survives a verification map"
                break
    conditions = [ConditionReport("hom", hom_status, hom_detail)]
    # injectivity and non-commutativity seen through h o rho hold for rho itself
    candidates = [_free_checks(cert.gad, psi, radius) for psi in composed]
    failures = _visible_failures(cert.gad, rho)
    for name in ("peripheral", "edges", "qh", "rigid"):
        passing = [c[name][0] for c in candidates if not c[name][0].is_failure]
        if name in failures:
            conditions.append(ConditionReport(name, Status.FAILED, failures[name]))
        elif _vacuous(cert.gad, name):
            conditions.append(ConditionReport(name, Status.VERIFIED))
        elif passing:
            conditions.append(ConditionReport(name, min(passing, key=lambda s: s.rank)))
        else:
            conditions.append(
                ConditionReport(name, Status.UNVERIFIABLE, "no verification map separates it")
            )
    return conditions


def _vacuous(gad, name):
    kinds = {vertex.kind for vertex in gad.vertices}
    if name == "peripheral":
        return ABELIAN not in kinds
    if name == "edges":
        return not gad.edges
    if name == "qh":
        return QH not in kinds
    return RIGID not in kinds


def check_clg(cert, radius=DEFAULT_SAMPLING_RADIUS):
    """Recursive check of a constructible limit group certificate"""
    level = certificate_level(cert)
    if isinstance(cert, FreeCertificate):
        return CLGReport("free", level, Status.VERIFIED)
    if isinstance(cert, FreeProductCertificate):
        children = [check_clg(cert.left, radius), check_clg(cert.right, radius)]
        status = weakest(child.status for child in children)
        return CLGReport("free_product", level, status, [], children)
    child = check_clg(cert.lower, radius)
    conditions = _check_step(cert, radius)
    status = weakest([c.status for c in conditions] + [child.status])
    log.info("Step at level %d: %s", level, status)
    return CLGReport("step", level, status, conditions, [child])


def free_certificate(rank, names=None):
    return FreeCertificate(rank, tuple(names) if names else None)


def free_abelian_certificate(rank):
    """Z^n over the trivial group: one abelian vertex, no edges; Z itself is free"""
    if rank < 1:
        raise InputError("A free abelian certificate needs rank at least 1")
    group = free_abelian_group(rank)
    if rank == 1:
        return FreeCertificate(1, group.generators)
    vertex = AbelianVertex("A", group.generators)
    trivial = Alphabet(())
    rho = tuple(trivial.identity() for _ in range(rank))
    return StepCertificate(group, rho, GAD(group, (vertex,)), FreeCertificate(0))


def _boundary_word(alphabet, names):
    """Product of the commutators [a, b] of consecutive name pairs"""
    word = alphabet.identity()
    for a, b in zip(names[::2], names[1::2]):
        word = word * commutator(alphabet.generator(a), alphabet.generator(b))
    return word


def surface_certificate(genus=2):
    """Closed orientable surface over F_2: a punctured torus glued to the rest"""
    group = surface_family(genus).presentation
    alphabet = group.alphabet
    names = group.generators
    boundary = _boundary_word(alphabet, names[:2])
    vertices = (
        QHVertex("Q1", names[:2], genus=1, boundary=1),
        QHVertex("Q2", names[2:], genus=genus - 1, boundary=1),
    )
    other = _boundary_word(alphabet, names[2:]).inverse()
    edge = GADEdge("Q1", "Q2", (boundary,), (boundary,), (other,))
    target = Alphabet.standard(2)
    x1, x2 = target.generators()
    rest = tuple(target.identity() for _ in names[4:])
    return StepCertificate(
        group, (x1, x2, x2, x1) + rest, GAD(group, vertices, (edge,)), FreeCertificate(2)
    )


def circle_of_surfaces_certificate():
    """Surfaces of genus 1, 2 and 3 with one boundary each, glued to a common circle c

    rho pinches a handle of the genus-3 piece and lands on the closed genus-3
    surface made of the other two pieces, a certificate of level one.
    """
    pieces = (("a1", "b1"), ("a2", "b2", "a3", "b3"), ("a4", "b4", "a5", "b5", "a6", "b6"))
    alphabet = Alphabet(("c",) + tuple(name for piece in pieces for name in piece))
    c = alphabet.generator("c")
    boundaries = [_boundary_word(alphabet, piece) for piece in pieces]
    group = Presentation(alphabet, tuple(boundary * c.inverse() for boundary in boundaries))
    vertices = [RigidVertex("C", ("c",), free=True)]
    edges = []
    for index, (piece, boundary) in enumerate(zip(pieces, boundaries), 1):
        vertices.append(QHVertex(f"Q{index}", piece, genus=len(piece) // 2, boundary=1))
        edges.append(GADEdge("C", f"Q{index}", (c,), (c,), (boundary,)))

    lower = surface_certificate(3)
    surface = lower.group.alphabet
    a1, b1, a2, b2, a3, b3 = surface.generators()
    identity = surface.identity()
    # the genus-2 piece reverses orientation so its boundary meets [a1, b1]
    reversed_piece = (b3, a3, b2, a2)
    rho = (commutator(a1, b1), a1, b1) + reversed_piece + reversed_piece + (identity, identity)
    verification = validate_hom_to_free(lower.group, lower.rho, Alphabet.standard(2))
    return StepCertificate(
        group, rho, GAD(group, tuple(vertices), tuple(edges)), lower, (verification,)
    )


def double_certificate(word, left=("a", "b"), right=("c", "d")):
    """Double of F(left) along a non-power word, retracting onto the left copy"""
    double = double_of_free(left, right, word)
    vertices = (
        RigidVertex("L", tuple(left), free=True),
        RigidVertex("R", tuple(right), free=True),
    )
    edge = GADEdge(
        "L", "R", (double.left_word,), (double.left_word,), (double.right_word,)
    )
    rho = retraction_of_double(double)
    return StepCertificate(
        double.group,
        rho.images,
        GAD(double.group, vertices, (edge,)),
        FreeCertificate(len(left), tuple(left)),
    )


def corrupt_certificate(cert, rho=None, gad=None):
    """Copy of a step certificate with rho or the GAD replaced"""
    return StepCertificate(
        cert.group,
        tuple(rho) if rho is not None else cert.rho,
        gad if gad is not None else cert.gad,
        cert.lower,
        cert.verification_homs,
        cert.level,
    )


def walk(report):
    """Reports in breadth-first order"""
    queue = deque([report])
    while queue:
        current = queue.popleft()
        yield current
        queue.extend(current.children)
