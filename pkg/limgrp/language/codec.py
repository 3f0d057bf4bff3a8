"""
JSON codecs

Every object the CLI reads or writes has a JSON form; the schemas live in
limgrp/schemas.  Words are always strings in the word syntax.  A
presentation may be given inline as an object or as a "< a, b | ... >"
string.
"""

import logging

from limgrp.algebra.diagrams import (
    DiagramEdge,
    FreeCertificate,
    FreeProductCertificate,
    MRDiagram,
    MRWitness,
    StepCertificate,
    assemble_factor_set,
)
from limgrp.algebra.free_core import Alphabet, FreeMap
from limgrp.algebra.presentations import (
    Presentation,
    asserted_hom,
    validate_hom_to_abelian,
    validate_hom_to_free,
)
from limgrp.algebra.search import TwistFamily
from limgrp.algebra.splittings import (
    ABELIAN,
    GAD,
    HNN,
    QH,
    RIGID,
    AbelianSplitting,
    AbelianVertex,
    Amalgam,
    GADEdge,
    QHVertex,
    RigidVertex,
    dehn_twist,
    generalized_dehn_twist,
    inner_automorphism,
    transvection,
)
from limgrp.exceptions import InputError, MalformedCertificate

from .parser import parse_presentation, parse_word

log = logging.getLogger(__name__)


def _require(data, key, where):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"Missing '{key}' in {where}")
    return data[key]


def presentation_from_json(data):
    """{"generators": [...], "relators": [...]} or a presentation string"""
    if isinstance(data, str):
        return parse_presentation(data)
    names = _require(data, "generators", "presentation")
    if not names:
        raise InputError("A presentation needs at least one generator")
    alphabet = Alphabet(tuple(names))
    relators = tuple(parse_word(text, alphabet) for text in data.get("relators", []))
    return Presentation(alphabet, relators)


def presentation_to_json(presentation):
    return {
        "generators": list(presentation.generators),
        "relators": [str(r) for r in presentation.relators],
        "kind": presentation.kind,
    }


def images_from_json(data, domain, alphabet):
    """{"a": "x1 x2", ...} or a list aligned with the generators"""
    if isinstance(data, dict):
        unknown = set(data) - set(domain.generators)
        if unknown:
            raise InputError(f"Images given for unknown generators: {sorted(unknown)}")
        missing = [g for g in domain.generators if g not in data]
        if missing:
            raise InputError(f"No image given for generators {missing}")
        return tuple(parse_word(data[g], alphabet) for g in domain.generators)
    if len(data) != domain.rank:
        raise InputError(f"Expected {domain.rank} generator images, got {len(data)}")
    return tuple(parse_word(text, alphabet) for text in data)


def map_from_json(data, domain, target):
    """FreeMap between the free groups on two presentations' generators"""
    images = images_from_json(data, domain, target.alphabet)
    return FreeMap(domain.alphabet, target.alphabet, images)


def hom_from_json(data, domain=None):
    """Homomorphism; verified for free and free abelian targets"""
    if domain is None:
        domain = presentation_from_json(_require(data, "domain", "homomorphism"))
    target = _require(data, "target", "homomorphism")
    images = _require(data, "images", "homomorphism")
    if isinstance(target, dict) and "abelian_rank" in target:
        rank = int(target["abelian_rank"])
        if isinstance(images, dict):
            images = {name: tuple(v) for name, v in images.items()}
        return validate_hom_to_abelian(domain, images, rank)
    if isinstance(target, list):
        target = {"generators": target}
    target = presentation_from_json(target)
    words = images_from_json(images, domain, target.alphabet)
    if target.is_free:
        return validate_hom_to_free(domain, words, target)
    log.info("Target is not free; images are taken on trust")
    return asserted_hom(domain, words, target)


def hom_to_json(hom):
    if hom.abelian_target:
        target = {"abelian_rank": hom.target}
        images = {name: list(v) for name, v in hom.images_by_name().items()}
    else:
        target = presentation_to_json(hom.target)
        images = {name: str(w) for name, w in hom.images_by_name().items()}
    return {
        "domain": presentation_to_json(hom.domain),
        "target": target,
        "images": images,
        "status": hom.status.value,
    }


def matrix_from_json(data):
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise InputError("A matrix is a list of rows")
    try:
        return [[int(x) for x in row] for row in data]
    except (TypeError, ValueError):
        raise InputError("Matrix entries must be integers") from None


def _vertex_from_json(data):
    kind = _require(data, "kind", "vertex")
    name = _require(data, "name", "vertex")
    generators = tuple(_require(data, "generators", f"vertex '{name}'"))
    if kind == QH:
        return QHVertex(
            name,
            generators,
            int(_require(data, "genus", f"vertex '{name}'")),
            int(_require(data, "boundary", f"vertex '{name}'")),
            bool(data.get("orientable", True)),
            bool(data.get("free", True)),
        )
    if kind == ABELIAN:
        peripheral = tuple(tuple(int(x) for x in v) for v in data.get("peripheral", []))
        return AbelianVertex(name, generators, peripheral)
    if kind == RIGID:
        return RigidVertex(name, generators, bool(data.get("free", False)))
    raise InputError(f"Unknown vertex kind '{kind}'")


def _end_from_json(values, vertex, alphabet):
    if vertex.kind == ABELIAN:
        return tuple(tuple(int(x) for x in v) for v in values)
    return tuple(parse_word(text, alphabet) for text in values)


def gad_from_json(data, group=None):
    if group is None:
        group = presentation_from_json(_require(data, "group", "GAD"))
    vertices = tuple(_vertex_from_json(v) for v in _require(data, "vertices", "GAD"))
    by_name = {v.name: v for v in vertices}
    edges = []
    for edge in data.get("edges", []):
        source = _require(edge, "source", "edge")
        target = _require(edge, "target", "edge")
        for name in (source, target):
            if name not in by_name:
                raise InputError(f"Edge refers to unknown vertex '{name}'")
        generators = tuple(
            parse_word(text, group.alphabet) for text in _require(edge, "generators", "edge")
        )
        source_image = _require(edge, "source_image", "edge")
        target_image = _require(edge, "target_image", "edge")
        edges.append(
            GADEdge(
                source,
                target,
                generators,
                _end_from_json(source_image, by_name[source], group.alphabet),
                _end_from_json(target_image, by_name[target], group.alphabet),
            )
        )
    return GAD(group, vertices, tuple(edges))


def gad_to_json(gad):
    def end(vertex, values):
        if vertex.kind == ABELIAN:
            return [list(v) for v in values]
        return [str(w) for w in values]

    vertices = []
    for vertex in gad.vertices:
        entry = {"name": vertex.name, "kind": vertex.kind, "generators": list(vertex.generators)}
        if vertex.kind == QH:
            entry.update(
                genus=vertex.genus,
                boundary=vertex.boundary,
                orientable=vertex.orientable,
                free=vertex.free,
            )
        elif vertex.kind == ABELIAN:
            entry["peripheral"] = [list(v) for v in vertex.peripheral]
        else:
            entry["free"] = vertex.free
        vertices.append(entry)
    return {
        "group": presentation_to_json(gad.group),
        "vertices": vertices,
        "edges": [
            {
                "source": e.source,
                "target": e.target,
                "generators": [str(w) for w in e.generators],
                "source_image": end(gad.vertex(e.source), e.source_image),
                "target_image": end(gad.vertex(e.target), e.target_image),
            }
            for e in gad.edges
        ],
    }


def splitting_from_json(data, group=None):
    if group is None:
        group = presentation_from_json(_require(data, "group", "splitting"))
    kind = _require(data, "kind", "splitting")
    alphabet = group.alphabet
    if kind == "amalgam":
        return Amalgam(
            group,
            tuple(_require(data, "left", "amalgam")),
            tuple(_require(data, "right", "amalgam")),
            parse_word(_require(data, "left_edge", "amalgam"), alphabet),
            parse_word(_require(data, "right_edge", "amalgam"), alphabet),
            data.get("left_kind", "free"),
            data.get("right_kind", "free"),
        )
    if kind == "hnn":
        return HNN(
            group,
            tuple(_require(data, "base", "HNN")),
            _require(data, "stable", "HNN"),
            parse_word(_require(data, "edge", "HNN"), alphabet),
            parse_word(_require(data, "partner", "HNN"), alphabet),
            data.get("base_kind", "free"),
        )
    if kind == "abelian":
        return AbelianSplitting(group, _vertex_from_json(_require(data, "vertex", "splitting")))
    raise InputError(f"Unknown splitting kind '{kind}'")


def twist_from_json(data, group):
    """One generator of the modular group"""
    kind = _require(data, "kind", "twist")
    if kind == "dehn":
        splitting = splitting_from_json(_require(data, "splitting", "twist"), group)
        return dehn_twist(splitting, parse_word(_require(data, "z", "twist"), group.alphabet))
    if kind == "generalized":
        splitting = splitting_from_json(_require(data, "splitting", "twist"), group)
        matrix = matrix_from_json(_require(data, "matrix", "twist"))
        return generalized_dehn_twist(splitting, matrix)
    if kind == "inner":
        return inner_automorphism(
            group, parse_word(_require(data, "conjugator", "twist"), group.alphabet)
        )
    if kind == "transvection":
        return transvection(
            group,
            int(_require(data, "i", "twist")),
            int(_require(data, "j", "twist")),
            int(data.get("sign", 1)),
        )
    raise InputError(f"Unknown twist kind '{kind}'")


def twist_to_json(twist):
    return {
        "label": twist.label,
        "status": twist.status.value,
        "images": twist.forward.as_dict(),
        "inverse": twist.backward.as_dict(),
    }


def diagram_from_json(data):
    nodes = {
        name: presentation_from_json(value)
        for name, value in _require(data, "nodes", "diagram").items()
    }
    edges = []
    for edge in data.get("edges", []):
        parent = _require(edge, "parent", "diagram edge")
        child = _require(edge, "child", "diagram edge")
        if parent not in nodes or child not in nodes:
            raise InputError(f"Diagram edge {parent}->{child} names an unknown node")
        images = _require(edge, "images", "diagram edge")
        edges.append(
            DiagramEdge(parent, child, map_from_json(images, nodes[parent], nodes[child]))
        )
    return MRDiagram(_require(data, "root", "diagram"), nodes, tuple(edges))


def diagram_to_json(diagram):
    return {
        "root": diagram.root,
        "nodes": {name: presentation_to_json(p) for name, p in diagram.nodes.items()},
        "edges": [
            {"parent": e.parent, "child": e.child, "images": e.images.as_dict()}
            for e in diagram.edges
        ],
    }


def witness_from_json(data, diagram, target):
    """Automorphisms by node along the branch, then the terminal map into `target`"""
    branch = tuple(_require(data, "branch", "witness"))
    diagram.check_branch(branch)
    non_leaf = branch[:-1] or branch[:1]
    automorphisms = _require(data, "automorphisms", "witness")
    if len(automorphisms) != len(non_leaf):
        raise InputError(f"Expected {len(non_leaf)} automorphisms, got {len(automorphisms)}")
    maps = tuple(
        map_from_json(images, diagram.nodes[name], diagram.nodes[name])
        for name, images in zip(non_leaf, automorphisms)
    )
    leaf = diagram.nodes[branch[-1]]
    terminal = map_from_json(_require(data, "terminal", "witness"), leaf, target)
    return MRWitness(branch, maps, terminal)


def witness_to_json(witness):
    return {
        "branch": list(witness.branch),
        "automorphisms": [alpha.as_dict() for alpha in witness.automorphisms],
        "terminal": witness.terminal.as_dict(),
    }


def factor_set_from_json(data, domain=None):
    if domain is None:
        domain = presentation_from_json(_require(data, "domain", "factor set"))
    words = [parse_word(text, domain.alphabet) for text in data.get("kernel_words", [])]
    return assemble_factor_set(domain, words)


def factor_set_to_json(factor_set):
    return {
        "domain": presentation_to_json(factor_set.domain),
        "quotients": [
            {
                "label": q.label,
                "added": [str(w) for w in q.added],
                "properness": q.properness.value,
            }
            for q in factor_set.quotients
        ],
    }


def certificate_from_json(data, depth=0):
    if depth > 64:
        raise MalformedCertificate("Certificate nesting is too deep")
    kind = _require(data, "kind", "certificate")
    level = data.get("level")
    if kind == "free":
        names = data.get("names")
        rank = int(data.get("rank", len(names) if names else 0))
        return FreeCertificate(rank, tuple(names) if names else None, level)
    if kind == "free_product":
        return FreeProductCertificate(
            certificate_from_json(_require(data, "left", "free product"), depth + 1),
            certificate_from_json(_require(data, "right", "free product"), depth + 1),
            level,
        )
    if kind == "step":
        group = presentation_from_json(_require(data, "group", "step"))
        lower = certificate_from_json(_require(data, "lower", "step"), depth + 1)
        lower_group = lower.group
        rho = images_from_json(_require(data, "rho", "step"), group, lower_group.alphabet)
        gad = gad_from_json(_require(data, "gad", "step"), group)
        homs = tuple(
            hom_from_json(h, lower_group) for h in data.get("verification_homs", [])
        )
        return StepCertificate(group, rho, gad, lower, homs, level)
    raise MalformedCertificate(f"Unknown certificate kind '{kind}'")


def certificate_to_json(cert):
    if isinstance(cert, FreeCertificate):
        data = {"kind": "free", "rank": cert.rank}
        if cert.names:
            data["names"] = list(cert.names)
    elif isinstance(cert, FreeProductCertificate):
        data = {
            "kind": "free_product",
            "left": certificate_to_json(cert.left),
            "right": certificate_to_json(cert.right),
        }
    else:
        data = {
            "kind": "step",
            "group": presentation_to_json(cert.group),
            "rho": {name: str(w) for name, w in zip(cert.group.generators, cert.rho)},
            "gad": gad_to_json(cert.gad),
            "lower": certificate_to_json(cert.lower),
            "verification_homs": [hom_to_json(h) for h in cert.verification_homs],
        }
    if cert.level is not None:
        data["level"] = cert.level
    return data


def family_from_json(data):
    hom = hom_from_json(_require(data, "hom", "family"))
    twist = twist_from_json(_require(data, "twist", "family"), hom.domain)
    start, stop = data.get("range", [0, 10])
    return TwistFamily(hom, twist, int(start), int(stop))


def report_to_json(report):
    """CLG report tree"""
    return {
        "kind": report.kind,
        "level": report.level,
        "status": report.status.value,
        "conditions": [
            {"condition": c.condition, "status": c.status.value, "detail": c.detail}
            for c in report.conditions
        ],
        "children": [report_to_json(child) for child in report.children],
    }
