"""
Handlers for the limgrp sub-commands

Each handler turns parsed arguments into an Outcome: a JSON-ready payload,
an exit code and the text template used to render it.
"""

import json
import logging
import os
from dataclasses import dataclass
from typing import Optional

from limgrp.algebra import (
    diagrams,
    free_core,
    intlinalg,
    presentations,
    search,
    splittings,
    stallings,
)
from limgrp.algebra.status import weakest
from limgrp.exceptions import InputError, RelatorsNotKilled
from limgrp.language import codec
from limgrp.language.parser import (
    infer_alphabet,
    load_json,
    load_presentation,
    parse_alphabet,
    parse_presentation,
    parse_word,
)
from limgrp.settings import (
    DEFAULT_MAX_IMAGE_LENGTH,
    DEFAULT_SAMPLING_RADIUS,
    DEFAULT_SEARCH_DEPTH,
    DEFAULT_SHORTEN_DEPTH,
    DEFAULT_TARGET_RANK,
)

log = logging.getLogger(__name__)


@dataclass
class Outcome:
    payload: dict
    code: int = 0
    template: Optional[str] = None


def status_code(status):
    if status.is_failure:
        return 1
    if status.is_degraded:
        return 3
    return 0


def _json_arg(value):
    """Inline JSON or a path to a JSON file"""
    if os.path.exists(value):
        return load_json(value)
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        raise InputError(f"Neither a file nor valid JSON: {value}") from None


def _presentation(value):
    """A .grp or JSON file, a "< a, b | ... >" string or inline JSON"""
    if os.path.exists(value):
        return load_presentation(value)
    if value.lstrip().startswith("<"):
        return parse_presentation(value)
    return codec.presentation_from_json(_json_arg(value))


def _alphabet(names, texts):
    return parse_alphabet(names) if names else infer_alphabet(texts)


def _words(texts, alphabet):
    return [parse_word(text, alphabet) for text in texts]


def _hom(path, domain=None):
    return codec.hom_from_json(_json_arg(path), domain)


def _twists(path, group):
    data = _json_arg(path)
    if isinstance(data, dict):
        data = data.get("twists", [])
    return [codec.twist_from_json(item, group) for item in data]


def word_reduce(args):
    alphabet = _alphabet(args.gens, [args.word])
    word = parse_word(args.word, alphabet)
    core, conjugator = free_core.cyclic_reduce(word)
    return Outcome(
        {
            "word": str(word),
            "length": len(word),
            "cyclic_core": str(core),
            "conjugator": str(conjugator),
            "cyclic_normal_form": str(free_core.cyclic_normal_form(word)),
        }
    )


def word_root(args):
    alphabet = _alphabet(args.gens, [args.word])
    root, exponent = free_core.primitive_root(parse_word(args.word, alphabet))
    return Outcome({"root": str(root), "exponent": exponent})


def word_whitehead(args):
    alphabet = _alphabet(args.gens, [args.word])
    result = free_core.whitehead_minimize(parse_word(args.word, alphabet))
    return Outcome(
        {
            "minimal": str(result.minimal),
            "length": len(result.minimal),
            "whitehead_reduced": result.whitehead_reduced,
            "moves": [move.map.as_dict() for move in result.moves],
        }
    )


def word_count(args):
    alphabet = infer_alphabet([args.word, args.gen])
    count = free_core.occurrence_count(parse_word(args.word, alphabet), args.gen)
    return Outcome({"value": count}, template="scalar")


def _subgroup(args, extra=()):
    alphabet = _alphabet(args.alphabet, list(args.gens) + list(extra))
    return stallings.fold_core_graph(_words(args.gens, alphabet), alphabet), alphabet


def stallings_fold(args):
    graph, _ = _subgroup(args)
    return Outcome(graph.to_json())


def stallings_member(args):
    graph, alphabet = _subgroup(args, [args.word])
    rewrite = stallings.member_and_rewrite(graph, parse_word(args.word, alphabet))
    basis = stallings.subgroup_basis(graph)
    payload = {
        "member": rewrite is not None,
        "rewrite": None if rewrite is None else str(rewrite),
        "basis": {f"x{i + 1}": str(w) for i, w in enumerate(basis.generators)},
    }
    return Outcome(payload, 0 if rewrite is not None else 1)


def stallings_index(args):
    graph, _ = _subgroup(args)
    index = stallings.subgroup_index(graph)
    return Outcome({"value": "infinite" if index is None else index}, template="scalar")


def stallings_basis(args):
    graph, _ = _subgroup(args)
    basis = stallings.subgroup_basis(graph)
    return Outcome({"rank": basis.rank, "basis": [str(w) for w in basis.generators]})


def lattice_snf(args):
    form = intlinalg.smith_normal_form(codec.matrix_from_json(_json_arg(args.matrix)))
    return Outcome(
        {
            "divisors": list(form.divisors),
            "D": intlinalg.as_rows(form.D),
            "U": intlinalg.as_rows(form.U),
            "V": intlinalg.as_rows(form.V),
        }
    )


def lattice_saturate(args):
    vectors = codec.matrix_from_json(_json_arg(args.vectors))
    ambient = args.ambient
    if ambient is None and vectors:
        ambient = len(vectors[0])
    if ambient is None:
        raise InputError("--ambient is required for an empty list of vectors")
    result = intlinalg.saturation(intlinalg.Lattice(ambient, vectors))
    return Outcome(
        {
            "rank": result.lattice.rank,
            "index": result.index,
            "basis": [list(v) for v in result.lattice.generators],
        }
    )


def lattice_extend(args):
    alpha, d = intlinalg.unimodular_extend(args.vector)
    return Outcome({"alpha": intlinalg.as_rows(alpha), "d": d})


def pres_validate(args):
    data = _json_arg(args.hom)
    domain = _presentation(args.pres) if args.pres else None
    try:
        hom = codec.hom_from_json(data, domain)
    except RelatorsNotKilled as e:
        return Outcome({"hom": False, "violated": [str(w) for w in e.violated]}, 1)
    return Outcome({"hom": True, "status": hom.status.value}, status_code(hom.status))


def pres_abelianize(args):
    result = presentations.abelianization_quotient(_presentation(args.pres))
    return Outcome(
        {
            "rank": result.rank,
            "torsion": list(result.torsion),
            "images": [list(v) for v in result.images],
        }
    )


def pres_surface(args):
    surface = presentations.surface_family(args.genus, not args.non_orientable)
    payload = {"presentation": codec.presentation_to_json(surface.presentation)}
    if surface.retraction is not None:
        payload["retraction"] = codec.hom_to_json(surface.retraction)
    return Outcome(payload)


def pres_factor_abelian(args):
    result = presentations.abelian_factorization(_hom(args.hom))
    return Outcome(
        {
            "alpha": [list(row) for row in result.alpha],
            "root": str(result.root),
            "exponents": list(result.exponents),
            "d": result.d,
        }
    )


def gad_peripheral(args):
    gad = codec.gad_from_json(_json_arg(args.gad))
    closure = splittings.peripheral_closure(gad.abelian_vertex(args.vertex))
    return Outcome(
        {
            "rank": closure.rank,
            "index": closure.index,
            "basis": [list(v) for v in closure.lattice.generators],
        }
    )


def gad_twist(args):
    splitting = codec.splitting_from_json(_json_arg(args.splitting))
    twist = splittings.dehn_twist(splitting, parse_word(args.z, splitting.group.alphabet))
    return Outcome(codec.twist_to_json(twist), status_code(twist.status))


def gad_gtwist(args):
    splitting = codec.splitting_from_json(_json_arg(args.splitting))
    matrix = codec.matrix_from_json(_json_arg(args.matrix))
    twist = splittings.generalized_dehn_twist(splitting, matrix)
    return Outcome(codec.twist_to_json(twist), status_code(twist.status))


def gad_double_nf(args):
    left = parse_alphabet(args.left)
    double = splittings.double_of_free(args.left, args.right, parse_word(args.along, left))
    form = splittings.amalgam_normal_form(double, parse_word(args.word, double.group.alphabet))
    sides = ("left", "right")
    return Outcome(
        {
            "trivial": form.trivial,
            "power": form.power,
            "syllables": [{"side": sides[s], "word": str(w)} for s, w in form.syllables],
        }
    )


def mr_verify(args):
    hom = _hom(args.hom)
    diagram = codec.diagram_from_json(_json_arg(args.diagram))
    witness = codec.witness_from_json(_json_arg(args.witness), diagram, hom.target)
    report = diagrams.verify_mr_factoring(hom, diagram, witness, not args.not_limit)
    return Outcome(_mr_payload(report), status_code(report.status), "mr")


def _mr_payload(report):
    return {
        "status": report.status.value,
        "stages": [
            {"label": s.label, "status": s.status.value, "detail": s.detail} for s in report.stages
        ],
        "checks": [
            {
                "generator": c.generator,
                "expected": str(c.expected),
                "obtained": str(c.obtained),
                "equal": c.equal,
            }
            for c in report.checks
        ],
    }


def mr_abelian(args):
    hom = _hom(args.hom)
    diagram, witness = diagrams.mr_witness_from_abelian(hom)
    report = diagrams.verify_mr_factoring(hom, diagram, witness)
    payload = {
        "diagram": codec.diagram_to_json(diagram),
        "witness": codec.witness_to_json(witness),
        "report": _mr_payload(report),
    }
    return Outcome(payload, status_code(report.status))


def mr_search(args):
    hom = _hom(args.hom)
    factor_set = codec.factor_set_from_json(_json_arg(args.factor_set), hom.domain)
    twists = _twists(args.twists, hom.domain)
    depth = args.depth if args.depth is not None else DEFAULT_SEARCH_DEPTH
    witness = diagrams.search_modular_factorization(hom, factor_set, twists, depth)
    if witness is None:
        return Outcome({"found": False, "depth": depth}, 1)
    quotient = factor_set.quotients[witness.quotient_index]
    return Outcome(
        {
            "found": True,
            "sequence": list(witness.sequence),
            "automorphism": witness.automorphism.as_dict(),
            "quotient": quotient.label,
            "images": {n: str(w) for n, w in witness.composed.images_by_name().items()},
            "rechecked": diagrams.recheck_factorization(hom, factor_set, witness),
        }
    )


def mr_shorten(args):
    hom = _hom(args.hom)
    twists = _twists(args.twists, hom.domain)
    depth = args.depth if args.depth is not None else DEFAULT_SHORTEN_DEPTH
    result = diagrams.shorten_hom(hom, twists, depth)
    payload = {
        "shortened": result.shortened,
        "length": presentations.hom_length(hom),
        "ball": {"conjugator_bound": result.conjugator_bound, "depth": result.depth},
    }
    if result.shortened:
        payload.update(
            new_length=max(len(w) for w in result.hom.images),
            conjugator=str(result.conjugator),
            sequence=list(result.sequence),
            images={n: str(w) for n, w in result.hom.images_by_name().items()},
            status=result.hom.status.value,
        )
        return Outcome(payload, status_code(result.hom.status))
    return Outcome(payload, 1)


def mr_factorset(args):
    factor_set = codec.factor_set_from_json(_json_arg(args.factor_set))
    if args.free_product:
        factor_set = diagrams.free_product_factor_set(
            factor_set, _presentation(args.free_product)
        )
    return Outcome(codec.factor_set_to_json(factor_set))


def clg_check(args):
    cert = codec.certificate_from_json(_json_arg(args.cert))
    radius = args.radius if args.radius is not None else DEFAULT_SAMPLING_RADIUS
    report = diagrams.check_clg(cert, radius)
    statuses = [report.status] + [
        c.status for node in diagrams.walk(report) for c in node.conditions
    ]
    return Outcome(codec.report_to_json(report), status_code(weakest(statuses)), "clg")


def clg_example(args):
    if args.kind == "free":
        cert = diagrams.free_certificate(args.rank)
    elif args.kind == "free-abelian":
        cert = diagrams.free_abelian_certificate(args.rank)
    elif args.kind == "surface":
        cert = diagrams.surface_certificate(args.genus)
    elif args.kind == "circle":
        cert = diagrams.circle_of_surfaces_certificate()
    else:
        left = free_core.Alphabet(("a", "b"))
        cert = diagrams.double_certificate(parse_word(args.along, left))
    return Outcome(codec.certificate_to_json(cert))


def _budget(args):
    return search.SearchBudget(
        max_len=args.max_len if args.max_len is not None else DEFAULT_MAX_IMAGE_LENGTH,
        rank=args.rank if args.rank is not None else DEFAULT_TARGET_RANK,
        max_nodes=args.max_nodes,
        max_seconds=args.max_seconds,
    )


def _search_outcome(result):
    payload = {"found": result.found, "nodes": result.nodes, "exhausted": result.exhausted}
    if result.found:
        payload["witness"] = codec.hom_to_json(result.witness)
    return Outcome(payload, 0 if result.found else 1)


def probe_orf(args):
    group = _presentation(args.pres)
    subset = search.FiniteSubset(tuple(_words(args.subset, group.alphabet)))
    return _search_outcome(search.orf_witness_search(group, subset, _budget(args)))


def probe_rf(args):
    group = _presentation(args.pres)
    element = parse_word(args.element, group.alphabet)
    return _search_outcome(search.residually_free_probe(group, element, _budget(args)))


def probe_stable(args):
    family = codec.family_from_json(_json_arg(args.family))
    if args.range:
        family = search.TwistFamily(family.base, family.twist, *args.range)
    alphabet = family.base.domain.alphabet
    if args.separate:
        subset = search.FiniteSubset(tuple(_words(args.separate, alphabet)))
        index = search.separation_probe(family, subset)
        return Outcome({"separating_index": index}, 0 if index is not None else 1)
    if not args.element:
        raise InputError("Give --element or --separate")
    probe = search.stable_kernel_probe(family, parse_word(args.element, alphabet))
    return Outcome(
        {
            "classification": probe.classification,
            "onset": probe.onset,
            "evidence": probe.evidence,
            "range": list(probe.span),
            "verdicts": [
                {"i": i, "trivial": trivial, "image": str(image)}
                for i, trivial, image in probe.verdicts
            ],
        }
    )

