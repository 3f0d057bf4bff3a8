"""Parsing of words and presentations, and the JSON codecs"""

import json

import pytest

from limgrp.algebra.diagrams import (
    check_clg,
    circle_of_surfaces_certificate,
    double_certificate,
    free_abelian_certificate,
    surface_certificate,
)
from limgrp.algebra.presentations import FREE_ABELIAN, GENERAL
from limgrp.algebra.splittings import HNN, AbelianSplitting, Amalgam
from limgrp.algebra.status import Status
from limgrp.exceptions import InputError, MalformedCertificate, RelatorsNotKilled
from limgrp.language import group_metamodel
from limgrp.language.codec import (
    certificate_from_json,
    certificate_to_json,
    diagram_from_json,
    diagram_to_json,
    factor_set_from_json,
    factor_set_to_json,
    family_from_json,
    gad_from_json,
    gad_to_json,
    hom_from_json,
    hom_to_json,
    matrix_from_json,
    presentation_from_json,
    presentation_to_json,
    splitting_from_json,
    twist_from_json,
    twist_to_json,
    witness_from_json,
    witness_to_json,
)
from limgrp.language.parser import (
    infer_alphabet,
    load_json,
    load_presentation,
    parse_alphabet,
    parse_presentation,
    parse_word,
    word_tokens,
)


@pytest.fixture
def load(data_path):
    def read(name):
        return load_json(data_path(name))

    return read


def test_word_tokens():
    assert word_tokens("a b^-2") == [("a", 1), ("b", -2)]
    assert word_tokens("x1^+3") == [("x1", 3)]
    assert word_tokens("1") == []
    assert word_tokens("") == []


def test_parse_word(f2):
    assert str(parse_word("a b b^-1 a", f2)) == "a^2"
    assert parse_word("1", f2).is_identity
    with pytest.raises(InputError, match="Unknown generator 'z'"):
        parse_word("a z", f2)
    with pytest.raises(InputError, match="Cannot parse word"):
        parse_word("a ^ ^", f2)


def test_infer_alphabet():
    assert infer_alphabet(["b a", "c b^-1"]).names == ("b", "a", "c")
    with pytest.raises(InputError):
        infer_alphabet(["1", ""])
    with pytest.raises(InputError):
        parse_alphabet([])


def test_parse_presentation():
    presentation = parse_presentation("< a, b | a b a^-1 b^-1 >")
    assert presentation.kind == FREE_ABELIAN
    assert parse_presentation("< a, b | 1 >").is_free
    assert parse_presentation("< a >").rank == 1
    with pytest.raises(InputError):
        parse_presentation("< a | b >")
    with pytest.raises(InputError):
        parse_presentation("a, b | a")


def test_duplicate_generators_are_rejected():
    with pytest.raises(InputError):
        parse_presentation("< a, a | a^2 >")


def test_exponents_are_signed_integers():
    presentation = parse_presentation("< a, b | a^+2 b^-1 a^0 >")
    assert [str(r) for r in presentation.relators] == ["a^2 b^-1"]
    for text in ("< a | a^x >", "< a | a^2.5 >", "< a | a^ >"):
        with pytest.raises(InputError, match="Cannot parse"):
            parse_presentation(text)


def test_load_presentation_files(data_path):
    surface = load_presentation(data_path("surface2.grp"))
    assert surface.generators == ("a1", "b1", "a2", "b2")
    torsion = load_presentation(data_path("torsion.grp"))
    assert torsion.kind == GENERAL
    assert [str(r) for r in torsion.relators] == ["a^2", "a b^3"]
    assert load_presentation(data_path("z2.json")).is_free_abelian


@pytest.mark.parametrize("name", ["duplicate.grp", "unknown.grp", "missing.grp"])
def test_bad_presentation_files(data_path, name):
    with pytest.raises(InputError):
        load_presentation(data_path(name))


def test_grp_metamodel_reads_comments(data_path):
    model = group_metamodel().model_from_file(data_path("surface2.grp"))
    assert [g.name for g in model.generators] == ["a1", "b1", "a2", "b2"]


def test_invalid_json_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    with pytest.raises(InputError, match="invalid JSON"):
        load_json(str(path))


def test_presentation_json_forms():
    z2 = presentation_from_json({"generators": ["a", "b"], "relators": ["a b a^-1 b^-1"]})
    assert z2 == presentation_from_json("< a, b | a b a^-1 b^-1 >")
    assert presentation_to_json(z2) == {
        "generators": ["a", "b"],
        "relators": ["a b a^-1 b^-1"],
        "kind": "free_abelian",
    }
    with pytest.raises(InputError):
        presentation_from_json({"relators": []})
    with pytest.raises(InputError):
        presentation_from_json({"generators": []})


def test_hom_from_json(load):
    hom = hom_from_json(load("z2_hom.json"))
    assert hom.status == Status.VERIFIED
    assert hom.length == 10
    data = hom_to_json(hom)
    assert data["status"] == "verified"
    assert data["images"]["a"] == "x1 x2 x1 x2 x1 x2"


def test_hom_that_kills_nothing_is_refused():
    data = {"domain": "< a, b | a b a^-1 b^-1 >", "target": ["x", "y"], "images": ["x", "y"]}
    with pytest.raises(RelatorsNotKilled):
        hom_from_json(data)


def test_abelian_and_asserted_homs():
    abelian = hom_from_json(
        {
            "domain": "< a, b | a^2 b^-2 >",
            "target": {"abelian_rank": 1},
            "images": {"a": [1], "b": [1]},
        }
    )
    assert abelian.abelian_target
    assert hom_to_json(abelian)["target"] == {"abelian_rank": 1}
    asserted = hom_from_json(
        {"domain": "< s >", "target": "< t | t^2 >", "images": {"s": "t"}}
    )
    assert asserted.status == Status.ASSERTED


def test_hom_needs_its_fields():
    with pytest.raises(InputError, match="Missing 'images'"):
        hom_from_json({"domain": "< a >", "target": ["x"]})


def test_matrix_from_json():
    assert matrix_from_json([[1, 0], [2, 1]]) == [[1, 0], [2, 1]]
    with pytest.raises(InputError):
        matrix_from_json([1, 2])
    with pytest.raises(InputError):
        matrix_from_json([["x"]])


def test_gad_from_json(load):
    gad = gad_from_json(load("z2_gad.json"))
    vertex = gad.vertex("A")
    assert vertex.peripheral == ((2, 0),)
    assert gad_to_json(gad)["vertices"][0]["peripheral"] == [[2, 0]]


def test_gad_edge_to_unknown_vertex():
    data = {
        "group": "< a, b >",
        "vertices": [{"name": "A", "kind": "rigid", "generators": ["a", "b"]}],
        "edges": [
            {
                "source": "A",
                "target": "B",
                "generators": ["a"],
                "source_image": ["a"],
                "target_image": ["a"],
            }
        ],
    }
    with pytest.raises(InputError, match="unknown vertex 'B'"):
        gad_from_json(data)


def test_gad_vertex_kind_is_checked():
    data = {"group": "< a >", "vertices": [{"name": "A", "kind": "cubic", "generators": ["a"]}]}
    with pytest.raises(InputError, match="Unknown vertex kind"):
        gad_from_json(data)


def test_splittings_from_json(load):
    assert isinstance(splitting_from_json(load("double_splitting.json")), Amalgam)
    assert isinstance(splitting_from_json(load("z2_splitting.json")), AbelianSplitting)
    hnn = splitting_from_json(
        {
            "group": "< a, t | t a t^-1 a^-1 >",
            "kind": "hnn",
            "base": ["a"],
            "stable": "t",
            "edge": "a",
            "partner": "a",
        }
    )
    assert isinstance(hnn, HNN)
    with pytest.raises(InputError):
        splitting_from_json({"group": "< a >", "kind": "triangle"})


def test_twists_from_json(load, double):
    (dehn,) = [twist_from_json(t, double.group) for t in load("double_twists.json")["twists"]]
    assert dehn.label == "D[c d c^-1 d^-1]"
    data = twist_to_json(dehn)
    assert data["status"] == "verified"
    assert data["images"]["c"] == "c d c^-1 d^-1 c d c d^-1 c^-1"
    assert data["inverse"]["a"] == "a"


def test_other_twist_kinds(z2, load):
    generalized = twist_from_json(
        {
            "kind": "generalized",
            "splitting": load("z2_splitting.json"),
            "matrix": [[1, 1], [0, 1]],
        },
        z2,
    )
    assert generalized.images() == {"a": "a", "b": "a b"}
    inner = twist_from_json({"kind": "inner", "conjugator": "a"}, z2)
    assert inner.label == "i[a]"
    labels = [twist_from_json(t, z2).label for t in load("z2_transvections.json")["twists"]]
    assert labels == ["T[b -> b a]", "T[a -> a b]"]
    with pytest.raises(InputError):
        twist_from_json({"kind": "rotation"}, z2)


def test_diagram_and_witness(load, target):
    diagram = diagram_from_json(load("z2_diagram.json"))
    assert diagram.root == "G"
    assert diagram_to_json(diagram)["edges"][0]["images"] == {"a": "a", "b": "1"}
    target = presentation_from_json({"generators": list(target.names)})
    witness = witness_from_json(load("z2_witness.json"), diagram, target)
    assert witness_to_json(witness)["automorphisms"] == [{"a": "a^3 b^-1", "b": "a^5 b^-2"}]


def test_witness_automorphism_count_is_checked(load):
    diagram = diagram_from_json(load("z2_diagram.json"))
    data = load("z2_witness.json")
    data["automorphisms"] = []
    target = presentation_from_json({"generators": ["x1", "x2"]})
    with pytest.raises(InputError, match="Expected 1 automorphisms"):
        witness_from_json(data, diagram, target)


def test_diagram_edge_to_unknown_node():
    data = {
        "root": "G",
        "nodes": {"G": {"generators": ["a"]}},
        "edges": [{"parent": "G", "child": "L", "images": {"a": "a"}}],
    }
    with pytest.raises(InputError, match="unknown node"):
        diagram_from_json(data)


def test_factor_set_from_json(load, z2):
    factor_set = factor_set_from_json(load("z2_factor_set.json"), z2)
    quotients = factor_set_to_json(factor_set)["quotients"]
    assert [q["label"] for q in quotients] == ["abelianization", "kill b"]
    assert [q["properness"] for q in quotients] == ["refuted", "verified"]


@pytest.mark.parametrize(
    "make",
    [
        free_abelian_certificate,
        lambda rank: surface_certificate(),
        lambda rank: surface_certificate(genus=3),
        lambda rank: circle_of_surfaces_certificate(),
    ],
    ids=["z", "surface", "surface3", "circle"],
)
def test_certificates_survive_json(make):
    cert = make(2)
    data = json.loads(json.dumps(certificate_to_json(cert)))
    assert check_clg(certificate_from_json(data)).status == Status.VERIFIED


def test_double_certificate_json(f2):
    cert = double_certificate(parse_word("a b a^-1 b^-1", f2))
    data = certificate_to_json(cert)
    assert data["rho"] == {"a": "a", "b": "b", "c": "a", "d": "b"}
    assert data["lower"] == {"kind": "free", "rank": 2, "names": ["a", "b"]}
    assert check_clg(certificate_from_json(data)).status == Status.VERIFIED


def test_deeply_nested_certificate_is_malformed():
    cert = {"kind": "free", "rank": 1}
    for _ in range(70):
        cert = {"kind": "free_product", "left": cert, "right": {"kind": "free", "rank": 0}}
    with pytest.raises(MalformedCertificate, match="too deep"):
        certificate_from_json(cert)


def test_unknown_certificate_kind():
    with pytest.raises(MalformedCertificate):
        certificate_from_json({"kind": "tower"})


def test_declared_levels_are_read():
    cert = certificate_from_json({"kind": "free", "rank": 2, "level": 0})
    assert cert.level == 0
    assert cert.group.generators == ("x1", "x2")
    with pytest.raises(MalformedCertificate):
        check_clg(certificate_from_json({"kind": "free", "names": ["a"], "level": 1}))


def test_family_from_json(load):
    family = family_from_json(load("double_family.json"))
    assert (family.start, family.stop) == (0, 10)
    assert family.twist.label == "D[c d c^-1 d^-1]"
