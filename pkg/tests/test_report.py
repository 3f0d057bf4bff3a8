import io

import pytest

from limgrp.algebra.diagrams import (
    MRWitness,
    check_clg,
    free_abelian_certificate,
    mr_witness_from_abelian,
    verify_mr_factoring,
)
from limgrp.algebra.free_core import FreeMap
from limgrp.algebra.presentations import validate_hom_to_free
from limgrp.algebra.status import Status
from limgrp.cli.commands import _mr_payload
from limgrp.language.codec import report_to_json
from limgrp.report import render
from limgrp.report.filters import (
    format_matrix,
    format_status,
    format_value,
    format_vector,
    is_nested,
)


@pytest.fixture
def plain(monkeypatch):
    monkeypatch.delenv("NO_COLOR", raising=False)
    monkeypatch.setenv("LIMGRP_COLOR", "never")


def test_format_vector():
    assert format_vector((1, 0, -2)) == "(1, 0, -2)"
    assert format_vector(()) == "()"


def test_format_matrix():
    assert format_matrix([[1, -10], [2, 3]]) == "[   1 -10 ]\n[   2   3 ]"
    assert format_matrix([]) == "[]"


def test_format_value(word, plain):
    assert format_value(word("a b^-1")) == "a b^-1"
    assert format_value(True) == "yes"
    assert format_value(False) == "no"
    assert format_value(None) == "-"
    assert format_value([2, 0]) == "(2, 0)"
    assert format_value([]) == "[]"
    assert format_value(Status.SAMPLED) == "sampled"
    assert format_value("infinite") == "infinite"


def test_nested_values():
    assert is_nested({"a": 1})
    assert is_nested([[1, 0]])
    assert not is_nested([1, "x", None])


def test_status_colours(monkeypatch):
    monkeypatch.delenv("NO_COLOR", raising=False)
    monkeypatch.setenv("LIMGRP_COLOR", "always")
    assert format_status(Status.VERIFIED) == "\x1b[32mverified\x1b[0m"
    assert format_status("failed") == "\x1b[31mfailed\x1b[0m"
    assert format_status("maybe") == "maybe"
    monkeypatch.setenv("NO_COLOR", "1")
    assert format_status(Status.VERIFIED) == "verified"


def test_status_colours_follow_the_stream(monkeypatch):
    monkeypatch.delenv("NO_COLOR", raising=False)
    monkeypatch.setenv("LIMGRP_COLOR", "auto")
    assert format_status(Status.REFUTED, io.StringIO()) == "refuted"


def test_render_payload(plain):
    text = render(None, {"rank": 2, "found": True, "ball": {"depth": 2, "bound": 6}})
    lines = text.splitlines()
    assert "rank: 2" in lines
    assert "found: yes" in lines
    assert "ball:" in lines
    assert "  depth: 2" in lines
    assert "  bound: 6" in lines


def test_render_list_of_records(plain):
    text = render(None, {"verdicts": [{"i": 0, "trivial": False}]})
    assert "verdicts:" in text
    assert "    i: 0" in text.splitlines()
    assert "    trivial: no" in text.splitlines()


def test_render_scalar(plain):
    assert render("scalar", {"value": "infinite"}).strip() == "infinite"
    assert render("scalar", {"value": 2}).strip() == "2"


def test_render_clg_tree(plain):
    payload = report_to_json(check_clg(free_abelian_certificate(2)))
    lines = render("clg", payload).splitlines()
    assert lines[0] == "step (level 1): verified"
    assert "  peripheral: verified" in lines
    assert "  free (level 0): verified" in lines


def test_render_mr_report(plain, z2, target, word):
    w = word("x1 x2", target)
    hom = validate_hom_to_free(z2, [w**3, w**5], target)
    diagram, witness = mr_witness_from_abelian(hom)
    good = render("mr", _mr_payload(verify_mr_factoring(hom, diagram, witness)))
    assert good.splitlines()[0] == "factoring: verified"
    assert "MISMATCH" not in good
    wrong = MRWitness(witness.branch, (FreeMap.identity(z2.alphabet),), witness.terminal)
    bad = render("mr", _mr_payload(verify_mr_factoring(hom, diagram, wrong)))
    assert bad.splitlines()[0] == "factoring: failed"
    assert "MISMATCH" in bad
