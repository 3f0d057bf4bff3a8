"""Presentations, homomorphisms and quotient maps"""

import pytest

from limgrp.algebra.free_core import Alphabet
from limgrp.algebra.presentations import (
    FREE,
    FREE_ABELIAN,
    GENERAL,
    GroupHom,
    Presentation,
    QuotientMap,
    abelian_factorization,
    abelianization_quotient,
    asserted_hom,
    check_hom_to_free,
    exponent_vector,
    factors_through,
    free_abelian_group,
    free_group,
    free_product,
    hom_length,
    matrix_automorphism,
    surface_family,
    validate_hom_to_abelian,
    validate_hom_to_free,
)
from limgrp.algebra.status import Status
from limgrp.exceptions import InputError, PreconditionError, RelatorsNotKilled
from limgrp.language.parser import parse_presentation


@pytest.fixture
def w(word, target):
    """(x1 x2) in F(x1, x2)"""
    return word("x1 x2", target)


def test_relators_are_cyclically_reduced(f2, word):
    presentation = Presentation(f2, (word("b a b^-1"), word("a a^-1")))
    assert [str(r) for r in presentation.relators] == ["a"]
    assert str(presentation) == "< a, b | a >"
    assert str(free_group(2)) == "< x1, x2 >"


def test_relator_over_another_alphabet_is_rejected(f2, word, target):
    with pytest.raises(InputError):
        Presentation(f2, (word("x1", target),))


def test_kinds(z2, free2):
    assert free2.kind == FREE
    assert z2.kind == FREE_ABELIAN
    assert z2.is_free_abelian and not z2.is_free
    assert free_abelian_group(3).kind == FREE_ABELIAN
    assert free_abelian_group(1).kind == FREE
    assert parse_presentation("< a, b | a^2 >").kind == GENERAL
    assert parse_presentation("< a, b | b a b^-1 a^-1 >").kind == FREE_ABELIAN


def test_free_group_names():
    assert free_group(3).generators == ("x1", "x2", "x3")
    assert free_abelian_group(2).generators == ("e1", "e2")
    with pytest.raises(InputError):
        free_group(2, names=("a",))


def test_free_product():
    product = free_product(free_group(1, names=("a",)), parse_presentation("< c | c^2 >"))
    assert product.generators == ("a", "c")
    assert [str(r) for r in product.relators] == ["c^2"]
    with pytest.raises(InputError):
        free_product(free_group(1, names=("a",)), free_group(1, names=("a",)))


def test_exponent_vector(word):
    assert exponent_vector(word("a b^-2 a")) == (2, -2)
    assert exponent_vector(word("a b a^-1 b^-1")) == (0, 0)


def test_abelianization_with_torsion():
    result = abelianization_quotient(parse_presentation("< a | a^2 >"))
    assert result.rank == 0
    assert result.torsion == (2,)
    result = abelianization_quotient(parse_presentation("< a, b | a^2 b^4 >"))
    assert result.rank == 1
    assert result.torsion == (2,)
    assert result.project(parse_presentation("< a, b | a^2 b^4 >").relators[0]) == (0,)


def test_abelianization_of_free_and_surface_groups(free2):
    assert abelianization_quotient(free2).rank == 2
    assert abelianization_quotient(free2).images == ((1, 0), (0, 1))
    surface = abelianization_quotient(surface_family(2).presentation)
    assert surface.rank == 4
    assert surface.torsion == ()


def test_hom_to_free_is_validated(z2, target, word, w):
    with pytest.raises(RelatorsNotKilled) as excinfo:
        validate_hom_to_free(z2, [word("x1", target), word("x2", target)], target)
    assert [str(r) for r in excinfo.value.violated] == ["a b a^-1 b^-1"]
    assert "Relators not killed" in str(excinfo.value)
    hom = validate_hom_to_free(z2, [w**3, w**5], target)
    assert hom.status == Status.VERIFIED
    assert hom.free_target
    assert hom_length(hom) == 10
    assert hom.length == 10
    assert str(hom.image("b")) == "x1 x2 x1 x2 x1 x2 x1 x2 x1 x2"


def test_hom_images_by_name(z2, target, w):
    hom = validate_hom_to_free(z2, {"a": w, "b": w**-1}, target)
    assert hom.images_by_name() == {"a": w, "b": w**-1}
    with pytest.raises(InputError):
        validate_hom_to_free(z2, {"a": w}, target)
    with pytest.raises(InputError):
        validate_hom_to_free(z2, {"a": w, "b": w, "c": w}, target)
    with pytest.raises(InputError):
        validate_hom_to_free(z2, [w], target)


def test_check_hom_to_free(z2, target, word):
    assert check_hom_to_free(z2, [word("x1", target), word("x1^2", target)]) == []
    assert len(check_hom_to_free(z2, [word("x1", target), word("x2", target)])) == 1


def test_target_must_be_free(free2, z2, w, target):
    with pytest.raises(InputError):
        validate_hom_to_free(free2, [w, w], z2)
    hom = validate_hom_to_free(free2, [w, w], free_group(2))
    assert hom.target.alphabet == target


def test_hom_to_abelian(z2):
    hom = validate_hom_to_abelian(z2, [(1, 0), (0, 1)], 2)
    assert hom.abelian_target
    assert hom.evaluate(z2.word([1, 2, 2])) == (1, 2)
    assert hom.kills(z2.relators[0])
    with pytest.raises(RelatorsNotKilled):
        validate_hom_to_abelian(parse_presentation("< a | a^2 >"), [(1,)], 1)
    with pytest.raises(InputError):
        validate_hom_to_abelian(z2, [(1,), (0, 1)], 2)
    with pytest.raises(InputError):
        hom.free_map


def test_asserted_homs_have_no_length(target, w):
    torsion = parse_presentation("< a | a^2 >")
    hom = asserted_hom(free_group(1, names=("a",)), [w], torsion)
    assert hom.status == Status.ASSERTED
    with pytest.raises(PreconditionError):
        hom_length(hom)


def test_factors_through(free2, target, w, word):
    hom = validate_hom_to_free(free2, [w, w**3], target)
    through = factors_through(hom, QuotientMap(free2, (word("a^3 b^-1"),)))
    assert through is not None
    assert through.status == Status.VERIFIED
    assert [str(r) for r in through.domain.relators] == ["a^3 b^-1"]
    assert factors_through(hom, QuotientMap(free2, (word("a"),))) is None


def test_quotient_properness(free2, z2, word):
    assert QuotientMap(free2, (word("a b a^-1 b^-1"),)).properness == Status.VERIFIED
    assert QuotientMap(free2, (free2.alphabet.identity(),)).properness == Status.REFUTED
    assert QuotientMap(z2, (word("a b a^-1 b^-1"),)).properness == Status.REFUTED
    assert QuotientMap(z2, (word("b"),)).properness == Status.VERIFIED
    general = parse_presentation("< a, b | a^2 >")
    assert QuotientMap(general, (general.word([2]),)).properness == Status.ASSERTED


def test_quotient_kernel_alphabet_is_checked(free2, target):
    with pytest.raises(InputError):
        QuotientMap(free2, (target.generator("x1"),))


def test_abelian_factorization(z2, target, w):
    hom = validate_hom_to_free(z2, [w**3, w**5], target)
    result = abelian_factorization(hom)
    assert result.alpha == [[2, 5], [-1, -3]]
    assert result.root == w
    assert result.exponents == (3, 5)
    assert result.d == 1
    assert result.composed == (w, target.identity())


def test_abelian_factorization_with_inverse_powers(z2, target, w):
    hom = validate_hom_to_free(z2, [w**2, w**-4], target)
    result = abelian_factorization(hom)
    assert result.exponents == (2, -4)
    assert result.d == 2
    assert result.composed == (w**2, target.identity())


def test_abelian_factorization_of_trivial_hom(z2, target):
    hom = validate_hom_to_free(z2, [target.identity(), target.identity()], target)
    result = abelian_factorization(hom)
    assert result.d == 0
    assert result.alpha == ((1, 0), (0, 1))


def test_abelian_factorization_preconditions(z2, free2, target, w, word):
    forged = GroupHom(z2, free_group(2), (word("x1", target), word("x2", target)), Status.VERIFIED)
    with pytest.raises(PreconditionError):
        abelian_factorization(forged)
    with pytest.raises(PreconditionError):
        abelian_factorization(asserted_hom(z2, [w, w], free_group(2)))
    with pytest.raises(InputError):
        abelian_factorization(validate_hom_to_free(free2, [w, w], target))


def test_matrix_automorphism(z2):
    automorphism = matrix_automorphism(z2, [[2, 5], [-1, -3]])
    assert automorphism.as_dict() == {"a": "a^2 b^-1", "b": "a^5 b^-3"}
    with pytest.raises(InputError):
        matrix_automorphism(z2, [[1, 0, 0]])


def test_orientable_surface_family():
    surface = surface_family(2)
    assert surface.presentation.generators == ("a1", "b1", "a2", "b2")
    assert str(surface.presentation.relators[0]) == "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1"
    assert surface.retraction.status == Status.VERIFIED
    assert [str(x) for x in surface.retraction.images] == ["x1", "1", "x2", "1"]
    with pytest.raises(InputError):
        surface_family(1)


def test_non_orientable_surface_family():
    surface = surface_family(3, orientable=False)
    assert str(surface.presentation.relators[0]) == "a1^2 a2^2 a3^2"
    assert surface.retraction is None
    assert not surface.orientable
    with pytest.raises(InputError):
        surface_family(0, orientable=False)


def test_rank_zero_group():
    trivial = Presentation(Alphabet(()))
    assert trivial.rank == 0
    assert abelianization_quotient(trivial).rank == 0
