import os
import random

import pytest

from limgrp.algebra.free_core import Alphabet
from limgrp.algebra.presentations import free_abelian_group, free_group
from limgrp.algebra.splittings import dehn_twist, double_of_free, retraction_of_double
from limgrp.language.parser import parse_word
from limgrp.settings import DEFAULT_SEED

DATA = os.path.join(os.path.dirname(__file__), "data")


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help="seed for the sampled tests (default: %(default)s)",
    )


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


@pytest.fixture
def data_path():
    def path(name):
        return os.path.join(DATA, name)

    return path


@pytest.fixture
def f2():
    """Alphabet of F(a, b)"""
    return Alphabet(("a", "b"))


@pytest.fixture
def word(f2):
    """Parse a word, over F(a, b) unless another alphabet is given"""

    def parse(text, alphabet=None):
        return parse_word(text, alphabet or f2)

    return parse


@pytest.fixture
def free2():
    return free_group(2, names=("a", "b"))


@pytest.fixture
def z2():
    return free_abelian_group(2, names=("a", "b"))


@pytest.fixture
def target():
    return Alphabet.standard(2)


@pytest.fixture
def double(f2):
    """< a, b, c, d | [a, b] [c, d]^-1 >"""
    return double_of_free(("a", "b"), ("c", "d"), parse_word("a b a^-1 b^-1", f2))


@pytest.fixture
def double_twist(double):
    return dehn_twist(double.splitting, double.right_word)


@pytest.fixture
def retraction(double):
    return retraction_of_double(double)
