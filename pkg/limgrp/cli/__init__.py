"""
Command-line interface

    limgrp <group> <command> [options]

Exit codes: 0 ok, 1 false/refuted/none found, 2 bad input, 3 degraded status
(sampled, asserted or unverifiable).
"""

import argparse
import json
import logging
import sys

from limgrp import __version__
from limgrp.exceptions import InputError, PreconditionError
from limgrp.report import render

from . import commands

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_DEGRADED = 3


def _common():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--output", choices=("text", "json"), default="text")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def _budget_options(parser):
    parser.add_argument("--max-len", type=int, default=None)
    parser.add_argument("--rank", type=int, default=None)
    parser.add_argument("--max-nodes", type=int, default=None)
    parser.add_argument("--max-seconds", type=float, default=None)


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="limgrp", description=__doc__.splitlines()[1])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    def command(group_parsers, name, func, help_text):
        sub = group_parsers.add_parser(name, parents=[common], help=help_text)
        sub.set_defaults(func=func)
        return sub

    word = groups.add_parser("word", help="words in free groups").add_subparsers(
        dest="command", required=True
    )
    sub = command(word, "reduce", commands.word_reduce, "free and cyclic reduction")
    sub.add_argument("word")
    sub.add_argument("--gens", nargs="+")
    sub = command(word, "root", commands.word_root, "primitive root")
    sub.add_argument("word")
    sub.add_argument("--gens", nargs="+")
    sub = command(word, "whitehead", commands.word_whitehead, "Whitehead minimization")
    sub.add_argument("word")
    sub.add_argument("--gens", nargs="+")
    sub = command(word, "count", commands.word_count, "occurrences of a generator")
    sub.add_argument("--word", required=True)
    sub.add_argument("--gen", required=True)

    stallings = groups.add_parser("stallings", help="subgroups of free groups").add_subparsers(
        dest="command", required=True
    )
    for name, func, text in (
        ("fold", commands.stallings_fold, "folded core graph"),
        ("member", commands.stallings_member, "membership and rewriting"),
        ("index", commands.stallings_index, "subgroup index"),
        ("basis", commands.stallings_basis, "free basis"),
    ):
        sub = command(stallings, name, func, text)
        sub.add_argument("--gens", nargs="+", required=True)
        sub.add_argument("--alphabet", nargs="+")
        if name == "member":
            sub.add_argument("--word", required=True)

    lattice = groups.add_parser("lattice", help="integer linear algebra").add_subparsers(
        dest="command", required=True
    )
    sub = command(lattice, "snf", commands.lattice_snf, "Smith normal form")
    sub.add_argument("--matrix", required=True, help="JSON rows or a JSON file")
    sub = command(lattice, "saturate", commands.lattice_saturate, "saturation of a lattice")
    sub.add_argument("--vectors", required=True, help="JSON list of vectors or a JSON file")
    sub.add_argument("--ambient", type=int)
    sub = command(lattice, "extend", commands.lattice_extend, "unimodular completion")
    sub.add_argument("--vector", nargs="+", type=int, required=True)

    pres = groups.add_parser("pres", help="presentations and maps").add_subparsers(
        dest="command", required=True
    )
    sub = command(pres, "validate", commands.pres_validate, "check a homomorphism")
    sub.add_argument("--hom", required=True)
    sub.add_argument("--pres")
    sub = command(pres, "abelianize", commands.pres_abelianize, "abelianization")
    sub.add_argument("--pres", required=True)
    sub = command(pres, "surface", commands.pres_surface, "closed surface group")
    sub.add_argument("--genus", type=int, required=True)
    sub.add_argument("--non-orientable", action="store_true")
    sub = command(pres, "factor-abelian", commands.pres_factor_abelian, "factor Z^n -> F")
    sub.add_argument("--hom", required=True)

    gad = groups.add_parser("gad", help="splittings and twists").add_subparsers(
        dest="command", required=True
    )
    sub = command(gad, "peripheral", commands.gad_peripheral, "peripheral closure")
    sub.add_argument("--gad", required=True)
    sub.add_argument("--vertex", required=True)
    sub = command(gad, "twist", commands.gad_twist, "Dehn twist")
    sub.add_argument("--splitting", required=True)
    sub.add_argument("--z", required=True)
    sub = command(gad, "gtwist", commands.gad_gtwist, "generalized Dehn twist")
    sub.add_argument("--splitting", required=True)
    sub.add_argument("--matrix", required=True)
    sub = command(gad, "double-nf", commands.gad_double_nf, "normal form in a double")
    sub.add_argument("--left", nargs="+", required=True)
    sub.add_argument("--right", nargs="+", required=True)
    sub.add_argument("--along", required=True, help="word of the left factor")
    sub.add_argument("--word", required=True)

    mr = groups.add_parser("mr", help="MR diagrams").add_subparsers(dest="command", required=True)
    sub = command(mr, "verify", commands.mr_verify, "check a factoring witness")
    sub.add_argument("--hom", required=True)
    sub.add_argument("--diagram", required=True)
    sub.add_argument("--witness", required=True)
    sub.add_argument("--not-limit", action="store_true")
    sub = command(mr, "abelian", commands.mr_abelian, "witness for Z^n -> F")
    sub.add_argument("--hom", required=True)
    sub = command(mr, "search", commands.mr_search, "search a modular factorization")
    sub.add_argument("--hom", required=True)
    sub.add_argument("--factor-set", required=True)
    sub.add_argument("--twists", required=True)
    sub.add_argument("--depth", type=int, default=None)
    sub = command(mr, "shorten", commands.mr_shorten, "shorten a homomorphism")
    sub.add_argument("--hom", required=True)
    sub.add_argument("--twists", required=True)
    sub.add_argument("--depth", type=int, default=None)
    sub = command(mr, "factorset", commands.mr_factorset, "assemble a factor set")
    sub.add_argument("--factor-set", required=True)
    sub.add_argument("--free-product", help="presentation of a free factor V")

    clg = groups.add_parser("clg", help="constructible limit groups").add_subparsers(
        dest="command", required=True
    )
    sub = command(clg, "check", commands.clg_check, "check a certificate")
    sub.add_argument("--cert", required=True)
    sub.add_argument("--radius", type=int, default=None)
    sub = command(clg, "example", commands.clg_example, "print a sample certificate")
    sub.add_argument("kind", choices=("free", "free-abelian", "surface", "circle", "double"))
    sub.add_argument("--rank", type=int, default=2)
    sub.add_argument("--genus", type=int, default=2)
    sub.add_argument("--along", default="a b a^-1 b^-1")

    probe = groups.add_parser("probe", help="bounded searches").add_subparsers(
        dest="command", required=True
    )
    sub = command(probe, "orf", commands.probe_orf, "separate a finite subset")
    sub.add_argument("--pres", required=True)
    sub.add_argument("--subset", nargs="+", required=True)
    _budget_options(sub)
    sub = command(probe, "rf", commands.probe_rf, "keep an element alive")
    sub.add_argument("--pres", required=True)
    sub.add_argument("--element", required=True)
    _budget_options(sub)
    sub = command(probe, "stable", commands.probe_stable, "stable kernel along a twist")
    sub.add_argument("--family", required=True)
    sub.add_argument("--element")
    sub.add_argument("--separate", nargs="+")
    sub.add_argument("--range", nargs=2, type=int)
    return parser


def configure_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def emit(outcome, output):
    if output == "json":
        print(json.dumps(outcome.payload, indent=2, sort_keys=False))
    else:
        sys.stdout.write(render(outcome.template, outcome.payload))


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        outcome = args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_FALSE
    emit(outcome, args.output)
    return outcome.code


def run():
    raise SystemExit(main())
