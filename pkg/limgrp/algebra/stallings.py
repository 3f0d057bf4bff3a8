"""
Stallings core graphs of finitely generated subgroups of free groups

A core graph is a connected labelled digraph with a base vertex, folded
(at most one out-edge and one in-edge per label at each vertex) and without
hanging trees away from the base.  Vertices are renumbered by a
breadth-first walk from the base in letter order, so equal subgroups give
identical graphs.
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

from limgrp.exceptions import InputError

from .free_core import Alphabet, FreeMap, Word

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoreGraph:
    alphabet: Alphabet
    vertex_count: int
    edges: Tuple[Tuple[int, int, int], ...]
    base: int = 0

    @cached_property
    def _moves(self):
        moves = {}
        for source, target, label in self.edges:
            moves[(source, label + 1)] = target
            moves[(target, -(label + 1))] = source
        return moves

    def follow(self, vertex, letter) -> Optional[int]:
        return self._moves.get((vertex, letter))

    @property
    def rank(self):
        return len(self.edges) - self.vertex_count + 1

    def is_folded(self):
        out_labels = Counter((source, label) for source, _, label in self.edges)
        in_labels = Counter((target, label) for _, target, label in self.edges)
        return all(n == 1 for n in out_labels.values()) and all(
            n == 1 for n in in_labels.values()
        )

    def degree(self, vertex):
        return sum((s == vertex) + (t == vertex) for s, t, _ in self.edges)

    @cached_property
    def _tree(self):
        """Breadth-first spanning tree: (tree edges, path word letters per vertex)"""
        paths = {self.base: ()}
        tree = set()
        queue = deque([self.base])
        while queue:
            vertex = queue.popleft()
            for letter in self.alphabet.letters():
                other = self.follow(vertex, letter)
                if other is None or other in paths:
                    continue
                paths[other] = paths[vertex] + (letter,)
                if letter > 0:
                    tree.add((vertex, other, letter - 1))
                else:
                    tree.add((other, vertex, -letter - 1))
                queue.append(other)
        return frozenset(tree), paths

    def path_to(self, vertex):
        return Word(self.alphabet, self._tree[1][vertex])

    def to_json(self):
        return {
            "generators": list(self.alphabet.names),
            "vertices": self.vertex_count,
            "base": self.base,
            "edges": [
                [source, target, self.alphabet.names[label]]
                for source, target, label in self.edges
            ],
        }

    @classmethod
    def from_json(cls, data):
        try:
            alphabet = Alphabet(tuple(data["generators"]))
            edges = tuple(
                sorted((int(s), int(t), alphabet.index(name)) for s, t, name in data["edges"])
            )
            graph = cls(alphabet, int(data["vertices"]), edges, int(data.get("base", 0)))
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"Malformed core graph: {e}") from None
        if not graph.is_folded():
            raise InputError("Core graph is not folded")
        return graph


class _Folder:
    """Union-find over the vertices of a bouquet of petals"""

    def __init__(self, vertex_count):
        self.parent = list(range(vertex_count))

    def find(self, vertex):
        while self.parent[vertex] != vertex:
            self.parent[vertex] = self.parent[self.parent[vertex]]
            vertex = self.parent[vertex]
        return vertex

    def union(self, u, v):
        u, v = self.find(u), self.find(v)
        if u != v:
            self.parent[max(u, v)] = min(u, v)


def _petals(gens):
    edges = []
    count = 1
    for word in gens:
        if word.is_identity:
            continue
        inner = list(range(count, count + len(word) - 1))
        count += len(word) - 1
        path = [0] + inner + [0]
        for i, letter in enumerate(word.letters):
            u, v = path[i], path[i + 1]
            if letter > 0:
                edges.append((u, v, letter - 1))
            else:
                edges.append((v, u, -letter - 1))
    return edges, count


def _fold(edges, folder):
    pending = True
    while pending:
        pending = False
        seen_out, seen_in = {}, {}
        for source, target, label in edges:
            source, target = folder.find(source), folder.find(target)
            other = seen_out.setdefault((source, label), target)
            if other != target:
                folder.union(other, target)
                pending = True
                break
            other = seen_in.setdefault((target, label), source)
            if other != source:
                folder.union(other, source)
                pending = True
                break
        edges = list({(folder.find(s), folder.find(t), l) for s, t, l in edges})
    return edges


def _prune(edges, base):
    while True:
        degree = Counter()
        for source, target, _ in edges:
            degree[source] += 1
            degree[target] += 1
        hairs = {v for v, d in degree.items() if v != base and d <= 1}
        if not hairs:
            return edges
        edges = [e for e in edges if e[0] not in hairs and e[1] not in hairs]


def fold_core_graph(gens, alphabet=None):
    """Folded core graph of the subgroup generated by `gens`
    Example: [a, b^2, b a b^-1] -> 2 vertices, 4 edges
    """
    gens = list(gens)
    if alphabet is None:
        if not gens:
            raise InputError("An alphabet is required for an empty generating set")
        alphabet = gens[0].alphabet
    for word in gens:
        if word.alphabet != alphabet:
            raise InputError(f"Generator {word} is not a word over {alphabet.names}")
    edges, count = _petals(gens)
    folder = _Folder(count)
    edges = _prune(_fold(edges, folder), folder.find(0))
    base = folder.find(0)

    moves = {}
    for source, target, label in edges:
        moves[(source, label + 1)] = target
        moves[(target, -(label + 1))] = source
    order = {base: 0}
    queue = deque([base])
    while queue:
        vertex = queue.popleft()
        for letter in alphabet.letters():
            other = moves.get((vertex, letter))
            if other is not None and other not in order:
                order[other] = len(order)
                queue.append(other)
    canonical = tuple(sorted((order[s], order[t], l) for s, t, l in edges))
    log.debug("Folded %d generators into %d vertices", len(gens), len(order))
    return CoreGraph(alphabet, len(order), canonical, 0)


@dataclass(frozen=True)
class SubgroupBasis:
    """Free basis read off a spanning tree; `edges[i]` yields `generators[i]`"""

    generators: Tuple[Word, ...]
    edges: Tuple[Tuple[int, int, int], ...]
    tree: frozenset

    @property
    def rank(self):
        return len(self.generators)


def subgroup_basis(graph):
    """Free basis of the subgroup, sorted shortlex"""
    tree, paths = graph._tree
    pairs = []
    for edge in graph.edges:
        if edge in tree:
            continue
        source, target, label = edge
        word = Word(
            graph.alphabet,
            paths[source] + (label + 1,) + tuple(-l for l in reversed(paths[target])),
        )
        pairs.append((word, edge))
    pairs.sort(key=lambda pair: pair[0].shortlex_key())
    return SubgroupBasis(
        tuple(word for word, _ in pairs), tuple(edge for _, edge in pairs), tree
    )


def subgroup_rank(graph):
    return graph.rank


def member_and_rewrite(graph, word, names=None):
    """Rewrite a member of the subgroup in its basis, or None
    The basis letters are named x1..xn unless `names` is given.
    """
    if word.alphabet != graph.alphabet:
        raise InputError(f"Word {word} is not over {graph.alphabet.names}")
    basis = subgroup_basis(graph)
    basis_alphabet = Alphabet(tuple(names)) if names else Alphabet.standard(basis.rank)
    if basis_alphabet.rank != basis.rank:
        raise InputError(f"Expected {basis.rank} basis names, got {basis_alphabet.rank}")
    edge_index = {edge: i for i, edge in enumerate(basis.edges)}
    vertex = graph.base
    letters = []
    for letter in word.letters:
        other = graph.follow(vertex, letter)
        if other is None:
            return None
        if letter > 0:
            edge, sign = (vertex, other, letter - 1), 1
        else:
            edge, sign = (other, vertex, -letter - 1), -1
        if edge in edge_index:
            letters.append(sign * (edge_index[edge] + 1))
        vertex = other
    if vertex != graph.base:
        return None
    return Word(basis_alphabet, tuple(letters))


def expand_rewrite(graph, rewritten):
    """Substitute basis words back into a rewritten word"""
    basis = subgroup_basis(graph)
    return FreeMap(rewritten.alphabet, graph.alphabet, basis.generators).apply(rewritten)


def subgroup_index(graph) -> Optional[int]:
    """Index of the subgroup, None when infinite
    Finite iff every vertex has an in- and out-edge for every label.
    """
    labels = range(graph.alphabet.rank)
    for vertex in range(graph.vertex_count):
        for label in labels:
            if graph.follow(vertex, label + 1) is None or graph.follow(vertex, -label - 1) is None:
                return None
    return graph.vertex_count


def hom_injectivity(free_map):
    """A map F_k -> F is injective iff its images have rank k"""
    graph = fold_core_graph(free_map.images, free_map.target)
    return graph.rank == free_map.domain.rank
