"""
Exact integer linear algebra

Smith normal form with transforms, lattice saturation, unimodular
completion of integer vectors and fraction-free determinants.  Matrices are
numpy arrays of dtype=object holding Python ints, so arithmetic never
overflows.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Tuple

import numpy as np

from limgrp.exceptions import InputError, PreconditionError

log = logging.getLogger(__name__)


def int_matrix(rows, columns=None):
    """Object-dtype integer matrix; `columns` fixes the width of an empty matrix"""
    rows = [[int(x) for x in row] for row in rows]
    if not rows:
        return np.zeros((0, columns or 0), dtype=object)
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise InputError("Matrix rows have different lengths")
    matrix = np.empty((len(rows), width), dtype=object)
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            matrix[i, j] = value
    return matrix


def identity_matrix(n):
    return int_matrix([[int(i == j) for j in range(n)] for i in range(n)], n)


def as_rows(matrix):
    """Nested lists of Python ints"""
    return [[int(x) for x in row] for row in matrix]


def mat_mul(a, b):
    """Exact product that also handles empty shapes"""
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    return np.dot(a, b)


@dataclass(frozen=True)
class SmithForm:
    """M = U D V with U, V unimodular and D diagonal, d1 | d2 | ..."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray

    @property
    def divisors(self):
        return tuple(int(self.D[i, i]) for i in range(min(self.D.shape)))

    @property
    def nonzero(self):
        return tuple(d for d in self.divisors if d)

    @property
    def rank(self):
        return len(self.nonzero)


class _Reducer:
    """Applies elementary operations to D while keeping D = L M R"""

    def __init__(self, matrix):
        m, n = matrix.shape
        self.D = matrix.copy()
        self.L, self.L_inv = identity_matrix(m), identity_matrix(m)
        self.R, self.R_inv = identity_matrix(n), identity_matrix(n)

    def swap_rows(self, i, j):
        if i != j:
            self.D[[i, j]] = self.D[[j, i]]
            self.L[[i, j]] = self.L[[j, i]]
            self.L_inv[:, [i, j]] = self.L_inv[:, [j, i]]

    def add_row(self, i, j, q):
        """row i += q row j"""
        self.D[i] = self.D[i] + q * self.D[j]
        self.L[i] = self.L[i] + q * self.L[j]
        self.L_inv[:, j] = self.L_inv[:, j] - q * self.L_inv[:, i]

    def negate_row(self, i):
        self.D[i] = -self.D[i]
        self.L[i] = -self.L[i]
        self.L_inv[:, i] = -self.L_inv[:, i]

    def swap_cols(self, i, j):
        if i != j:
            self.D[:, [i, j]] = self.D[:, [j, i]]
            self.R[:, [i, j]] = self.R[:, [j, i]]
            self.R_inv[[i, j]] = self.R_inv[[j, i]]

    def add_col(self, j, i, q):
        """column j += q column i"""
        self.D[:, j] = self.D[:, j] + q * self.D[:, i]
        self.R[:, j] = self.R[:, j] + q * self.R[:, i]
        self.R_inv[i] = self.R_inv[i] - q * self.R_inv[j]

    def pivot(self, t):
        m, n = self.D.shape
        best = None
        for i in range(t, m):
            for j in range(t, n):
                value = self.D[i, j]
                if value != 0 and (best is None or abs(value) < best[0]):
                    best = (abs(value), i, j)
        return None if best is None else best[1:]

    def reduce(self):
        m, n = self.D.shape
        D = self.D
        for t in range(min(m, n)):
            while True:
                position = self.pivot(t)
                if position is None:
                    return
                self.swap_rows(t, position[0])
                self.swap_cols(t, position[1])
                p = D[t, t]
                dirty = False
                for i in range(t + 1, m):
                    q = D[i, t] // p
                    if q:
                        self.add_row(i, t, -q)
                    dirty = dirty or D[i, t] != 0
                for j in range(t + 1, n):
                    q = D[t, j] // p
                    if q:
                        self.add_col(j, t, -q)
                    dirty = dirty or D[t, j] != 0
                if dirty:
                    continue
                stray = next(
                    (
                        i
                        for i in range(t + 1, m)
                        for j in range(t + 1, n)
                        if D[i, j] % p != 0
                    ),
                    None,
                )
                if stray is not None:
                    self.add_row(t, stray, 1)
                    continue
                if p < 0:
                    self.negate_row(t)
                break


def smith_normal_form(matrix):
    """Smith normal form with unimodular transforms
    Example: [[2, 4], [6, 8]] -> diag(2, 4)
    """
    matrix = matrix if isinstance(matrix, np.ndarray) else int_matrix(matrix)
    if matrix.ndim != 2:
        raise InputError("Expected a 2-dimensional integer matrix")
    reducer = _Reducer(matrix.astype(object))
    reducer.reduce()
    return SmithForm(
        U=reducer.L_inv, D=reducer.D, V=reducer.R_inv, U_inv=reducer.L, V_inv=reducer.R
    )


def determinant(matrix):
    """Fraction-free (Bareiss) determinant"""
    rows = as_rows(matrix)
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise InputError("Determinant of a non-square matrix")
    if n == 0:
        return 1
    sign, previous = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k] != 0), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // previous
        previous = rows[k][k]
    return sign * rows[n - 1][n - 1]


def unimodular_inverse(matrix):
    """Exact inverse of a matrix with determinant +-1"""
    matrix = matrix if isinstance(matrix, np.ndarray) else int_matrix(matrix)
    n, m = matrix.shape
    if n != m:
        raise InputError("Inverse of a non-square matrix")
    form = smith_normal_form(matrix)
    if form.divisors != (1,) * n:
        raise PreconditionError("Matrix is not unimodular")
    # D is the identity, so M^-1 = V^-1 U^-1
    return mat_mul(form.V_inv, form.U_inv)


@dataclass(frozen=True)
class Lattice:
    """Subgroup of Z^r spanned by integer vectors"""

    ambient_rank: int
    generators: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in vector) for vector in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.ambient_rank < 0:
            raise InputError("Ambient rank must be non-negative")
        for vector in gens:
            if len(vector) != self.ambient_rank:
                raise InputError(
                    f"Vector {vector} does not lie in Z^{self.ambient_rank}"
                )

    @classmethod
    def full(cls, rank):
        return cls(rank, tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank)))

    def matrix(self):
        """Generators as columns"""
        if not self.generators:
            return np.zeros((self.ambient_rank, 0), dtype=object)
        return int_matrix(self.generators).T.copy()

    @cached_property
    def smith(self):
        if not self.generators or self.ambient_rank == 0:
            return None
        return smith_normal_form(self.matrix())

    @property
    def rank(self):
        return 0 if self.smith is None else self.smith.rank

    def contains(self, vector):
        vector = tuple(int(x) for x in vector)
        if len(vector) != self.ambient_rank:
            raise InputError(f"Vector {vector} does not lie in Z^{self.ambient_rank}")
        if self.smith is None:
            return not any(vector)
        divisors = self.smith.nonzero
        coordinates = mat_mul(self.smith.U_inv, int_matrix([vector]).T)[:, 0]
        for i, value in enumerate(coordinates):
            if i < len(divisors):
                if value % divisors[i]:
                    return False
            elif value:
                return False
        return True

    def contains_lattice(self, other):
        return all(self.contains(vector) for vector in other.generators)

    def equals(self, other):
        return (
            self.ambient_rank == other.ambient_rank
            and self.contains_lattice(other)
            and other.contains_lattice(self)
        )

    def is_full(self):
        return self.equals(Lattice.full(self.ambient_rank))


@dataclass(frozen=True)
class Saturation:
    lattice: Lattice
    index: int


def saturation(lattice):
    """Saturation (Q L) ∩ Z^r, with the index of L in it
    Example: span{(2, 0)} in Z^2 -> span{(1, 0)}, index 2
    """
    form = lattice.smith
    if form is None or form.rank == 0:
        return Saturation(Lattice(lattice.ambient_rank, ()), 1)
    rank = form.rank
    basis = tuple(tuple(int(x) for x in form.U[:, i]) for i in range(rank))
    return Saturation(Lattice(lattice.ambient_rank, basis), prod(form.nonzero))


def quotient_block(matrix, saturated):
    """Block of M induced on Z^n / P for a saturated lattice P that M preserves"""
    matrix = matrix if isinstance(matrix, np.ndarray) else int_matrix(matrix)
    n = matrix.shape[0]
    s = saturated.rank
    if s == 0:
        return matrix.copy()
    form = saturated.smith
    conjugated = mat_mul(mat_mul(form.U_inv, matrix), form.U)
    if any(conjugated[i, j] for i in range(s, n) for j in range(s)):
        raise PreconditionError("Matrix does not preserve the lattice")
    return conjugated[s:, s:].copy()


def exgcd(a, b):
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def unimodular_extend(vector):
    """Unimodular alpha and d > 0 with k alpha = (d, 0, ..., 0)
    Example: (3, 5) -> [[2, 5], [-1, -3]], d = 1
    """
    k = [int(x) for x in vector]
    if not k or not any(k):
        raise InputError("Cannot extend the zero vector")
    n = len(k)
    alpha = identity_matrix(n)
    accumulated = k[0]
    for j in range(1, n):
        b = k[j]
        if b == 0:
            continue
        g, x, y = exgcd(accumulated, b)
        first, other = alpha[:, 0].copy(), alpha[:, j].copy()
        alpha[:, 0] = x * first + y * other
        alpha[:, j] = (b // g) * first - (accumulated // g) * other
        accumulated = g
    if accumulated < 0:
        alpha[:, 0] = -alpha[:, 0]
        accumulated = -accumulated
    log.debug("Extended %s with gcd %d", k, accumulated)
    return alpha, accumulated
