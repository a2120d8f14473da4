"""Milnor lattices of one-variable powers and their tensor products.

For a single exponent p the lattice is the A_{p-1} root lattice: basis
C_1, ..., C_{p-1} with (C_i, C_i) = 2, (C_i, C_j) = -1 for adjacent indices
and 0 otherwise.  For several exponents the basis is indexed by I_p in
lexicographic order and, for i < j,

    (C_i, C_j) = prod_k (C_{i_k}, C_{j_k})   if i_k <= j_k for every k,
                 0                           otherwise.

The form below the diagonal is antisymmetric when the number of variables is
even (with zero diagonal) and symmetric with diagonal 2 when odd.  The same
data can be produced from the Euler matrix of the tensor category by
(anti)symmetrization, and ``compare`` reports where the two routes differ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .dgcat import euler_matrix, tensor_bp
from .exactlin import RatMatrix, det
from .grading import exponent_seq


@dataclass(frozen=True)
class BilinearLattice:
    """Integer Gram matrix over a labeled basis."""

    labels: tuple
    entries: tuple[tuple[int, ...], ...]
    symmetric: bool

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def determinant(self) -> int:
        value = det(RatMatrix(self.entries))
        assert value.denominator == 1
        return value.numerator


def one_var_form(p: int, i: int, j: int) -> int:
    """Intersection number (C_i, C_j) in the A_{p-1} lattice."""
    exponent_seq((p,))
    if not (1 <= i <= p - 1 and 1 <= j <= p - 1):
        raise ValueError("basis index out of range")
    if i == j:
        return 2
    if abs(i - j) == 1:
        return -1
    return 0


def index_tuples(p: tuple[int, ...]) -> list[tuple[int, ...]]:
    """The index set I_p in lexicographic order."""
    return list(itertools.product(*(range(1, pi) for pi in p)))


def st_gram(p: Iterable[int]) -> BilinearLattice:
    """Gram matrix of the product lattice on the distinguished basis."""
    p = exponent_seq(p)
    labels = index_tuples(p)
    n = len(p)
    odd = n % 2 == 1
    size = len(labels)
    entries = [[0] * size for _ in range(size)]
    for a in range(size):
        entries[a][a] = 2 if odd else 0
        for b in range(a + 1, size):
            i, j = labels[a], labels[b]
            if all(ik <= jk for ik, jk in zip(i, j)):
                value = 1
                for pk, ik, jk in zip(p, i, j):
                    value *= one_var_form(pk, ik, jk)
            else:
                value = 0
            entries[a][b] = value
            entries[b][a] = value if odd else -value
    return BilinearLattice(tuple(labels), tuple(tuple(r) for r in entries), symmetric=odd)


def euler_gram(p: Iterable[int], orientation: str = "E-Et") -> BilinearLattice:
    """(Anti)symmetrized Euler matrix of the tensor category on the same basis.

    With an odd variable count the form is E + Et regardless of orientation;
    with an even count it is E - Et or Et - E according to ``orientation``.
    """
    if orientation not in ("E-Et", "Et-E"):
        raise ValueError("orientation must be 'E-Et' or 'Et-E'")
    p = exponent_seq(p)
    E = euler_matrix(tensor_bp(p))
    size = len(E.objects)
    odd = len(p) % 2 == 1
    entries = []
    for i in range(size):
        row = []
        for j in range(size):
            if odd:
                row.append(E.entry(i, j) + E.entry(j, i))
            elif orientation == "E-Et":
                row.append(E.entry(i, j) - E.entry(j, i))
            else:
                row.append(E.entry(j, i) - E.entry(i, j))
        entries.append(tuple(row))
    return BilinearLattice(E.objects, tuple(entries), symmetric=odd)


@dataclass(frozen=True)
class LatticeComparison:
    """Entrywise comparison of the product form with the Euler form."""

    labels: tuple
    st: BilinearLattice
    euler: BilinearLattice
    disagreements: tuple[tuple[tuple, tuple, int, int], ...]

    @property
    def agree(self) -> bool:
        return not self.disagreements


def compare(p: Iterable[int], orientation: str = "E-Et") -> LatticeComparison:
    """List every upper-triangle entry (diagonal included) where the forms differ."""
    p = exponent_seq(p)
    s = st_gram(p)
    e = euler_gram(p, orientation)
    bad = []
    for a in range(len(s.labels)):
        for b in range(a, len(s.labels)):
            if s.entry(a, b) != e.entry(a, b):
                bad.append((s.labels[a], s.labels[b], s.entry(a, b), e.entry(a, b)))
    return LatticeComparison(
        labels=s.labels, st=s, euler=e, disagreements=tuple(bad)
    )
