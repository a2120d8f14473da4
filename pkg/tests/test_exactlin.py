"""Exact linear algebra: cross-checks against independently coded oracles."""

from fractions import Fraction
from itertools import permutations
import random

import pytest

from bpsing.exactlin import (
    Cohomology,
    ComplexError,
    IntMatrix,
    RatMatrix,
    complex_cohomology,
    det,
    integer_kernel,
    invariant_factors,
    rank_kernel,
    rref,
    smith_normal_form,
    solve,
    solve_integer,
    solve_mod2,
)


def bareiss_rank(entries):
    """Rank via fraction-free Bareiss elimination, written from scratch."""
    m = [list(map(int, row)) for row in entries]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(rows):
            if i == r:
                continue
            for j in range(cols):
                if j == c:
                    continue
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
    return r


def det_by_permutations(entries):
    n = len(entries)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        # count inversions for the sign
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if seen[i] > seen[j])
        sign = -1 if inv % 2 else 1
        prod = Fraction(1)
        for i in range(n):
            prod *= Fraction(entries[i][perm[i]])
        total += sign * prod
    return total


def random_int_matrix(rng, rows, cols, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def test_rank_matches_bareiss_on_random_matrices():
    rng = random.Random(318)
    for _ in range(100):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 7)
        entries = random_int_matrix(rng, rows, cols)
        M = RatMatrix(entries)
        rank, kernel = rank_kernel(M)
        assert rank == bareiss_rank(entries)
        assert rank + len(kernel) == cols
        for v in kernel:
            assert all(x == 0 for x in M.apply(v))
        if kernel:
            stacked = RatMatrix([list(v) for v in kernel], cols=cols)
            assert rank_kernel(stacked)[0] == len(kernel)


def test_rref_shape_and_row_space():
    rng = random.Random(55)
    for _ in range(40):
        entries = random_int_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
        M = RatMatrix(entries)
        R, pivots = rref(M)
        assert list(pivots) == sorted(pivots)
        for r, c in enumerate(pivots):
            assert R.entries[r][c] == 1
            assert all(R.entries[i][c] == 0 for i in range(R.rows) if i != r)
        for r in range(len(pivots), R.rows):
            assert all(x == 0 for x in R.entries[r])
        stacked = RatMatrix([list(row) for row in M.entries] + [list(row) for row in R.entries],
                            cols=M.cols)
        assert rank_kernel(stacked)[0] == len(pivots)


def test_solve_on_constructed_systems():
    rng = random.Random(99)
    for _ in range(40):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        M = RatMatrix(random_int_matrix(rng, rows, cols))
        x = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(cols)]
        b = M.apply(x)
        got = solve(M, b)
        assert got is not None
        assert M.apply(got) == tuple(b)


def test_solve_detects_inconsistency():
    M = RatMatrix([[1], [0]])
    assert solve(M, (0, 1)) is None
    assert solve(M, (3, 0)) == (Fraction(3),)


def test_det_against_permutation_expansion():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 4)
        entries = random_int_matrix(rng, n, n, bound=5)
        assert det(RatMatrix(entries)) == det_by_permutations(entries)
    A = RatMatrix(random_int_matrix(rng, 4, 4, bound=3))
    B = RatMatrix(random_int_matrix(rng, 4, 4, bound=3))
    assert det(A @ B) == det(A) * det(B)


def test_matrix_arithmetic_guards():
    A = RatMatrix([[1, 2], [3, 4]])
    B = RatMatrix([[1], [1]])
    assert (A @ B).entries == ((Fraction(3),), (Fraction(7),))
    with pytest.raises(ValueError):
        A @ RatMatrix([[1, 2]])
    with pytest.raises(ValueError):
        A + B
    assert (A + A).entries == ((2, 4), (6, 8))
    assert RatMatrix.identity(2) @ A == A


def test_smith_normal_form_properties():
    rng = random.Random(4242)
    for _ in range(60):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        M = IntMatrix(random_int_matrix(rng, rows, cols))
        D, U, V = smith_normal_form(M)
        assert U @ M @ V == D
        for i in range(D.rows):
            for j in range(D.cols):
                if i != j:
                    assert D.entries[i][j] == 0
        diag = [D.entries[i][i] for i in range(min(rows, cols))]
        assert all(x >= 0 for x in diag)
        for a, b in zip(diag, diag[1:]):
            if b != 0:
                assert a != 0 and b % a == 0
        assert abs(det(U.to_rational())) == 1
        assert abs(det(V.to_rational())) == 1


def test_invariant_factors_known_values():
    assert invariant_factors(IntMatrix([[2, 0], [0, 3]])) == (1, 6)
    assert invariant_factors(IntMatrix([[4, 0], [0, 6]])) == (2, 12)
    assert invariant_factors(IntMatrix.zeros(2, 3)) == ()


def test_integer_kernel_is_saturated():
    rng = random.Random(606)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 5)
        M = IntMatrix(random_int_matrix(rng, rows, cols, bound=6))
        basis = integer_kernel(M)
        rank = rank_kernel(M.to_rational())[0]
        assert len(basis) == cols - rank
        for v in basis:
            assert all(sum(M.entries[i][j] * v[j] for j in range(cols)) == 0
                       for i in range(rows))
        if basis:
            # a saturated lattice has a basis with all invariant factors 1
            assert set(invariant_factors(IntMatrix([list(v) for v in basis], cols=cols))) == {1}


def test_solve_integer_round_trip_and_failure():
    rng = random.Random(777)
    for _ in range(40):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        M = IntMatrix(random_int_matrix(rng, rows, cols, bound=6))
        x = [rng.randint(-4, 4) for _ in range(cols)]
        b = [sum(M.entries[i][j] * x[j] for j in range(cols)) for i in range(rows)]
        got = solve_integer(M, b)
        assert got is not None
        assert [sum(M.entries[i][j] * got[j] for j in range(cols)) for i in range(rows)] == b
    assert solve_integer(IntMatrix([[2]]), (1,)) is None
    assert solve_integer(IntMatrix([[1], [0]]), (0, 1)) is None


def test_solve_mod2_round_trip_and_failure():
    rng = random.Random(1313)
    for _ in range(60):
        nvars = rng.randint(1, 10)
        nrows = rng.randint(1, 8)
        rows = [rng.getrandbits(nvars) for _ in range(nrows)]
        xmask = rng.getrandbits(nvars)
        rhs = [bin(r & xmask).count("1") % 2 for r in rows]
        got = solve_mod2(rows, rhs, nvars)
        assert got is not None
        gmask = sum(bit << i for i, bit in enumerate(got))
        assert [bin(r & gmask).count("1") % 2 for r in rows] == rhs
    assert solve_mod2([0b1, 0b1], [0, 1], 1) is None


def test_cohomology_of_zero_differentials():
    coh = complex_cohomology(RatMatrix.zeros(2, 0), RatMatrix.zeros(3, 2))
    assert coh.dim == 2
    assert coh.coordinates((3, 5)) == (Fraction(3), Fraction(5))


def test_cohomology_of_exact_position_vanishes():
    d_in = RatMatrix([[1], [0]])
    d_out = RatMatrix([[0, 1]])
    coh = complex_cohomology(d_in, d_out)
    assert coh.dim == 0
    assert coh.representatives == ()


def test_cohomology_quotients_by_the_image():
    d_in = RatMatrix([[1], [0]])
    d_out = RatMatrix.zeros(0, 2)
    coh = complex_cohomology(d_in, d_out)
    assert coh.dim == 1
    # the class of 7*e1 + 4*e2 only sees the e2 component
    assert coh.coordinates((7, 4)) == (Fraction(4),)
    assert isinstance(coh, Cohomology)


def test_cohomology_rejects_non_complexes():
    with pytest.raises(ComplexError):
        complex_cohomology(RatMatrix([[1], [0]]), RatMatrix([[1, 0]]))
