"""Graded modules and Ext computations over Brieskorn-Pham hypersurface rings.

The ring is A = Q[x_1, ..., x_n] / (x_1^{p_1} + ... + x_n^{p_n}), graded by
the group built in :mod:`bpsing.grading`.  Monomials are kept in the normal
form e_1 < p_1 through the rewrite

    x_1^{p_1}  ->  -(x_2^{p_2} + ... + x_n^{p_n}),

a one-rule reduction that is confluent because the defining polynomial is
monic in x_1.  On top of the ring sit a two-periodic free resolution of the
residue field assembled from differential forms, graded Ext computations for
twisted residue fields and twisted free modules, truncated polynomial modules
with their short exact sequences, and a Koszul perfectness certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .dgcat import a_category
from .exactlin import ComplexError, RatMatrix, rank_kernel, rref, solve
from .grading import LDegree, LGroup, exponent_seq

Monomial = tuple[int, ...]
Poly = dict[Monomial, Fraction]


def monomial_label(mono: Monomial) -> str:
    parts = []
    for t, e in enumerate(mono, start=1):
        if e == 1:
            parts.append(f"x{t}")
        elif e > 1:
            parts.append(f"x{t}^{e}")
    return "*".join(parts) if parts else "1"


class GradedRing:
    """Polynomial arithmetic in the quotient ring with graded-piece bases."""

    __slots__ = ("p", "n", "L")

    def __init__(self, p: Iterable[int]):
        self.p = exponent_seq(p)
        self.n = len(self.p)
        self.L = LGroup(self.p)

    def __repr__(self) -> str:
        return f"GradedRing({self.p})"

    # -- polynomial arithmetic -----------------------------------------

    def reduce(self, poly: Poly) -> Poly:
        """Rewrite into the monomial basis with e_1 < p_1, dropping zeros."""
        out: Poly = {}
        work = [(tuple(m), Fraction(c)) for m, c in poly.items()]
        while work:
            mono, coeff = work.pop()
            if not coeff:
                continue
            if mono[0] >= self.p[0]:
                # x_1^{p_1} = -(x_2^{p_2} + ... + x_n^{p_n}); empty sum if n = 1
                base = (mono[0] - self.p[0],) + mono[1:]
                for i in range(1, self.n):
                    lifted = base[:i] + (base[i] + self.p[i],) + base[i + 1 :]
                    work.append((lifted, -coeff))
                continue
            acc = out.get(mono, Fraction(0)) + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return out

    def multiply(self, f: Poly, g: Poly) -> Poly:
        prod: Poly = {}
        for m1, c1 in f.items():
            for m2, c2 in g.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                prod[m] = prod.get(m, Fraction(0)) + c1 * c2
        return self.reduce(prod)

    def monomial(self, exponents: Sequence[int], coeff=1) -> Poly:
        mono = tuple(int(e) for e in exponents)
        if len(mono) != self.n or any(e < 0 for e in mono):
            raise ValueError("bad exponent vector")
        return self.reduce({mono: Fraction(coeff)})

    def variable(self, i: int, power: int = 1) -> Poly:
        """x_i^power, with i 1-indexed."""
        return self.monomial(tuple(power * int(j == i - 1) for j in range(self.n)))

    # -- grading --------------------------------------------------------

    def monomial_degree(self, mono: Monomial) -> LDegree:
        return self.L.normalize(tuple(mono) + (0,))

    def poly_degree(self, poly: Poly) -> LDegree | None:
        """Common degree of all terms; None for the zero polynomial."""
        degs = {self.monomial_degree(m) for m in poly}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("inhomogeneous polynomial")
        return degs.pop()

    def sort_key(self, d: LDegree):
        return (self.L.z_degree(d), d.raw())

    def monomials_of_weight(self, z: int) -> tuple[Monomial, ...]:
        """All normal-form monomials of z-degree z, in lex order."""
        if z < 0:
            return ()
        found: list[Monomial] = []

        def rec(i: int, remaining: int, prefix: tuple[int, ...]) -> None:
            if i == self.n:
                if remaining == 0:
                    found.append(prefix)
                return
            w = self.L.weights[i]
            top = remaining // w
            if i == 0:
                top = min(top, self.p[0] - 1)
            for e in range(top + 1):
                rec(i + 1, remaining - e * w, prefix + (e,))

        rec(0, z, ())
        return tuple(found)

    def piece(self, d: LDegree) -> tuple[Monomial, ...]:
        """Monomial basis of the graded piece at degree d."""
        z = self.L.z_degree(d)
        return tuple(
            m for m in self.monomials_of_weight(z) if self.monomial_degree(m) == d
        )


def ring_piece(ring: GradedRing, d: LDegree) -> tuple[Monomial, ...]:
    """Monomial basis of the ring piece at d, as exponent vectors in lex order."""
    return ring.piece(d)


class FreeComplex:
    """Bounded-above complex of free graded modules over a GradedRing.

    ``terms`` maps cohomological degree i <= 0 to the generator degrees of
    the i-th term; ``diffs[i]`` is the matrix of the map from level i to
    level i + 1, rows indexed by target generators, entries polynomials.  A
    degree-zero map between shifts multiplies by an element of degree
    (source generator degree) - (target generator degree).  Nothing is
    verified at construction so that broken fixtures can be built and then
    inspected with validate_resolution.
    """

    __slots__ = ("ring", "terms", "diffs", "labels")

    def __init__(self, ring: GradedRing, terms, diffs, labels=None):
        self.ring = ring
        self.terms = {int(i): tuple(degs) for i, degs in terms.items()}
        self.diffs = {
            int(i): tuple(tuple(ring.reduce(dict(e)) for e in row) for row in mat)
            for i, mat in diffs.items()
        }
        self.labels = (
            None if labels is None else {int(i): tuple(v) for i, v in labels.items()}
        )
        for i, mat in self.diffs.items():
            rows = len(self.terms.get(i + 1, ()))
            cols = len(self.terms.get(i, ()))
            if len(mat) != rows or any(len(r) != cols for r in mat):
                raise ValueError(f"differential at level {i} has wrong shape")

    def levels(self) -> tuple[int, ...]:
        return tuple(sorted(self.terms))

    def rank(self, i: int) -> int:
        return len(self.terms.get(i, ()))

    def generator_degrees(self, i: int) -> tuple[LDegree, ...]:
        return self.terms.get(i, ())

    def differential(self, i: int):
        mat = self.diffs.get(i)
        if mat is not None:
            return mat
        return tuple(tuple({} for _ in range(self.rank(i))) for _ in range(self.rank(i + 1)))

    # -- symbolic checks -------------------------------------------------

    def homogeneity_violations(self) -> tuple[str, ...]:
        bad = []
        L = self.ring.L
        for i in sorted(self.diffs):
            src = self.terms.get(i, ())
            tgt = self.terms.get(i + 1, ())
            for r, row in enumerate(self.diffs[i]):
                for c, entry in enumerate(row):
                    want = L.sub(src[c], tgt[r])
                    for mono in entry:
                        if self.ring.monomial_degree(mono) != want:
                            bad.append(f"entry ({i},{r},{c}) has a term of wrong degree")
                            break
        return tuple(bad)

    def square_defects(self) -> tuple[str, ...]:
        """Positions where the composite of consecutive maps is not zero."""
        bad = []
        for i in sorted(self.diffs):
            upper = self.diffs.get(i + 1)
            if upper is None:
                continue
            lower = self.diffs[i]
            for r in range(len(upper)):
                for c in range(len(lower[0]) if lower else 0):
                    acc: Poly = {}
                    for k in range(len(lower)):
                        for m, co in self.ring.multiply(upper[r][k], lower[k][c]).items():
                            acc[m] = acc.get(m, Fraction(0)) + co
                    if any(acc.values()):
                        bad.append(f"square at level {i} nonzero at ({r},{c})")
        return tuple(bad)

    # -- graded pieces ---------------------------------------------------

    def piece_basis(self, i: int, d: LDegree) -> tuple[tuple[int, Monomial], ...]:
        """Basis of the level-i piece at degree d: (generator index, monomial)."""
        out = []
        for c, g in enumerate(self.terms.get(i, ())):
            for mono in self.ring.piece(self.ring.L.sub(d, g)):
                out.append((c, mono))
        return tuple(out)

    def piece_matrix(self, i: int, d: LDegree) -> RatMatrix:
        """Matrix of the level-i map on the degree-d pieces."""
        src = self.piece_basis(i, d)
        tgt = self.piece_basis(i + 1, d)
        index = {bm: r for r, bm in enumerate(tgt)}
        mat = self.differential(i)
        entries = [[Fraction(0)] * len(src) for _ in tgt]
        for cidx, (c, mono) in enumerate(src):
            for r in range(len(mat)):
                for m2, co in self.ring.multiply(mat[r][c], {mono: Fraction(1)}).items():
                    ridx = index.get((r, m2))
                    if ridx is None:
                        raise ComplexError("differential is not degree homogeneous")
                    entries[ridx][cidx] += co
        return RatMatrix(entries, cols=len(src))


def resolution_generators(n: int, i: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Generators (I, j) with |I| + 2j = i of the i-th resolution term.

    I is a subset of {1..n} naming a form dx_I and j counts tensor factors
    absorbed by the wedge part of the differential; listed with j ascending
    and I lex within each j.
    """
    if i < 0:
        raise ValueError("term index must be nonnegative")
    gens = []
    for j in range(i // 2 + 1):
        size = i - 2 * j
        if size > n:
            continue
        for I in combinations(range(1, n + 1), size):
            gens.append((I, j))
    return tuple(gens)


def _generator_degree(L: LGroup, n: int, I: tuple[int, ...], j: int) -> LDegree:
    return L.combination(tuple(int(t in I) for t in range(1, n + 1)) + (j,))


def bp_resolution(p: Iterable[int], length: int) -> FreeComplex:
    """Free resolution of the residue field over GradedRing(p).

    Level -i has one generator dx_I|j per pair with |I| + 2j = i, of degree
    sum(x_t, t in I) + j c.  The differential contracts against the Euler
    vector field (terms +-x_t) and wedges with the one-form
    sum x_t^{p_t - 1} dx_t whose Euler pairing is the defining polynomial;
    the cross terms of the square multiply by that polynomial, hence vanish
    in the quotient.
    """
    if not isinstance(length, int) or isinstance(length, bool) or length < 1:
        raise ValueError("length must be a positive integer")
    ring = GradedRing(p)
    L, n = ring.L, ring.n
    terms: dict[int, tuple[LDegree, ...]] = {}
    labels: dict[int, tuple[str, ...]] = {}
    gens: dict[int, tuple] = {}
    for i in range(length + 1):
        gs = resolution_generators(n, i)
        gens[-i] = gs
        terms[-i] = tuple(_generator_degree(L, n, I, j) for I, j in gs)
        labels[-i] = tuple(
            ("^".join(f"dx{t}" for t in I) if I else "1") + f"|{j}" for I, j in gs
        )
    diffs: dict[int, list[list[Poly]]] = {}
    for i in range(1, length + 1):
        src = gens[-i]
        pos = {g: r for r, g in enumerate(gens[-i + 1])}
        mat: list[list[Poly]] = [[{} for _ in src] for _ in gens[-i + 1]]
        for cidx, (I, j) in enumerate(src):
            for r_pos, t in enumerate(I):
                entry = mat[pos[(tuple(s for s in I if s != t), j)]][cidx]
                mono = tuple(int(u == t) for u in range(1, n + 1))
                entry[mono] = entry.get(mono, Fraction(0)) + Fraction((-1) ** r_pos)
            if j >= 1:
                for t in range(1, n + 1):
                    if t in I:
                        continue
                    before = sum(1 for s in I if s < t)
                    entry = mat[pos[(tuple(sorted(I + (t,))), j - 1)]][cidx]
                    mono = tuple((ring.p[t - 1] - 1) * int(u == t) for u in range(1, n + 1))
                    entry[mono] = entry.get(mono, Fraction(0)) + Fraction((-1) ** before)
        diffs[-i] = mat
    return FreeComplex(ring, terms, diffs, labels=labels)


def _support_degrees(cplx: FreeComplex, window: int) -> list[LDegree]:
    """Degrees of z-degree <= window where some term has a nonzero piece."""
    ring = cplx.ring
    L = ring.L
    by_weight = {z: ring.monomials_of_weight(z) for z in range(window + 1)}
    seen = set()
    for i in cplx.levels():
        for g in cplx.generator_degrees(i):
            zg = L.z_degree(g)
            for z in range(max(0, -zg), window - zg + 1):
                for mono in by_weight[z]:
                    seen.add(L.add(g, ring.monomial_degree(mono)))
    return sorted(seen, key=ring.sort_key)


@dataclass(frozen=True)
class ResolutionReport:
    """Outcome of certifying a complex as a resolution of the residue field."""

    ok: bool
    square_zero: bool
    homogeneous: bool
    degrees_checked: int
    failures: tuple[str, ...]


def validate_resolution(cplx: FreeComplex, window: int) -> ResolutionReport:
    """Certify a complex as a residue-field resolution inside a z-window.

    First the symbolic checks: square zero and entry homogeneity.  Then per
    graded piece of z-degree <= window: exactness at every interior level,
    and the cokernel of the last map of dimension one in degree zero and
    zero elsewhere.  The leftmost level has no incoming map to compare
    against, so no kernel condition is imposed there.
    """
    failures: list[str] = []
    hom_bad = cplx.homogeneity_violations()
    failures.extend(hom_bad)
    sq_bad = cplx.square_defects()
    failures.extend(sq_bad)
    count = 0
    if not failures:
        zero = cplx.ring.L.zero()
        low = min(cplx.levels())
        degrees = _support_degrees(cplx, window)
        count = len(degrees)
        for d in degrees:
            info = {i: rank_kernel(cplx.piece_matrix(i, d)) for i in range(low, 0)}
            for i in range(low + 1, 0):
                if len(info[i][1]) != info[i - 1][0]:
                    failures.append(f"not exact at level {i} in degree {d.raw()}")
            top_rank = info[-1][0] if -1 in info else 0
            h0 = len(cplx.piece_basis(0, d)) - top_rank
            want = 1 if d == zero else 0
            if h0 != want:
                failures.append(f"cokernel dimension {h0} != {want} in degree {d.raw()}")
    return ResolutionReport(
        ok=not failures,
        square_zero=not sq_bad,
        homogeneous=not hom_bad,
        degrees_checked=count,
        failures=tuple(failures),
    )


def ext_k_k(p: Iterable[int], m: LDegree, n: LDegree) -> dict[int, int]:
    """Graded Ext dims between the twisted residue fields at m and n.

    Every entry of the resolution differential lies in the maximal ideal,
    so the induced complex on Hom(-, residue field) has zero differential
    and the i-th Ext dimension counts level-i generators of degree m - n.
    Generator z-degrees grow linearly with the level, which bounds the
    levels that can contribute.
    """
    ring = GradedRing(p)
    L = ring.L
    target = L.sub(L.normalize(m.raw()), L.normalize(n.raw()))
    dims: dict[int, int] = {}
    zt = L.z_degree(target)
    if zt < 0:
        return dims
    top = ring.n + 2 * (zt // L.ell) + 2
    for i in range(top + 1):
        count = sum(
            1
            for I, j in resolution_generators(ring.n, i)
            if _generator_degree(L, ring.n, I, j) == target
        )
        if count:
            dims[i] = count
    return dims


def index_set(p: Iterable[int]) -> list[LDegree]:
    """The twists sum(a_i x_i) with -p_i + 2 <= a_i <= 0, lex ordered.

    These are prod(p_i - 1) pairwise distinct degrees; the coefficient
    boxes run in descending lex order, so the zero twist comes first.
    """
    L = LGroup(exponent_seq(p))
    ranges = [range(0, -pi + 1, -1) for pi in L.p]
    return [L.combination(tuple(coords) + (0,)) for coords in product(*ranges)]


def _box_coordinates(L: LGroup, d: LDegree) -> tuple[int, ...]:
    """Recover coefficients a_i with -p_i + 2 <= a_i <= 0 from a normal form."""
    coords = []
    negatives = 0
    for ai, pi in zip(d.a, L.p):
        if ai == 0:
            coords.append(0)
        elif ai >= 2:
            coords.append(ai - pi)
            negatives += 1
        else:
            # a normalized coefficient 1 cannot arise from the stated range
            raise ValueError("degree outside the index set")
    if d.b != -negatives:
        raise ValueError("degree outside the index set")
    return tuple(coords)


def ext_formula(p: Iterable[int], m: LDegree, n: LDegree) -> dict[int, int]:
    """Product formula for Ext dims between index-set twists.

    Factorizes along the axes: the i-th factor is the graded hom of the
    linear quiver with p_i - 1 objects, taken between objects -a_i + 1 and
    -b_i + 1, and the result is the convolution of the factors.  Twists
    outside the index set are rejected.
    """
    L = LGroup(exponent_seq(p))
    a = _box_coordinates(L, L.normalize(m.raw()))
    b = _box_coordinates(L, L.normalize(n.raw()))
    dims = {0: 1}
    for ai, bi, pi in zip(a, b, L.p):
        factor = a_category(pi - 1).graded_dims(-ai, -bi)
        nxt: dict[int, int] = {}
        for d1, c1 in dims.items():
            for d2, c2 in factor.items():
                nxt[d1 + d2] = nxt.get(d1 + d2, 0) + c1 * c2
        dims = nxt
        if not dims:
            break
    return dims


@dataclass(frozen=True, eq=False)
class ExtRingReport:
    """Ext dims from a twisted residue field into a twisted free module."""

    dims: dict[int, int]
    window: int
    hypothesis_holds: bool


def ext_k_ring(p: Iterable[int], m: LDegree, n: LDegree, window: int) -> ExtRingReport:
    """Cohomology of the dualized resolution against a twisted free module.

    Applies Hom(-, A(n)) to the resolution of the residue field twisted by
    m and takes the internal-degree-zero part: the term in cohomological
    degree i is the sum over level-i generators g of the ring piece in
    degree n + deg(g) - m.  Dims are reported for 0 <= i <= window together
    with whether the vanishing hypothesis m != -c + x_1 + ... + x_n + n
    holds.
    """
    if not isinstance(window, int) or isinstance(window, bool) or window < 0:
        raise ValueError("window must be a nonnegative integer")
    cplx = bp_resolution(p, window + 1)
    ring = cplx.ring
    L = ring.L
    mm = L.normalize(m.raw())
    nn = L.normalize(n.raw())
    shift = L.sub(nn, mm)
    basis: dict[int, tuple] = {}
    for i in range(window + 2):
        basis[i] = tuple(
            (gidx, mono)
            for gidx, g in enumerate(cplx.generator_degrees(-i))
            for mono in ring.piece(L.add(shift, g))
        )
    mats: dict[int, RatMatrix] = {}
    for i in range(window + 1):
        src, tgt = basis[i], basis[i + 1]
        delta = cplx.differential(-i - 1)
        index = {bm: r for r, bm in enumerate(tgt)}
        entries = [[Fraction(0)] * len(src) for _ in tgt]
        for cidx, (g, mono) in enumerate(src):
            for h in range(cplx.rank(-i - 1)):
                for m2, co in ring.multiply(delta[g][h], {mono: Fraction(1)}).items():
                    entries[index[(h, m2)]][cidx] += co
        mats[i] = RatMatrix(entries, cols=len(src))
    dims: dict[int, int] = {}
    for i in range(window + 1):
        incoming = rank_kernel(mats[i - 1])[0] if i > 0 else 0
        dim = len(rank_kernel(mats[i])[1]) - incoming
        if dim:
            dims[i] = dim
    special = L.add(L.combination((1,) * ring.n + (-1,)), nn)
    return ExtRingReport(dims=dims, window=window, hypothesis_holds=mm != special)


class GradedModule:
    """Finitely supported graded module given by piece bases and actions.

    ``basis`` maps a degree to a tuple of basis labels; ``action[(t, d)]``
    is the matrix of multiplication by x_t from the piece at d to the piece
    at d + x_t.  Missing entries mean the zero map.
    """

    __slots__ = ("ring", "basis", "action")

    def __init__(self, ring: GradedRing, basis, action):
        self.ring = ring
        self.basis = {d: tuple(labels) for d, labels in basis.items() if labels}
        self.action: dict[tuple[int, LDegree], RatMatrix] = {}
        for (t, d), mat in action.items():
            mat = mat if isinstance(mat, RatMatrix) else RatMatrix(mat)
            if not mat.is_zero():
                self.action[(int(t), d)] = mat

    def degrees(self) -> list[LDegree]:
        return sorted(self.basis, key=self.ring.sort_key)

    def dim(self, d: LDegree) -> int:
        return len(self.basis.get(d, ()))

    def act(self, t: int, d: LDegree) -> RatMatrix:
        mat = self.action.get((t, d))
        if mat is not None:
            return mat
        L = self.ring.L
        return RatMatrix.zeros(self.dim(L.add(d, L.x(t))), self.dim(d))

    def validate(self) -> tuple[str, ...]:
        """Shape, commutation, and defining-relation checks."""
        L = self.ring.L
        bad = []
        for (t, d), mat in self.action.items():
            if mat.rows != self.dim(L.add(d, L.x(t))) or mat.cols != self.dim(d):
                bad.append(f"action of x_{t} at {d.raw()} has wrong shape")
        if bad:
            return tuple(bad)
        for d in self.degrees():
            for s in range(1, self.ring.n + 1):
                for t in range(s + 1, self.ring.n + 1):
                    left = self.act(t, L.add(d, L.x(s))) @ self.act(s, d)
                    right = self.act(s, L.add(d, L.x(t))) @ self.act(t, d)
                    if left != right:
                        bad.append(f"x_{s} and x_{t} do not commute at {d.raw()}")
            # the defining polynomial sum(x_t^{p_t}) must act by zero
            total = None
            for t in range(1, self.ring.n + 1):
                mat = None
                cur = d
                for _ in range(self.ring.p[t - 1]):
                    step = self.act(t, cur)
                    mat = step if mat is None else step @ mat
                    cur = L.add(cur, L.x(t))
                total = mat if total is None else total + mat
            if total is not None and not total.is_zero():
                bad.append(f"defining relation fails at {d.raw()}")
        return tuple(bad)


class ModuleMap:
    """Degree-zero module map, one matrix per degree (missing = zero)."""

    __slots__ = ("src", "tgt", "mats")

    def __init__(self, src: GradedModule, tgt: GradedModule, mats):
        self.src = src
        self.tgt = tgt
        self.mats: dict[LDegree, RatMatrix] = {}
        for d, mat in mats.items():
            mat = mat if isinstance(mat, RatMatrix) else RatMatrix(mat)
            if not mat.is_zero():
                self.mats[d] = mat

    def at(self, d: LDegree) -> RatMatrix:
        mat = self.mats.get(d)
        if mat is not None:
            return mat
        return RatMatrix.zeros(self.tgt.dim(d), self.src.dim(d))

    def validate(self) -> tuple[str, ...]:
        bad = []
        for d, mat in self.mats.items():
            if mat.rows != self.tgt.dim(d) or mat.cols != self.src.dim(d):
                bad.append(f"matrix at {d.raw()} has wrong shape")
        if bad:
            return tuple(bad)
        ring = self.src.ring
        L = ring.L
        for d in sorted(set(self.src.basis) | set(self.tgt.basis), key=ring.sort_key):
            for t in range(1, ring.n + 1):
                up = L.add(d, L.x(t))
                if self.at(up) @ self.src.act(t, d) != self.tgt.act(t, d) @ self.at(d):
                    bad.append(f"does not intertwine x_{t} at {d.raw()}")
        return tuple(bad)


@dataclass(frozen=True)
class SequenceReport:
    """Per-degree exactness verdict for a short-exact-sequence candidate."""

    ok: bool
    degrees_checked: int
    first_failure: tuple[int, ...] | None
    failures: tuple[str, ...]
    iso_ok: bool | None = None


def exact_sequence_check(incl: ModuleMap, proj: ModuleMap) -> SequenceReport:
    """Verify 0 -> src -> mid -> quo -> 0 degree by degree.

    Both maps are validated as module maps first; each degree is then
    checked for injectivity, surjectivity, zero composite, and kernel equal
    to image.  Failures carry the offending degree, and the first one in
    z-degree order is singled out.
    """
    failures = list(incl.validate())
    failures.extend(proj.validate())
    if incl.tgt is not proj.src and incl.tgt.basis != proj.src.basis:
        failures.append("middle modules do not match")
    first = None
    count = 0
    if not failures:
        ring = incl.src.ring
        degrees = sorted(
            set(incl.src.basis) | set(incl.tgt.basis) | set(proj.tgt.basis),
            key=ring.sort_key,
        )
        count = len(degrees)
        for d in degrees:
            a = incl.at(d)
            b = proj.at(d)
            rank_a, kern_a = rank_kernel(a)
            rank_b, kern_b = rank_kernel(b)
            bad_here = []
            if kern_a:
                bad_here.append("inclusion not injective")
            if rank_b != proj.tgt.dim(d):
                bad_here.append("projection not surjective")
            if a.cols and b.rows and not (b @ a).is_zero():
                bad_here.append("composite not zero")
            if len(kern_b) != rank_a:
                bad_here.append("kernel does not match image")
            failures.extend(f"{msg} in degree {d.raw()}" for msg in bad_here)
            if bad_here and first is None:
                first = d.raw()
    return SequenceReport(
        ok=not failures, degrees_checked=count, first_failure=first,
        failures=tuple(failures),
    )


def truncated_module(
    ring: GradedRing, axis: int, j: int, twist: LDegree | None = None
) -> GradedModule:
    """The module k[x_axis]/(x_axis^j), optionally twisted.

    Basis x_axis^s for s < j; x_axis shifts the exponent, the other
    variables act by zero.  With twist w the basis element x^s sits in
    degree s x_axis - w, matching the convention M(w)_d = M_{w + d}.
    """
    if not 1 <= axis <= ring.n:
        raise ValueError("axis out of range")
    if not 1 <= j <= ring.p[axis - 1]:
        raise ValueError("truncation order out of range")
    L = ring.L
    w = L.zero() if twist is None else L.normalize(twist.raw())
    xa = L.x(axis)
    degs = [L.sub(L.scale(s, xa), w) for s in range(j)]
    basis = {d: (f"x{axis}^{s}",) for s, d in enumerate(degs)}
    action = {
        (axis, degs[s]): RatMatrix(((Fraction(1),),)) for s in range(j - 1)
    }
    return GradedModule(ring, basis, action)


def quotient_by_variables(
    ring: GradedRing, killed: Sequence[int], window: int
) -> GradedModule:
    """The ring modulo the ideal generated by the listed variables.

    Pieces are computed by linear algebra: the degree-d part of the ideal
    is spanned by the reduced products x_t m over killed t, and a quotient
    basis is read off from the non-pivot monomials.  Actions are induced on
    the chosen coset representatives.  Degrees are scanned up to z-degree
    window.
    """
    L = ring.L
    killed = tuple(sorted({int(t) for t in killed}))
    if any(not 1 <= t <= ring.n for t in killed):
        raise ValueError("killed variable out of range")
    degrees: list[LDegree] = []
    seen = set()
    for z in range(window + 1):
        for mono in ring.monomials_of_weight(z):
            d = ring.monomial_degree(mono)
            if d not in seen:
                seen.add(d)
                degrees.append(d)
    degrees.sort(key=ring.sort_key)

    piece_data = {}
    for d in degrees:
        monos = ring.piece(d)
        pos = {m: i for i, m in enumerate(monos)}
        rows = []
        for t in killed:
            for m in ring.piece(L.sub(d, L.x(t))):
                vec = [Fraction(0)] * len(monos)
                for m2, co in ring.multiply(ring.variable(t), {m: Fraction(1)}).items():
                    vec[pos[m2]] += co
                rows.append(vec)
        if rows:
            reduced, pivots = rref(RatMatrix(rows, cols=len(monos)))
            basis_rows = [list(reduced.entries[r]) for r in range(len(pivots))]
            pivot_set = set(pivots)
        else:
            basis_rows = []
            pivot_set = set()
        free = tuple(i for i in range(len(monos)) if i not in pivot_set)
        cols = basis_rows + [
            [Fraction(int(i == f)) for i in range(len(monos))] for f in free
        ]
        solver = RatMatrix(
            [[cols[c][r] for c in range(len(cols))] for r in range(len(monos))],
            cols=len(cols),
        )
        piece_data[d] = (monos, pos, free, solver, len(basis_rows))

    basis = {
        d: tuple(monomial_label(piece_data[d][0][f]) for f in piece_data[d][2])
        for d in degrees
    }
    action = {}
    for d in degrees:
        monos, pos, free, solver, rank = piece_data[d]
        if not free:
            continue
        for t in range(1, ring.n + 1):
            up = L.add(d, L.x(t))
            if up not in piece_data:
                continue
            u_monos, u_pos, u_free, u_solver, u_rank = piece_data[up]
            if not u_free:
                continue
            cols = []
            for f in free:
                vec = [Fraction(0)] * len(u_monos)
                for m2, co in ring.multiply(
                    ring.variable(t), {monos[f]: Fraction(1)}
                ).items():
                    vec[u_pos[m2]] += co
                sol = solve(u_solver, vec)
                assert sol is not None
                cols.append([sol[u_rank + r] for r in range(len(u_free))])
            action[(t, d)] = RatMatrix(
                [[cols[c][r] for c in range(len(free))] for r in range(len(u_free))],
                cols=len(free),
            )
    return GradedModule(ring, basis, action)


def graded_module_iso(M: GradedModule, N: GradedModule) -> bool:
    """Existence of a degree-preserving module isomorphism.

    Restricted to modules whose pieces have dimension at most one: any
    candidate isomorphism is a family of nonzero scalars, so the actions
    must share their vanishing pattern and the scalars propagate along the
    nonzero ones.  Each connected component is seeded with 1 and conflicts
    answer no.
    """
    ring = M.ring
    L = ring.L
    degrees = sorted(set(M.basis) | set(N.basis), key=ring.sort_key)
    for d in degrees:
        if M.dim(d) != N.dim(d):
            return False
        if M.dim(d) > 1:
            raise ValueError("scalar propagation needs pieces of dimension at most one")
    support = [d for d in degrees if M.dim(d) == 1]

    def scalar(mat: RatMatrix) -> Fraction:
        return mat.entries[0][0] if mat.rows == 1 and mat.cols == 1 else Fraction(0)

    edges = []
    for d in support:
        for t in range(1, ring.n + 1):
            ms = scalar(M.act(t, d))
            ns = scalar(N.act(t, d))
            if (ms == 0) != (ns == 0):
                return False
            if ms != 0:
                edges.append((d, L.add(d, L.x(t)), ns / ms))

    lam: dict[LDegree, Fraction] = {}
    remaining = set(support)
    while remaining:
        seed = min(remaining, key=ring.sort_key)
        lam[seed] = Fraction(1)
        remaining.discard(seed)
        changed = True
        while changed:
            changed = False
            for d, up, ratio in edges:
                if d in lam and up not in lam:
                    lam[up] = lam[d] * ratio
                    remaining.discard(up)
                    changed = True
                elif up in lam and d not in lam:
                    lam[d] = lam[up] / ratio
                    remaining.discard(d)
                    changed = True
                elif d in lam and up in lam and lam[up] != lam[d] * ratio:
                    return False
    return True


def lemma_k_check(p: Iterable[int], axis: int, j: int, window: int) -> SequenceReport:
    """Check 0 -> k(-(j-1) x_axis) -> k[x]/(x^j) -> k[x]/(x^{j-1}) -> 0.

    The inclusion hits the top power x^{j-1} and the projection discards
    it.  For j = p_axis the middle module is additionally compared with the
    quotient of the ring by the other variables, identifying it with a
    module that has a finite free resolution.
    """
    ring = GradedRing(p)
    L = ring.L
    if not 1 <= axis <= ring.n:
        raise ValueError("axis out of range")
    if not 2 <= j <= ring.p[axis - 1]:
        raise ValueError("truncation order out of range")
    xa = L.x(axis)
    sub = truncated_module(ring, axis, 1, twist=L.scale(-(j - 1), xa))
    mid = truncated_module(ring, axis, j)
    quo = truncated_module(ring, axis, j - 1)
    incl = ModuleMap(sub, mid, {L.scale(j - 1, xa): RatMatrix(((Fraction(1),),))})
    proj = ModuleMap(
        mid, quo,
        {L.scale(s, xa): RatMatrix(((Fraction(1),),)) for s in range(j - 1)},
    )
    report = exact_sequence_check(incl, proj)
    iso_ok = None
    failures = report.failures
    if j == ring.p[axis - 1] and ring.n >= 2:
        others = tuple(t for t in range(1, ring.n + 1) if t != axis)
        other = quotient_by_variables(ring, others, max(window, L.ell))
        iso_ok = graded_module_iso(mid, other)
        if not iso_ok:
            failures = failures + ("middle module not isomorphic to the ring quotient",)
    return SequenceReport(
        ok=report.ok and iso_ok is not False,
        degrees_checked=report.degrees_checked,
        first_failure=report.first_failure,
        failures=failures,
        iso_ok=iso_ok,
    )


@dataclass(frozen=True)
class KoszulReport:
    """Outcome of the Koszul perfectness certificate."""

    ok: bool
    degrees_checked: int
    failures: tuple[str, ...]


def koszul_perfect_check(p: Iterable[int], window: int) -> KoszulReport:
    """Exactness of the Koszul complex on x_2, ..., x_n over the ring.

    The complex resolves the quotient of the ring by the last n - 1
    variables, which is spanned by powers of x_1.  Per graded piece of
    z-degree <= window: cohomology vanishes at every negative level
    (including injectivity at the leftmost) and the cokernel dims match
    the powers x_1^s with s < p_1.  Success certifies a finite free
    resolution, i.e. perfectness of that quotient.
    """
    ring = GradedRing(p)
    if ring.n < 2:
        raise ValueError("need at least two variables")
    L = ring.L
    vars2 = tuple(range(2, ring.n + 1))
    terms: dict[int, tuple[LDegree, ...]] = {}
    labels: dict[int, tuple[str, ...]] = {}
    gens: dict[int, tuple] = {}
    for size in range(ring.n):
        gs = tuple(combinations(vars2, size))
        gens[-size] = gs
        terms[-size] = tuple(_generator_degree(L, ring.n, I, 0) for I in gs)
        labels[-size] = tuple(
            "^".join(f"dx{t}" for t in I) if I else "1" for I in gs
        )
    diffs: dict[int, list[list[Poly]]] = {}
    for size in range(1, ring.n):
        src = gens[-size]
        pos = {g: r for r, g in enumerate(gens[-size + 1])}
        mat: list[list[Poly]] = [[{} for _ in src] for _ in gens[-size + 1]]
        for cidx, I in enumerate(src):
            for r_pos, t in enumerate(I):
                entry = mat[pos[tuple(s for s in I if s != t)]][cidx]
                mono = tuple(int(u == t) for u in range(1, ring.n + 1))
                entry[mono] = entry.get(mono, Fraction(0)) + Fraction((-1) ** r_pos)
        diffs[-size] = mat
    cplx = FreeComplex(ring, terms, diffs, labels=labels)
    failures = list(cplx.homogeneity_violations()) + list(cplx.square_defects())
    count = 0
    if not failures:
        degrees = _support_degrees(cplx, window)
        count = len(degrees)
        expected = {L.scale(s, L.x(1)) for s in range(ring.p[0])}
        low = -(ring.n - 1)
        for d in degrees:
            info = {i: rank_kernel(cplx.piece_matrix(i, d)) for i in range(low, 0)}
            for i in range(low, 0):
                incoming = info[i - 1][0] if i > low else 0
                if len(info[i][1]) != incoming:
                    failures.append(f"cohomology at level {i} in degree {d.raw()}")
            h0 = len(cplx.piece_basis(0, d)) - info[-1][0]
            want = 1 if d in expected else 0
            if h0 != want:
                failures.append(f"cokernel dimension {h0} != {want} in degree {d.raw()}")
    return KoszulReport(ok=not failures, degrees_checked=count, failures=tuple(failures))
