"""Twisted complexes over a directed graded category and their hom complexes.

A twisted object is a finite list of (object, shift) components with a
strictly lower triangular degree-1 connecting map delta satisfying
delta . delta = 0.  Between two twisted objects the morphism spaces of the
base category assemble into a cochain complex: a component morphism g from
(X_a, shift s) to (Y_b, shift t) sits in total degree |g| + s - t, and

    d(phi) = delta_Y . phi - (-1)^{|phi|} phi . delta_X.

Composition of cochains is plain componentwise composition; all signs of the
construction live in the differential.  The base category must have zero
differential, which every category built in this package does.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .dgcat import DirectedGradedCategory, MorRef
from .exactlin import Cohomology, ComplexError, RatMatrix, Vec, complex_cohomology

Entry = tuple[int, int, int]  # (source component, target component, basis index)


@dataclass(frozen=True)
class TwistedObject:
    """Components with shifts plus a strictly triangular Maurer-Cartan delta."""

    category: DirectedGradedCategory
    components: tuple[tuple[object, int], ...]
    delta: Mapping[tuple[int, int], Mapping[int, Fraction]]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a twisted object needs at least one component")
        cat = self.category
        for label, shift in self.components:
            cat.object_index(label)  # raises KeyError on unknown labels
            if not isinstance(shift, int):
                raise ValueError("shifts must be integers")
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (a, b), entry in self.delta.items():
            if not (0 <= a < b < len(self.components)):
                raise ValueError("delta must be strictly triangular")
            basis = cat.hom(self._oidx(a), self._oidx(b))
            cleaned = {int(k): Fraction(v) for k, v in entry.items() if Fraction(v) != 0}
            for idx, _ in cleaned.items():
                if not 0 <= idx < len(basis):
                    raise ValueError("delta references a missing basis morphism")
                total = basis[idx] + self.components[a][1] - self.components[b][1]
                if total != 1:
                    raise ValueError(f"delta entry has total degree {total}, expected 1")
            if cleaned:
                clean[(a, b)] = cleaned
        object.__setattr__(self, "delta", clean)
        self._check_square_zero()

    def _oidx(self, a: int) -> int:
        return self.category.object_index(self.components[a][0])

    def _check_square_zero(self):
        cat = self.category
        m = len(self.components)
        for a in range(m):
            for c in range(a + 2, m):
                acc: dict[int, Fraction] = {}
                for b in range(a + 1, c):
                    first = self.delta.get((a, b))
                    second = self.delta.get((b, c))
                    if not first or not second:
                        continue
                    for k1, v1 in first.items():
                        f = MorRef(self._oidx(a), self._oidx(b), k1)
                        for k2, v2 in second.items():
                            g = MorRef(self._oidx(b), self._oidx(c), k2)
                            for ridx, rv in cat.compose(g, f).items():
                                acc[ridx] = acc.get(ridx, Fraction(0)) + v1 * v2 * rv
                if any(v != 0 for v in acc.values()):
                    raise ValueError(f"delta squared is nonzero between components {a} and {c}")

    def shift_of(self, a: int) -> int:
        return self.components[a][1]


def single(C: DirectedGradedCategory, label, shift: int = 0) -> TwistedObject:
    """A plain object viewed as a one-component twisted object."""
    return TwistedObject(C, ((label, shift),), {})


def cone(C: DirectedGradedCategory, f: MorRef) -> TwistedObject:
    """Cone of a degree-0 basis morphism: source shifted up, connecting map f."""
    if not isinstance(f, MorRef):
        raise TypeError("cone needs a basis morphism reference")
    basis = C.hom(f.src, f.tgt)
    if not 0 <= f.idx < len(basis):
        raise ValueError("cone of a missing morphism")
    if C.degree(f) != 0:
        raise ValueError("cone requires a degree-0 morphism")
    components = ((C.objects[f.src], 1), (C.objects[f.tgt], 0))
    return TwistedObject(C, components, {(0, 1): {f.idx: Fraction(1)}})


class HomComplex:
    """The hom cochain complex between two twisted objects."""

    __slots__ = ("X", "Y", "basis", "position", "_diff")

    def __init__(self, X: TwistedObject, Y: TwistedObject):
        if X.category is not Y.category and X.category != Y.category:
            raise ValueError("twisted objects live in different categories")
        self.X = X
        self.Y = Y
        cat = X.category
        by_degree: dict[int, list[Entry]] = {}
        for a in range(len(X.components)):
            ia = X._oidx(a)
            sa = X.shift_of(a)
            for b in range(len(Y.components)):
                jb = Y._oidx(b)
                tb = Y.shift_of(b)
                for idx, deg in enumerate(cat.hom(ia, jb)):
                    by_degree.setdefault(deg + sa - tb, []).append((a, b, idx))
        self.basis = {d: tuple(v) for d, v in sorted(by_degree.items())}
        self.position = {
            elt: (d, i) for d, elts in self.basis.items() for i, elt in enumerate(elts)
        }
        self._diff: dict[int, RatMatrix] = {}
        for d in self.basis:
            self._diff[d] = self._build_differential(d)
        self._verify_square_zero()

    def degrees(self) -> tuple[int, ...]:
        return tuple(self.basis)

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def dims(self) -> dict[int, int]:
        return {d: len(v) for d, v in self.basis.items()}

    def chi(self) -> int:
        return sum((-1) ** d * len(v) for d, v in self.basis.items())

    def differential(self, d: int) -> RatMatrix:
        got = self._diff.get(d)
        if got is not None:
            return got
        return RatMatrix.zeros(self.dim(d + 1), self.dim(d))

    def _build_differential(self, d: int) -> RatMatrix:
        cat = self.X.category
        rows = self.dim(d + 1)
        cols = self.dim(d)
        entries = [[Fraction(0)] * cols for _ in range(rows)]
        for col, (a, b, idx) in enumerate(self.basis.get(d, ())):
            m = MorRef(self.X._oidx(a), self.Y._oidx(b), idx)
            # postcompose with delta_Y
            for (b1, b2), entry in self.Y.delta.items():
                if b1 != b:
                    continue
                for nidx, ncoeff in entry.items():
                    dref = MorRef(self.Y._oidx(b1), self.Y._oidx(b2), nidx)
                    for ridx, rcoeff in cat.compose(dref, m).items():
                        dd, pos = self.position[(a, b2, ridx)]
                        if dd != d + 1:
                            raise ComplexError("differential is not homogeneous")
                        entries[pos][col] += ncoeff * rcoeff
            # precompose with delta_X, Koszul sign on the cochain degree
            sign = Fraction(1 if d % 2 else -1)
            for (a0, a1), entry in self.X.delta.items():
                if a1 != a:
                    continue
                for nidx, ncoeff in entry.items():
                    dref = MorRef(self.X._oidx(a0), self.X._oidx(a1), nidx)
                    for ridx, rcoeff in cat.compose(m, dref).items():
                        dd, pos = self.position[(a0, b, ridx)]
                        if dd != d + 1:
                            raise ComplexError("differential is not homogeneous")
                        entries[pos][col] += sign * ncoeff * rcoeff
        return RatMatrix(entries, cols=cols)

    def _verify_square_zero(self):
        for d in self.basis:
            if self.dim(d + 1) == 0:
                continue
            prod = self.differential(d + 1) @ self.differential(d)
            if not prod.is_zero():
                raise ComplexError("hom-complex differential does not square to zero")


def hom_complex(X: TwistedObject, Y: TwistedObject) -> HomComplex:
    return HomComplex(X, Y)


class TwistedCohomology:
    """Per-degree cohomology of a hom complex with fixed representatives."""

    __slots__ = ("complex", "dims", "_data")

    def __init__(self, H: HomComplex):
        self.complex = H
        data: dict[int, Cohomology] = {}
        for d in H.degrees():
            data[d] = complex_cohomology(H.differential(d - 1), H.differential(d))
        self._data = data
        self.dims = {d: c.dim for d, c in data.items() if c.dim > 0}

    def representatives(self, d: int) -> tuple[Vec, ...]:
        got = self._data.get(d)
        return got.representatives if got else ()

    def coordinates(self, d: int, vec: Sequence) -> Vec:
        got = self._data.get(d)
        if got is None:
            if any(Fraction(v) != 0 for v in vec):
                raise ValueError("nonzero vector in an empty degree")
            return ()
        return got.coordinates(vec)


def cohomology(H: HomComplex) -> TwistedCohomology:
    return TwistedCohomology(H)


@dataclass(frozen=True)
class TwistedHom:
    """A hom complex bundled with its cohomology."""

    X: TwistedObject
    Y: TwistedObject
    complex: HomComplex = field(compare=False)
    cohomology: TwistedCohomology = field(compare=False)


def twisted_hom(X: TwistedObject, Y: TwistedObject) -> TwistedHom:
    H = hom_complex(X, Y)
    return TwistedHom(X=X, Y=Y, complex=H, cohomology=cohomology(H))


Class = tuple[int, tuple[Fraction, ...]]  # (degree, coefficients over representatives)


def identity_class(h_xx: TwistedHom) -> Class:
    """The class of the identity cocycle in End(X)."""
    H = h_xx.complex
    vec = [Fraction(0)] * H.dim(0)
    for a in range(len(h_xx.X.components)):
        d, pos = H.position[(a, a, 0)]
        if d != 0:
            raise ValueError("identity entry off degree zero")
        vec[pos] += 1
    return (0, tuple(h_xx.cohomology.coordinates(0, vec)))


def compose_cochains(
    h_yz: HomComplex,
    h_xy: HomComplex,
    h_xz: HomComplex,
    psi: tuple[int, Sequence[Fraction]],
    phi: tuple[int, Sequence[Fraction]],
) -> tuple[int, Vec]:
    """Componentwise composition of cochains psi . phi, no extra signs."""
    cat = h_xy.X.category
    dpsi, vpsi = psi
    dphi, vphi = phi
    total = dpsi + dphi
    out = [Fraction(0)] * h_xz.dim(total)
    for j, (b2, c, k2) in enumerate(h_yz.basis.get(dpsi, ())):
        if vpsi[j] == 0:
            continue
        gref = MorRef(h_yz.X._oidx(b2), h_yz.Y._oidx(c), k2)
        for i, (a, b, k1) in enumerate(h_xy.basis.get(dphi, ())):
            if vphi[i] == 0 or b != b2:
                continue
            fref = MorRef(h_xy.X._oidx(a), h_xy.Y._oidx(b), k1)
            for ridx, rcoeff in cat.compose(gref, fref).items():
                dd, pos = h_xz.position[(a, c, ridx)]
                if dd != total:
                    raise ComplexError("composition is not degree additive")
                out[pos] += vpsi[j] * vphi[i] * rcoeff
    return total, tuple(out)


def compose_classes(
    h_yz: TwistedHom, h_xy: TwistedHom, h_xz: TwistedHom, alpha: Class, beta: Class
) -> Class:
    """Compose cohomology classes via representatives and project the result.

    ``alpha`` lives in H(hom(Y, Z)), ``beta`` in H(hom(X, Y)); the result is
    expressed over the chosen representatives of H(hom(X, Z)).  The composed
    representative cocycle is checked to be closed before projecting.
    """
    da, ca = alpha
    db, cb = beta
    reps_a = h_yz.cohomology.representatives(da)
    reps_b = h_xy.cohomology.representatives(db)
    if len(ca) != len(reps_a) or len(cb) != len(reps_b):
        raise ValueError("class coefficients do not match representative count")
    va = [Fraction(0)] * h_yz.complex.dim(da)
    for coeff, rep in zip(ca, reps_a):
        for i, x in enumerate(rep):
            va[i] += coeff * x
    vb = [Fraction(0)] * h_xy.complex.dim(db)
    for coeff, rep in zip(cb, reps_b):
        for i, x in enumerate(rep):
            vb[i] += coeff * x
    total, vec = compose_cochains(
        h_yz.complex, h_xy.complex, h_xz.complex, (da, tuple(va)), (db, tuple(vb))
    )
    boundary = h_xz.complex.differential(total).apply(vec)
    if any(x != 0 for x in boundary):
        raise ComplexError("composite of cocycles is not closed")
    return (total, tuple(h_xz.cohomology.coordinates(total, vec)))
