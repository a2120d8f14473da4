"""Finite directed graded linear categories with exact structure constants.

A category here is a finite ordered list of objects, a graded hom basis for
each ordered pair with src <= tgt, and a sparse table of composition
coefficients over the rationals.  Morphisms only point forward: hom(X, Y) = 0
whenever X comes after Y, and hom(X, X) is spanned by the identity.

The composition table is stored explicitly (missing entry = zero composite),
so deliberately broken tables can be built and then caught by ``validate``.
"""

from __future__ import annotations

import ast
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactlin import IntMatrix, solve_integer, solve_mod2
from .grading import exponent_seq

CompTable = Mapping[tuple["MorRef", "MorRef"], Mapping[int, Fraction]]


@dataclass(frozen=True, order=True)
class MorRef:
    """Reference to a basis morphism: object indices plus basis position."""

    src: int
    tgt: int
    idx: int


def _as_ref(x) -> MorRef:
    return x if isinstance(x, MorRef) else MorRef(*x)


class DirectedGradedCategory:
    """Finite directed graded category over Q.

    ``homs`` maps index pairs (i, j) with i < j to the degree sequence of the
    hom basis; diagonal homs are always the single identity in degree 0.
    ``comp`` maps composable pairs (g, f) to sparse result coefficients over
    the basis of hom(f.src, g.tgt); absent entries are zero composites.
    Identity compositions are filled in strictly unless explicitly supplied.
    """

    __slots__ = ("objects", "_index", "_homs", "_comp")

    def __init__(
        self,
        objects: Sequence,
        homs: Mapping[tuple[int, int], Sequence[int]],
        comp: CompTable | None = None,
    ):
        objs = tuple(objects)
        if len(set(objs)) != len(objs):
            raise ValueError("object labels must be unique")
        index = {label: i for i, label in enumerate(objs)}
        table: dict[tuple[int, int], tuple[int, ...]] = {}
        for (i, j), degrees in homs.items():
            if not (0 <= i < len(objs) and 0 <= j < len(objs)):
                raise ValueError("hom indices out of range")
            if i >= j:
                raise ValueError("hom data allowed only above the diagonal")
            degs = tuple(int(d) for d in degrees)
            if degs:
                table[(i, j)] = degs
        for i in range(len(objs)):
            table[(i, i)] = (0,)
        comp_table: dict[tuple[MorRef, MorRef], dict[int, Fraction]] = {}
        if comp:
            for (g, f), result in comp.items():
                g, f = _as_ref(g), _as_ref(f)
                entry = {
                    int(k): Fraction(v) for k, v in result.items() if Fraction(v) != 0
                }
                if entry:
                    comp_table[(g, f)] = entry
        object.__setattr__(self, "objects", objs)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_homs", table)
        object.__setattr__(self, "_comp", comp_table)
        self._fill_identity_compositions()

    def __setattr__(self, name, value):
        raise AttributeError("category is immutable")

    def _fill_identity_compositions(self):
        for f in self.morphisms():
            left = (self.identity(f.tgt), f)
            right = (f, self.identity(f.src))
            for key in (left, right):
                if key not in self._comp:
                    self._comp[key] = {f.idx: Fraction(1)}

    # -- basic access ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DirectedGradedCategory)
            and self.objects == other.objects
            and self._homs == other._homs
            and self._comp == other._comp
        )

    def __repr__(self) -> str:
        nmor = sum(len(v) for v in self._homs.values())
        return f"DirectedGradedCategory({len(self.objects)} objects, {nmor} basis morphisms)"

    def object_index(self, label) -> int:
        return self._index[label]

    def hom(self, i: int, j: int) -> tuple[int, ...]:
        """Degree sequence of the hom basis from object i to object j."""
        return self._homs.get((i, j), ())

    def hom_by_labels(self, a, b) -> tuple[int, ...]:
        return self.hom(self._index[a], self._index[b])

    def graded_dims(self, i: int, j: int) -> dict[int, int]:
        dims: dict[int, int] = {}
        for d in self.hom(i, j):
            dims[d] = dims.get(d, 0) + 1
        return dims

    def identity(self, i: int) -> MorRef:
        return MorRef(i, i, 0)

    def is_identity(self, f: MorRef) -> bool:
        return f.src == f.tgt and f.idx == 0

    def morphisms(self) -> Iterable[MorRef]:
        """All basis morphisms in canonical (pair-sorted, index) order."""
        for (i, j) in sorted(self._homs):
            for k in range(len(self._homs[(i, j)])):
                yield MorRef(i, j, k)

    def degree(self, f: MorRef) -> int:
        return self._homs[(f.src, f.tgt)][f.idx]

    def name(self, f: MorRef) -> str:
        if self.is_identity(f):
            return f"id@{self.objects[f.src]}"
        return f"{self.objects[f.src]}->{self.objects[f.tgt]}#{f.idx}"

    def morphism_by_name(self, name: str) -> MorRef:
        for f in self.morphisms():
            if self.name(f) == name:
                return f
        raise KeyError(name)

    def compose(self, g: MorRef, f: MorRef) -> dict[int, Fraction]:
        """Sparse coefficients of g after f over the basis of hom(f.src, g.tgt)."""
        if f.tgt != g.src:
            raise ValueError("morphisms are not composable")
        return dict(self._comp.get((g, f), {}))

    def composition_entries(self):
        for key in sorted(self._comp, key=lambda gf: (gf[0], gf[1])):
            yield key, dict(self._comp[key])


# ---------------------------------------------------------------------------
# constructors


def a_category(m: int) -> DirectedGradedCategory:
    """Linear quiver category with m objects 1..m.

    One degree-1 generator from each object to its successor; all other homs
    between distinct objects vanish, and generator composites are zero.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError("object count must be a positive integer")
    homs = {(i, i + 1): (1,) for i in range(m - 1)}
    return DirectedGradedCategory(tuple(range(1, m + 1)), homs)


def tensor(A: DirectedGradedCategory, B: DirectedGradedCategory) -> DirectedGradedCategory:
    """Graded tensor product with the Koszul sign rule.

    Objects are pairs in A-major order; hom bases are products with the A
    factor outermost; compositions carry the sign (-1)^(|g1| |f2|) for
    (f1 (x) g1) after (f2 (x) g2).
    """
    na, nb = len(A.objects), len(B.objects)
    objects = tuple((a, b) for a in A.objects for b in B.objects)

    def oidx(ia: int, ib: int) -> int:
        return ia * nb + ib

    homs: dict[tuple[int, int], tuple[int, ...]] = {}
    for ia in range(na):
        for ja in range(na):
            ha = A.hom(ia, ja)
            if not ha:
                continue
            for ib in range(nb):
                for jb in range(nb):
                    hb = B.hom(ib, jb)
                    if not hb:
                        continue
                    i, j = oidx(ia, ib), oidx(ja, jb)
                    if i < j:
                        homs[(i, j)] = tuple(da + db for da in ha for db in hb)

    C = DirectedGradedCategory(objects, homs)

    def pair_refs(i: int, j: int):
        """Split each basis morphism of hom(i, j) into its A and B factors."""
        ia, ib = divmod(i, nb)
        ja, jb = divmod(j, nb)
        hb = B.hom(ib, jb)
        out = []
        for k in range(len(C.hom(i, j))):
            ka, kb = divmod(k, len(hb))
            out.append((MorRef(ia, ja, ka), MorRef(ib, jb, kb)))
        return out

    comp: dict[tuple[MorRef, MorRef], dict[int, Fraction]] = {}
    pairs = sorted(C._homs)
    for (i, j) in pairs:
        for (j2, l) in pairs:
            if j2 != j:
                continue
            for kf, (f_a, f_b) in enumerate(pair_refs(i, j)):
                for kg, (g_a, g_b) in enumerate(pair_refs(j, l)):
                    g = MorRef(j, l, kg)
                    f = MorRef(i, j, kf)
                    if C.is_identity(g) or C.is_identity(f):
                        continue
                    ca = A.compose(g_a, f_a)
                    cb = B.compose(g_b, f_b)
                    if not ca or not cb:
                        continue
                    sign = -1 if (B.degree(g_b) * A.degree(f_a)) % 2 else 1
                    width = len(B.hom(f_b.src, g_b.tgt))
                    entry: dict[int, Fraction] = {}
                    for ra, va in ca.items():
                        for rb, vb in cb.items():
                            entry[ra * width + rb] = sign * va * vb
                    comp[(g, f)] = entry

    return DirectedGradedCategory(objects, homs, comp)


def relabel(
    C: DirectedGradedCategory, mapping: Mapping, *, reorder: bool = False
) -> DirectedGradedCategory:
    """Rename objects; with ``reorder`` the new labels are sorted.

    Reordering must keep every nonzero hom pointing forward, otherwise the
    result would not be directed and a ValueError is raised.
    """
    new_labels = [mapping[label] for label in C.objects]
    if len(set(new_labels)) != len(new_labels):
        raise ValueError("relabeling must be injective")
    if reorder:
        order = sorted(range(len(new_labels)), key=lambda i: new_labels[i])
    else:
        order = list(range(len(new_labels)))
    position = {old: new for new, old in enumerate(order)}
    homs: dict[tuple[int, int], tuple[int, ...]] = {}
    for (i, j), degs in C._homs.items():
        if i == j:
            continue
        ni, nj = position[i], position[j]
        if ni >= nj:
            raise ValueError("reorder breaks directedness")
        homs[(ni, nj)] = degs
    comp = {}
    for (g, f), entry in C._comp.items():
        ng = MorRef(position[g.src], position[g.tgt], g.idx)
        nf = MorRef(position[f.src], position[f.tgt], f.idx)
        comp[(ng, nf)] = entry
    return DirectedGradedCategory(tuple(new_labels[i] for i in order), homs, comp)


def tensor_bp(p: Iterable[int]) -> DirectedGradedCategory:
    """Iterated tensor of linear quivers with p_i - 1 objects, flat tuple labels.

    Objects are the tuples (i_1, ..., i_n) with 1 <= i_k <= p_k - 1 in
    lexicographic order; hom(u, v) is one-dimensional exactly when v - u is a
    0/1 vector, in degree equal to the number of increments.
    """
    p = exponent_seq(p)
    for pi in p:
        if pi - 1 < 1:
            raise ValueError("each exponent must be at least 2")
    C = a_category(p[0] - 1)
    C = relabel(C, {label: (label,) for label in C.objects})
    for pi in p[1:]:
        C = tensor(C, a_category(pi - 1))
        C = relabel(C, {label: label[0] + (label[1],) for label in C.objects})
    return C


# ---------------------------------------------------------------------------
# invariants and comparisons


@dataclass(frozen=True)
class EulerMatrix:
    """Alternating-sum hom dimensions, upper triangular with unit diagonal."""

    objects: tuple
    entries: tuple[tuple[int, ...], ...]

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]


def euler_matrix(C: DirectedGradedCategory) -> EulerMatrix:
    n = len(C.objects)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(sum((-1) ** d for d in C.hom(i, j)))
        rows.append(tuple(row))
    return EulerMatrix(objects=C.objects, entries=tuple(rows))


def formality_check(C: DirectedGradedCategory) -> bool:
    """No hom space survives in a degree reachable by a higher product.

    For every chain X_0 < ... < X_d with d >= 3 and all consecutive homs
    nonzero, with s the sum of one basis degree per step, the space
    hom(X_0, X_d) must vanish in degree s + 2 - d.  The scan walks chains by
    dynamic programming on (endpoint, length, degree sum).
    """
    n = len(C.objects)
    edges: dict[int, list[tuple[int, tuple[int, ...]]]] = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            degs = C.hom(i, j)
            if degs:
                edges[i].append((j, tuple(sorted(set(degs)))))
    for x0 in range(n):
        frontier: dict[int, set[int]] = {x0: {0}}
        for depth in range(1, n):
            nxt: dict[int, set[int]] = {}
            for cur, sums in frontier.items():
                for (j, degs) in edges[cur]:
                    bucket = nxt.setdefault(j, set())
                    for s in sums:
                        for d in degs:
                            bucket.add(s + d)
            if not nxt:
                break
            if depth >= 3:
                for cur, sums in nxt.items():
                    target = set(C.hom(x0, cur))
                    for s in sums:
                        if s + 2 - depth in target:
                            return False
            frontier = nxt
    return True


def square_sign_audit(C: DirectedGradedCategory) -> list[str]:
    """Check that parallel two-step generator paths anticommute.

    For objects P < Q and distinct middles M1, M2 with degree-1 basis
    morphisms P -> M_k -> Q, the two composites must be nonzero and negatives
    of each other.  Returns human-readable violations, empty when clean.
    """
    n = len(C.objects)
    violations = []
    for i in range(n):
        for j in range(i + 1, n):
            paths = []  # (mid, composite dict)
            for m in range(i + 1, j):
                for kf, df in enumerate(C.hom(i, m)):
                    if df != 1:
                        continue
                    for kg, dg in enumerate(C.hom(m, j)):
                        if dg != 1:
                            continue
                        comp = C.compose(MorRef(m, j, kg), MorRef(i, m, kf))
                        paths.append((m, comp))
            for a in range(len(paths)):
                for b in range(a + 1, len(paths)):
                    m1, c1 = paths[a]
                    m2, c2 = paths[b]
                    if m1 == m2:
                        continue
                    neg = {k: -v for k, v in c2.items()}
                    if not c1 or not c2 or c1 != neg:
                        violations.append(
                            f"square {C.objects[i]} -> {{{C.objects[m1]}, {C.objects[m2]}}} "
                            f"-> {C.objects[j]} does not anticommute"
                        )
    return violations


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(C: DirectedGradedCategory) -> ValidationReport:
    """Check degree additivity, unit strictness and associativity of the table."""
    bad: list[str] = []

    for (g, f), entry in C.composition_entries():
        if f.tgt != g.src:
            bad.append(f"composition entry for non-composable pair ({C.name(g)}, {C.name(f)})")
            continue
        basis = C.hom(f.src, g.tgt)
        total = C.degree(g) + C.degree(f)
        for idx, coeff in entry.items():
            if not 0 <= idx < len(basis):
                bad.append(f"composition ({C.name(g)}, {C.name(f)}) hits invalid basis index {idx}")
            elif basis[idx] != total:
                bad.append(
                    f"composition ({C.name(g)}, {C.name(f)}) lands in degree "
                    f"{basis[idx]}, expected {total}"
                )

    for f in C.morphisms():
        if C.compose(C.identity(f.tgt), f) != {f.idx: Fraction(1)}:
            bad.append(f"left unit fails for {C.name(f)}")
        if C.compose(f, C.identity(f.src)) != {f.idx: Fraction(1)}:
            bad.append(f"right unit fails for {C.name(f)}")

    morphs = list(C.morphisms())
    by_src: dict[int, list[MorRef]] = {}
    for f in morphs:
        by_src.setdefault(f.src, []).append(f)
    for f in morphs:
        for g in by_src.get(f.tgt, []):
            gf = C.compose(g, f)
            for h in by_src.get(g.tgt, []):
                hg = C.compose(h, g)
                lhs: dict[int, Fraction] = {}
                for idx, coeff in gf.items():
                    for ridx, rcoeff in C.compose(h, MorRef(f.src, g.tgt, idx)).items():
                        lhs[ridx] = lhs.get(ridx, Fraction(0)) + coeff * rcoeff
                rhs: dict[int, Fraction] = {}
                for idx, coeff in hg.items():
                    for ridx, rcoeff in C.compose(MorRef(g.src, h.tgt, idx), f).items():
                        rhs[ridx] = rhs.get(ridx, Fraction(0)) + coeff * rcoeff
                lhs = {k: v for k, v in lhs.items() if v != 0}
                rhs = {k: v for k, v in rhs.items() if v != 0}
                if lhs != rhs:
                    bad.append(
                        f"associativity fails on ({C.name(h)}, {C.name(g)}, {C.name(f)})"
                    )
    return ValidationReport(tuple(bad))


# ---------------------------------------------------------------------------
# gauge equivalence


@dataclass(frozen=True)
class GaugeResult:
    ok: bool
    witness: dict[str, Fraction] | None
    reason: str | None


def _prime_factors(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def gauge_isomorphic(
    C: DirectedGradedCategory, D: DirectedGradedCategory, bijection: Mapping
) -> GaugeResult:
    """Decide whether rescaling basis morphisms carries C onto D.

    ``bijection`` maps C labels to D labels and must be order-preserving.
    All hom spaces must have dimension at most one per degree; under that
    hypothesis the comparison reduces to a linear system on the scalars: a
    sign system over GF(2) and one integer system per prime occurring in the
    composition coefficient ratios.  On success the witness maps morphism
    names of C to the scalars.
    """
    n = len(C.objects)
    if len(D.objects) != n:
        return GaugeResult(False, None, "object counts differ")
    if set(bijection.keys()) != set(C.objects):
        raise ValueError("bijection must be defined exactly on the objects of C")
    for i, label in enumerate(C.objects):
        if bijection[label] not in D._index:
            raise ValueError(f"bijection image {bijection[label]!r} is not an object")
        if D.object_index(bijection[label]) != i:
            raise ValueError("bijection is not order-preserving")

    for cat in (C, D):
        for i in range(n):
            for j in range(i, n):
                dims = cat.graded_dims(i, j)
                if any(v > 1 for v in dims.values()):
                    raise ValueError("hom spaces must have dimension at most 1 per degree")

    for i in range(n):
        for j in range(i, n):
            if C.graded_dims(i, j) != D.graded_dims(i, j):
                return GaugeResult(
                    False,
                    None,
                    f"graded dimensions differ at ({C.objects[i]}, {C.objects[j]})",
                )

    # identify bases by degree: basis index k of C corresponds to the D basis
    # element of the same degree
    def match(i: int, j: int, k: int) -> int:
        deg = C.hom(i, j)[k]
        return D.hom(i, j).index(deg)

    morphs = list(C.morphisms())
    var = {f: i for i, f in enumerate(morphs)}

    equations: list[tuple[MorRef, MorRef, MorRef, Fraction]] = []
    seen_pairs = set()
    for f in morphs:
        for g in morphs:
            if g.src != f.tgt:
                continue
            seen_pairs.add((g, f))
            cc = C.compose(g, f)
            gD = MorRef(g.src, g.tgt, match(g.src, g.tgt, g.idx))
            fD = MorRef(f.src, f.tgt, match(f.src, f.tgt, f.idx))
            cd = D.compose(gD, fD)
            cd_in_c = {}
            for idx, vv in cd.items():
                deg = D.hom(f.src, g.tgt)[idx]
                cd_in_c[C.hom(f.src, g.tgt).index(deg)] = vv
            if set(cc) != set(cd_in_c):
                return GaugeResult(
                    False,
                    None,
                    f"composition vanishing patterns differ at ({C.name(g)}, {C.name(f)})",
                )
            for idx, vc in cc.items():
                ratio = vc / cd_in_c[idx]
                equations.append((g, f, MorRef(f.src, g.tgt, idx), ratio))

    nvars = len(morphs)
    sign_rows = []
    sign_rhs = []
    primes: set[int] = set()
    for (g, f, h, ratio) in equations:
        # XOR collapses repeated variables mod 2 (g can equal f on identity loops)
        row = (1 << var[g]) ^ (1 << var[f]) ^ (1 << var[h])
        sign_rows.append(row)
        sign_rhs.append(0 if ratio > 0 else 1)
        primes.update(_prime_factors(ratio.numerator))
        primes.update(_prime_factors(ratio.denominator))

    signs = solve_mod2(sign_rows, sign_rhs, nvars)
    if signs is None:
        return GaugeResult(False, None, "sign system is inconsistent")

    exponents: dict[int, list[int]] = {}
    for prime in sorted(primes):
        rows = []
        rhs = []
        for (g, f, h, ratio) in equations:
            row = [0] * nvars
            row[var[g]] += 1
            row[var[f]] += 1
            row[var[h]] -= 1
            rows.append(row)
            rhs.append(
                _prime_factors(ratio.numerator).get(prime, 0)
                - _prime_factors(ratio.denominator).get(prime, 0)
            )
        sol = solve_integer(IntMatrix(rows, cols=nvars), rhs) if rows else tuple([0] * nvars)
        if sol is None:
            return GaugeResult(False, None, f"magnitude system inconsistent at prime {prime}")
        exponents[prime] = list(sol)

    witness: dict[str, Fraction] = {}
    scalars: dict[MorRef, Fraction] = {}
    for m in morphs:
        value = Fraction(-1 if signs[var[m]] else 1)
        for prime, exps in exponents.items():
            value *= Fraction(prime) ** exps[var[m]]
        scalars[m] = value
        witness[C.name(m)] = value

    for (g, f, h, ratio) in equations:
        if scalars[g] * scalars[f] / scalars[h] != ratio:
            return GaugeResult(False, None, "witness verification failed")

    return GaugeResult(True, witness, None)


# ---------------------------------------------------------------------------
# serialization


def _label_to_str(label) -> str:
    return str(label)


def _label_from_str(s: str):
    try:
        return ast.literal_eval(s)
    except (ValueError, SyntaxError):
        return s


def to_json_dict(C: DirectedGradedCategory) -> dict:
    """Plain-dict form: objects as label strings, homs with degrees and
    names, compositions as coefficient strings (exact rationals)."""
    homs = []
    for f in C.morphisms():
        homs.append(
            {
                "src": _label_to_str(C.objects[f.src]),
                "tgt": _label_to_str(C.objects[f.tgt]),
                "degree": C.degree(f),
                "name": C.name(f),
            }
        )
    comp = []
    for (g, f), entry in C.composition_entries():
        for idx in sorted(entry):
            comp.append(
                {
                    "g": C.name(g),
                    "f": C.name(f),
                    "result": C.name(MorRef(f.src, g.tgt, idx)),
                    "coeff": str(entry[idx]),
                }
            )
    return {
        "objects": [_label_to_str(x) for x in C.objects],
        "homs": homs,
        "comp": comp,
    }


def to_json(C: DirectedGradedCategory) -> str:
    return json.dumps(to_json_dict(C), indent=2, sort_keys=False)


def from_json_dict(data: Mapping) -> DirectedGradedCategory:
    objects = tuple(_label_from_str(s) for s in data["objects"])
    index = {label: i for i, label in enumerate(objects)}
    homs: dict[tuple[int, int], list[int]] = {}
    names: dict[str, MorRef] = {}
    for item in data["homs"]:
        i = index[_label_from_str(item["src"])]
        j = index[_label_from_str(item["tgt"])]
        if i == j:
            names[item["name"]] = MorRef(i, i, 0)
            continue
        bucket = homs.setdefault((i, j), [])
        names[item["name"]] = MorRef(i, j, len(bucket))
        bucket.append(int(item["degree"]))
    comp: dict[tuple[MorRef, MorRef], dict[int, Fraction]] = {}
    for item in data["comp"]:
        g = names[item["g"]]
        f = names[item["f"]]
        result = names[item["result"]]
        comp.setdefault((g, f), {})[result.idx] = Fraction(item["coeff"])
    return DirectedGradedCategory(
        objects, {k: tuple(v) for k, v in homs.items()}, comp
    )


def from_json(text: str) -> DirectedGradedCategory:
    return from_json_dict(json.loads(text))
