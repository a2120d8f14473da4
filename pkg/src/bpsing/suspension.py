"""Directed suspension of a graded category via cones in twisted complexes.

``directed_extension(A, k)`` places k shifted copies of A side by side:
objects are pairs (X, j) for X in A and 1 <= j <= k, ordered with higher j
first and A's order inside each level.  Morphisms copy hom_A between levels
j >= j', and each object gains a degree-0 copy e_{X,j} of the identity from
(X, j+1) to (X, j).

``suspend(A, k)`` forms the cones S_{X,j} = Cone(e_{X,j}) for j < k, computes
all hom-complex cohomologies between them, and assembles a new directed
graded category from the surviving classes with composition induced on
representatives.  Iterating from a linear quiver builds the categories
attached to exponent sequences: ``fukaya_bp``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .dgcat import (
    DirectedGradedCategory,
    MorRef,
    a_category,
    formality_check,
    gauge_isomorphic,
    square_sign_audit,
    tensor,
    tensor_bp,
    relabel,
    validate,
)
from .grading import exponent_seq
from .twisted import (
    Class,
    TwistedHom,
    compose_classes,
    cone,
    identity_class,
    twisted_hom,
)


class SuspensionError(RuntimeError):
    """A suspension output failed one of its structural checks."""


def directed_extension(A: DirectedGradedCategory, k: int) -> DirectedGradedCategory:
    """k stacked copies of A with identity connectors from level j+1 to level j.

    Object order: (X, j) < (X', j') iff j > j', or j = j' and X before X'.
    hom((X, j), (X', j')) is a copy of hom_A(X, X') when j >= j' (the copy of
    the identity appearing only for j > j'), and zero when j < j'.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise ValueError("stacking needs at least two levels")
    na = len(A.objects)
    objects = tuple((x, j) for j in range(k, 0, -1) for x in A.objects)

    def oidx(ia: int, j: int) -> int:
        return (k - j) * na + ia

    # each copied basis element remembers its A-morphism, including the copy
    # of the identity that connects level j+1 to level j
    homs: dict[tuple[int, int], tuple[int, ...]] = {}
    underlying: dict[tuple[int, int], dict[int, MorRef]] = {}
    for j in range(k, 0, -1):
        for j2 in range(j, 0, -1):
            for ia in range(na):
                for ia2 in range(na):
                    if j == j2 and ia == ia2:
                        continue
                    base = A.hom(ia, ia2)
                    if not base:
                        continue
                    src, tgt = oidx(ia, j), oidx(ia2, j2)
                    homs[(src, tgt)] = base
                    underlying[(src, tgt)] = {
                        m: MorRef(ia, ia2, m) for m in range(len(base))
                    }

    def u(ref: MorRef) -> MorRef:
        if ref.src == ref.tgt:
            ia = ref.src % na
            return MorRef(ia, ia, 0)
        return underlying[(ref.src, ref.tgt)][ref.idx]

    E_shell = DirectedGradedCategory(objects, homs)
    comp: dict[tuple[MorRef, MorRef], dict[int, Fraction]] = {}
    for f in E_shell.morphisms():
        for g in E_shell.morphisms():
            if g.src != f.tgt:
                continue
            if E_shell.is_identity(g) or E_shell.is_identity(f):
                continue
            base = A.compose(u(g), u(f))
            if not base:
                continue
            back = {ref: idx for idx, ref in underlying[(f.src, g.tgt)].items()}
            entry = {
                back[MorRef(u(f).src, u(g).tgt, ridx)]: coeff
                for ridx, coeff in base.items()
            }
            comp[(g, f)] = entry
    return DirectedGradedCategory(objects, homs, comp)


def connector(E: DirectedGradedCategory, x, j: int) -> MorRef:
    """The copy of id_x from (x, j+1) to (x, j) inside the extension."""
    src = E.object_index((x, j + 1))
    tgt = E.object_index((x, j))
    degs = E.hom(src, tgt)
    if not degs or degs[0] != 0:
        raise ValueError("no connector at this position")
    return MorRef(src, tgt, 0)


@dataclass(frozen=True)
class SuspensionReport:
    """Checks of one suspension step against the tensor model."""

    ok: bool
    dims_ok: bool
    gauge_ok: bool
    audit_ok: bool
    witness: dict[str, Fraction] | None
    messages: tuple[str, ...]


def suspend(
    A: DirectedGradedCategory,
    k: int,
    label_fn: Callable | None = None,
) -> DirectedGradedCategory:
    """Category of cones S_{x,j} = Cone((x, j+1) -> (x, j)) for 1 <= j < k.

    Hom spaces are hom-complex cohomologies with deterministic
    representatives; compositions are induced by composing representatives
    and projecting.  Objects are ordered by A's order first, then ascending
    level; labels default to (x, j) and can be overridden with ``label_fn``.
    """
    if k < 2:
        raise ValueError("suspension needs at least two levels")
    E = directed_extension(A, k)
    fn = label_fn if label_fn is not None else (lambda x, j: (x, j))
    spots = [(ia, j) for ia in range(len(A.objects)) for j in range(1, k)]
    cones = {}
    for ia, j in spots:
        cones[(ia, j)] = cone(E, connector(E, A.objects[ia], j))
    labels = tuple(fn(A.objects[ia], j) for ia, j in spots)

    homs_data: dict[tuple[int, int], TwistedHom] = {}
    for si in range(len(spots)):
        for sj in range(si, len(spots)):
            homs_data[(si, sj)] = twisted_hom(cones[spots[si]], cones[spots[sj]])

    for si in range(len(spots)):
        end_dims = homs_data[(si, si)].cohomology.dims
        if end_dims != {0: 1}:
            raise SuspensionError(
                f"endomorphisms of cone {labels[si]} have dims {end_dims}, expected {{0: 1}}"
            )

    homs: dict[tuple[int, int], tuple[int, ...]] = {}
    class_index: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for (si, sj), th in homs_data.items():
        if si == sj:
            continue
        degs: list[int] = []
        classes: list[tuple[int, int]] = []
        for d in sorted(th.cohomology.dims):
            for r in range(th.cohomology.dims[d]):
                degs.append(d)
                classes.append((d, r))
        if degs:
            homs[(si, sj)] = tuple(degs)
            class_index[(si, sj)] = classes

    def as_class(si: int, sj: int, idx: int) -> Class:
        if si == sj:
            return identity_class(homs_data[(si, si)])
        d, r = class_index[(si, sj)][idx]
        count = homs_data[(si, sj)].cohomology.dims[d]
        coeffs = tuple(Fraction(int(t == r)) for t in range(count))
        return (d, coeffs)

    def from_class(si: int, sj: int, value: Class) -> dict[int, Fraction]:
        d, coeffs = value
        out: dict[int, Fraction] = {}
        for t, coeff in enumerate(coeffs):
            if coeff != 0:
                out[class_index[(si, sj)].index((d, t))] = coeff
        return out

    comp: dict[tuple[MorRef, MorRef], dict[int, Fraction]] = {}
    for (si, sj) in sorted(class_index):
        for (sj2, sl) in sorted(class_index):
            if sj2 != sj:
                continue
            for fi in range(len(class_index[(si, sj)])):
                for gi in range(len(class_index[(sj, sl)])):
                    value = compose_classes(
                        homs_data[(sj, sl)],
                        homs_data[(si, sj)],
                        homs_data[(si, sl)],
                        as_class(sj, sl, gi),
                        as_class(si, sj, fi),
                    )
                    if (si, sl) in class_index:
                        entry = from_class(si, sl, value)
                    else:
                        entry = {}
                        if any(c != 0 for c in value[1]):
                            raise SuspensionError("composite lands outside the hom basis")
                    if entry:
                        comp[(MorRef(sj, sl, gi), MorRef(si, sj, fi))] = entry

    # identities must act strictly on the chosen representatives
    for (si, sj), classes in sorted(class_index.items()):
        for fi in range(len(classes)):
            left = compose_classes(
                homs_data[(sj, sj)],
                homs_data[(si, sj)],
                homs_data[(si, sj)],
                as_class(sj, sj, 0),
                as_class(si, sj, fi),
            )
            right = compose_classes(
                homs_data[(si, sj)],
                homs_data[(si, si)],
                homs_data[(si, sj)],
                as_class(si, sj, fi),
                as_class(si, si, 0),
            )
            expected = as_class(si, sj, fi)
            if left != expected or right != expected:
                raise SuspensionError("identity classes do not act strictly")

    out = DirectedGradedCategory(labels, homs, comp)
    report = validate(out)
    if not report.ok:
        raise SuspensionError("suspension output fails validation: " + report.violations[0])
    if not formality_check(out):
        raise SuspensionError("suspension output fails the formality scan")
    return out


def verify_suspension(A: DirectedGradedCategory, k: int) -> SuspensionReport:
    """Compare suspend(A, k) against tensor(A, a_category(k - 1)).

    The canonical bijection matches (x, j) with the pair (x, j); the report
    records graded-dimension agreement, gauge equivalence with its witness,
    and the anticommuting-square audit of the suspension output.
    """
    S = suspend(A, k)
    T = tensor(A, a_category(k - 1))
    messages: list[str] = []
    dims_ok = True
    for i in range(len(S.objects)):
        for j in range(i, len(S.objects)):
            if S.graded_dims(i, j) != T.graded_dims(i, j):
                dims_ok = False
                messages.append(
                    f"graded dims differ at ({S.objects[i]}, {S.objects[j]}): "
                    f"{S.graded_dims(i, j)} vs {T.graded_dims(i, j)}"
                )
    bijection = {label: label for label in S.objects}
    if tuple(T.objects) != tuple(S.objects):
        raise SuspensionError("object orders of suspension and tensor model differ")
    gauge = gauge_isomorphic(S, T, bijection)
    if not gauge.ok:
        messages.append(f"gauge comparison failed: {gauge.reason}")
    audit = square_sign_audit(S)
    if audit:
        messages.extend(audit)
    ok = dims_ok and gauge.ok and not audit
    return SuspensionReport(
        ok=ok,
        dims_ok=dims_ok,
        gauge_ok=gauge.ok,
        audit_ok=not audit,
        witness=gauge.witness,
        messages=tuple(messages),
    )


def suspension_tower(p: Iterable[int]) -> list[DirectedGradedCategory]:
    """All stages of the iterated suspension for an exponent sequence.

    Stage 0 is the linear quiver on p_1 - 1 objects with 1-tuple labels; each
    later stage suspends the previous one with k = p_i, flattening labels to
    tuples, so stage t has objects indexed by (i_1, ..., i_{t+1}).
    """
    p = exponent_seq(p)
    stage = relabel(a_category(p[0] - 1), {x: (x,) for x in a_category(p[0] - 1).objects})
    tower = [stage]
    for pi in p[1:]:
        stage = suspend(stage, pi, label_fn=lambda x, j: x + (j,))
        tower.append(stage)
    return tower


def fukaya_bp(p: Iterable[int], verify: bool = False) -> DirectedGradedCategory:
    """Iterated suspension attached to an exponent sequence.

    With ``verify`` each step is checked gauge-isomorphic to the tensor of
    the previous stage with a linear quiver, and the final category against
    ``tensor_bp(p)`` including the anticommuting-square audit; any failure
    raises SuspensionError.
    """
    p = exponent_seq(p)
    if not verify:
        return suspension_tower(p)[-1]
    prev = relabel(a_category(p[0] - 1), {x: (x,) for x in a_category(p[0] - 1).objects})
    for pi in p[1:]:
        report = verify_suspension(prev, pi)
        if not report.ok:
            raise SuspensionError("; ".join(report.messages) or "suspension step failed")
        prev = suspend(prev, pi, label_fn=lambda x, j: x + (j,))
    model = tensor_bp(p)
    final = gauge_isomorphic(prev, model, {x: x for x in prev.objects})
    if not final.ok:
        raise SuspensionError(f"final comparison failed: {final.reason}")
    audit = square_sign_audit(prev)
    if audit:
        raise SuspensionError("; ".join(audit))
    return prev
