"""Cohomological data of a generic even-codimension immersion.

A model bundles the source and target rings, the pullback and pushforward
maps, the normal Euler class and the total Pontrjagin (optionally Chern)
classes.  Normal-bundle characteristic classes are always derived from the
source/target data, never user-supplied.  Models need not come from an
actual immersion; validation checks exactly the hypotheses the multiple
point formulas use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .graded import (
    Coords,
    GradedAlgebraError,
    GradedClass,
    GradedRing,
    RingComponent,
    signature_class,
)


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class LinearMap:
    """Linear map between graded rings, given by images of basis elements."""

    domain: GradedRing
    codomain: GradedRing
    images: Mapping[int, GradedClass]
    degree_shift: int = 0

    def __call__(self, cls: GradedClass) -> GradedClass:
        if cls.ring is not self.domain and cls.ring != self.domain:
            raise ModelError("class is not in the domain of the map")
        out = self.codomain.zero()
        for i, c in cls.coords.items():
            img = self.images.get(i)
            if img is not None:
                out = out + c * img
        return out

    @classmethod
    def from_coords(cls, domain: GradedRing, codomain: GradedRing,
                    images: Mapping[int, Mapping[int, object]],
                    degree_shift: int = 0) -> "LinearMap":
        built = {int(i): codomain.element(coords) for i, coords in images.items()}
        return cls(domain, codomain, built, degree_shift)

    def respects_degrees(self) -> List[str]:
        issues = []
        for i, img in self.images.items():
            want = self.domain.degrees[i] + self.degree_shift
            for j in img.coords:
                if self.codomain.degrees[j] != want:
                    issues.append(
                        f"image of {self.domain.labels[i]} has a term of degree "
                        f"{self.codomain.degrees[j]}, expected {want}")
        return issues


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: List[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, ok, detail))

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            status = "ok" if c.ok else "FAIL"
            lines.append(f"[{status}] {c.name}" + (f": {c.detail}" if c.detail and not c.ok else ""))
        return "\n".join(lines)


class ImmersionModel:
    """The full cohomological datum of an even-codimension immersion."""

    def __init__(
        self,
        source: GradedRing,
        target: GradedRing,
        pullback: LinearMap,
        pushforward: LinearMap,
        codim: int,
        euler: GradedClass,
        pontrjagin_source: GradedClass,
        pontrjagin_target: GradedClass,
        chern_source: Optional[GradedClass] = None,
        chern_target: Optional[GradedClass] = None,
        name: str = "",
    ):
        if codim <= 0 or codim % 2:
            raise ModelError(f"codimension must be a positive even integer, got {codim}")
        self.source = source
        self.target = target
        self.pullback = pullback
        self.pushforward = pushforward
        self.codim = codim
        self.euler = euler
        self.pontrjagin_source = pontrjagin_source
        self.pontrjagin_target = pontrjagin_target
        self.chern_source = chern_source
        self.chern_target = chern_target
        self.name = name
        self._cache: Dict[str, object] = {}

    # ---- derived classes --------------------------------------------------

    def _cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def normal_pontrjagin(self) -> GradedClass:
        """P of the normal bundle: pulled-back target P times inverse source P."""
        return self._cached("P_nu", lambda: self.pullback(self.pontrjagin_target)
                            * self.pontrjagin_source.invert_unital())

    @property
    def normal_chern(self) -> GradedClass:
        if self.chern_source is None or self.chern_target is None:
            raise ModelError("model carries no Chern data")
        return self._cached("C_nu", lambda: self.pullback(self.chern_target)
                            * self.chern_source.invert_unital())

    @property
    def l_source(self) -> GradedClass:
        return self._cached("L_M", lambda: signature_class(self.pontrjagin_source))

    @property
    def l_target(self) -> GradedClass:
        return self._cached("L_N", lambda: signature_class(self.pontrjagin_target))

    @property
    def l_normal(self) -> GradedClass:
        return self._cached("L_nu", lambda: signature_class(self.normal_pontrjagin))

    @property
    def l_normal_inverse(self) -> GradedClass:
        return self._cached("L_nu_inv", lambda: self.l_normal.invert_unital())

    def pushpull(self, cls: GradedClass) -> GradedClass:
        """The composite pullback(pushforward(x)) on the source ring."""
        return self.pullback(self.pushforward(cls))

    def source_dimensions(self) -> Tuple[int, ...]:
        return tuple(sorted({c.top_degree for c in self.source.components}))

    def __repr__(self) -> str:
        return f"ImmersionModel({self.name or 'unnamed'}, codim={self.codim})"


def validate(model: ImmersionModel) -> ValidationReport:
    """Run every consistency check the formulas rely on.

    Report-valued: failures carry a witness, nothing raises.
    """
    report = ValidationReport()

    src_issues = model.source.check_axioms()
    report.add("source ring axioms", not src_issues, "; ".join(src_issues[:3]))
    tgt_issues = model.target.check_axioms()
    report.add("target ring axioms", not tgt_issues, "; ".join(tgt_issues[:3]))

    report.add("codimension positive even", model.codim > 0 and model.codim % 2 == 0,
               f"codim={model.codim}")

    e_ok = all(model.source.degrees[i] == model.codim for i in model.euler.coords)
    report.add("euler class degree equals codimension", e_ok, f"euler={model.euler}")

    # pullback: unital degree-preserving ring homomorphism
    issues = model.pullback.respects_degrees()
    report.add("pullback preserves degrees", not issues, "; ".join(issues[:3]))
    unital = model.pullback(model.target.unit()) == model.source.unit()
    report.add("pullback is unital", unital)
    mult_witness = ""
    mult_ok = True
    n = len(model.target.labels)
    for i in range(n):
        for j in range(i, n):
            bi, bj = model.target.basis_class(i), model.target.basis_class(j)
            lhs = model.pullback(bi * bj)
            rhs = model.pullback(bi) * model.pullback(bj)
            if lhs != rhs:
                mult_ok = False
                mult_witness = (f"on ({model.target.labels[i]}, {model.target.labels[j]}): "
                                f"{lhs} != {rhs}")
                break
        if not mult_ok:
            break
    report.add("pullback is multiplicative", mult_ok, mult_witness)

    issues = model.pushforward.respects_degrees()
    shift_ok = model.pushforward.degree_shift == model.codim and not issues
    report.add("pushforward raises degree by codimension", shift_ok,
               f"shift={model.pushforward.degree_shift}; " + "; ".join(issues[:3]))

    # projection formula on all basis pairs
    proj_ok, proj_witness = True, ""
    for i in range(len(model.source.labels)):
        x = model.source.basis_class(i)
        for j in range(len(model.target.labels)):
            y = model.target.basis_class(j)
            lhs = model.pushforward(x * model.pullback(y))
            rhs = model.pushforward(x) * y
            if lhs != rhs:
                proj_ok = False
                proj_witness = (f"on ({model.source.labels[i]}, {model.target.labels[j]}): "
                                f"{lhs} != {rhs}")
                break
        if not proj_ok:
            break
    report.add("projection formula", proj_ok, proj_witness)

    # integration compatibility on top-degree source basis elements
    int_ok, int_witness = True, ""
    for i in range(len(model.source.labels)):
        comp = model.source.component_of(i)
        if model.source.degrees[i] != comp.top_degree:
            continue
        x = model.source.basis_class(i)
        lhs = model.pushforward(x).integrate()
        rhs = x.integrate()
        if lhs != rhs:
            int_ok = False
            int_witness = f"on {model.source.labels[i]}: {lhs} != {rhs}"
            break
    report.add("integration compatibility", int_ok, int_witness)

    for label, cls in (("source", model.pontrjagin_source), ("target", model.pontrjagin_target)):
        ok = cls.is_unital() and all(
            cls.ring.degrees[i] % 4 == 0 for i in cls.coords)
        report.add(f"{label} Pontrjagin class is unital with degrees 0 mod 4", ok, f"{cls}")

    for label, cls in (("source", model.chern_source), ("target", model.chern_target)):
        if cls is not None:
            report.add(f"{label} Chern class is unital", cls.is_unital(), f"{cls}")

    # derived-class relations (hold by construction; checked as regression)
    try:
        rel_p = model.normal_pontrjagin * model.pontrjagin_source == model.pullback(
            model.pontrjagin_target)
        rel_l = model.l_normal * model.l_source == signature_class(
            model.pullback(model.pontrjagin_target))
        report.add("normal Pontrjagin relation", rel_p)
        report.add("normal signature-class relation", rel_l)
    except GradedAlgebraError as exc:
        report.add("normal class derivation", False, str(exc))

    return report


def embedding_consistent(model: ImmersionModel) -> bool:
    """True iff pullback(pushforward(x)) = euler * x on every basis element.

    This is the self-intersection identity of embeddings; models satisfying
    it have no multiple points, so their k>1 invariants vanish.
    """
    for i in range(len(model.source.labels)):
        x = model.source.basis_class(i)
        if model.pushpull(x) != model.euler * x:
            return False
    return True


# ---------------------------------------------------------------------------
# Disjoint unions
# ---------------------------------------------------------------------------


def product_ring(rings: Sequence[GradedRing], name: str = "") -> GradedRing:
    """Direct product of graded rings, one component per factor.

    Basis labels are suffixed with the factor index; products across
    factors vanish; the unit and integral are the sums of the factors'.
    """
    labels: List[str] = []
    degrees: List[int] = []
    products: Dict[Tuple[int, int], Coords] = {}
    integral: Coords = {}
    unit: Coords = {}
    components: List[RingComponent] = []
    offset = 0
    for fi, ring in enumerate(rings):
        labels.extend(f"{lab}@{fi}" for lab in ring.labels)
        degrees.extend(ring.degrees)
        for (i, j), coords in ring.products.items():
            products[(i + offset, j + offset)] = {idx + offset: c for idx, c in coords.items()}
        for idx, c in ring.integral.items():
            integral[idx + offset] = c
        for idx, c in ring.unit_coords.items():
            unit[idx + offset] = c
        for comp in ring.components:
            components.append(RingComponent(
                f"{comp.name}@{fi}", tuple(i + offset for i in comp.indices), comp.top_degree))
        offset += len(ring.labels)
    return GradedRing(labels, degrees, products, integral,
                      top_degree=max(r.top_degree for r in rings),
                      unit=unit, components=tuple(components), name=name)


def _block_class(union: GradedRing, classes: Sequence[GradedClass],
                 offsets: Sequence[int]) -> GradedClass:
    coords: Coords = {}
    for cls, off in zip(classes, offsets):
        for i, c in cls.coords.items():
            coords[i + off] = c
    return union.element(coords)


def disjoint_union(models: Sequence[ImmersionModel], name: str = "") -> ImmersionModel:
    """Combine immersions of disjoint sources into one shared target."""
    if not models:
        raise ModelError("disjoint union of zero models")
    if len(models) == 1:
        return models[0]
    target = models[0].target
    for m in models[1:]:
        if m.target != target:
            raise ModelError("disjoint union requires identical target data")
        if m.codim != models[0].codim:
            raise ModelError("disjoint union requires equal codimension")
        if m.pontrjagin_target != models[0].pontrjagin_target:
            raise ModelError("disjoint union requires one shared target Pontrjagin class")
    source = product_ring([m.source for m in models],
                          name=name + ".source" if name else "")
    offsets = []
    off = 0
    for m in models:
        offsets.append(off)
        off += len(m.source.labels)

    pull_images = {
        j: _block_class(source, [m.pullback(target.basis_class(j)) for m in models], offsets)
        for j in range(len(target.labels))
    }
    pullback = LinearMap(target, source, pull_images, degree_shift=0)

    push_images: Dict[int, GradedClass] = {}
    for m, off in zip(models, offsets):
        for i, img in m.pushforward.images.items():
            push_images[i + off] = target.element(img.coords)
    pushforward = LinearMap(source, target, push_images, degree_shift=models[0].codim)

    euler = _block_class(source, [m.euler for m in models], offsets)
    p_src = _block_class(source, [m.pontrjagin_source for m in models], offsets)
    chern_src = None
    chern_tgt = None
    if all(m.chern_source is not None and m.chern_target is not None for m in models):
        chern_src = _block_class(source, [m.chern_source for m in models], offsets)
        chern_tgt = models[0].chern_target
    return ImmersionModel(
        source=source,
        target=target,
        pullback=pullback,
        pushforward=pushforward,
        codim=models[0].codim,
        euler=euler,
        pontrjagin_source=p_src,
        pontrjagin_target=models[0].pontrjagin_target,
        chern_source=chern_src,
        chern_target=chern_tgt,
        name=name or "union(" + ",".join(m.name or "?" for m in models) + ")",
    )


# ---------------------------------------------------------------------------
# Exact linear solving, used for image-membership preconditions
# ---------------------------------------------------------------------------


def solve_linear(columns: Sequence[Coords], target: Coords) -> Optional[List[Fraction]]:
    """Solve sum_j v_j * columns[j] = target over the rationals.

    Returns one solution vector or None when the system is inconsistent.
    """
    rows = sorted({i for col in columns for i in col} | set(target))
    row_pos = {r: i for i, r in enumerate(rows)}
    nrows, ncols = len(rows), len(columns)
    mat = [[Fraction(0)] * (ncols + 1) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for r, c in col.items():
            mat[row_pos[r]][j] = c
    for r, c in target.items():
        mat[row_pos[r]][ncols] = c

    pivots: List[Tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [v * inv for v in mat[row]]
        for r in range(nrows):
            if r != row and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[row])]
        pivots.append((row, col))
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if mat[r][ncols]:
            return None
    solution = [Fraction(0)] * ncols
    for r, c in pivots:
        solution[c] = mat[r][ncols]
    return solution


def preimage_under(linmap: LinearMap, target: GradedClass) -> Optional[GradedClass]:
    """A class mapping to ``target`` under the linear map, or None."""
    indices = sorted(linmap.images)
    columns = [linmap.images[i].coords for i in indices]
    solution = solve_linear(columns, target.coords)
    if solution is None:
        return None
    return linmap.domain.element({i: v for i, v in zip(indices, solution) if v})
