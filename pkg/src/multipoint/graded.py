"""Finite graded-commutative rational algebras and their tensor powers.

A ring is given by an explicit basis with even degrees, a structure-constant
table for the product, an integration functional supported in the top
degree of each component, and a distinguished unit.  Only even degrees are
admitted, so there are no Koszul signs anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .partitions import SetPartition
from .polynomials import exp_coeffs, signature_genus_log_coeffs

Coords = Dict[int, Fraction]


class GradedAlgebraError(ValueError):
    pass


class NonUnitalClassError(GradedAlgebraError):
    pass


def _clean(coords: Mapping[int, object]) -> Coords:
    out: Coords = {}
    for i, c in coords.items():
        c = Fraction(c)
        if c:
            out[int(i)] = c
    return out


@dataclass(frozen=True)
class RingComponent:
    """One connected component of the underlying space: a basis index
    range with its own top degree (the dimension of that component)."""

    name: str
    indices: Tuple[int, ...]
    top_degree: int


class GradedRing:
    """Graded-commutative algebra over Q on a finite basis.

    ``products`` maps basis index pairs (i, j) with i <= j to sparse
    coordinate dicts; the table is completed symmetrically.  ``integral``
    is a linear functional given by its values on basis elements; ring
    validation confines its support to the top degree of each component.
    """

    def __init__(
        self,
        labels: Sequence[str],
        degrees: Sequence[int],
        products: Mapping[Tuple[int, int], Mapping[int, object]],
        integral: Mapping[int, object],
        top_degree: Optional[int] = None,
        unit: Optional[Mapping[int, object]] = None,
        components: Optional[Sequence[RingComponent]] = None,
        name: str = "",
    ):
        self.labels = tuple(labels)
        self.degrees = tuple(int(d) for d in degrees)
        if len(self.labels) != len(self.degrees):
            raise GradedAlgebraError("labels and degrees differ in length")
        for d in self.degrees:
            if d < 0 or d % 2:
                raise GradedAlgebraError(f"basis degree {d} is not a nonnegative even integer")
        self.name = name
        self.top_degree = max(self.degrees) if top_degree is None else int(top_degree)

        table: Dict[Tuple[int, int], Coords] = {}
        for (i, j), coords in products.items():
            i, j = int(i), int(j)
            key = (i, j) if i <= j else (j, i)
            coords = _clean(coords)
            if key in table and table[key] != coords:
                raise GradedAlgebraError(f"conflicting product entries for {key}")
            if coords:
                table[key] = coords
        self.products = table

        self.integral = _clean(integral)

        if unit is None:
            zero_deg = [i for i, d in enumerate(self.degrees) if d == 0]
            if len(zero_deg) != 1:
                raise GradedAlgebraError("unit must be given explicitly for rings "
                                         "with several degree-0 basis elements")
            unit = {zero_deg[0]: 1}
        self.unit_coords = _clean(unit)

        if components is None:
            components = [RingComponent("all", tuple(range(len(self.labels))), self.top_degree)]
        self.components = tuple(components)
        self._component_of = {}
        for comp in self.components:
            for i in comp.indices:
                if i in self._component_of:
                    raise GradedAlgebraError("components overlap")
                self._component_of[i] = comp
        if set(self._component_of) != set(range(len(self.labels))):
            raise GradedAlgebraError("components do not cover the basis")

    # ---- element constructors -------------------------------------------

    def zero(self) -> "GradedClass":
        return GradedClass(self, {})

    def unit(self) -> "GradedClass":
        return GradedClass(self, self.unit_coords)

    def basis_class(self, i: int) -> "GradedClass":
        return GradedClass(self, {i: Fraction(1)})

    def element(self, coords: Mapping[int, object]) -> "GradedClass":
        return GradedClass(self, _clean(coords))

    # ---- products ---------------------------------------------------------

    def basis_product(self, i: int, j: int) -> Coords:
        key = (i, j) if i <= j else (j, i)
        return self.products.get(key, {})

    def component_of(self, index: int) -> RingComponent:
        return self._component_of[index]

    # ---- checks -------------------------------------------------------------

    def check_axioms(self) -> List[str]:
        """Return a list of human-readable axiom violations (empty if none)."""
        issues: List[str] = []
        n = len(self.labels)
        unit = self.unit()
        for i in range(n):
            b = self.basis_class(i)
            if unit * b != b:
                issues.append(f"unit law fails on basis element {self.labels[i]}")
        for i in range(n):
            for j in range(i, n):
                d = self.degrees[i] + self.degrees[j]
                comp_i, comp_j = self._component_of[i], self._component_of[j]
                for idx, c in self.basis_product(i, j).items():
                    if self.degrees[idx] != d:
                        issues.append(
                            f"product {self.labels[i]}*{self.labels[j]} has a term "
                            f"in degree {self.degrees[idx]}, expected {d}")
                    if self._component_of[idx] is not comp_i:
                        issues.append(
                            f"product {self.labels[i]}*{self.labels[j]} leaves its component")
                if comp_i is not comp_j and self.basis_product(i, j):
                    issues.append(
                        f"cross-component product {self.labels[i]}*{self.labels[j]} is nonzero")
                if d > comp_i.top_degree and self.basis_product(i, j):
                    issues.append(
                        f"product {self.labels[i]}*{self.labels[j]} exceeds the top degree")
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    lhs = (self.basis_class(i) * self.basis_class(j)) * self.basis_class(l)
                    rhs = self.basis_class(i) * (self.basis_class(j) * self.basis_class(l))
                    if lhs != rhs:
                        issues.append(
                            f"associativity fails on "
                            f"({self.labels[i]},{self.labels[j]},{self.labels[l]})")
        for idx in self.integral:
            comp = self._component_of[idx]
            if self.degrees[idx] != comp.top_degree:
                issues.append(
                    f"integral supported on {self.labels[idx]} of degree "
                    f"{self.degrees[idx]}, component top is {comp.top_degree}")
        for idx, c in self.unit_coords.items():
            if self.degrees[idx] != 0:
                issues.append("unit has a positive-degree term")
        return issues

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedRing):
            return NotImplemented
        return (self.labels == other.labels and self.degrees == other.degrees
                and self.products == other.products and self.integral == other.integral
                and self.unit_coords == other.unit_coords
                and self.top_degree == other.top_degree
                and self.components == other.components)

    def __hash__(self):
        return hash((self.labels, self.degrees, self.top_degree))

    def __repr__(self) -> str:
        return f"GradedRing({self.name or self.labels}, top={self.top_degree})"


class GradedClass:
    """Element of a GradedRing, stored as a sparse rational coordinate map."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: GradedRing, coords: Mapping[int, object]):
        self.ring = ring
        self.coords = _clean(coords)
        for i in self.coords:
            if not 0 <= i < len(ring.labels):
                raise GradedAlgebraError(f"coordinate index {i} out of range")

    # ---- ring operations ---------------------------------------------------

    def _check(self, other: "GradedClass") -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise GradedAlgebraError("classes live in different rings")

    def __add__(self, other: "GradedClass") -> "GradedClass":
        self._check(other)
        out = dict(self.coords)
        for i, c in other.coords.items():
            out[i] = out.get(i, Fraction(0)) + c
        return GradedClass(self.ring, out)

    def __neg__(self) -> "GradedClass":
        return GradedClass(self.ring, {i: -c for i, c in self.coords.items()})

    def __sub__(self, other: "GradedClass") -> "GradedClass":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GradedClass):
            self._check(other)
            out: Coords = {}
            for i, ci in self.coords.items():
                for j, cj in other.coords.items():
                    for idx, s in self.ring.basis_product(i, j).items():
                        out[idx] = out.get(idx, Fraction(0)) + ci * cj * s
            return GradedClass(self.ring, out)
        c = Fraction(other)
        return GradedClass(self.ring, {i: c * v for i, v in self.coords.items()})

    def __rmul__(self, other) -> "GradedClass":
        return self * other

    def __pow__(self, n: int) -> "GradedClass":
        if n < 0:
            raise ValueError("negative power; use invert_unital first")
        out = self.ring.unit()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedClass):
            return NotImplemented
        return (self.ring is other.ring or self.ring == other.ring) and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.ring), frozenset(self.coords.items())))

    # ---- graded structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coords

    def degree_part(self, d: int) -> "GradedClass":
        return GradedClass(self.ring,
                           {i: c for i, c in self.coords.items() if self.ring.degrees[i] == d})

    def homogeneous_parts(self) -> Dict[int, "GradedClass"]:
        degs = sorted({self.ring.degrees[i] for i in self.coords})
        return {d: self.degree_part(d) for d in degs}

    def select_degrees(self, J: Sequence[int]) -> "GradedClass":
        """The product of the degree-j parts of this class, over j in J."""
        out = self.ring.unit()
        for j in J:
            if j % 2:
                raise GradedAlgebraError(f"odd degree {j} in index sequence")
            out = out * self.degree_part(j)
        return out

    def is_unital(self) -> bool:
        return self.degree_part(0) == self.ring.unit()

    def invert_unital(self) -> "GradedClass":
        """Inverse of a total class with degree-0 part 1, by the geometric
        series in the nilpotent higher-degree part."""
        if not self.is_unital():
            raise NonUnitalClassError("non-unital total class")
        nil = self - self.ring.unit()
        out = self.ring.unit()
        term = self.ring.unit()
        for _ in range(self.ring.top_degree // 2 + 1):
            term = term * nil
            if term.is_zero():
                break
            out = out - term if _ % 2 == 0 else out + term
        return out

    def eval_series(self, coeffs: Sequence[Fraction]) -> "GradedClass":
        """Evaluate a formal power series at this nilpotent class.

        coeffs[j] is the coefficient of the j-th power; the constant term
        contributes coeffs[0] times the unit.  Requires a zero degree-0
        part so the sum terminates.
        """
        if not self.degree_part(0).is_zero():
            raise GradedAlgebraError("series evaluation needs a nilpotent argument")
        out = Fraction(coeffs[0]) * self.ring.unit()
        power = self.ring.unit()
        for j in range(1, len(coeffs)):
            power = power * self
            if power.is_zero():
                break
            out = out + Fraction(coeffs[j]) * power
        else:
            if not (power * self).is_zero():
                raise GradedAlgebraError("series coefficients exhausted before nilpotency")
        return out

    def integrate(self) -> Fraction:
        """Pair against the fundamental class: apply the integration
        functional (supported in top degrees) to the coordinates."""
        total = Fraction(0)
        for i, c in self.coords.items():
            w = self.ring.integral.get(i)
            if w:
                total += c * w
        return total

    def __repr__(self) -> str:
        if not self.coords:
            return "0"
        bits = []
        for i in sorted(self.coords):
            c = self.coords[i]
            lab = self.ring.labels[i]
            bits.append(f"{c}*{lab}" if lab != "1" else f"{c}")
        return " + ".join(bits)


def nilpotency_order(ring: GradedRing) -> int:
    """Safe series-truncation length for nilpotent classes of the ring."""
    return ring.top_degree // 2 + 2


def signature_class(P: GradedClass) -> GradedClass:
    """The Hirzebruch L-class of a total Pontrjagin class.

    Computed from the logarithm of the characteristic series: the degree-4j
    components of P are treated as elementary symmetric functions of formal
    Chern roots, converted to power sums by Newton's identities, and fed
    into exp(sum c_j s_j).  Exact, and multiplicative by construction.
    """
    ring = P.ring
    if not P.is_unital():
        raise NonUnitalClassError("total Pontrjagin class must be unital")
    for d, part in P.homogeneous_parts().items():
        if d % 4 and d != 0:
            raise GradedAlgebraError(f"Pontrjagin-type class has a degree-{d} part")
    w = ring.top_degree // 4
    if w == 0:
        return ring.unit()
    elem = [ring.zero()] + [P.degree_part(4 * j) for j in range(1, w + 1)]
    power_sums = [ring.zero()] * (w + 1)
    for j in range(1, w + 1):
        acc = Fraction((-1) ** (j - 1) * j) * elem[j]
        for i in range(1, j):
            acc = acc + Fraction((-1) ** (i - 1)) * (elem[i] * power_sums[j - i])
        power_sums[j] = acc
    c = signature_genus_log_coeffs(w)
    log_l = ring.zero()
    for j in range(1, w + 1):
        log_l = log_l + c[j] * power_sums[j]
    return log_l.eval_series(exp_coeffs(nilpotency_order(ring)))


class TensorClass:
    """Element of the k-fold tensor power of a GradedRing.

    Terms are kept in canonical merged form: a map from k-tuples of basis
    indices to rational coefficients.
    """

    __slots__ = ("ring", "arity", "terms")

    def __init__(self, ring: GradedRing, arity: int, terms: Mapping[Tuple[int, ...], object]):
        if arity < 1:
            raise GradedAlgebraError("tensor arity must be at least 1")
        self.ring = ring
        self.arity = arity
        clean: Dict[Tuple[int, ...], Fraction] = {}
        for idx, c in terms.items():
            c = Fraction(c)
            if not c:
                continue
            idx = tuple(int(i) for i in idx)
            if len(idx) != arity:
                raise GradedAlgebraError(f"term {idx} has wrong arity")
            clean[idx] = c
        self.terms = clean

    def _check(self, other: "TensorClass") -> None:
        if self.arity != other.arity or (self.ring is not other.ring and self.ring != other.ring):
            raise GradedAlgebraError("tensor classes are not compatible")

    def __add__(self, other: "TensorClass") -> "TensorClass":
        self._check(other)
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out.get(idx, Fraction(0)) + c
        return TensorClass(self.ring, self.arity, out)

    def __neg__(self) -> "TensorClass":
        return TensorClass(self.ring, self.arity, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "TensorClass") -> "TensorClass":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorClass):
            self._check(other)
            out: Dict[Tuple[int, ...], Fraction] = {}
            for idx1, c1 in self.terms.items():
                for idx2, c2 in other.terms.items():
                    slot_coords = [self.ring.basis_product(a, b) for a, b in zip(idx1, idx2)]
                    if any(not s for s in slot_coords):
                        continue
                    for combo in iproduct(*(s.items() for s in slot_coords)):
                        idx = tuple(i for i, _ in combo)
                        coeff = c1 * c2
                        for _, s in combo:
                            coeff *= s
                        out[idx] = out.get(idx, Fraction(0)) + coeff
            return TensorClass(self.ring, self.arity, out)
        c = Fraction(other)
        return TensorClass(self.ring, self.arity, {i: c * v for i, v in self.terms.items()})

    def __rmul__(self, other) -> "TensorClass":
        return self * other

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorClass):
            return NotImplemented
        return (self.arity == other.arity and self.terms == other.terms
                and (self.ring is other.ring or self.ring == other.ring))

    def is_zero(self) -> bool:
        return not self.terms

    def term_degree(self, idx: Tuple[int, ...]) -> int:
        return sum(self.ring.degrees[i] for i in idx)

    def degree_part(self, d: int) -> "TensorClass":
        return TensorClass(self.ring, self.arity,
                           {idx: c for idx, c in self.terms.items() if self.term_degree(idx) == d})

    def select_degrees(self, J: Sequence[int]) -> "TensorClass":
        """Product of total-degree parts, one factor per entry of J."""
        out = cross([self.ring.unit()] * self.arity)
        for j in J:
            if j % 2:
                raise GradedAlgebraError(f"odd degree {j} in index sequence")
            out = out * self.degree_part(j)
        return out

    def scale_slot(self, slot: int, cls: GradedClass) -> "TensorClass":
        """Multiply the given tensor slot by a class of the base ring."""
        out: Dict[Tuple[int, ...], Fraction] = {}
        for idx, c in self.terms.items():
            base = self.ring.basis_class(idx[slot]) * cls
            for i, s in base.coords.items():
                new = idx[:slot] + (i,) + idx[slot + 1:]
                out[new] = out.get(new, Fraction(0)) + c * s
        return TensorClass(self.ring, self.arity, out)

    def slot_factors(self, idx: Tuple[int, ...]) -> List[GradedClass]:
        return [self.ring.basis_class(i) for i in idx]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for idx in sorted(self.terms):
            mono = " x ".join(self.ring.labels[i] for i in idx)
            bits.append(f"{self.terms[idx]}*({mono})")
        return " + ".join(bits)


def cross(classes: Sequence[GradedClass]) -> TensorClass:
    """Cross product: the tensor class with the given classes as factors."""
    if not classes:
        raise GradedAlgebraError("cross product needs at least one factor")
    ring = classes[0].ring
    for cls in classes[1:]:
        if cls.ring is not ring and cls.ring != ring:
            raise GradedAlgebraError("cross product factors live in different rings")
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for combo in iproduct(*(cls.coords.items() for cls in classes)):
        idx = tuple(i for i, _ in combo)
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        terms[idx] = terms.get(idx, Fraction(0)) + coeff
    return TensorClass(ring, len(classes), terms)


def diagonal_pullback(alpha: SetPartition, x: TensorClass) -> TensorClass:
    """Pull back along the partial diagonal of a set partition.

    For an elementary tensor the factors indexed by each block of alpha
    are multiplied in the base ring; the resulting factors are arranged
    in the canonical block order.
    """
    if alpha.k != x.arity:
        raise GradedAlgebraError(f"partition on {alpha.k} elements applied to arity {x.arity}")
    out_terms: Dict[Tuple[int, ...], Fraction] = {}
    ring = x.ring
    for idx, c in x.terms.items():
        block_classes = []
        for block in alpha.blocks:
            cls = ring.basis_class(idx[block[0] - 1])
            for i in block[1:]:
                cls = cls * ring.basis_class(idx[i - 1])
            block_classes.append(cls)
        if any(cls.is_zero() for cls in block_classes):
            continue
        for combo in iproduct(*(cls.coords.items() for cls in block_classes)):
            new = tuple(i for i, _ in combo)
            coeff = c
            for _, s in combo:
                coeff *= s
            out_terms[new] = out_terms.get(new, Fraction(0)) + coeff
    return TensorClass(ring, len(alpha.blocks), out_terms)
