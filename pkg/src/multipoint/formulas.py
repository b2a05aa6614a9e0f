"""Multiple-point formulas: transfer operators, signatures, characteristic
numbers, the virtual signature class, and the special-case evaluators.

Partition sums run over the full partition lattice when the tensor argument
is arbitrary, and are collected per type vector (with exact multinomial
counts) when the argument is symmetric.  Everything is exact rational
arithmetic; agreement checks are equalities, not tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .graded import GradedAlgebraError, GradedClass, TensorClass, cross, diagonal_pullback
from .model import ImmersionModel, ModelError, preimage_under
from .partitions import SetPartition, all_partitions, count_by_type_marked, marked_type_vectors, type_vectors
from .series import log_coefficient


class RouteDisagreement(ArithmeticError):
    """Two routes that must agree exactly produced different values."""


class PreconditionError(ModelError):
    """A special-case evaluator was invoked outside its hypothesis."""


@dataclass
class MultipointResult:
    """One computed multiple-point quantity, with bookkeeping for reports."""

    k: int
    kind: str
    value: object  # Fraction or GradedClass
    dimension: Optional[int] = None
    warnings: List[str] = field(default_factory=list)


def multiple_point_dimension(model: ImmersionModel, k: int) -> Tuple[int, ...]:
    """Expected dimension of the k-tuple point manifold, per source component."""
    return tuple(sorted({c.top_degree - (k - 1) * model.codim
                         for c in model.source.components}))


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"multiplicity k must be at least 1, got {k}")


def _check_tensor(model: ImmersionModel, k: int, x: TensorClass) -> None:
    if x.arity != k:
        raise GradedAlgebraError(f"tensor arity {x.arity} does not match k={k}")
    if x.ring != model.source:
        raise GradedAlgebraError("tensor argument must live on the source ring")


# ---------------------------------------------------------------------------
# The transfer operators (restriction to the k-tuple locus, pushed to the
# source or the target)
# ---------------------------------------------------------------------------


def transfer_to_source(model: ImmersionModel, k: int, x: TensorClass) -> GradedClass:
    """Push the restriction of a class on the k-fold source power down to
    the source, by the solved partition-sum formula.

    Per partition, the block containing 1 contributes its factor product
    directly (weighted by a power of the Euler class); every other block
    passes through pullback(pushforward(.)).  Homogeneous of degree
    (k-1)*codim on elementary tensors.
    """
    _check_k(k)
    _check_tensor(model, k, x)
    e = model.euler
    out = model.source.zero()
    for alpha in all_partitions(k):
        for idx, coeff in x.terms.items():
            first = alpha.blocks[0]
            cls = e ** (len(first) - 1)
            for i in first:
                cls = cls * model.source.basis_class(idx[i - 1])
            if cls.is_zero():
                continue
            weight = Fraction(log_coefficient(len(first)))
            for block in alpha.blocks[1:]:
                inner = e ** (len(block) - 1)
                for i in block:
                    inner = inner * model.source.basis_class(idx[i - 1])
                cls = cls * model.pushpull(inner)
                weight *= log_coefficient(len(block))
                if cls.is_zero():
                    break
            if not cls.is_zero():
                out = out + (coeff * weight) * cls
    return out


def transfer_to_target(model: ImmersionModel, k: int, x: TensorClass) -> GradedClass:
    """Pushforward of the k-tuple restriction all the way to the target:
    every block contributes a pushed-forward factor."""
    _check_k(k)
    _check_tensor(model, k, x)
    e = model.euler
    out = model.target.zero()
    for alpha in all_partitions(k):
        for idx, coeff in x.terms.items():
            cls = model.target.unit()
            weight = Fraction(coeff)
            for block in alpha.blocks:
                inner = e ** (len(block) - 1)
                for i in block:
                    inner = inner * model.source.basis_class(idx[i - 1])
                cls = cls * model.pushforward(inner)
                weight *= log_coefficient(len(block))
                if cls.is_zero():
                    break
            if not cls.is_zero():
                out = out + weight * cls
    return out


# ---------------------------------------------------------------------------
# Signature routes
# ---------------------------------------------------------------------------


def _pushed_block_classes(model: ImmersionModel, k: int) -> List[GradedClass]:
    """pushforward(e^(i-1) * L(normal)^(-i)) for i = 1..k, on the target."""
    u = model.l_normal_inverse
    e = model.euler
    return [model.pushforward(e ** (i - 1) * u ** i) for i in range(1, k + 1)]


def signature_via_source(model: ImmersionModel, k: int) -> Fraction:
    """Signature of the k-tuple point manifold, evaluated on the source:
    transfer of L(source) x L(normal)^{-1} x ... x L(normal)^{-1}."""
    _check_k(k)
    factors = [model.l_source] + [model.l_normal_inverse] * (k - 1)
    value = transfer_to_source(model, k, cross(factors)).integrate()
    return value / factorial(k)


def signature_via_target(model: ImmersionModel, k: int) -> Fraction:
    """Same signature, evaluated on the target: pair L(target) with the
    full pushforward transfer of the tensor power of L(normal)^{-1}."""
    _check_k(k)
    x = cross([model.l_normal_inverse] * k)
    value = (model.l_target * transfer_to_target(model, k, x)).integrate()
    return value / factorial(k)


def signature_collected(model: ImmersionModel, k: int) -> Fraction:
    """Collected form: sum over type vectors with multinomial weights of
    products of pushed normal-class blocks, paired on the target."""
    _check_k(k)
    blocks = _pushed_block_classes(model, k)
    l_target = model.l_target
    total = Fraction(0)
    for tv in type_vectors(k):
        nblocks = sum(tv)
        coeff = Fraction((-1) ** (k - nblocks))
        cls = l_target
        for i, mult in enumerate(tv, start=1):
            if mult:
                coeff /= i ** mult * factorial(mult)
                cls = cls * blocks[i - 1] ** mult
        total += coeff * cls.integrate()
    return total


def signature_collected_source(model: ImmersionModel, k: int) -> Fraction:
    """Collected form on the source, where the block containing the first
    point is marked and keeps its Euler-power weight."""
    _check_k(k)
    u = model.l_normal_inverse
    e = model.euler
    pushed = [model.pushpull(e ** (i - 1) * u ** i) for i in range(1, k + 1)]
    total = Fraction(0)
    for first_size, tv in marked_type_vectors(k):
        nblocks = sum(tv)
        coeff = Fraction((-1) ** (k - 1 - nblocks), k)
        cls = model.l_source * e ** (first_size - 1) * u ** (first_size - 1)
        for i, mult in enumerate(tv, start=1):
            if mult:
                coeff /= i ** mult * factorial(mult)
                cls = cls * pushed[i - 1] ** mult
        total += coeff * cls.integrate()
    return total


SIGNATURE_ROUTES = {
    "general": signature_via_source,
    "via-N": signature_via_target,
    "collected": signature_collected,
    "collected-source": signature_collected_source,
}


def signature(model: ImmersionModel, k: int, route: str = "auto") -> Fraction:
    """Signature of the k-tuple point manifold.

    route 'auto' evaluates every route and insists on exact agreement.
    """
    _check_k(k)
    if route in SIGNATURE_ROUTES:
        return SIGNATURE_ROUTES[route](model, k)
    if route != "auto":
        raise ValueError(f"unknown signature route {route!r}")
    values = {name: fn(model, k) for name, fn in SIGNATURE_ROUTES.items()}
    distinct = set(values.values())
    if len(distinct) != 1:
        raise RouteDisagreement(f"signature routes disagree for k={k}: {values}")
    return distinct.pop()


# ---------------------------------------------------------------------------
# Characteristic numbers
# ---------------------------------------------------------------------------


def _characteristic_number(model: ImmersionModel, k: int, J: Sequence[int],
                           total_source: GradedClass, normal_total: GradedClass,
                           ) -> MultipointResult:
    _check_k(k)
    J = tuple(int(j) for j in J)
    for j in J:
        if j < 0 or j % 2:
            raise GradedAlgebraError(f"index sequence entry {j} is not a nonnegative even integer")
    warnings: List[str] = []
    dims = multiple_point_dimension(model, k)
    if sum(J) not in dims:
        warnings.append(
            f"degree sum {sum(J)} does not match the k-tuple dimension(s) {dims}; "
            "the pairing vanishes")
    inv = normal_total.invert_unital()
    x = cross([total_source] + [inv] * (k - 1))
    selected = x.select_degrees(J)
    value = transfer_to_source(model, k, selected).integrate() / factorial(k)
    return MultipointResult(k=k, kind="characteristic", value=value,
                            dimension=dims[0] if len(dims) == 1 else None,
                            warnings=warnings)


def pontrjagin_number(model: ImmersionModel, k: int, J: Sequence[int]) -> MultipointResult:
    """Pontrjagin number of the k-tuple point manifold for the index
    sequence J (degrees of the selected graded parts)."""
    res = _characteristic_number(model, k, J, model.pontrjagin_source, model.normal_pontrjagin)
    res.kind = "pontrjagin"
    return res


def chern_number(model: ImmersionModel, k: int, J: Sequence[int]) -> MultipointResult:
    """Chern number of the k-tuple point manifold; requires Chern data."""
    if model.chern_source is None or model.chern_target is None:
        raise ModelError("model carries no Chern data")
    res = _characteristic_number(model, k, J, model.chern_source, model.normal_chern)
    res.kind = "chern"
    return res


# ---------------------------------------------------------------------------
# The virtual signature class
# ---------------------------------------------------------------------------


def virtual_signature_class(model: ImmersionModel, k: int) -> GradedClass:
    """The target class whose pairing with L(target)/k! is the signature.

    Computed both by full partition enumeration and by the collected
    type-vector sum; the two must agree exactly.
    """
    _check_k(k)
    blocks = _pushed_block_classes(model, k)
    collected = model.target.zero()
    for tv in type_vectors(k):
        nblocks = sum(tv)
        coeff = Fraction(factorial(k) * (-1) ** (k - nblocks))
        cls = model.target.unit()
        for i, mult in enumerate(tv, start=1):
            if mult:
                coeff /= i ** mult * factorial(mult)
                cls = cls * blocks[i - 1] ** mult
        collected = collected + coeff * cls
    enumerated = transfer_to_target(model, k, cross([model.l_normal_inverse] * k))
    if collected != enumerated:
        raise RouteDisagreement(
            f"virtual signature class mismatch for k={k}: "
            f"collected {collected} vs enumerated {enumerated}")
    return collected


def signature_via_class(model: ImmersionModel, k: int) -> Fraction:
    """Signature through the virtual signature class pairing."""
    cls = virtual_signature_class(model, k)
    return (model.l_target * cls).integrate() / factorial(k)


def virtual_signature_class_union(models: Sequence[ImmersionModel], k: int) -> GradedClass:
    """Multinomial convolution of per-component virtual signature classes.

    Sheets are distributed over the components in every way; a component
    receiving no sheet contributes the empty factor 1, so that the k = 1
    class stays additive over components.
    """
    _check_k(k)
    if not models:
        raise ModelError("no component models")
    target = models[0].target
    for m in models[1:]:
        if m.target != target:
            raise ModelError("component models must share the target")
    per_component: List[Dict[int, GradedClass]] = [
        {ki: virtual_signature_class(m, ki) for ki in range(1, k + 1)} for m in models
    ]

    total = target.zero()

    def rec(idx: int, remaining: int, coeff: Fraction, cls: GradedClass):
        nonlocal total
        if idx == len(models):
            if remaining == 0:
                total = total + coeff * cls
            return
        for ki in range(remaining + 1):
            factor = per_component[idx][ki] if ki else None
            rec(idx + 1, remaining - ki,
                coeff / factorial(ki), cls if factor is None else cls * factor)

    rec(0, k, Fraction(factorial(k)), target.unit())
    return total


# ---------------------------------------------------------------------------
# Special-case evaluators
# ---------------------------------------------------------------------------


def transfer_of_unit(model: ImmersionModel, k: int) -> GradedClass:
    """Closed form of the transfer of the unit tensor:
    prod_{i=1}^{k-1} (pullback(pushforward(1)) - i*euler).

    Valid whenever the Euler class lies in the image of the pullback.
    """
    _check_k(k)
    base = model.pushpull(model.source.unit())
    out = model.source.unit()
    for i in range(1, k):
        out = out * (base - i * model.euler)
    return out


def _require(condition: bool, witness: str) -> None:
    if not condition:
        raise PreconditionError(witness)


def _euler_in_pullback_image(model: ImmersionModel) -> bool:
    return preimage_under(model.pullback, model.euler) is not None


def _l_normal_in_pullback_image(model: ImmersionModel) -> bool:
    return preimage_under(model.pullback, model.l_normal) is not None


def pulled_from_target_class(model: ImmersionModel, k: int, y: TensorClass) -> GradedClass:
    """Transfer of a class pulled back from the k-fold target power:
    the product of the slotwise pullbacks times the closed-form unit
    transfer.  Requires euler and L(normal) to come from the target.
    """
    _check_k(k)
    if y.arity != k or y.ring != model.target:
        raise GradedAlgebraError("argument must be an arity-k tensor on the target ring")
    _require(_euler_in_pullback_image(model),
             f"euler class {model.euler} is not pulled back from the target")
    _require(_l_normal_in_pullback_image(model),
             "L(normal) is not pulled back from the target")
    out = model.source.zero()
    for idx, coeff in y.terms.items():
        cls = model.source.unit()
        for j in idx:
            cls = cls * model.pullback(model.target.basis_class(j))
        out = out + coeff * cls
    return out * transfer_of_unit(model, k)


def signature_pulled_from_target(model: ImmersionModel, k: int) -> Fraction:
    """Signature under the pulled-from-target hypothesis."""
    _require(_euler_in_pullback_image(model), "euler class is not pulled back from the target")
    _require(_l_normal_in_pullback_image(model), "L(normal) is not pulled back from the target")
    u = model.l_normal_inverse
    cls = model.l_source * u ** (k - 1) * transfer_of_unit(model, k)
    return cls.integrate() / factorial(k)


def pontrjagin_pulled_from_target(model: ImmersionModel, k: int, J: Sequence[int]) -> Fraction:
    _require(_euler_in_pullback_image(model), "euler class is not pulled back from the target")
    _require(_l_normal_in_pullback_image(model), "L(normal) is not pulled back from the target")
    inv = model.normal_pontrjagin.invert_unital()
    core = (model.pontrjagin_source * inv ** (k - 1)).select_degrees(J)
    return (core * transfer_of_unit(model, k)).integrate() / factorial(k)


def chern_pulled_from_target(model: ImmersionModel, k: int, J: Sequence[int]) -> Fraction:
    if model.chern_source is None:
        raise ModelError("model carries no Chern data")
    _require(_euler_in_pullback_image(model), "euler class is not pulled back from the target")
    _require(_l_normal_in_pullback_image(model), "L(normal) is not pulled back from the target")
    inv = model.normal_chern.invert_unital()
    core = (model.chern_source * inv ** (k - 1)).select_degrees(J)
    return (core * transfer_of_unit(model, k)).integrate() / factorial(k)


def signature_euler_zero(model: ImmersionModel, k: int) -> Fraction:
    """Signature when the normal Euler class vanishes: only the finest
    partition survives, leaving a k-th power of the pushed normal class
    on the target."""
    _check_k(k)
    _require(model.euler.is_zero(), f"euler class {model.euler} is nonzero")
    pushed = model.pushforward(model.l_normal_inverse)
    return (model.l_target * pushed ** k).integrate() / factorial(k)


def _pushpull_is_zero(model: ImmersionModel) -> bool:
    return all(model.pushpull(model.source.basis_class(i)).is_zero()
               for i in range(len(model.source.labels)))


def signature_pushpull_zero(model: ImmersionModel, k: int) -> Fraction:
    """Signature when pullback(pushforward(.)) vanishes identically: only
    the one-block partition survives."""
    _check_k(k)
    _require(_pushpull_is_zero(model), "pullback(pushforward(.)) is not identically zero")
    u_pow = model.l_normal_inverse ** (k - 1)
    cls = model.euler ** (k - 1) * model.l_source * u_pow
    return Fraction((-1) ** (k - 1), k) * cls.integrate()


def pontrjagin_pushpull_zero(model: ImmersionModel, k: int, J: Sequence[int]) -> Fraction:
    _require(_pushpull_is_zero(model), "pullback(pushforward(.)) is not identically zero")
    inv = model.normal_pontrjagin.invert_unital()
    core = (model.pontrjagin_source * inv ** (k - 1)).select_degrees(J)
    return Fraction((-1) ** (k - 1), k) * (model.euler ** (k - 1) * core).integrate()


def chern_pushpull_zero(model: ImmersionModel, k: int, J: Sequence[int]) -> Fraction:
    if model.chern_source is None:
        raise ModelError("model carries no Chern data")
    _require(_pushpull_is_zero(model), "pullback(pushforward(.)) is not identically zero")
    inv = model.normal_chern.invert_unital()
    core = (model.chern_source * inv ** (k - 1)).select_degrees(J)
    return Fraction((-1) ** (k - 1), k) * (model.euler ** (k - 1) * core).integrate()


def signature_nullhomotopic(model: ImmersionModel, k: int) -> Fraction:
    """Signature in the nullhomotopic normalization, where the inverse
    L(normal) equals L(source): a pure Euler-power formula."""
    _check_k(k)
    _require(_pushpull_is_zero(model), "pullback(pushforward(.)) is not identically zero")
    _require(model.l_normal_inverse == model.l_source,
             f"L(normal)^(-1) = {model.l_normal_inverse} differs from L(source) = {model.l_source}")
    cls = model.euler ** (k - 1) * model.l_source ** k
    return Fraction((-1) ** (k - 1), k) * cls.integrate()


def pontrjagin_nullhomotopic(model: ImmersionModel, k: int, J: Sequence[int]) -> Fraction:
    _require(_pushpull_is_zero(model), "pullback(pushforward(.)) is not identically zero")
    _require(model.normal_pontrjagin.invert_unital() == model.pontrjagin_source,
             "P(normal)^(-1) differs from P(source)")
    core = (model.pontrjagin_source ** k).select_degrees(J)
    return Fraction((-1) ** (k - 1), k) * (model.euler ** (k - 1) * core).integrate()


# ---------------------------------------------------------------------------
# The clean-intersection recursion as a testable identity
# ---------------------------------------------------------------------------


def recursion_identity_holds(model: ImmersionModel, k: int, x: TensorClass) -> bool:
    """Check the recursion the solved formula came from.

    Left side: the first factor times the pulled-back pushforwards of the
    others.  Right side: the partition sum of Euler-weighted transfers of
    the diagonal restrictions.  Returns exact equality.
    """
    _check_k(k)
    _check_tensor(model, k, x)
    lhs = model.source.zero()
    for idx, coeff in x.terms.items():
        cls = model.source.basis_class(idx[0])
        for i in idx[1:]:
            cls = cls * model.pushpull(model.source.basis_class(i))
        lhs = lhs + coeff * cls

    rhs = model.source.zero()
    for alpha in all_partitions(k):
        y = diagonal_pullback(alpha, x)
        for slot, block in enumerate(alpha.blocks):
            if len(block) > 1:
                y = y.scale_slot(slot, model.euler ** (len(block) - 1))
        rhs = rhs + transfer_to_source(model, len(alpha.blocks), y)
    return lhs == rhs


# ---------------------------------------------------------------------------
# Marked-count sanity helper used by oracles and reports
# ---------------------------------------------------------------------------


def marked_count(k: int, first_size: int, counts: Sequence[int]) -> int:
    """Number of partitions with a marked first block; re-exported for the
    collected source-route weights."""
    return count_by_type_marked(k, first_size, counts)
