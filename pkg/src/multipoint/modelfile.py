"""JSON serialization of immersion models.

Rationals are strings like "3/4" (or "5"); ring products and linear maps
are sparse nested maps keyed by stringified basis indices.  A file holding
{"components": [...]} is read as a disjoint union over a shared target.
Validation is structural only; mathematical consistency is the job of
model validation.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .graded import GradedClass, GradedRing, RingComponent
from .model import ImmersionModel, LinearMap, disjoint_union

FORMAT_VERSION = 1


class ModelFormatError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Rational and sparse-map encoding
# ---------------------------------------------------------------------------


def _fraction_to_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fraction_from(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ModelFormatError(f"{where}: booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelFormatError(f"{where}: bad rational {value!r}: {exc}") from None
    raise ModelFormatError(f"{where}: expected a rational string, got {type(value).__name__}")


def _coords_to_json(coords: Mapping[int, Fraction]) -> Dict[str, str]:
    return {str(i): _fraction_to_str(c) for i, c in sorted(coords.items())}


def _coords_from(obj, where: str) -> Dict[int, Fraction]:
    if not isinstance(obj, dict):
        raise ModelFormatError(f"{where}: expected an object of index -> rational")
    out: Dict[int, Fraction] = {}
    for key, value in obj.items():
        try:
            idx = int(key)
        except ValueError:
            raise ModelFormatError(f"{where}: bad basis index {key!r}") from None
        out[idx] = _fraction_from(value, f"{where}[{key}]")
    return out


def _require(obj: Mapping, key: str, where: str):
    if key not in obj:
        raise ModelFormatError(f"{where}: missing required field {key!r}")
    return obj[key]


# ---------------------------------------------------------------------------
# Rings
# ---------------------------------------------------------------------------


def ring_to_dict(ring: GradedRing) -> dict:
    return {
        "labels": list(ring.labels),
        "degrees": list(ring.degrees),
        "products": {f"{i},{j}": _coords_to_json(c) for (i, j), c in sorted(ring.products.items())},
        "integral": _coords_to_json(ring.integral),
        "top_degree": ring.top_degree,
        "unit": _coords_to_json(ring.unit_coords),
        "components": [
            {"name": c.name, "indices": list(c.indices), "top_degree": c.top_degree}
            for c in ring.components
        ],
        "name": ring.name,
    }


def ring_from_dict(obj, where: str = "ring") -> GradedRing:
    if not isinstance(obj, dict):
        raise ModelFormatError(f"{where}: expected an object")
    labels = _require(obj, "labels", where)
    degrees = _require(obj, "degrees", where)
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ModelFormatError(f"{where}: labels must be a list of strings")
    if not isinstance(degrees, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in degrees):
        raise ModelFormatError(f"{where}: degrees must be a list of integers")

    raw_products = _require(obj, "products", where)
    if not isinstance(raw_products, dict):
        raise ModelFormatError(f"{where}: products must be an object")
    products: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for key, coords in raw_products.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise ModelFormatError(f"{where}: product key {key!r} is not 'i,j'")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ModelFormatError(f"{where}: product key {key!r} is not 'i,j'") from None
        products[(i, j)] = _coords_from(coords, f"{where}.products[{key}]")

    integral = _coords_from(_require(obj, "integral", where), f"{where}.integral")
    unit = _coords_from(obj["unit"], f"{where}.unit") if "unit" in obj else None
    components = None
    if "components" in obj:
        components = []
        for n, c in enumerate(obj["components"]):
            if not isinstance(c, dict):
                raise ModelFormatError(f"{where}.components[{n}]: expected an object")
            components.append(RingComponent(
                str(c.get("name", f"c{n}")),
                tuple(int(i) for i in _require(c, "indices", f"{where}.components[{n}]")),
                int(_require(c, "top_degree", f"{where}.components[{n}]"))))
    try:
        return GradedRing(labels, degrees, products, integral,
                          top_degree=obj.get("top_degree"), unit=unit,
                          components=components, name=str(obj.get("name", "")))
    except ValueError as exc:
        raise ModelFormatError(f"{where}: {exc}") from None


# ---------------------------------------------------------------------------
# Models
# ---------------------------------------------------------------------------


def _map_to_dict(linmap: LinearMap) -> Dict[str, Dict[str, str]]:
    return {str(i): _coords_to_json(img.coords) for i, img in sorted(linmap.images.items())}


def _map_from(obj, domain: GradedRing, codomain: GradedRing,
              shift: int, where: str) -> LinearMap:
    if not isinstance(obj, dict):
        raise ModelFormatError(f"{where}: expected an object of index -> class")
    images = {}
    for key, coords in obj.items():
        try:
            idx = int(key)
        except ValueError:
            raise ModelFormatError(f"{where}: bad basis index {key!r}") from None
        if not 0 <= idx < len(domain.labels):
            raise ModelFormatError(f"{where}: index {idx} outside the domain basis")
        images[idx] = _coords_from(coords, f"{where}[{key}]")
    try:
        return LinearMap.from_coords(domain, codomain, images, degree_shift=shift)
    except ValueError as exc:
        raise ModelFormatError(f"{where}: {exc}") from None


def _class_from(obj, ring: GradedRing, where: str) -> GradedClass:
    try:
        return ring.element(_coords_from(obj, where))
    except ValueError as exc:
        raise ModelFormatError(f"{where}: {exc}") from None


def model_to_dict(model: ImmersionModel) -> dict:
    out = {
        "format_version": FORMAT_VERSION,
        "name": model.name,
        "codim": model.codim,
        "source": ring_to_dict(model.source),
        "target": ring_to_dict(model.target),
        "pullback": _map_to_dict(model.pullback),
        "pushforward": _map_to_dict(model.pushforward),
        "euler": _coords_to_json(model.euler.coords),
        "pontrjagin_source": _coords_to_json(model.pontrjagin_source.coords),
        "pontrjagin_target": _coords_to_json(model.pontrjagin_target.coords),
    }
    if model.chern_source is not None:
        out["chern_source"] = _coords_to_json(model.chern_source.coords)
    if model.chern_target is not None:
        out["chern_target"] = _coords_to_json(model.chern_target.coords)
    return out


def model_from_dict(obj, where: str = "model") -> ImmersionModel:
    if not isinstance(obj, dict):
        raise ModelFormatError(f"{where}: expected an object")
    if "components" in obj:
        raw = obj["components"]
        if not isinstance(raw, list) or not raw:
            raise ModelFormatError(f"{where}: components must be a nonempty list")
        parts = [model_from_dict(c, f"{where}.components[{n}]") for n, c in enumerate(raw)]
        try:
            return disjoint_union(parts, name=str(obj.get("name", "")))
        except ValueError as exc:
            raise ModelFormatError(f"{where}: {exc}") from None

    version = obj.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"{where}: unsupported format_version {version}")
    codim = _require(obj, "codim", where)
    if not isinstance(codim, int) or isinstance(codim, bool):
        raise ModelFormatError(f"{where}: codim must be an integer")
    source = ring_from_dict(_require(obj, "source", where), f"{where}.source")
    target = ring_from_dict(_require(obj, "target", where), f"{where}.target")
    pullback = _map_from(_require(obj, "pullback", where), target, source, 0,
                         f"{where}.pullback")
    pushforward = _map_from(_require(obj, "pushforward", where), source, target, codim,
                            f"{where}.pushforward")
    euler = _class_from(_require(obj, "euler", where), source, f"{where}.euler")
    p_src = _class_from(_require(obj, "pontrjagin_source", where), source,
                        f"{where}.pontrjagin_source")
    p_tgt = _class_from(_require(obj, "pontrjagin_target", where), target,
                        f"{where}.pontrjagin_target")
    chern_src = (_class_from(obj["chern_source"], source, f"{where}.chern_source")
                 if "chern_source" in obj else None)
    chern_tgt = (_class_from(obj["chern_target"], target, f"{where}.chern_target")
                 if "chern_target" in obj else None)
    try:
        return ImmersionModel(
            source=source, target=target, pullback=pullback, pushforward=pushforward,
            codim=codim, euler=euler, pontrjagin_source=p_src, pontrjagin_target=p_tgt,
            chern_source=chern_src, chern_target=chern_tgt,
            name=str(obj.get("name", "")))
    except ValueError as exc:
        raise ModelFormatError(f"{where}: {exc}") from None


def save_model(model: ImmersionModel, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n")


def load_model(path: Union[str, Path]) -> ImmersionModel:
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: not valid JSON: {exc}") from None
    return model_from_dict(obj, where=str(path))
