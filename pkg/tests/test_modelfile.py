import json

import pytest

from multipoint.model import validate
from multipoint.modelfile import (
    ModelFormatError,
    load_model,
    model_from_dict,
    model_to_dict,
    ring_from_dict,
    ring_to_dict,
    save_model,
)
from multipoint.models import BUNDLED, bundled_model


def _assert_same_model(a, b):
    assert a.source == b.source
    assert a.target == b.target
    assert a.codim == b.codim
    assert a.euler == b.euler
    assert dict(a.pullback.images) == dict(b.pullback.images)
    assert dict(a.pushforward.images) == dict(b.pushforward.images)
    assert a.pontrjagin_source == b.pontrjagin_source
    assert a.pontrjagin_target == b.pontrjagin_target
    assert a.chern_source == b.chern_source
    assert a.chern_target == b.chern_target


def test_roundtrip_all_bundled(tmp_path):
    for name in BUNDLED:
        m = bundled_model(name)
        path = tmp_path / f"{name}.json"
        save_model(m, path)
        m2 = load_model(path)
        _assert_same_model(m, m2)
        assert model_to_dict(m) == model_to_dict(m2)
        assert validate(m2).ok


def test_rationals_serialized_as_strings(tmp_path):
    m = bundled_model("hypersurface-d3")
    path = tmp_path / "m.json"
    save_model(m, path)
    raw = json.loads(path.read_text())
    for coords in raw["pushforward"].values():
        for v in coords.values():
            assert isinstance(v, str)


def test_fraction_strings_parsed_exactly():
    ring = ring_from_dict({
        "labels": ["1", "x"], "degrees": [0, 2],
        "products": {"0,0": {"0": "1"}, "0,1": {"1": "1"}, "1,1": {}},
        "integral": {"1": "-3/7"},
    })
    from fractions import Fraction
    assert ring.integral[1] == Fraction(-3, 7)
    assert ring_from_dict(ring_to_dict(ring)) == ring


def test_union_file_builds_disjoint_union():
    part = model_to_dict(bundled_model("line-in-plane"))
    union = model_from_dict({"components": [part, part], "name": "pair"})
    direct = bundled_model("two-lines")
    assert union.source == direct.source
    assert union.target == direct.target
    assert validate(union).ok


def test_missing_field_reports_location():
    obj = model_to_dict(bundled_model("line-in-plane"))
    del obj["euler"]
    with pytest.raises(ModelFormatError, match="euler"):
        model_from_dict(obj)


def test_bad_rational_rejected():
    obj = model_to_dict(bundled_model("line-in-plane"))
    obj["euler"] = {"1": "1/0"}
    with pytest.raises(ModelFormatError):
        model_from_dict(obj)
    obj["euler"] = {"1": 1.5}
    with pytest.raises(ModelFormatError):
        model_from_dict(obj)


def test_bad_product_key_rejected():
    obj = model_to_dict(bundled_model("line-in-plane"))
    obj["source"]["products"]["nonsense"] = {}
    with pytest.raises(ModelFormatError, match="nonsense"):
        model_from_dict(obj)


def test_out_of_range_map_index_rejected():
    obj = model_to_dict(bundled_model("line-in-plane"))
    obj["pushforward"]["9"] = {"0": "1"}
    with pytest.raises(ModelFormatError):
        model_from_dict(obj)


def test_invalid_json_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{ not json")
    with pytest.raises(ModelFormatError):
        load_model(path)


def test_unsupported_version():
    obj = model_to_dict(bundled_model("line-in-plane"))
    obj["format_version"] = 99
    with pytest.raises(ModelFormatError):
        model_from_dict(obj)
