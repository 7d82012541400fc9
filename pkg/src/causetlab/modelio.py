"""Loading and rendering of causet, model, event and region descriptions.

File formats (JSON):

Causet: {"elements": ["p", "a"], "relations": [["p", "a"]]}. Relations are
any generating set; the transitive closure is computed on load.

Model: {"causet": <causet object>, "alphabet": 2,
        "dom": "canonical" | {"<event-spec>": ["x", ...], ...},
        "measure": "uniform" | {"weights": {"010": "1/6", ...}}
                  | {"random": {"seed": 7, "denominator_bound": 100}}}
`alphabet`, `dom` and `measure` default to 2, "canonical" and "uniform".
A bare causet object is accepted wherever a model is expected.

Events are written either as an explicit list of history keys (value strings
in element order, e.g. ["00", "11"]) or as cylinder constraints
{"x": 1, "y": 0}. In explicit dom maps the event-spec key is the JSON
encoding of one of those two forms.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .causet import Causet, Region, validate_causet
from .errors import LabError
from .histories import DomMap, Event, HistorySpace
from .measure import MeasureTable
from .principles import Model


class ModelFileError(LabError):
    """A model/causet file is malformed."""


def load_json_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ModelFileError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ModelFileError(f"{path}: top-level JSON object expected")
    return data


def causet_from_data(data: Mapping[str, Any]) -> Causet:
    body = data.get("causet", data)
    if "elements" not in body:
        raise ModelFileError("no 'elements' in causet description")
    relations = [tuple(p) for p in body.get("relations", [])]
    return validate_causet(body["elements"], relations)


def space_from_data(data: Mapping[str, Any]) -> HistorySpace:
    return HistorySpace(causet_from_data(data), int(data.get("alphabet", 2)))


def parse_region(causet: Causet, spec: Any) -> Region:
    if isinstance(spec, str):
        return causet.region(spec)
    return causet.region(list(spec))


def parse_event(space: HistorySpace, spec: Any) -> Event:
    if isinstance(spec, str):
        spec = json.loads(spec)
    if isinstance(spec, dict):
        return space.cylinder({k: int(v) for k, v in spec.items()})
    if isinstance(spec, list):
        return space.event_from_histories(spec)
    raise ModelFileError(f"cannot read event description {spec!r}")


def dom_from_data(space: HistorySpace, spec: Any) -> DomMap:
    if spec in (None, "canonical"):
        return DomMap.canonical()
    if not isinstance(spec, dict):
        raise ModelFileError(f"dom must be \"canonical\" or an object, got {spec!r}")
    mapping: dict[Event, Region] = {}
    for key, region in spec.items():
        mapping[parse_event(space, key)] = parse_region(space.causet, region)
    return DomMap.explicit(mapping)


def measure_from_data(space: HistorySpace, spec: Any) -> MeasureTable:
    if spec in (None, "uniform"):
        return MeasureTable.uniform(space)
    if isinstance(spec, dict) and "weights" in spec:
        try:
            weights = {k: Fraction(v) for k, v in spec["weights"].items()}
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelFileError(f"bad weight in measure: {exc}") from exc
        return MeasureTable.from_weights(space, weights)
    if isinstance(spec, dict) and "random" in spec:
        params = spec["random"]
        return MeasureTable.random(
            space, params.get("seed", 0), params.get("denominator_bound", 100)
        )
    raise ModelFileError(f"cannot read measure description {spec!r}")


def model_from_data(data: Mapping[str, Any], force: bool = False) -> Model:
    space = space_from_data(data)
    dom = dom_from_data(space, data.get("dom"))
    measure = measure_from_data(space, data.get("measure"))
    return Model.build(space, measure, dom, force=force)


def load_model(path: str, force: bool = False) -> Model:
    return model_from_data(load_json_file(path), force=force)


def causet_to_data(causet: Causet) -> dict:
    return {
        "elements": list(causet.elements),
        "relations": [list(p) for p in causet.relation_pairs()],
    }
