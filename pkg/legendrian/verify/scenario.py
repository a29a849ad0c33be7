# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Scenario files: the inputs, grids and tolerances of one verification suite.

A scenario is a JSON document::

    {"schema": 1, "name": "theorem21", "seed": 7,
     "checks": [{"name": "...", "kind": "...", "anchor": "...",
                 "tolerance": 0.05, "params": {...}}, ...]}

Every check names the statement it verifies (C{anchor}) and carries its
tolerance explicitly. C{params} are handed to the check as they are; the
helpers below turn their generating-function expressions and grids into
objects.
"""

import json
import os
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, \
                     ValidationError, field_validator

from legendrian.errors import ScenarioError
from legendrian.gf.serial import from_dict

__all__ = ["Scenario", "CheckSpec", "GridSpec", "load_scenario",
           "parse_scenario", "scenario_path", "SCENARIO_DIR", "SCHEMA"]

SCHEMA = 1
SCENARIO_DIR = os.path.join(os.path.dirname(__file__), "scenarios")


class GridSpec(BaseModel):
    "A uniform grid [lo, hi] with the given step."

    model_config = ConfigDict(extra="forbid")

    lo: float
    hi: float
    step: float = Field(gt=0)

    @field_validator("hi")
    @classmethod
    def _ordered(cls, hi, info):
        lo = info.data.get("lo")
        if lo is not None and not hi > lo:
            raise ValueError("grid needs hi > lo")
        return hi

    def nodes(self):
        count = int(round((self.hi - self.lo) / self.step)) + 1
        return self.lo + self.step * np.arange(count)


class CheckSpec(BaseModel):
    "One check of a suite."

    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    kind: str = Field(min_length=1)
    anchor: str = Field(min_length=1)
    tolerance: float = Field(ge=0)
    params: Dict[str, Any] = Field(default_factory=dict)


class Scenario(BaseModel):
    "A suite's scenario file."

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: Literal[1] = Field(alias="schema")
    name: str = Field(min_length=1)
    description: str = ""
    seed: int = 0
    checks: List[CheckSpec]
    _basedir: Optional[str] = PrivateAttr(default=None)

    @field_validator("checks")
    @classmethod
    def _unique(cls, checks):
        names = [c.name for c in checks]
        duplicated = sorted(set(n for n in names if names.count(n) > 1))
        if duplicated:
            raise ValueError("duplicate check names: %s" %
                             ", ".join(duplicated))
        return checks

    def expression(self, data):
        "Decode a generating-function expression of this scenario."
        return from_dict(data, self._basedir or SCENARIO_DIR)

    def grid(self, data):
        "Nodes of a grid given as {lo, hi, step}."
        try:
            return GridSpec(**data).nodes()
        except (TypeError, ValidationError) as e:
            raise ScenarioError("bad grid %r: %s" % (data, e),
                                scenario=self.name)


def parse_scenario(data, basedir=None):
    """
    Validate a decoded scenario document.

    @raise ScenarioError: on any schema violation.
    """
    try:
        scenario = Scenario.model_validate(data)
    except ValidationError as e:
        errors = ["%s: %s" % (".".join(str(p) for p in err["loc"]),
                              err["msg"]) for err in e.errors()]
        raise ScenarioError("invalid scenario: %s" % "; ".join(errors),
                            errors=errors)
    scenario._basedir = basedir
    return scenario


def scenario_path(name):
    "Path of the shipped scenario of a suite."
    return os.path.join(SCENARIO_DIR, "%s.json" % name)


def load_scenario(path):
    "Read and validate a scenario file."
    try:
        with open(path) as f:
            data = json.load(f)
    except (IOError, OSError, ValueError) as e:
        raise ScenarioError("cannot read scenario %s: %s" % (path, e),
                            path=str(path))
    return parse_scenario(data, os.path.dirname(os.path.abspath(path)))
