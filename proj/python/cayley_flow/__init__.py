"""Spin(7)-structure flows on homogeneous 8-manifolds.

Scenarios are builtin names ("su3", "hk-t5", "torus"), paths to JSON files,
or dicts following the same schema. Reports come back as dicts.
"""

import csv
import io
import json

from . import _core
from ._core import NumericalAbort, ValidationError, builtin_names

__all__ = [
    "NumericalAbort",
    "ValidationError",
    "builtin_names",
    "scenario",
    "verify",
    "torsion",
    "rhs",
    "soliton",
    "stability",
    "reproduce",
    "integrate",
    "rhs_matrix",
    "ricci",
]


def _source(scenario):
    if isinstance(scenario, dict):
        return json.dumps(scenario)
    return str(scenario)


def scenario(source, **params):
    return json.loads(_core.scenario_json(_source(source), params))


def verify(source, tol=None, **params):
    return json.loads(_core.verify(_source(source), params, tol))


def torsion(source, **params):
    return json.loads(_core.torsion(_source(source), params))


def rhs(source, kind="gradient", **params):
    return json.loads(_core.rhs(_source(source), kind, params))


def soliton(source, kind="gradient", **params):
    return json.loads(_core.soliton(_source(source), kind, params))


def stability(source, family=None, lambda_=-3.0, **params):
    return json.loads(_core.stability(_source(source), family, lambda_, params))


def reproduce(source, **params):
    return json.loads(_core.reproduce(_source(source), params))


def integrate(source, kind="gradient", t_end=1.0, dt=1e-2, lambda_=0.0, convergence=False, **params):
    """Returns (summary dict, list of trajectory rows as dicts of floats)."""
    summary, text = _core.integrate(_source(source), kind, t_end, dt, lambda_, convergence, params)
    rows = [{k: float(v) for k, v in row.items()} for row in csv.DictReader(io.StringIO(text))]
    return json.loads(summary), rows


def rhs_matrix(source, kind="gradient", **params):
    return _core.rhs_matrix(_source(source), kind, params)


def ricci(source, **params):
    return _core.ricci(_source(source), params)
