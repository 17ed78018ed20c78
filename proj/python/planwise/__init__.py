"""Python bindings for planwise."""

import json
import os

from ._planwise import (
    DEFAULT_SEED,
    METRICS,
    LoadError,
    changes,
    fit_logistic,
    mdlp_cuts,
    overlap,
    simpson,
    varl,
)
from . import _planwise


def _paths(train):
    if isinstance(train, (str, os.PathLike)):
        return [os.fspath(train)]
    return [os.fspath(p) for p in train]


def plan(train, test, planner="xtree", gamma=0.5, seed=DEFAULT_SEED):
    """One plan per class of `test`, learned from the `train` CSV(s)."""
    return json.loads(_planwise._plan_json(_paths(train), os.fspath(test), planner, gamma, seed))


def discover(community, quality="g"):
    return json.loads(_planwise._discover_json(os.fspath(community), quality))


def evaluate(project, planner="xtree", epsilon=0.0):
    """K-test results for every consecutive release window of `project`."""
    return json.loads(_planwise._evaluate_json(os.fspath(project), planner, epsilon))


__all__ = [
    "DEFAULT_SEED",
    "METRICS",
    "LoadError",
    "changes",
    "discover",
    "evaluate",
    "fit_logistic",
    "mdlp_cuts",
    "overlap",
    "plan",
    "simpson",
    "varl",
]
