"""Python bindings for the treembed C++ library."""

import json

from . import _core
from ._core import ball_size, normal_form, run_cli, tree_coordinates, word_metric

__all__ = [
    "ball_size",
    "diary_trace",
    "distortion_summary",
    "normal_form",
    "run_cli",
    "tree_coordinates",
    "verify_projection",
    "word_metric",
]


def diary_trace(words, kappa, alphabet=""):
    """Diary trace for a sentence given as a list of words."""
    return json.loads(_core.diary_trace(list(words), kappa, alphabet))


def distortion_summary(radius, pairs, seed=1, kappa=None):
    return json.loads(_core.distortion_summary(radius, pairs, seed, kappa))


def verify_projection(instance, Ks, seed=1):
    """Axioms and complex checks for an instance description (a dict)."""
    return json.loads(_core.verify_projection(json.dumps(instance), list(Ks), seed))
