"""Exact homology and K-theory of algebraic solenoids."""

import json

from ._core import (
    SCHEMA_VERSION,
    AtomClassExceeded,
    BoundaryRoot,
    HypothesisN1,
    InternalCheckFailure,
    ParseError,
    SolhomError,
    UnknownFixture,
    Unsupported,
    ZeroInput,
    fixture_details,
    fixtures,
    invariant_factors,
    localized_tensor,
    localized_tor,
    membership,
    render_markdown,
)
from . import _core

__all__ = [
    "SCHEMA_VERSION",
    "AtomClassExceeded",
    "BoundaryRoot",
    "HypothesisN1",
    "InternalCheckFailure",
    "ParseError",
    "SolhomError",
    "UnknownFixture",
    "Unsupported",
    "ZeroInput",
    "analyze",
    "fixture_details",
    "fixtures",
    "invariant_factors",
    "kunneth",
    "localized_tensor",
    "localized_tor",
    "membership",
    "render_markdown",
]


def analyze(c=None, min_poly=None, element=None, side="both", lefschetz=6, cap_multiplier=10.0):
    """Analyze the solenoid of c (a rational like "3/2") or of a root of min_poly.

    Returns the report as a dict; big integers are strings.
    """
    if c is not None and not isinstance(c, str):
        c = str(c)
    text = _core.analyze_json(c, min_poly, element, side, lefschetz, cap_multiplier)
    return json.loads(text)


def kunneth(left, right):
    """Kunneth table of two fixtures, as a dict."""
    return json.loads(_core.kunneth_json(left, right))
