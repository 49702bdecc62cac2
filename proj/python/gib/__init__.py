"""Two-class integer polynomials, GIB structures and Heintze geometry.

Polynomials are lists of integers, constant term first: [-1, 3, -1, 1] is
X^3 - X^2 + 3X - 1. Structured results are plain dicts with the same layout
as the gibtool JSON files.
"""

import json

import numpy as np

from . import _core
from ._core import (
    GibError,
    IllConditioned,
    NoPositiveDefiniteSolution,
    NotSemisimpleOnClass,
    OutOfDomain,
    ParseError,
)

__version__ = _core.__version__

__all__ = [
    "classify",
    "certify",
    "char_poly",
    "companion_matrix",
    "factor",
    "leaf_closure_dim",
    "search",
    "build_verify",
    "curvature",
    "jacobi",
    "metric_eval",
    "GibError",
    "IllConditioned",
    "NoPositiveDefiniteSolution",
    "NotSemisimpleOnClass",
    "OutOfDomain",
    "ParseError",
]


def classify(coeffs, max_precision_bits=1024):
    """{"outcome": "certificate" | "rejection" | "undecided", ...}"""
    return json.loads(_core.classify([int(c) for c in coeffs], max_precision_bits))


def certify(coeffs=None, matrix=None, max_precision_bits=1024):
    """Certificate dict, or None when the input is not certified two-class.

    With `matrix`, its characteristic polynomial is used and the matrix is
    stored in the certificate.
    """
    if (coeffs is None) == (matrix is None):
        raise ValueError("give exactly one of coeffs and matrix")
    if matrix is not None:
        matrix = [[int(x) for x in row] for row in matrix]
        coeffs = char_poly(matrix)
    res = classify(coeffs, max_precision_bits)
    if res["outcome"] != "certificate":
        return None
    cert = res["certificate"]
    if matrix is not None:
        cert["matrix"] = matrix
    return cert


def char_poly(matrix):
    return [int(c) for c in json.loads(_core.char_poly([[int(x) for x in row] for row in matrix]))]


def companion_matrix(coeffs):
    return json.loads(_core.companion_matrix([int(c) for c in coeffs]))


def factor(coeffs):
    """[(factor_coeffs, multiplicity), ...] over the integers."""
    return [(f["poly"], f["multiplicity"]) for f in json.loads(_core.factor([int(c) for c in coeffs]))]


def _cert_text(cert):
    return cert if isinstance(cert, str) else json.dumps(cert)


def leaf_closure_dim(cert, e_class="B"):
    return _core.leaf_closure_dim(_cert_text(cert), e_class)


def search(spec_text, workers=1, store_dir=None):
    """Run a search spec (the same key = value text as the spec files)."""
    return json.loads(_core.search(spec_text, workers, None if store_dir is None else str(store_dir)))


def build_verify(cert, matrix=None, e_class="B", samples=100, seed=0, t_scale=None, literal_glide=False):
    """{"all_pass", "report", "data"} for the structure built from `cert`."""
    if matrix is not None:
        matrix = [[int(x) for x in row] for row in matrix]
    return json.loads(
        _core.build_verify(_cert_text(cert), matrix, e_class, samples, seed, t_scale, literal_glide)
    )


def curvature(a, planes=100, seed=0):
    return json.loads(_core.curvature(np.asarray(a, dtype=float), planes, seed))


def jacobi(a, direction, alpha=1.0, steps_per_unit=10000):
    return json.loads(
        _core.jacobi(np.asarray(a, dtype=float), alpha, np.asarray(direction, dtype=float), steps_per_unit)
    )


def metric_eval(model, a, p, u, v):
    """g_p(u, v) for model "heintze" (matrix a) or "uhs" (a only fixes the dimension)."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    return _core.metric_eval(model, a, *(np.asarray(x, dtype=float) for x in (p, u, v)))
