"""Python bindings for the qbloch library.

Terms are plain dicts in the same JSON layout the command line tool reads.
"""

import json as _json
import os as _os

from . import _core
from ._core import QblochError, SchemaError, bloch_wigner, li2, rogers_hat

__all__ = [
    "QblochError", "SchemaError", "li2", "bloch_wigner", "rogers_hat",
    "load", "normalize", "solve", "cv", "sequence", "growth_rate", "selftest",
]


def _text(term):
    return term if isinstance(term, str) else _json.dumps(term)


def load(path):
    """Read a q-term document and return it validated and normalized."""
    with open(path) as f:
        return normalize(_json.load(f))


def normalize(term):
    return _json.loads(_core.normalize(_text(term)))


def solve(term, starts=200, seed=7, tol=1e-10):
    """Critical points: list of dicts with u, z, residuals and branch data."""
    return _json.loads(_core.solve(_text(term), starts, seed, tol))


def cv(term, starts=200, seed=7):
    return _json.loads(_core.cv(_text(term), starts, seed))


def sequence(term, n_max, mode="numeric"):
    """Coefficients c_0 .. c_{n_max} of a special q-term (list of complex)."""
    return _core.sequence(_text(term), n_max, mode)


def growth_rate(coeffs):
    return _json.loads(_core.growth_rate(list(coeffs)))


def selftest(data_dir=None):
    """Run the acceptance criteria; returns [(id, name, passed, detail)]."""
    if data_dir is None:
        data_dir = _os.environ.get("QBLOCH_DATA_DIR", "data")
    return _core.selftest(data_dir)
