"""Spectral analysis of matrix Herglotz functions and their self-adjoint extensions."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import run_verify as _run_verify


def verify(trials=10, seed=0, instance=None, d_prime_samples=5, tol=None):
    """Oracle-versus-criterion campaign; returns the report as a dict."""
    kwargs = {"trials": trials, "seed": seed, "instance": instance, "d_prime_samples": d_prime_samples}
    if tol is not None:
        kwargs["tol"] = tol
    return _json.loads(_run_verify(**kwargs))
