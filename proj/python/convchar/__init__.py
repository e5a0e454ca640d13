"""Fourier, cosine and Laplace transforms and the extraction of theta maps from
operators that satisfy a convolution property."""

import json

from ._core import (
    FormatError,
    Group,
    NotEvenError,
    build_from_theta,
    check_multiplicativity,
    cosine_convolution,
    cosine_transform,
    fourier_convolution,
    fourier_transform,
    inverse_fourier_transform,
    laplace_convolution,
    laplace_transform,
    run_cli,
)
from . import _core

__all__ = [
    "FormatError",
    "Group",
    "NotEvenError",
    "build_from_theta",
    "check_multiplicativity",
    "convergence_study",
    "cosine_convolution",
    "cosine_transform",
    "extract",
    "extract_laplace",
    "fourier_convolution",
    "fourier_transform",
    "inverse_fourier_transform",
    "laplace_convolution",
    "laplace_transform",
    "run_cli",
    "verify_identities",
]


def extract(group, kind, kernel, tol=1e-8):
    """Extraction report for a finite-group kernel, as a dict."""
    return json.loads(_core._extract_json(group, kind, kernel, tol))


def extract_laplace(h, y_samples, kernel, tol_eq=1e-6, tol_fit=1e-6):
    """Extraction report for a half-line kernel (one row per y sample), as a dict."""
    return json.loads(_core._extract_laplace_json(h, list(y_samples), kernel, tol_eq, tol_fit))


def convergence_study(f, g, y, steps, horizon, horizons=()):
    """Residual of L(f * g) = L(f) L(g) per grid step, as a dict."""
    return json.loads(
        _core._convergence_study_json(f, g, list(y), list(steps), horizon, list(horizons))
    )


def verify_identities(group, trials=10, seed=0):
    """Returns (residuals by identity name, overall pass flag)."""
    return _core._verify_identities(group, trials, seed)
