"""Hand-built state families used by demos and tests."""

from __future__ import annotations

import math

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ValidationError
from .matcore import DensityMatrix, Projector


def tilted_pair_state(
    phi1: float,
    phi2: float,
    weight1: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[DensityMatrix, Projector]:
    """Rank-two state built from two tilted coordinate lines in dimension 4.

    The state is weight1 * |u1><u1| + (1 - weight1) * |u2><u2| with
    u1 = cos(phi1) e1 + sin(phi1) e3 and u2 = cos(phi2) e2 + sin(phi2) e4,
    returned together with the projector onto span(e1, e2). The compression
    by that projector is diag(w1 cos^2 phi1, w2 cos^2 phi2), which makes the
    family a two-parameter probe of the compressed entropy: the compressed
    state can be maximally mixed on the plane while the state itself is
    nearly pure.
    """
    if not 0.0 <= weight1 <= 1.0:
        raise ValidationError(f"weight1 must lie in [0, 1], got {weight1!r}")
    u1 = np.zeros(4, dtype=np.complex128)
    u2 = np.zeros(4, dtype=np.complex128)
    u1[0], u1[2] = math.cos(phi1), math.sin(phi1)
    u2[1], u2[3] = math.cos(phi2), math.sin(phi2)
    mat = weight1 * np.outer(u1, u1.conj()) + (1.0 - weight1) * np.outer(u2, u2.conj())
    return DensityMatrix(mat, tol), Projector.coordinate(4, (0, 1), tol)


def coupled_pair_state(kappa: float, tol: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    """One-parameter 4 x 4 family with antidiagonal coupling strength kappa.

    The matrix is (1/4) [[1,0,0,k],[0,1,k,0],[0,k,1,0],[k,0,0,1]] for
    kappa in [0, 1]; its eigenvalues are (1+kappa)/4 and (1-kappa)/4, each
    twofold. Compressing by span(e1, e2) or its complement removes kappa
    entirely, so both block contributions stay at their kappa = 0 values
    while the total entropy falls from ln 4 to ln 2 across the range.
    """
    if not 0.0 <= kappa <= 1.0:
        raise ValidationError(f"kappa must lie in [0, 1], got {kappa!r}")
    m = np.eye(4, dtype=np.complex128)
    m[0, 3] = m[3, 0] = kappa
    m[1, 2] = m[2, 1] = kappa
    return DensityMatrix(m / 4.0, tol)


def coupled_pair_split(tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[Projector, Projector]:
    """The canonical two-block split (span(e1,e2), span(e3,e4)) in dimension 4."""
    return Projector.coordinate(4, (0, 1), tol), Projector.coordinate(4, (2, 3), tol)
