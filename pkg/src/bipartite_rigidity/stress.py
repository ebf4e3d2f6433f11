"""Maximum-rank PSD equilibrium stress matrices for bipartite frameworks.

Given strictly positive coefficients ``(lambdas, mus)`` that balance the
lifted classes exactly, the two weighted configuration matrices share their
left singular structure.  Writing ``X_n = P^ L^{1/2}`` and
``X_m = Q^ M^{1/2}`` (``P^``/``Q^`` are the configuration matrices with a
row of ones appended, ``L``/``M`` the diagonal coefficient matrices), both
``X_n X_n^T`` and ``X_m X_m^T`` equal the same exactly-computed Gram matrix.
One eigendecomposition of that Gram matrix therefore yields a shared left
factor ``U`` and singular values ``D`` for both.

The stress matrix is assembled from the right factors: with ``V_n``/``V_m``
the completed right singular bases and a coupling block ``psi`` that pairs
the leading r = (span dimension + 1) right directions of both sides,

    omega = diag(L^{1/2}, M^{1/2}) diag(V_n, V_m) psi diag(V_n, V_m)^T
            diag(L^{1/2}, M^{1/2})

which expands to diagonal blocks exactly ``diag(lambdas)`` and
``diag(mus)`` and a dense bipartite block.  The result is PSD of rank
``n + m - r``, annihilates every row of the hatted configuration matrix,
and its diagonal carries the input coefficients.

An optional diagonal coupling ``C`` between the trailing right directions
generalizes the construction: the result stays PSD while every coupling
value has magnitude at most one, and the rank drops by one for each value
of magnitude exactly one.

Certificates are floating point with declared tolerances; verdicts in the
decision engine never depend on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .geometry import BipartiteFramework, affine_span_dim, affine_spans_equal
from .lp import ZERO, ONE

#: Relative eigenvalue threshold for numerical rank decisions.
RANK_TOL = 1e-8

#: Base tolerance for equilibrium residuals of freshly built certificates.
RESIDUAL_TOL = 1e-8

#: Coordinates are rescaled so the largest magnitude is at most this.
COORD_CAP = 64


class DegenerateInput(ValueError):
    """Coefficients must be strictly positive and balance exactly."""


class NumericalFailure(RuntimeError):
    """Floating-point factorization failed its internal residual check."""


class ShapeMismatch(ValueError):
    """A matrix or coupling block has the wrong dimensions."""


class PatternViolation(ValueError):
    """The stress matrix violates the bipartite zero pattern."""


@dataclass(frozen=True)
class StressCertificate:
    """A floating PSD equilibrium stress matrix plus its measured data.

    ``omega`` is the full (n+m) x (n+m) symmetric matrix.  Off-diagonal
    entries inside the P block and inside the Q block are structurally
    zero.  ``lambdas`` and ``mus`` are the exact rational diagonals the
    certificate was built from.
    """

    omega: np.ndarray
    rank: int
    min_eigenvalue: float
    residual: float
    lambdas: tuple[Fraction, ...]
    mus: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return self.omega.shape[0]

    def spectral_norm(self) -> float:
        return float(np.linalg.norm(self.omega, 2))

    def is_psd(self, tol: float = RANK_TOL) -> bool:
        return self.min_eigenvalue >= -tol * max(self.spectral_norm(), 1.0)


def prescale(fw: BipartiteFramework) -> BipartiteFramework:
    """Rescale coordinates for floating conversion, exactly.

    Clears the common denominator and then halves until the largest
    coordinate magnitude is at most ``COORD_CAP``.  Scaling the
    configuration leaves equilibrium kernels and balance certificates
    untouched, so a stress built for the scaled copy certifies the
    original.
    """
    coords = [c for pt in fw.all_points() for c in pt]
    if not coords or all(c == 0 for c in coords):
        return fw
    denom = 1
    for c in coords:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    scale = Fraction(denom)
    peak = max(abs(c * scale) for c in coords)
    while peak > COORD_CAP:
        scale /= 2
        peak /= 2
    if scale == 1:
        return fw
    return BipartiteFramework(
        dimension=fw.dimension,
        points_p=tuple(tuple(scale * c for c in pt) for pt in fw.points_p),
        points_q=tuple(tuple(scale * c for c in pt) for pt in fw.points_q),
    )


def _hatted(fw: BipartiteFramework) -> np.ndarray:
    """The (d+1) x (n+m) configuration matrix with a row of ones."""
    cols = []
    for pt in fw.all_points():
        cols.append([float(c) for c in pt] + [1.0])
    return np.array(cols).T


def _exact_gram(points: Sequence, coeffs: Sequence[Fraction]) -> list[list[Fraction]]:
    """The exact (d+1) x (d+1) matrix sum of coeff * hat(p) hat(p)^T."""
    d = len(points[0])
    g = [[ZERO] * (d + 1) for _ in range(d + 1)]
    for pt, w in zip(points, coeffs):
        hat = tuple(pt) + (ONE,)
        for i in range(d + 1):
            hi = hat[i]
            if not hi:
                continue
            wi = w * hi
            for j in range(d + 1):
                if hat[j]:
                    g[i][j] += wi * hat[j]
    return g


def _balance_residual(fw: BipartiteFramework, lambdas, mus) -> bool:
    gp = _exact_gram(fw.points_p, lambdas)
    gq = _exact_gram(fw.points_q, mus)
    return all(a == b for ra, rb in zip(gp, gq) for a, b in zip(ra, rb))


def _shared_factors(fw: BipartiteFramework, lambdas, mus, r: int):
    """Shared-left-factor decomposition of both weighted sides.

    Returns (Vn_lead, Vm_lead, Vn_rest, Vm_rest) where the leading blocks
    have r orthonormal columns and the rests span the orthogonal
    complements.
    """
    gram = np.array([[float(v) for v in row] for row in _exact_gram(fw.points_p, lambdas)])
    evals, evecs = np.linalg.eigh(gram)
    order = np.argsort(evals)[::-1]
    evals = evals[order]
    evecs = evecs[:, order]
    scale = max(float(evals[0]), 1.0)
    if evals[r - 1] <= RANK_TOL * scale:
        raise NumericalFailure("shared factor lost rank in floating point")
    u_lead = evecs[:, :r]
    d_lead = np.sqrt(evals[:r])
    sqrt_l = np.sqrt([float(v) for v in lambdas])
    sqrt_m = np.sqrt([float(v) for v in mus])
    xn = _hatted(BipartiteFramework(fw.dimension, fw.points_p, ())) * sqrt_l
    xm_pts = np.array([[float(c) for c in pt] + [1.0] for pt in fw.points_q]).T
    xm = xm_pts * sqrt_m
    vn_lead = xn.T @ u_lead / d_lead
    vm_lead = xm.T @ u_lead / d_lead
    for x, v in ((xn, vn_lead), (xm, vm_lead)):
        resid = float(np.max(np.abs(x - (u_lead * d_lead) @ v.T)))
        if resid > RESIDUAL_TOL * (1.0 + float(np.max(np.abs(x)))):
            raise NumericalFailure("factorization residual above tolerance")
    return vn_lead, vm_lead, _complement(vn_lead), _complement(vm_lead)


def _complement(v_lead: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of the columns."""
    n, r = v_lead.shape
    if n == r:
        return np.zeros((n, 0))
    u, _, _ = np.linalg.svd(v_lead, full_matrices=True)
    return u[:, r:]


def _assemble(
    fw: BipartiteFramework,
    lambdas,
    mus,
    coupling: Optional[Sequence[float]],
) -> StressCertificate:
    n, m = fw.n, fw.m
    scaled = prescale(fw)
    d_span = affine_span_dim(scaled.all_points())
    r = d_span + 1
    if n < r or m < r:
        raise DegenerateInput(
            "balanced coefficients force each class to span the full space"
        )
    vn_lead, vm_lead, vn_rest, vm_rest = _shared_factors(scaled, lambdas, mus, r)
    cross = -vn_lead @ vm_lead.T
    n_rest = vn_rest.shape[1]
    m_rest = vm_rest.shape[1]
    pairs = min(n_rest, m_rest)
    if coupling is not None:
        if len(coupling) != pairs:
            raise ShapeMismatch(
                f"coupling expects {pairs} diagonal values, got {len(coupling)}"
            )
        if pairs:
            c_block = np.zeros((n_rest, m_rest))
            for k, value in enumerate(coupling):
                c_block[k, k] = float(value)
            cross = cross + vn_rest @ c_block @ vm_rest.T
    sqrt_l = np.sqrt([float(v) for v in lambdas])
    sqrt_m = np.sqrt([float(v) for v in mus])
    bipartite = (cross * sqrt_m) * sqrt_l[:, None]
    omega = np.zeros((n + m, n + m))
    omega[np.arange(n), np.arange(n)] = [float(v) for v in lambdas]
    omega[np.arange(n, n + m), np.arange(n, n + m)] = [float(v) for v in mus]
    omega[:n, n:] = bipartite
    omega[n:, :n] = bipartite.T
    evals = np.linalg.eigvalsh(omega)
    spectral = float(np.max(np.abs(evals))) if evals.size else 0.0
    threshold = RANK_TOL * max(spectral, 1.0)
    rank = int(np.sum(evals > threshold))
    residual = equilibrium_residual(omega, fw)
    return StressCertificate(
        omega=omega,
        rank=rank,
        min_eigenvalue=float(evals[0]) if evals.size else 0.0,
        residual=residual,
        lambdas=tuple(lambdas),
        mus=tuple(mus),
    )


def build_super_stable_stress(
    fw: BipartiteFramework, lambdas: Sequence[Fraction], mus: Sequence[Fraction]
) -> StressCertificate:
    """Build the maximum-rank PSD equilibrium stress for balanced coefficients.

    Requires every coefficient strictly positive and the exact balance of
    the lifted classes.  The resulting matrix is PSD of rank
    ``n + m - d' - 1`` (``d'`` the combined span dimension), has the
    coefficients on its diagonal, and annihilates the hatted configuration
    matrix up to floating round-off.
    """
    if len(lambdas) != fw.n or len(mus) != fw.m:
        raise ShapeMismatch("coefficient lengths must match the class sizes")
    if any(v <= 0 for v in lambdas) or any(v <= 0 for v in mus):
        raise DegenerateInput("all coefficients must be strictly positive")
    if not _balance_residual(prescale(fw), lambdas, mus):
        raise DegenerateInput("coefficients do not balance the lifted classes")
    cert = _assemble(fw, lambdas, mus, coupling=None)
    expected = fw.n + fw.m - affine_span_dim(fw.all_points()) - 1
    if cert.rank != expected:
        raise NumericalFailure(
            f"numerical rank {cert.rank} disagrees with expected {expected}"
        )
    return cert


def generalized_stress(
    fw: BipartiteFramework,
    lambdas: Sequence[Fraction],
    mus: Sequence[Fraction],
    coupling: Sequence[float],
) -> StressCertificate:
    """The coupling-augmented stress family.

    ``coupling`` supplies the diagonal of the block pairing the trailing
    right directions of the two sides.  The zero coupling reproduces
    :func:`build_super_stable_stress`; values of magnitude above one break
    positive semidefiniteness, and each value of magnitude exactly one
    drops the rank by one.
    """
    if len(lambdas) != fw.n or len(mus) != fw.m:
        raise ShapeMismatch("coefficient lengths must match the class sizes")
    if any(v <= 0 for v in lambdas) or any(v <= 0 for v in mus):
        raise DegenerateInput("all coefficients must be strictly positive")
    if not _balance_residual(prescale(fw), lambdas, mus):
        raise DegenerateInput("coefficients do not balance the lifted classes")
    return _assemble(fw, lambdas, mus, coupling=list(coupling))


def equilibrium_residual(omega: np.ndarray, fw: BipartiteFramework) -> float:
    """Max-norm equilibrium defect of a stress matrix for a framework.

    Evaluates the hatted configuration matrix (of the canonically rescaled
    framework) times the stress matrix; a row of ones is included, so zero
    row sums are part of the check.  Returns the largest absolute entry.
    """
    total = fw.n + fw.m
    if omega.shape != (total, total):
        raise ShapeMismatch("stress order does not match the vertex count")
    hatted = _hatted(prescale(fw))
    return float(np.max(np.abs(hatted @ omega)))


def extract_balanced_diagonals(
    omega: np.ndarray, fw: BipartiteFramework, tol: float = RESIDUAL_TOL
) -> tuple[np.ndarray, np.ndarray, bool]:
    """Read the diagonal coefficient blocks back out of a stress matrix.

    The matrix must carry the bipartite zero pattern exactly (any nonzero
    off-diagonal entry inside a class block raises
    :class:`PatternViolation`).  Returns the two diagonals and whether
    they balance the lifted classes within ``tol`` in floating point.
    """
    total = fw.n + fw.m
    if omega.shape != (total, total):
        raise ShapeMismatch("stress order does not match the vertex count")
    n = fw.n
    p_block = omega[:n, :n]
    q_block = omega[n:, n:]
    for block in (p_block, q_block):
        off = block - np.diag(np.diag(block))
        if np.any(off != 0):
            raise PatternViolation("class blocks must be diagonal")
    lambdas = np.diag(p_block).copy()
    mus = np.diag(q_block).copy()
    scaled = prescale(fw)
    hp = _hatted(BipartiteFramework(scaled.dimension, scaled.points_p, ()))
    hq = np.array([[float(c) for c in pt] + [1.0] for pt in scaled.points_q]).T
    gap = hp @ np.diag(lambdas) @ hp.T - hq @ np.diag(mus) @ hq.T
    return lambdas, mus, bool(np.max(np.abs(gap)) <= tol)


def verify_super_stable_certificate(
    fw: BipartiteFramework, cert: StressCertificate, tol: float = RESIDUAL_TOL
) -> bool:
    """Full numerical-plus-exact check of a super-stability certificate.

    Checks, in order: the equilibrium residual, positive semidefiniteness
    relative to the spectral norm, the numerical rank against
    ``n + m - d' - 1``, and (exactly, in rational arithmetic) that both
    classes span the same affine subspace as the whole configuration,
    which rules out degenerate edge-direction conics.
    """
    total = fw.n + fw.m
    if cert.omega.shape != (total, total):
        return False
    if equilibrium_residual(cert.omega, fw) > tol:
        return False
    evals = np.linalg.eigvalsh(cert.omega)
    spectral = float(np.max(np.abs(evals))) if evals.size else 0.0
    if evals.size and float(evals[0]) < -tol * max(spectral, 1.0):
        return False
    rank = int(np.sum(evals > RANK_TOL * max(spectral, 1.0)))
    d_span = affine_span_dim(fw.all_points())
    if rank != total - d_span - 1 or cert.rank != rank:
        return False
    if not affine_spans_equal(fw.points_p, fw.points_q):
        return False
    if affine_span_dim(fw.points_p) != d_span:
        return False
    return True
