"""Weighted quadratic objectives on the Stiefel manifold.

The Brockett cost

    f(X) = (1/2) sum_i alpha_i <x_i, A x_i>,    0 < alpha_1 < ... < alpha_k,

with A symmetric, is minimized by the k eigenvectors of A belonging to the
smallest eigenvalues, ordered so that the largest weight sits on the
smallest eigenvalue. k = 1 with alpha = (1,) is the Rayleigh quotient on
the sphere. The strictly increasing weights pin the minimizer to actual
eigenvectors instead of an orthogonal mixture of them.

This module also provides the condition number of the cost's Hessian at
the minimizer as a function of the spectrum and weights, the weights that
minimize that condition number, and the exact minimum value used as an
oracle in tests and benchmarks.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegenerateSpectrumError, NotSymmetricError
from .geometry import DualTangentVector, StiefelPoint, project_dual
from .linalg import as_matrix


@dataclass(frozen=True)
class SpectrumInfo:
    """Ascending eigenvalues of the symmetric operator."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        lam = np.ascontiguousarray(self.eigenvalues, dtype=np.float64).reshape(-1)
        if lam.size < 1 or not np.all(np.isfinite(lam)):
            raise ValueError("eigenvalues must be a non-empty finite vector")
        if np.any(np.diff(lam) < 0):
            raise ValueError("eigenvalues must be ascending")
        lam.flags.writeable = False
        object.__setattr__(self, "eigenvalues", lam)

    @property
    def n(self) -> int:
        return self.eigenvalues.size


@dataclass(frozen=True)
class DiagonalOperator:
    """Diagonal symmetric operator; the fast path used in the experiments."""

    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64).reshape(-1)
        if v.size < 1 or not np.all(np.isfinite(v)):
            raise ValueError("diagonal values must be a non-empty finite vector")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.values[:, None] * x


@dataclass(frozen=True)
class DenseOperator:
    """Dense symmetric operator (symmetry checked on construction)."""

    a: np.ndarray

    def __post_init__(self):
        a = as_matrix(self.a, "operator")
        if a.shape[0] != a.shape[1]:
            raise ValueError(f"operator must be square, got {a.shape}")
        norm = np.linalg.norm(a)
        if np.linalg.norm(a - a.T) > 1e-12 * max(norm, 1e-300):
            raise NotSymmetricError("operator matrix is not symmetric")
        a.flags.writeable = False
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.a @ x


@dataclass(frozen=True)
class EvalResult:
    """Value and dual-tangent gradient at a point, plus the raw Euclidean
    gradient A X diag(alpha) the projection was computed from."""

    value: float
    grad: DualTangentVector
    euclidean_grad: np.ndarray


@dataclass(frozen=True)
class ObjectiveSpec:
    """A weighted quadratic objective: symmetric operator plus weights."""

    operator: DiagonalOperator | DenseOperator
    weights: np.ndarray

    def __post_init__(self):
        w = np.ascontiguousarray(self.weights, dtype=np.float64).reshape(-1)
        if w.size < 1 or not np.all(np.isfinite(w)):
            raise ValueError("weights must be a non-empty finite vector")
        if w[0] <= 0.0 or np.any(np.diff(w) <= 0):
            raise ValueError("weights must be positive and strictly increasing")
        if w.size > self.operator.n:
            raise ValueError("more weights than operator dimensions")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.operator.n

    @property
    def k(self) -> int:
        return self.weights.size

    def _check_point(self, x: StiefelPoint) -> None:
        if x.n != self.n or x.k != self.k:
            raise ValueError(
                f"point shape ({x.n}, {x.k}) does not match objective "
                f"({self.n}, {self.k})"
            )

    def value(self, x: StiefelPoint) -> float:
        """Objective value; one operator application."""
        self._check_point(x)
        ax = self.operator.apply(x.x)
        return 0.5 * float(np.einsum("ij,ij,j->", x.x, ax, self.weights))

    def value_and_gradient(self, x: StiefelPoint) -> EvalResult:
        """Value and dual-tangent gradient; one operator application.

        The Euclidean gradient of the half-weighted quadratic is
        A X diag(alpha); the dual gradient is its projection onto the
        dual tangent space at X.
        """
        self._check_point(x)
        ax = self.operator.apply(x.x)
        value = 0.5 * float(np.einsum("ij,ij,j->", x.x, ax, self.weights))
        euclid = ax * self.weights[None, :]
        return EvalResult(value, project_dual(x, euclid), euclid)


def evaluate(spec: ObjectiveSpec, x: StiefelPoint) -> EvalResult:
    """Functional form of ObjectiveSpec.value_and_gradient."""
    return spec.value_and_gradient(x)


def sphere_condition_number(spectrum: SpectrumInfo) -> float:
    """Condition number of the Rayleigh quotient's Hessian at its
    minimizer: (lambda_n - lambda_1) / (lambda_2 - lambda_1)."""
    lam = spectrum.eigenvalues
    if lam.size < 2:
        raise ValueError("need at least two eigenvalues")
    gap = lam[1] - lam[0]
    if gap <= 0.0:
        raise DegenerateSpectrumError("lambda_2 == lambda_1")
    return float((lam[-1] - lam[0]) / gap)


def brockett_condition_number(spectrum: SpectrumInfo, weights) -> float:
    """Condition number of the Brockett cost's Hessian at the minimizer.

        kappa = alpha_k (lambda_n - lambda_1) /
                min{ alpha_1 (lambda_{k+1} - lambda_k),
                     min_{i<k} (lambda_{k-i+1} - lambda_{k-i})(alpha_{i+1} - alpha_i) }

    Reduces to sphere_condition_number at k = 1.
    """
    lam = spectrum.eigenvalues
    alpha = np.ascontiguousarray(weights, dtype=np.float64).reshape(-1)
    k = alpha.size
    if lam.size < k + 1:
        raise ValueError("need at least k + 1 eigenvalues")
    terms = [alpha[0] * (lam[k] - lam[k - 1])]
    for i in range(1, k):
        terms.append((lam[k - i] - lam[k - i - 1]) * (alpha[i] - alpha[i - 1]))
    denom = min(terms)
    if denom <= 0.0:
        raise DegenerateSpectrumError("zero gap in spectrum or weights")
    return float(alpha[-1] * (lam[-1] - lam[0]) / denom)


def optimal_condition_number(spectrum: SpectrumInfo, k: int) -> float:
    """Smallest Hessian condition number achievable by any weight choice:
    (lambda_n - lambda_1) * sum_{i<=k} 1/(lambda_{i+1} - lambda_i)."""
    lam = spectrum.eigenvalues
    if not 1 <= k <= lam.size - 1:
        raise ValueError(f"need 1 <= k <= n - 1, got k={k}, n={lam.size}")
    gaps = np.diff(lam[: k + 1])
    if np.any(gaps <= 0.0):
        raise DegenerateSpectrumError("zero gap among the leading eigenvalues")
    return float((lam[-1] - lam[0]) * np.sum(1.0 / gaps))


def optimal_weights(spectrum: SpectrumInfo, k: int) -> np.ndarray:
    """Weights attaining the optimal condition number.

    alpha_i accumulates the reciprocal gaps from the top of the occupied
    block downward:

        alpha_i = sum_{j=1..i} 1/(lambda_{k-j+2} - lambda_{k-j+1}),

    so alpha_1 = 1/(lambda_{k+1} - lambda_k) and every term of the
    condition number's denominator equals 1. Any positive multiple works;
    this normalization is the one returned. For lambda_i = i this is
    alpha_i = i.
    """
    lam = spectrum.eigenvalues
    if not 1 <= k <= lam.size - 1:
        raise ValueError(f"need 1 <= k <= n - 1, got k={k}, n={lam.size}")
    gaps = np.diff(lam[: k + 1])
    if np.any(gaps <= 0.0):
        raise DegenerateSpectrumError("zero gap among the leading eigenvalues")
    return np.cumsum(1.0 / gaps[::-1])


def known_minimum(spectrum: SpectrumInfo, weights) -> float:
    """Exact minimum of the Brockett cost for a given spectrum and weights.

    The minimizer occupies the k smallest eigenvalues with the weights in
    opposite order (largest weight on the smallest eigenvalue), so the
    value is (1/2) sum_i alpha_i lambda_{k+1-i}.
    """
    lam = spectrum.eigenvalues
    alpha = np.ascontiguousarray(weights, dtype=np.float64).reshape(-1)
    k = alpha.size
    if lam.size < k:
        raise ValueError("need at least k eigenvalues")
    return 0.5 * float(np.dot(alpha, lam[:k][::-1]))


def parse_spectrum(text: str) -> SpectrumInfo:
    """Parse a spectrum specifier.

    Forms:
        linear:N     eigenvalues 1, 2, ..., N
        quadratic:N  eigenvalues i^2/N for i = 1..N
        file:PATH    newline-separated ascending reals
    """
    kind, sep, arg = text.partition(":")
    if not sep:
        raise ValueError(f"invalid spectrum specifier {text!r}: missing ':'")
    if kind == "linear":
        n = _parse_size(arg, text)
        return SpectrumInfo(np.arange(1, n + 1, dtype=np.float64))
    if kind == "quadratic":
        n = _parse_size(arg, text)
        i = np.arange(1, n + 1, dtype=np.float64)
        return SpectrumInfo(i * i / n)
    if kind == "file":
        values = np.loadtxt(Path(arg), dtype=np.float64, ndmin=1)
        return SpectrumInfo(values)
    raise ValueError(f"invalid spectrum specifier {text!r}: unknown kind {kind!r}")


def _parse_size(arg: str, full: str) -> int:
    try:
        n = int(arg)
    except ValueError:
        raise ValueError(f"invalid spectrum specifier {full!r}: bad size {arg!r}")
    if n < 1:
        raise ValueError(f"invalid spectrum specifier {full!r}: size must be >= 1")
    return n


def make_objective(spectrum: SpectrumInfo, weights) -> ObjectiveSpec:
    """Diagonal-operator objective with the given spectrum and weights."""
    return ObjectiveSpec(DiagonalOperator(spectrum.eigenvalues), np.asarray(weights))
