"""Legendre polynomial basis on [-1, 1] with the uniform probability weight.

Provides evaluation of Legendre polynomials, pdf-weighted Gauss-Legendre
quadrature, multi-index bookkeeping for one- and two-variable expansions,
and the precomputed triple-product tensor used by the Galerkin projection.

All inner products are taken against the uniform pdf f(z) = 1/2 on [-1, 1],
so the squared norm of the degree-w polynomial is 1/(2w + 1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

# Degree cap keeping the three-term recurrence well inside float64 stability.
MAX_DEGREE = 60


class Truncation(enum.Enum):
    """Multi-index truncation rule for multi-variable expansions."""

    TOTAL_DEGREE = "total-degree"
    TENSOR_PRODUCT = "tensor-product"


def legendre_eval(n: int, z) -> np.ndarray | float:
    """Evaluate the Legendre polynomial P_n at points z in [-1, 1].

    Uses the three-term recurrence; accepts scalars or arrays.

    Raises
    ------
    ValueError
        If n is negative, exceeds MAX_DEGREE, or any point lies outside
        [-1, 1].
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds supported maximum {MAX_DEGREE}")
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) > 1.0):
        raise ValueError("evaluation points must lie in [-1, 1]")
    return legendre_table(n, z)[..., n] if z.ndim else float(legendre_table(n, z)[n])


def legendre_table(n: int, z: np.ndarray) -> np.ndarray:
    """Evaluate P_0 .. P_n at z, returned along the last axis.

    No domain checking; internal workhorse shared by quadrature and
    surrogate evaluation.
    """
    z = np.asarray(z, dtype=float)
    out = np.zeros(z.shape + (n + 1,))
    out[..., 0] = 1.0
    if n >= 1:
        out[..., 1] = z
    for k in range(1, n):
        out[..., k + 1] = ((2 * k + 1) * z * out[..., k] - k * out[..., k - 1]) / (k + 1)
    return out


def basis_norm_sq(w: int) -> float:
    """Squared norm of P_w under the uniform pdf: 1/(2w + 1)."""
    if w < 0:
        raise ValueError(f"degree must be non-negative, got {w}")
    return 1.0 / (2 * w + 1)


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and pdf-weighted (unit-sum) weights."""

    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> QuadratureRule:
    """n-point Gauss-Legendre rule rescaled to the uniform pdf (weights sum to 1)."""
    if n < 1:
        raise ValueError(f"node count must be positive, got {n}")
    nodes, weights = np.polynomial.legendre.leggauss(n)
    rule = QuadratureRule(nodes=nodes, weights=weights / 2.0)
    rule.nodes.flags.writeable = False
    rule.weights.flags.writeable = False
    return rule


@lru_cache(maxsize=None)
def inner_triple(i: int, j: int, k: int) -> float:
    """Inner product <P_i P_j P_k> under the uniform pdf, by exact quadrature.

    Symmetric in (i, j, k); vanishes when i + j + k is odd or when the
    degrees violate the triangle inequality.
    """
    total = i + j + k
    if total % 2 == 1:
        return 0.0
    if max(i, j, k) > total - max(i, j, k):
        return 0.0
    rule = gauss_legendre(total // 2 + 1)
    vals = (
        legendre_table(i, rule.nodes)[:, i]
        * legendre_table(j, rule.nodes)[:, j]
        * legendre_table(k, rule.nodes)[:, k]
    )
    return rule.integrate(vals)


@lru_cache(maxsize=None)
def triple_product_tensor(k_max: int, degree: int) -> np.ndarray:
    """Tensor C[k, i, j] = <P_k P_i P_j> for k <= k_max and i, j <= degree."""
    out = np.zeros((k_max + 1, degree + 1, degree + 1))
    for k in range(k_max + 1):
        for i in range(degree + 1):
            for j in range(i, degree + 1):
                out[k, i, j] = out[k, j, i] = inner_triple(k, i, j)
    out.flags.writeable = False
    return out


def total_degree_count(degree: int, dims: int) -> int:
    """Number of multi-indices with total degree at most `degree` in `dims` variables."""
    return math.comb(degree + dims, dims)


def build_index_set(dims: int, degree: int, truncation: Truncation) -> tuple[tuple[int, ...], ...]:
    """Ordered multi-index set with the constant index first.

    d=1 is plain ascending degree. For d=2, TOTAL_DEGREE uses graded
    lexicographic order and TENSOR_PRODUCT uses row-major order with the
    second variable outermost, so the pure-first-variable indices (j1, 0)
    form the leading block.
    """
    if dims == 1:
        return tuple((i,) for i in range(degree + 1))
    if dims != 2:
        raise ValueError(f"only 1 or 2 random variables supported, got {dims}")
    if truncation is Truncation.TOTAL_DEGREE:
        return tuple(
            (i1, g - i1) for g in range(degree + 1) for i1 in range(g, -1, -1)
        )
    return tuple((j1, j2) for j2 in range(degree + 1) for j1 in range(degree + 1))


@dataclass(frozen=True)
class BasisSpec:
    """Descriptor of a tensorized Legendre basis.

    Built through :func:`make_basis`; carries the ordered multi-index set,
    per-index squared norms, and the quadrature order used for Galerkin
    inner products.
    """

    dims: int
    degree: int
    truncation: Truncation
    quad_order: int
    index_set: tuple[tuple[int, ...], ...]
    norms_sq: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.index_set)

    def index_position(self, multi_index: tuple[int, ...]) -> int:
        return self.index_set.index(multi_index)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Evaluate every basis function at `points` of shape (n, dims).

        Returns an (n, size) matrix.
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        tables = [legendre_table(self.degree, points[:, d]) for d in range(self.dims)]
        out = np.empty((points.shape[0], self.size))
        for col, idx in enumerate(self.index_set):
            vals = tables[0][:, idx[0]]
            for d in range(1, self.dims):
                vals = vals * tables[d][:, idx[d]]
            out[:, col] = vals
        return out


def make_basis(
    dims: int,
    degree: int,
    truncation: Truncation = Truncation.TOTAL_DEGREE,
    quad_order: int | None = None,
) -> BasisSpec:
    """Construct a validated BasisSpec.

    The default quadrature order integrates any product of three basis
    polynomials times the quadratic frequency weight exactly.
    """
    if dims not in (1, 2):
        raise ValueError(f"only 1 or 2 random variables supported, got {dims}")
    if not 0 <= degree <= MAX_DEGREE:
        raise ValueError(f"degree must be in [0, {MAX_DEGREE}], got {degree}")
    min_order = math.ceil((3 * degree + 3) / 2)
    if quad_order is None:
        quad_order = max(min_order, degree + 2)
    elif quad_order < min_order:
        raise ValueError(
            f"quad_order {quad_order} too low; need at least {min_order} for degree {degree}"
        )
    index_set = build_index_set(dims, degree, truncation)
    norms = np.array([
        np.prod([basis_norm_sq(i) for i in idx]) for idx in index_set
    ])
    norms.flags.writeable = False
    return BasisSpec(
        dims=dims,
        degree=degree,
        truncation=truncation,
        quad_order=quad_order,
        index_set=index_set,
        norms_sq=norms,
    )
