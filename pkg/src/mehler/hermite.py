"""Normalized Hermite calculus over the gaussian measure.

Conventions used throughout the package:

* The gaussian measure on R^d has density gamma_d(x) = exp(-|x|^2) / pi^(d/2),
  so each coordinate has variance 1/2.
* H_n denotes the physicists' Hermite polynomials (weight exp(-x^2), leading
  coefficient 2^n).  The normalized family is

      h_beta(x) = prod_i H_{beta_i}(x_i) / sqrt(2^|beta| * beta!),

  which is an orthonormal basis of L^2(gamma_d).
* The second-order operator L = (1/2) Laplacian - <x, grad> satisfies
  L h_beta = -|beta| h_beta.

Evaluation uses the recurrence for the normalized polynomials directly,

    h_{k+1}(x) = sqrt(2/(k+1)) * x * h_k(x) - sqrt(k/(k+1)) * h_{k-1}(x),

which keeps every intermediate value at unit scale (no 2^n n! factors appear,
so there is no overflow for any supported degree).

Everything in this module is immutable and stateless after construction;
the node caches are filled once per (dimension, node-count) pair and shared.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Mapping, Union

import numpy as np
from scipy.special import roots_hermite

__all__ = [
    "MAX_DEGREE",
    "MultiIndex",
    "HermiteSeries",
    "PointwiseFunction",
    "SeriesFunction",
    "FunctionRep",
    "LogGrid",
    "QuadratureConfig",
    "NonFiniteValueError",
    "as_function",
    "as_points",
    "enumerate_multi_indices",
    "fourier_hermite_coeff",
    "gauss_hermite_grid",
    "generator_apply",
    "hermite_deriv",
    "hermite_eval",
    "hermite_expand",
    "hermite_values_1d",
    "project_chaos",
]

# Degrees above this are outside the supported domain: quadrature exactness
# and the experiment grids are sized for low-degree expansions.
MAX_DEGREE = 60


class NonFiniteValueError(ArithmeticError):
    """A function produced a non-finite value at a quadrature node.

    Carries the offending node so the caller can see where the integrand
    blew up instead of silently propagating NaN through a reduction.
    """

    def __init__(self, what: str, node: np.ndarray, value: float):
        self.node = np.asarray(node, dtype=float)
        self.value = float(value)
        super().__init__(
            f"{what} is not finite at node {self.node.tolist()}: {self.value!r}"
        )


def _require_finite(values: np.ndarray, points: np.ndarray, what: str) -> None:
    # Cheap vectorized guard; only hunts for the offending node on failure.
    vals = np.asarray(values, dtype=float).ravel()
    if np.all(np.isfinite(vals)):
        return
    bad = int(np.flatnonzero(~np.isfinite(vals))[0])
    pts = np.asarray(points, dtype=float).reshape(vals.shape[0], -1)
    raise NonFiniteValueError(what, pts[bad], float(vals[bad]))


@dataclass(frozen=True, order=False)
class MultiIndex:
    """Multi-index beta in N_0^d, the label of one Hermite basis function."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if len(self.entries) == 0:
            raise ValueError("multi-index needs at least one entry (d >= 1)")
        for e in self.entries:
            if not isinstance(e, (int, np.integer)) or isinstance(e, bool):
                raise ValueError(f"multi-index entries must be integers, got {e!r}")
            if e < 0:
                raise ValueError(f"multi-index entries must be >= 0, got {e}")
        if sum(self.entries) > MAX_DEGREE:
            raise ValueError(
                f"degree {sum(self.entries)} exceeds the supported cap {MAX_DEGREE}"
            )
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    @classmethod
    def of(cls, *entries: int) -> "MultiIndex":
        return cls(tuple(entries))

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return sum(self.entries)

    def graded_key(self) -> tuple:
        # Graded lexicographic: sort by total degree, then with the earlier
        # coordinate dominating, so (1,0) precedes (0,1).
        return (self.degree, tuple(-e for e in self.entries))

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __repr__(self) -> str:
        return f"MultiIndex{self.entries!r}"


def _as_multi_index(beta, dimension: int | None = None) -> MultiIndex:
    if isinstance(beta, MultiIndex):
        mi = beta
    elif isinstance(beta, (int, np.integer)):
        mi = MultiIndex((int(beta),))
    else:
        mi = MultiIndex(tuple(beta))
    if dimension is not None and mi.dimension != dimension:
        raise ValueError(
            f"multi-index dimension {mi.dimension} does not match {dimension}"
        )
    return mi


def _compositions_desc(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # All ways to write `total` as `parts` ordered nonnegative integers,
    # first coordinate descending -- the within-degree graded-lex order.
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions_desc(total - first, parts - 1):
            yield (first,) + rest


def enumerate_multi_indices(dimension: int, max_degree: int) -> list[MultiIndex]:
    """All multi-indices with |beta| <= max_degree in graded lexicographic order.

    The count is binomial(dimension + max_degree, dimension).
    """
    if not isinstance(dimension, (int, np.integer)) or dimension < 1:
        raise ValueError(f"dimension must be a positive integer, got {dimension!r}")
    if not isinstance(max_degree, (int, np.integer)) or max_degree < 0:
        raise ValueError(f"max_degree must be a nonnegative integer, got {max_degree!r}")
    if max_degree > MAX_DEGREE:
        raise ValueError(f"max_degree {max_degree} exceeds the supported cap {MAX_DEGREE}")
    out: list[MultiIndex] = []
    for n in range(max_degree + 1):
        for comp in _compositions_desc(n, int(dimension)):
            out.append(MultiIndex(comp))
    return out


# ---------------------------------------------------------------------------
# grids and configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogGrid:
    """A log-spaced grid on [lo, hi], used for suprema over scales."""

    count: int = 64
    lo: float = 1e-4
    hi: float = 10.0

    def __post_init__(self):
        if self.count < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.count}")
        if not (0.0 < self.lo < self.hi):
            raise ValueError(f"grid bounds must satisfy 0 < lo < hi, got [{self.lo}, {self.hi}]")

    def values(self) -> np.ndarray:
        return np.geomspace(self.lo, self.hi, self.count)

    def refined(self, factor: int = 2) -> "LogGrid":
        return LogGrid(self.count * factor, self.lo, self.hi)


@dataclass(frozen=True)
class QuadratureConfig:
    """Node counts, grids, and cutoffs for every quadrature in the package.

    gh_nodes        Gauss-Hermite nodes per axis (tensorized in dimension d).
    improper_nodes  total nodes for the half-line subordination integral.
    radius_grid     log grid of ball radii for the Hardy-Littlewood supremum.
    time_grid       log grid of semigroup times for the time suprema.
    ball_nodes      Gauss-Legendre nodes per axis for ball integrals.
    fd_step         central finite-difference step for black-box generators.
    coeff_prune     absolute floor below which projected coefficients are dropped.
    cross_radial    radial points per cone cross-section (clustered at the rim).
    cross_angular   angular directions per cross-section in d = 2.
    kernel_panels   panel count for the subordinated-kernel radial integral.
    kernel_panel_order  Gauss-Legendre order inside each such panel.
    mc_samples, mc_seed  Monte Carlo fallback (only used for balls in d > 3).
    """

    gh_nodes: int = 64
    improper_nodes: int = 200
    radius_grid: LogGrid = field(default_factory=lambda: LogGrid(64, 1e-3, 8.0))
    time_grid: LogGrid = field(default_factory=lambda: LogGrid(64, 1e-4, 10.0))
    ball_nodes: int = 64
    fd_step: float = 1e-4
    coeff_prune: float = 1e-12
    cross_radial: int = 8
    cross_angular: int = 8
    kernel_panels: int = 40
    kernel_panel_order: int = 12
    mc_samples: int = 200_000
    mc_seed: int = 20240814

    def __post_init__(self):
        if not (2 <= self.gh_nodes <= 1024):
            raise ValueError(f"gh_nodes must be in [2, 1024], got {self.gh_nodes}")
        if self.improper_nodes < 16:
            raise ValueError(f"improper_nodes must be >= 16, got {self.improper_nodes}")
        if self.ball_nodes < 2:
            raise ValueError(f"ball_nodes must be >= 2, got {self.ball_nodes}")
        if self.fd_step <= 0:
            raise ValueError(f"fd_step must be positive, got {self.fd_step}")
        if self.coeff_prune < 0:
            raise ValueError(f"coeff_prune must be >= 0, got {self.coeff_prune}")
        if self.cross_radial < 2 or self.cross_angular < 1:
            raise ValueError("cross-section grid needs >= 2 radial and >= 1 angular points")
        if self.kernel_panels < 4 or self.kernel_panel_order < 2:
            raise ValueError("kernel quadrature needs >= 4 panels of order >= 2")
        if self.mc_samples < 1000:
            raise ValueError(f"mc_samples must be >= 1000, got {self.mc_samples}")

    def refined(self, factor: int = 2) -> "QuadratureConfig":
        """Same configuration with every grid `factor` times finer."""
        return QuadratureConfig(
            gh_nodes=min(1024, self.gh_nodes * factor),
            improper_nodes=self.improper_nodes * factor,
            radius_grid=self.radius_grid.refined(factor),
            time_grid=self.time_grid.refined(factor),
            ball_nodes=self.ball_nodes * factor,
            fd_step=self.fd_step,
            coeff_prune=self.coeff_prune,
            cross_radial=self.cross_radial * factor,
            cross_angular=self.cross_angular * factor,
            kernel_panels=self.kernel_panels * factor,
            kernel_panel_order=self.kernel_panel_order,
            mc_samples=self.mc_samples * factor,
            mc_seed=self.mc_seed,
        )


DEFAULT_CONFIG = QuadratureConfig()


# ---------------------------------------------------------------------------
# function representations
# ---------------------------------------------------------------------------


def as_points(x, dimension: int) -> tuple[np.ndarray, bool]:
    """Normalize `x` to an (n, dimension) array.

    Returns the array and a flag telling whether the input was a single point
    (so scalar-shaped output is appropriate).
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        if dimension != 1:
            raise ValueError(f"scalar point given but dimension is {dimension}")
        return arr.reshape(1, 1), True
    if arr.ndim == 1:
        if arr.shape[0] != dimension:
            raise ValueError(f"point has {arr.shape[0]} coordinates, expected {dimension}")
        return arr.reshape(1, dimension), True
    if arr.ndim == 2:
        if arr.shape[1] != dimension:
            raise ValueError(f"points have {arr.shape[1]} coordinates, expected {dimension}")
        return arr, False
    raise ValueError(f"points array must have ndim <= 2, got shape {arr.shape}")


@dataclass(frozen=True, eq=False)
class HermiteSeries:
    """A finite linear combination of normalized Hermite functions.

    coefficients maps MultiIndex -> float; zero coefficients are dropped.
    """

    dimension: int
    coefficients: Mapping

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        clean: dict[MultiIndex, float] = {}
        for beta, c in dict(self.coefficients).items():
            mi = _as_multi_index(beta, self.dimension)
            c = float(c)
            if not math.isfinite(c):
                raise ValueError(f"coefficient for {mi} is not finite: {c!r}")
            if c != 0.0:
                clean[mi] = c
        object.__setattr__(self, "coefficients", clean)

    @property
    def degree(self) -> int:
        return max((b.degree for b in self.coefficients), default=0)

    def terms(self) -> list[tuple[MultiIndex, float]]:
        """Coefficients in graded lexicographic order (deterministic)."""
        return sorted(self.coefficients.items(), key=lambda kv: kv[0].graded_key())

    def coefficient(self, beta) -> float:
        return self.coefficients.get(_as_multi_index(beta, self.dimension), 0.0)

    def evaluate(self, x) -> Union[float, np.ndarray]:
        pts, single = as_points(x, self.dimension)
        vals = _series_values(self, pts)
        return float(vals[0]) if single else vals

    def scaled(self, factors: Mapping) -> "HermiteSeries":
        """New series with each coefficient multiplied by factors[beta] (default 1)."""
        return HermiteSeries(
            self.dimension,
            {b: c * float(factors.get(b, 1.0)) for b, c in self.coefficients.items()},
        )

    def __repr__(self) -> str:
        inner = ", ".join(f"{b.entries}: {c:.6g}" for b, c in self.terms())
        return f"HermiteSeries(d={self.dimension}, {{{inner}}})"


@dataclass(frozen=True, eq=False)
class PointwiseFunction:
    """A black-box function of points in R^d.

    evaluator maps an (n, d) array to an (n,) array when vectorized=True,
    otherwise a single length-d point to a float.
    """

    dimension: int
    evaluator: Callable
    vectorized: bool = True
    name: str = ""

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        if not callable(self.evaluator):
            raise ValueError("evaluator must be callable")

    def values(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        if self.vectorized:
            out = np.asarray(self.evaluator(pts), dtype=float)
            if out.shape != (pts.shape[0],):
                raise ValueError(
                    f"vectorized evaluator returned shape {out.shape}, "
                    f"expected ({pts.shape[0]},)"
                )
            return out
        return np.array([float(self.evaluator(p)) for p in pts], dtype=float)

    def __call__(self, x) -> Union[float, np.ndarray]:
        pts, single = as_points(x, self.dimension)
        vals = self.values(pts)
        return float(vals[0]) if single else vals


@dataclass(frozen=True, eq=False)
class SeriesFunction:
    """A function given exactly by a Hermite series (enables spectral routes)."""

    series: HermiteSeries
    name: str = ""

    @property
    def dimension(self) -> int:
        return self.series.dimension

    def values(self, points: np.ndarray) -> np.ndarray:
        return _series_values(self.series, np.asarray(points, dtype=float))

    def __call__(self, x) -> Union[float, np.ndarray]:
        return self.series.evaluate(x)


FunctionRep = Union[PointwiseFunction, SeriesFunction]


def as_function(f, dimension: int | None = None) -> FunctionRep:
    """Coerce a series, FunctionRep, or raw callable into a FunctionRep."""
    if isinstance(f, (PointwiseFunction, SeriesFunction)):
        if dimension is not None and f.dimension != dimension:
            raise ValueError(f"function dimension {f.dimension} does not match {dimension}")
        return f
    if isinstance(f, HermiteSeries):
        if dimension is not None and f.dimension != dimension:
            raise ValueError(f"series dimension {f.dimension} does not match {dimension}")
        return SeriesFunction(f)
    if callable(f):
        if dimension is None:
            raise ValueError("a raw callable needs an explicit dimension")
        return PointwiseFunction(dimension, f, vectorized=False)
    raise ValueError(f"cannot interpret {type(f).__name__} as a function representation")


# ---------------------------------------------------------------------------
# quadrature plumbing
# ---------------------------------------------------------------------------


@lru_cache(maxsize=64)
def _gh_rule_1d(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = roots_hermite(n)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


@lru_cache(maxsize=32)
def gauss_hermite_grid(dimension: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Tensor Gauss-Hermite rule normalized against gamma_d.

    Returns (points, weights) with points of shape (n^d, d) and weights
    summing to 1, so  integral of g dgamma_d ~= weights @ g(points).
    """
    if dimension < 1:
        raise ValueError(f"dimension must be >= 1, got {dimension}")
    if n ** dimension > 40_000_000:
        raise ValueError(f"tensor rule with {n}^{dimension} nodes is too large")
    xi, w = _gh_rule_1d(n)
    w1 = w / math.sqrt(math.pi)
    if dimension == 1:
        pts = xi.reshape(-1, 1).copy()
        wts = w1.copy()
    else:
        grids = np.meshgrid(*([xi] * dimension), indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=1)
        wt = w1
        for _ in range(dimension - 1):
            wt = np.multiply.outer(wt, w1)
        wts = wt.ravel()
    pts.flags.writeable = False
    wts.flags.writeable = False
    return pts, wts


def hermite_values_1d(max_degree: int, xi: np.ndarray) -> np.ndarray:
    """Table of normalized 1-d Hermite values, shape (max_degree+1, len(xi)).

    Row k holds h_k(xi) computed with the normalized three-term recurrence;
    every row has unit L^2(gamma_1) norm so values stay at working scale.
    """
    if max_degree < 0:
        raise ValueError(f"max_degree must be >= 0, got {max_degree}")
    if max_degree > MAX_DEGREE:
        raise ValueError(f"max_degree {max_degree} exceeds the supported cap {MAX_DEGREE}")
    xi = np.asarray(xi, dtype=float)
    table = np.empty((max_degree + 1, xi.shape[0]))
    table[0] = 1.0
    if max_degree >= 1:
        table[1] = math.sqrt(2.0) * xi
    for k in range(1, max_degree):
        table[k + 1] = (
            math.sqrt(2.0 / (k + 1)) * xi * table[k]
            - math.sqrt(k / (k + 1.0)) * table[k - 1]
        )
    return table


def _hermite_product(beta: MultiIndex, pts: np.ndarray) -> np.ndarray:
    # prod over axes of the 1-d rows; pts has shape (n, d)
    out = np.ones(pts.shape[0])
    for axis, deg in enumerate(beta):
        if deg == 0:
            continue
        out *= hermite_values_1d(deg, pts[:, axis])[deg]
    return out


def hermite_eval(beta, x) -> Union[float, np.ndarray]:
    """Evaluate the normalized Hermite function h_beta at x.

    x may be a scalar (d = 1), a length-d point, or an (n, d) batch.
    """
    mi = _as_multi_index(beta)
    pts, single = as_points(x, mi.dimension)
    vals = _hermite_product(mi, pts)
    return float(vals[0]) if single else vals


def hermite_deriv(beta, x, axis: int) -> Union[float, np.ndarray]:
    """Partial derivative of h_beta along `axis`.

    Uses d/dxi h_k = sqrt(2k) h_{k-1} coordinatewise, so the result is again
    a product of normalized Hermite values (exact, no differencing).
    """
    mi = _as_multi_index(beta)
    if not (0 <= axis < mi.dimension):
        raise ValueError(f"axis {axis} out of range for dimension {mi.dimension}")
    pts, single = as_points(x, mi.dimension)
    k = mi[axis]
    if k == 0:
        vals = np.zeros(pts.shape[0])
    else:
        lowered = list(mi.entries)
        lowered[axis] = k - 1
        vals = math.sqrt(2.0 * k) * _hermite_product(MultiIndex(tuple(lowered)), pts)
    return float(vals[0]) if single else vals


def _series_values(series: HermiteSeries, pts: np.ndarray) -> np.ndarray:
    if not series.coefficients:
        return np.zeros(pts.shape[0])
    # one value table per axis, sized by the largest degree appearing there
    max_by_axis = [0] * series.dimension
    for b in series.coefficients:
        for axis, deg in enumerate(b):
            max_by_axis[axis] = max(max_by_axis[axis], deg)
    tables = [
        hermite_values_1d(max_by_axis[axis], pts[:, axis])
        for axis in range(series.dimension)
    ]
    out = np.zeros(pts.shape[0])
    for b, c in series.terms():
        term = np.full(pts.shape[0], c)
        for axis, deg in enumerate(b):
            if deg:
                term = term * tables[axis][deg]
        out += term
    return out


def _series_axis_derivative(series: HermiteSeries, axis: int, order: int = 1) -> HermiteSeries:
    # repeated application of d/dxi h_k = sqrt(2k) h_{k-1}
    coeffs = dict(series.coefficients)
    for _ in range(order):
        nxt: dict[MultiIndex, float] = {}
        for b, c in coeffs.items():
            k = b[axis]
            if k == 0:
                continue
            lowered = list(b.entries)
            lowered[axis] = k - 1
            key = MultiIndex(tuple(lowered))
            nxt[key] = nxt.get(key, 0.0) + c * math.sqrt(2.0 * k)
        coeffs = nxt
    return HermiteSeries(series.dimension, coeffs)


# ---------------------------------------------------------------------------
# coefficients, projections, generator
# ---------------------------------------------------------------------------


def fourier_hermite_coeff(f, beta, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Fourier-Hermite coefficient <f, h_beta> in L^2(gamma_d).

    Series inputs return the stored coefficient exactly; black-box inputs are
    integrated with the tensor Gauss-Hermite rule from `cfg`.
    """
    mi = _as_multi_index(beta)
    rep = as_function(f, dimension=None)
    if mi.dimension != rep.dimension:
        raise ValueError(
            f"multi-index dimension {mi.dimension} does not match function dimension {rep.dimension}"
        )
    if isinstance(rep, SeriesFunction):
        return rep.series.coefficient(mi)
    pts, wts = gauss_hermite_grid(rep.dimension, cfg.gh_nodes)
    fvals = rep.values(pts)
    _require_finite(fvals, pts, "integrand")
    return float(np.dot(wts, fvals * _hermite_product(mi, pts)))


def project_chaos(f, n: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> HermiteSeries:
    """Projection J_n f onto the span of {h_beta : |beta| = n}.

    For black-box inputs every coefficient with |beta| = n is computed by
    quadrature; magnitudes at or below cfg.coeff_prune are dropped so that
    polynomial inputs of degree < n project to the empty series.
    """
    rep = as_function(f, dimension=None)
    if n < 0:
        raise ValueError(f"chaos order must be >= 0, got {n}")
    if n > MAX_DEGREE:
        raise ValueError(f"chaos order {n} exceeds the supported cap {MAX_DEGREE}")
    d = rep.dimension
    if isinstance(rep, SeriesFunction):
        kept = {b: c for b, c in rep.series.coefficients.items() if b.degree == n}
        return HermiteSeries(d, kept)
    betas = [b for b in enumerate_multi_indices(d, n) if b.degree == n]
    pts, wts = gauss_hermite_grid(d, cfg.gh_nodes)
    fvals = rep.values(pts)
    _require_finite(fvals, pts, "integrand")
    coeffs: dict[MultiIndex, float] = {}
    weighted = wts * fvals
    for b in betas:
        c = float(np.dot(weighted, _hermite_product(b, pts)))
        if abs(c) > cfg.coeff_prune:
            coeffs[b] = c
    return HermiteSeries(d, coeffs)


def hermite_expand(f, max_degree: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> HermiteSeries:
    """Hermite expansion of f through total degree max_degree."""
    rep = as_function(f, dimension=None)
    if isinstance(rep, SeriesFunction):
        kept = {b: c for b, c in rep.series.coefficients.items() if b.degree <= max_degree}
        return HermiteSeries(rep.dimension, kept)
    d = rep.dimension
    pts, wts = gauss_hermite_grid(d, cfg.gh_nodes)
    fvals = rep.values(pts)
    _require_finite(fvals, pts, "integrand")
    weighted = wts * fvals
    coeffs: dict[MultiIndex, float] = {}
    for b in enumerate_multi_indices(d, max_degree):
        c = float(np.dot(weighted, _hermite_product(b, pts)))
        if abs(c) > cfg.coeff_prune:
            coeffs[b] = c
    return HermiteSeries(d, coeffs)


def generator_apply(f, x, cfg: QuadratureConfig = DEFAULT_CONFIG) -> Union[float, np.ndarray]:
    """Apply L = (1/2) Laplacian - <x, grad> to f at x.

    Series inputs use the exact derivative identities coordinatewise (no
    eigenvalue shortcut, so the eigenrelation is a genuine check).  Black-box
    inputs use central differences with step cfg.fd_step, accurate to
    O(step^2).
    """
    rep = as_function(f, dimension=None)
    d = rep.dimension
    pts, single = as_points(x, d)
    if isinstance(rep, SeriesFunction):
        out = np.zeros(pts.shape[0])
        for axis in range(d):
            second = _series_axis_derivative(rep.series, axis, order=2)
            first = _series_axis_derivative(rep.series, axis, order=1)
            out += 0.5 * _series_values(second, pts)
            out -= pts[:, axis] * _series_values(first, pts)
        return float(out[0]) if single else out
    h = cfg.fd_step
    center = rep.values(pts)
    _require_finite(center, pts, "function value")
    out = np.zeros(pts.shape[0])
    for axis in range(d):
        shift = np.zeros(d)
        shift[axis] = h
        up = rep.values(pts + shift)
        dn = rep.values(pts - shift)
        _require_finite(up, pts + shift, "function value")
        _require_finite(dn, pts - shift, "function value")
        out += 0.5 * (up - 2.0 * center + dn) / (h * h)
        out -= pts[:, axis] * (up - dn) / (2.0 * h)
    return float(out[0]) if single else out
