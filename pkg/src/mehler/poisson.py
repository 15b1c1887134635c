"""The Poisson-Hermite semigroup P_t and its maximal functions.

P_t is the subordinated Ornstein-Uhlenbeck semigroup,

    P_t f(x) = pi^{-1/2} * integral_0^inf u^{-1/2} e^{-u} T_{t^2/4u} f(x) du,

equivalently termwise decay e^{-t sqrt(|beta|)} on a Hermite expansion.
Three routes are provided:

  subordination  quadrature of the u-integral after u = v^2 (default), or a
                 split [0,1] u [1,U] panel scheme kept as a cross-check
  kernel         the r-integral on (0,1) obtained from r = e^{-t^2/4u},
                 taken in L = -log r with panels graded toward both
                 endpoints and an analytic completion for the r -> 0 flat
                 tail; the inner integral is the same shifted gaussian
                 quadrature the OU routes use
  spectral       termwise e^{-t sqrt(|beta|)} on a Hermite series

The two quadrature layouts are frozen after calibration against the scalar
identity pi^{-1/2} integral u^{-1/2} e^{-u} e^{-lambda^2/4u} du = e^{-lambda}:
the square rule's worst error over lambda in [0, 5] is below 1e-11 at its
default budget of 200 nodes, and the kernel rule reproduces eigenvalue decay
to about 1e-10 for t in [0.1, 4].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cones import ConeSpec
from .hermite import (
    DEFAULT_CONFIG,
    FunctionRep,
    HermiteSeries,
    PointwiseFunction,
    QuadratureConfig,
    SeriesFunction,
    as_function,
)
from .measure import MaximalEstimate, _gl_rule
from .ou import (
    _cross_fractions,
    _directions,
    _iter_max,
    _series_of,
    _single_point,
    _substitution_values,
)

SUBORDINATION_SCHEMES = ("square", "split")
POISSON_ROUTES = ("subordination", "kernel", "spectral")

# flat-tail cut for the kernel route: e^{-L} ~ 1e-8 beyond this, so T_L f is
# replaced by the gamma-mean and the remaining weight integrates to an erf
_KERNEL_L_HI = 18.42
# essential-decay cut near r = 1: contributions with t^2/4L > this are dropped
_KERNEL_U_CUT = 30.0


@dataclass(frozen=True)
class SubordinationQuadrature:
    """Node budget and substitution choice for the Bochner u-integral."""

    scheme: str = "square"
    nodes: int = 200
    cutoff: float = 30.0

    def __post_init__(self):
        if self.scheme not in SUBORDINATION_SCHEMES:
            raise ValueError(
                f"unknown scheme {self.scheme!r}; expected one of {SUBORDINATION_SCHEMES}"
            )
        if self.nodes < 16:
            raise ValueError(f"need at least 16 nodes, got {self.nodes}")
        if not self.cutoff > 0.0:
            raise ValueError("cutoff must be positive")
        tail = math.exp(-self.cutoff) / math.sqrt(self.cutoff)
        if not tail < 1e-12:
            raise ValueError(
                f"cutoff {self.cutoff} leaves a truncated tail {tail:.2e} >= 1e-12"
            )


DEFAULT_SUBORDINATION = SubordinationQuadrature()


def _panel_points(edges: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    xs, ws = _gl_rule(order)
    mids = 0.5 * (edges[1:] + edges[:-1])
    halves = 0.5 * (edges[1:] - edges[:-1])
    pts = (mids[:, None] + halves[:, None] * xs[None, :]).ravel()
    wts = (halves[:, None] * ws[None, :]).ravel()
    return pts, wts


@lru_cache(maxsize=8)
def _square_rule(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    # v-panels: one from 0, a geometric climb through the singular scale,
    # then linear panels across the gaussian bulk out to v = 6
    order = max(4, nodes // 20)
    edges = np.concatenate(
        [[0.0], np.geomspace(1e-6, 1.2, 16), np.linspace(1.2, 6.0, 5)[1:]]
    )
    v, w = _panel_points(edges, order)
    u = v * v
    omega = 2.0 / math.sqrt(math.pi) * w * np.exp(-u)
    u.flags.writeable = False
    omega.flags.writeable = False
    return u, omega


@lru_cache(maxsize=8)
def _split_rule(nodes: int, cutoff: float) -> tuple[np.ndarray, np.ndarray]:
    # u-panels: geometric toward the u^{-1/2} endpoint, linear to the cutoff
    n_geo, n_lin = 44, 12
    order = max(4, nodes // (n_geo + n_lin))
    edges = np.concatenate(
        [np.geomspace(1e-22, 1.0, n_geo + 1), np.linspace(1.0, cutoff, n_lin + 1)[1:]]
    )
    u, w = _panel_points(edges, order)
    omega = w * np.exp(-u) / (np.sqrt(u) * math.sqrt(math.pi))
    u.flags.writeable = False
    omega.flags.writeable = False
    return u, omega


def subordination_rule(quad: SubordinationQuadrature) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature nodes u_j and weights omega_j for the Bochner integral."""
    if quad.scheme == "square":
        return _square_rule(quad.nodes)
    return _split_rule(quad.nodes, quad.cutoff)


def bochner_identity_error(lam: float, quad: SubordinationQuadrature = DEFAULT_SUBORDINATION) -> float:
    """|quadrature of the subordination integral at decay rate lam - e^{-lam}|."""
    lam = float(lam)
    if lam < 0.0:
        raise ValueError("decay rate must be nonnegative")
    u, omega = subordination_rule(quad)
    val = float(np.sum(omega * np.exp(-(lam * lam) / (4.0 * u))))
    return abs(val - math.exp(-lam))


def _poisson_spectral_series(series: HermiteSeries, t: float) -> HermiteSeries:
    coeffs = {}
    for beta, c in series.terms():
        factor = 1.0 if beta.degree == 0 else math.exp(-t * math.sqrt(beta.degree))
        coeffs[beta.entries] = c * factor
    return HermiteSeries(series.dimension, coeffs)


def _poisson_values(
    f: FunctionRep,
    points: np.ndarray,
    t: float,
    cfg: QuadratureConfig,
    quad: SubordinationQuadrature,
) -> np.ndarray:
    """P_t f at each row of points, by the route suited to the representation."""
    series = _series_of(f)
    if series is not None:
        out = _poisson_spectral_series(series, t).evaluate(points)
        return np.atleast_1d(np.asarray(out, dtype=float))
    if math.isinf(t):
        return _substitution_values(f, points, math.inf, cfg)
    u, omega = subordination_rule(quad)
    acc = np.zeros(points.shape[0])
    for uj, oj in zip(u, omega):
        acc += oj * _substitution_values(f, points, t * t / (4.0 * uj), cfg)
    return acc


def poisson_apply_subordination(
    f,
    x,
    t: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    quad: SubordinationQuadrature = DEFAULT_SUBORDINATION,
) -> float:
    """P_t f(x) by quadrature of the u-integral; t > 0 (t = inf gives the mean).

    The inner T_{t^2/4u} evaluations go through the spectral route for series
    representations and the shifted gaussian quadrature otherwise.
    """
    f = as_function(f)
    t = float(t)
    if not t > 0.0:
        raise ValueError(f"time must be positive, got {t}")
    xa = _single_point(x, f.dimension)
    series = _series_of(f)
    if series is not None and not math.isinf(t):
        u, omega = subordination_rule(quad)
        total = 0.0
        for beta, c in series.terms():
            if beta.degree == 0:
                factor = float(np.sum(omega))
            else:
                factor = float(np.sum(omega * np.exp(-(t * t * beta.degree) / (4.0 * u))))
            total += c * factor * HermiteSeries(series.dimension, {beta.entries: 1.0}).evaluate(xa)
        return float(total)
    return float(_poisson_values(f, xa[None, :], t, cfg, quad)[0])


@lru_cache(maxsize=64)
def _kernel_rule(t: float, panels: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes L_k (OU times) and weights for the r-integral taken in L = -log r."""
    lo = t * t / (4.0 * _KERNEL_U_CUT)
    if lo >= _KERNEL_L_HI:
        empty = np.empty(0)
        return empty, empty
    edges = np.geomspace(lo, _KERNEL_L_HI, panels + 1)
    L, w = _panel_points(edges, order)
    W = w * (t / (2.0 * math.sqrt(math.pi))) * L**-1.5 * np.exp(-(t * t) / (4.0 * L))
    L.flags.writeable = False
    W.flags.writeable = False
    return L, W


def poisson_apply_kernel(
    f, x, t: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """P_t f(x) by the explicit r-integral on (0, 1); t > 0.

    Taken in L = -log r: panels graded geometrically between the essential-
    decay cut near r = 1 and the flat tail near r = 0, where T_L f is within
    about 1e-8 of the gamma-mean and the rest of the integral is an erf.
    """
    f = as_function(f)
    t = float(t)
    if not t > 0.0:
        raise ValueError(f"time must be positive, got {t}")
    xa = _single_point(x, f.dimension)
    if math.isinf(t):
        return float(_substitution_values(f, xa[None, :], math.inf, cfg)[0])
    L, W = _kernel_rule(t, cfg.kernel_panels, cfg.kernel_panel_order)
    total = 0.0
    for Lk, Wk in zip(L, W):
        total += Wk * float(_substitution_values(f, xa[None, :], float(Lk), cfg)[0])
    mean = float(_substitution_values(f, xa[None, :], math.inf, cfg)[0])
    cut = max(t * t / (4.0 * _KERNEL_U_CUT), _KERNEL_L_HI)
    total += mean * math.erf(t / (2.0 * math.sqrt(cut)))
    return total


def poisson_apply_spectral(f, x, t: float):
    """Termwise e^{-t sqrt(|beta|)} decay on a Hermite series; t >= 0."""
    series = _series_of(f)
    if series is None:
        raise TypeError("spectral route needs a Hermite series representation")
    t = float(t)
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    return _poisson_spectral_series(series, t).evaluate(x)


def poisson_apply(
    f,
    x,
    t: float,
    route: str = "auto",
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    quad: SubordinationQuadrature = DEFAULT_SUBORDINATION,
) -> float:
    """Dispatch P_t f(x); route 'auto' picks spectral for series, else subordination."""
    f = as_function(f)
    if route == "auto":
        route = "spectral" if _series_of(f) is not None else "subordination"
    if route == "spectral":
        return float(poisson_apply_spectral(f, x, t))
    if route == "subordination":
        return poisson_apply_subordination(f, x, t, cfg, quad)
    if route == "kernel":
        return poisson_apply_kernel(f, x, t, cfg)
    raise ValueError(
        f"unknown route {route!r}; expected spectral, subordination, kernel, or auto"
    )


def poisson_transform(
    f,
    t: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    quad: SubordinationQuadrature = DEFAULT_SUBORDINATION,
) -> FunctionRep:
    """P_t f as a function of x; series stay series, else pointwise quadrature."""
    f = as_function(f)
    t = float(t)
    series = _series_of(f)
    if series is not None:
        if t < 0.0:
            raise ValueError(f"time must be nonnegative, got {t}")
        return SeriesFunction(_poisson_spectral_series(series, t), name=f"P_{t}[{f.name}]")
    if not t > 0.0:
        raise ValueError(f"time must be positive, got {t}")

    def evaluator(pts: np.ndarray) -> np.ndarray:
        return _poisson_values(f, pts, t, cfg, quad)

    return PointwiseFunction(f.dimension, evaluator, vectorized=True, name=f"P_{t}[{f.name}]")


def poisson_maximal(
    f,
    x,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    times=None,
    include_limit: bool = True,
    quad: SubordinationQuadrature = DEFAULT_SUBORDINATION,
) -> MaximalEstimate:
    """sup_t |P_t f(x)| over a log time grid, with the t = inf mean appended."""
    f = as_function(f)
    xa = _single_point(x, f.dimension)
    if times is None:
        ts = cfg.time_grid.values()
    else:
        ts = np.sort(np.asarray(times, dtype=float))
        if ts.size == 0 or not np.all(ts > 0.0):
            raise ValueError("times must be positive")
    ts = list(ts)
    if include_limit:
        ts.append(math.inf)
    best = (-math.inf, None)
    for t in ts:
        v = abs(poisson_apply(f, xa, float(t), "auto", cfg, quad))
        best = _iter_max(best, v, float(t))
    return MaximalEstimate(value=best[0], argmax=best[1], grid_size=len(ts))


def poisson_nontangential_maximal(
    f,
    x,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    times=None,
    fractions=None,
    quad: SubordinationQuadrature = DEFAULT_SUBORDINATION,
) -> MaximalEstimate:
    """sup |P_t f(y)| over the linear-aperture gaussian cone at apex x.

    Same product-grid contract as the OU nontangential sup: log times,
    aperture-fraction rings, ties resolved toward small t then lexicographic
    y, with the achieving (y, t) pair returned.
    """
    f = as_function(f)
    xa = _single_point(x, f.dimension)
    spec = ConeSpec(tuple(float(c) for c in xa), "gaussian")
    if times is None:
        ts = cfg.time_grid.values()
    else:
        ts = np.sort(np.asarray(times, dtype=float))
        if ts.size == 0 or not np.all(ts > 0.0):
            raise ValueError("times must be positive")
    fracs = _cross_fractions(cfg.cross_radial) if fractions is None else tuple(fractions)
    if any(not 0.0 <= fr < 1.0 for fr in fracs):
        raise ValueError("fractions must lie in [0, 1)")
    dirs = _directions(f.dimension, cfg.cross_angular)
    best = (-math.inf, None)
    cells = 0
    for t in np.sort(ts):
        t = float(t)
        a = spec.aperture(t)
        offsets = [np.zeros(f.dimension)]
        for fr in fracs:
            if fr == 0.0:
                continue
            for u in dirs:
                offsets.append(fr * a * u)
        pts = xa[None, :] + np.asarray(offsets)
        order = np.lexsort(pts.T[::-1])
        pts = pts[order]
        vals = _poisson_values(f, pts, t, cfg, quad)
        cells += pts.shape[0]
        for row, v in zip(pts, np.abs(vals)):
            best = _iter_max(best, float(v), (tuple(float(c) for c in row), t))
    return MaximalEstimate(value=best[0], argmax=best[1], grid_size=cells)
