"""Desk-scale experiments: convergence along cones, domination, verification.

run_convergence realizes the limit quantity behind non-tangential
convergence: along an in-cone path to the apex, it records for each scale
alpha the worst semigroup-vs-target error over path points with t < alpha.
Those sup errors are nonincreasing as alpha shrinks, exactly, because the
point sets are nested.

run_tangential_contrast pairs that with a deliberately tangential path
(|y - x| = t^a, a < 1/2) so the role of the aperture is visible in one CSV.

run_domination_report measures the truncated cone supremum against the
ball-average maximal function at each apex and reports the worst ratio;
run_verify_suite executes the cross-module invariants and emits a
machine-readable pass/fail report with margins.

All outputs are deterministic for a fixed config: grids are fixed, the only
randomness is seeded, rows are sorted before emission, and numbers are
printed with round-trip float formatting.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .catalog import catalog, catalog_entry
from .cones import CONE_KINDS, ConeSpec, cone_contains, cone_path, tangential_path
from .hermite import (
    DEFAULT_CONFIG,
    HermiteSeries,
    PointwiseFunction,
    QuadratureConfig,
    enumerate_multi_indices,
    gauss_hermite_grid,
    generator_apply,
    hermite_values_1d,
)
from .measure import gaussian_norm, hl_maximal
from .ou import (
    maximal_bound_report,
    nontangential_maximal,
    ou_apply,
    ou_apply_change_of_var,
    ou_apply_kernel,
    ou_apply_spectral,
    ou_transform,
)
from .poisson import (
    DEFAULT_SUBORDINATION,
    bochner_identity_error,
    poisson_apply,
    poisson_apply_kernel,
    poisson_apply_subordination,
    poisson_transform,
)

SEMIGROUPS = ("ou", "poisson")
VERIFY_LEVELS = ("fast", "full")

# worst truncated-cone-to-ball-average ratio observed at build time over the
# d=1 nonnegative entries one/bump/ball on the |x| <= 3 apex grid (attained
# by bump at the origin); the verify suite asserts the measured ratio stays
# within 5% of this under a 2x grid refinement
RECORDED_DOMINATION_CONSTANT = 1.4934464347501952


def _default_alphas() -> tuple[float, ...]:
    return tuple(float(a) for a in np.geomspace(1e-1, 1e-4, 12))


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything an experiment run needs, validated field by field."""

    dimension: int = 1
    semigroup: str = "ou"
    function: str = "one"
    apexes: tuple = ((0.0,),)
    cone: str = "parabolic-gaussian"
    eta: float = 0.5
    decay: float = 0.7
    path_points: int = 40
    alphas: tuple = field(default_factory=_default_alphas)
    exponent: float = 0.25
    quadrature: QuadratureConfig = DEFAULT_CONFIG
    seed: int = 20240814

    def __post_init__(self):
        if self.dimension not in (1, 2, 3):
            raise ValueError(f"dimension: must be 1, 2, or 3, got {self.dimension}")
        if self.semigroup not in SEMIGROUPS:
            raise ValueError(f"semigroup: must be one of {SEMIGROUPS}, got {self.semigroup!r}")
        if self.function not in catalog(self.dimension):
            raise ValueError(
                f"function: no catalog entry {self.function!r} in d={self.dimension}"
            )
        apexes = []
        for apex in self.apexes:
            arr = np.atleast_1d(np.asarray(apex, dtype=float))
            if arr.shape != (self.dimension,) or not np.all(np.isfinite(arr)):
                raise ValueError(f"apexes: bad apex {apex!r} for d={self.dimension}")
            apexes.append(tuple(float(c) for c in arr))
        if not apexes:
            raise ValueError("apexes: need at least one apex")
        object.__setattr__(self, "apexes", tuple(apexes))
        if self.cone not in CONE_KINDS:
            raise ValueError(f"cone: must be one of {CONE_KINDS}, got {self.cone!r}")
        if not 0.0 <= self.eta < 1.0:
            raise ValueError(f"eta: must lie in [0, 1), got {self.eta}")
        if not 0.0 < self.decay < 1.0:
            raise ValueError(f"decay: must lie in (0, 1), got {self.decay}")
        if self.path_points < 1:
            raise ValueError(f"path_points: must be >= 1, got {self.path_points}")
        alphas = tuple(float(a) for a in self.alphas)
        if not alphas or any(a <= 0.0 for a in alphas):
            raise ValueError("alphas: need positive scales")
        if any(a <= b for a, b in zip(alphas, alphas[1:])):
            raise ValueError("alphas: must be strictly decreasing")
        object.__setattr__(self, "alphas", alphas)
        if not 0.0 < self.exponent < 0.5:
            raise ValueError(f"exponent: must lie in (0, 1/2), got {self.exponent}")


@dataclass(frozen=True)
class ConvergenceRecord:
    """Worst in-cone error below scale alpha, with the achieving point."""

    apex: tuple
    alpha: float
    sup_error: float
    y_star: tuple
    t_star: float


def _apply(semigroup: str, f, y, t: float, cfg: QuadratureConfig) -> float:
    if semigroup == "ou":
        return ou_apply(f, y, t, "auto", cfg)
    return poisson_apply(f, y, t, "auto", cfg)


def run_convergence(config: ExperimentConfig) -> list[ConvergenceRecord]:
    """Sup error over in-cone path points below each alpha, per apex.

    Path times are a geometric ladder; the config must send the path deeper
    than the smallest alpha, otherwise the last records would be suprema
    over empty sets and the run is rejected up front.
    """
    entry = catalog_entry(config.function, config.dimension)
    f = entry.rep
    cfg = config.quadrature
    min_alpha = min(config.alphas)
    records = []
    for apex in sorted(config.apexes):
        spec = ConeSpec(apex, config.cone)
        path = cone_path(spec, config.path_points, config.eta, config.decay, cfg=cfg)
        if path.points[-1][1] >= min_alpha:
            raise ValueError(
                "path_points/decay: path bottoms out at t="
                f"{path.points[-1][1]:.3e}, above the smallest alpha {min_alpha:.3e};"
                " increase path_points or shrink decay"
            )
        target = float(f.values(np.asarray([apex], dtype=float))[0])
        evaluated = [
            (y, t, abs(_apply(config.semigroup, f, y, t, cfg) - target))
            for y, t in path.points
        ]
        for alpha in sorted(config.alphas, reverse=True):
            best_err = -math.inf
            best = None
            # ascending t among eligible points: ties resolve to smallest t
            for y, t, err in reversed(evaluated):
                if t < alpha and err > best_err:
                    best_err = err
                    best = (y, t)
            records.append(
                ConvergenceRecord(
                    apex=apex,
                    alpha=alpha,
                    sup_error=best_err,
                    y_star=best[0],
                    t_star=best[1],
                )
            )
    return records


def run_tangential_contrast(config: ExperimentConfig) -> list[dict]:
    """Side-by-side error rows for an in-cone path and a tangential path."""
    entry = catalog_entry(config.function, config.dimension)
    f = entry.rep
    cfg = config.quadrature
    rows = []
    for apex in sorted(config.apexes):
        spec = ConeSpec(apex, config.cone)
        target = float(f.values(np.asarray([apex], dtype=float))[0])
        cone_pts = cone_path(
            spec, config.path_points, config.eta, config.decay, cfg=cfg
        ).points
        tang_pts = tangential_path(
            apex, config.path_points, config.exponent, decay=config.decay
        )
        for label, pts in (("cone", cone_pts), ("tangential", tang_pts)):
            for y, t in pts:
                err = abs(_apply(config.semigroup, f, y, t, cfg) - target)
                rows.append(
                    {
                        "apex": apex,
                        "path": label,
                        "t": t,
                        "y": y,
                        "error": err,
                        "in_cone": cone_contains(spec, y, t),
                    }
                )
    rows.sort(key=lambda r: (r["apex"], r["path"], -r["t"]))
    return rows


def run_domination_report(config: ExperimentConfig, refine_factor: int = 1) -> dict:
    """Truncated cone supremum vs ball-average maximal function, per apex.

    Requires a nonnegative catalog entry (the pointwise bound is stated for
    f >= 0). Also carries the three-term time-supremum bound ingredients so
    an empirical constant can be read off either table.
    """
    entry = catalog_entry(config.function, config.dimension)
    if not entry.nonnegative:
        raise ValueError(
            f"function: domination reports need f >= 0; {entry.name!r} is signed"
        )
    cfg = config.quadrature if refine_factor == 1 else config.quadrature.refined(refine_factor)
    f = entry.rep
    cone_rows = []
    bound_rows = []
    for apex in sorted(config.apexes):
        sup = nontangential_maximal(f, apex, "truncated-parabolic", cfg)
        ball = hl_maximal(f, apex, cfg)
        ratio = sup.value / ball.value if ball.value > 0.0 else math.inf
        cone_rows.append(
            {
                "apex": apex,
                "maximal": sup.value,
                "hl_maximal": ball.value,
                "ratio": ratio,
            }
        )
        rec = maximal_bound_report(f, apex, cfg)
        bound_rows.append({"apex": apex, **rec})
    worst = max(cone_rows, key=lambda r: r["ratio"])
    worst_bound = max(bound_rows, key=lambda r: r["ratio"])
    return {
        "function": entry.name,
        "dimension": config.dimension,
        "refine_factor": refine_factor,
        "rows": cone_rows,
        "max_ratio": worst["ratio"],
        "max_ratio_apex": worst["apex"],
        "bound_rows": bound_rows,
        "bound_max_ratio": worst_bound["ratio"],
    }


# ---------------------------------------------------------------------------
# invariant verification suite
# ---------------------------------------------------------------------------


def _basis_matrix(dimension: int, max_degree: int, cfg: QuadratureConfig):
    """Values of every h_beta (|beta| <= max_degree) at the tensor grid nodes."""
    nodes, wts = gauss_hermite_grid(dimension, cfg.gh_nodes)
    tables = [hermite_values_1d(max_degree, nodes[:, a]) for a in range(dimension)]
    index = enumerate_multi_indices(dimension, max_degree)
    mat = np.empty((len(index), nodes.shape[0]))
    for i, beta in enumerate(index):
        row = tables[0][beta.entries[0]].copy()
        for a in range(1, dimension):
            row *= tables[a][beta.entries[a]]
        mat[i] = row
    return mat, wts


def _orthonormality_margin(dimension: int, max_degree: int, cfg: QuadratureConfig) -> float:
    mat, wts = _basis_matrix(dimension, max_degree, cfg)
    gram = (mat * wts[None, :]) @ mat.T
    return float(np.max(np.abs(gram - np.eye(mat.shape[0]))))


def _eigenrelation_margin(dimension: int, max_degree: int, cfg: QuadratureConfig, seed: int) -> float:
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-2.5, 2.5, size=(24, dimension))
    worst = 0.0
    for beta in enumerate_multi_indices(dimension, max_degree):
        s = HermiteSeries(dimension, {beta.entries: 1.0})
        lhs = generator_apply(s, pts, cfg)
        rhs = -beta.degree * s.evaluate(pts)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def _markov_margin(cfg: QuadratureConfig) -> float:
    f = PointwiseFunction(1, lambda p: np.ones(p.shape[0]), name="one")
    worst = 0.0
    for t in (1e-4, 1e-2, 0.5, 2.0, 10.0):
        for x in (-4.0, 0.0, 1.3, 4.0):
            worst = max(worst, abs(ou_apply_kernel(f, x, t, cfg) - 1.0))
    return worst


def _random_series(dimension: int, max_degree: int, seed: int) -> HermiteSeries:
    rng = np.random.default_rng(seed)
    idx = enumerate_multi_indices(dimension, max_degree)
    return HermiteSeries(
        dimension, {b.entries: float(c) for b, c in zip(idx, rng.normal(size=len(idx)))}
    )


def _ou_route_margin(cfg: QuadratureConfig, seed: int, dims=(1, 2)) -> float:
    worst = 0.0
    for d in dims:
        s = _random_series(d, 6, seed + d)
        rng = np.random.default_rng(seed + 10 * d)
        x = rng.uniform(-1.5, 1.5, size=d)
        for t in (0.1, 1.0):
            spectral = ou_apply_spectral(s, x, t)
            worst = max(worst, abs(ou_apply_kernel(s, x, t, cfg) - spectral))
            worst = max(worst, abs(ou_apply_change_of_var(s, x, t, cfg) - spectral))
    return worst


def _poisson_route_margin(cfg: QuadratureConfig, seed: int, dims=(1,), times=(0.5, 2.0)) -> float:
    from .poisson import poisson_apply_spectral

    worst = 0.0
    for d in dims:
        s = _random_series(d, 6, seed + 5 * d)
        rng = np.random.default_rng(seed + 50 * d)
        x = rng.uniform(-1.0, 1.0, size=d)
        for t in times:
            spectral = poisson_apply_spectral(s, x, t)
            worst = max(worst, abs(poisson_apply_subordination(s, x, t, cfg) - spectral))
            worst = max(worst, abs(poisson_apply_kernel(s, x, t, cfg) - spectral))
    return worst


def _bochner_margin() -> float:
    return max(bochner_identity_error(lam) for lam in (0.0, 0.5, 1.0, 2.0, 5.0))


def _semigroup_law_margins(cfg: QuadratureConfig) -> tuple[float, float, float]:
    bump = PointwiseFunction(
        1, lambda p: np.exp(-np.sum(p * p, axis=1)), name="bump"
    )
    t, s = 0.35, 0.6
    ou_inner = ou_transform(bump, s, cfg)
    ou_worst = max(
        abs(ou_apply_kernel(ou_inner, x, t, cfg) - ou_apply_kernel(bump, x, t + s, cfg))
        for x in (0.0, 1.2)
    )
    po_inner = poisson_transform(bump, s, cfg)
    po_worst = max(
        abs(
            poisson_apply_subordination(po_inner, x, t, cfg)
            - poisson_apply_subordination(bump, x, t + s, cfg)
        )
        for x in (0.0, 1.2)
    )
    series = _random_series(1, 5, 77)
    spec_worst = 0.0
    for x in (-0.8, 0.4):
        direct = ou_apply_spectral(series, x, t + s)
        composed = ou_apply_spectral(ou_transform(series, s), x, t)
        spec_worst = max(spec_worst, abs(direct - composed))
    return ou_worst, po_worst, spec_worst


def _contraction_margin(cfg: QuadratureConfig, names, dimension: int = 1) -> float:
    """max over entries, p, t of ||S_t f||_p / ||f||_p - 1 (both semigroups)."""
    worst = -math.inf
    for name in names:
        entry = catalog_entry(name, dimension)
        for p in (1.0, 2.0, 4.0):
            if p > entry.max_p:
                continue
            ref = entry.norm(p, cfg)
            for t in (1e-4, 0.1, 1.0, 10.0):
                for moved in (
                    ou_transform(entry.rep, t, cfg),
                    poisson_transform(entry.rep, t, cfg),
                ):
                    worst = max(worst, gaussian_norm(moved, p, cfg) / ref - 1.0)
    return worst


def _cone_inclusion_margin(samples: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    violations = 0
    for _ in range(samples):
        d = int(rng.integers(1, 4))
        x = rng.uniform(-5.0, 5.0, size=d)
        t = float(rng.uniform(1e-6, 0.3))
        y = x + rng.uniform(-1.0, 1.0, size=d)
        if cone_contains(ConeSpec(x, "truncated-parabolic"), y, t):
            if not cone_contains(ConeSpec(x, "parabolic-gaussian"), y, t):
                violations += 1
    return float(violations)


def _convergence_monotone_margin(cfg: QuadratureConfig) -> float:
    config = ExperimentConfig(
        dimension=1,
        semigroup="ou",
        function="h_2",
        apexes=((1.0,), (0.0,)),
        cone="parabolic-gaussian",
        eta=0.3,
        decay=0.6,
        path_points=40,
        quadrature=cfg,
    )
    records = run_convergence(config)
    worst = 0.0
    by_apex = {}
    for rec in records:
        by_apex.setdefault(rec.apex, []).append(rec)
    for recs in by_apex.values():
        recs = sorted(recs, key=lambda r: -r.alpha)
        for a, b in zip(recs, recs[1:]):
            worst = max(worst, b.sup_error - a.sup_error)
    return worst


def _domination_stability_margins(cfg: QuadratureConfig) -> tuple[float, float]:
    """(worst ratio vs recorded constant, relative drift under 2x refinement)."""
    apexes = tuple((float(x),) for x in (-3.0, -1.0, 0.0, 1.0, 3.0))
    worst_ratio = 0.0
    worst_drift = 0.0
    for name in ("one", "bump", "ball"):
        config = ExperimentConfig(
            dimension=1, function=name, apexes=apexes, quadrature=cfg
        )
        base = run_domination_report(config, refine_factor=1)
        fine = run_domination_report(config, refine_factor=2)
        worst_ratio = max(worst_ratio, base["max_ratio"], fine["max_ratio"])
        drift = abs(fine["max_ratio"] - base["max_ratio"]) / base["max_ratio"]
        worst_drift = max(worst_drift, drift)
    return worst_ratio, worst_drift


def run_verify_suite(
    level: str = "fast", cfg: QuadratureConfig = DEFAULT_CONFIG, seed: int = 20240814
) -> dict:
    """Execute the cross-module invariants; returns a JSON-ready report."""
    if level not in VERIFY_LEVELS:
        raise ValueError(f"level: must be one of {VERIFY_LEVELS}, got {level!r}")
    records = []

    def check(name: str, margin: float, tolerance: float):
        records.append(
            {
                "invariant": name,
                "margin": float(margin),
                "tolerance": float(tolerance),
                "pass": bool(margin <= tolerance),
            }
        )

    ortho_dims = (1, 2) if level == "fast" else (1, 2, 3)
    for d in ortho_dims:
        check(f"hermite-orthonormality-d{d}", _orthonormality_margin(d, 6, cfg), 1e-8)
    check("hermite-eigenrelation", _eigenrelation_margin(2, 6, cfg, seed), 1e-8)
    check("ou-markov", _markov_margin(cfg), 1e-10)
    check("ou-route-agreement", _ou_route_margin(cfg, seed), 1e-8)
    check("poisson-bochner-identity", _bochner_margin(), 1e-10)
    ou_law, po_law, spec_law = _semigroup_law_margins(cfg)
    check("ou-semigroup-law", ou_law, 1e-7)
    check("poisson-semigroup-law", po_law, 1e-5)
    check("spectral-semigroup-law", spec_law, 1e-12)
    smooth = ("one", "h_1", "h_2", "x2", "bump")
    check("lp-contraction", _contraction_margin(cfg, smooth), 1e-6)
    samples = 10_000 if level == "fast" else 100_000
    check("cone-inclusion", _cone_inclusion_margin(samples, seed), 0.0)
    check("convergence-monotone", _convergence_monotone_margin(cfg), 0.0)
    if level == "fast":
        check("poisson-route-agreement", _poisson_route_margin(cfg, seed), 1e-6)
    else:
        check(
            "poisson-route-agreement",
            _poisson_route_margin(cfg, seed, dims=(1, 2), times=(0.1, 1.0, 4.0)),
            1e-6,
        )
        ratio, drift = _domination_stability_margins(cfg)
        check(
            "domination-recorded-constant",
            ratio,
            RECORDED_DOMINATION_CONSTANT * 1.05,
        )
        check("domination-refinement-drift", drift, 0.05)
    report = {
        "level": level,
        "pass": all(r["pass"] for r in records),
        "records": records,
    }
    return report


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ";".join(repr(float(c)) for c in value)
    return str(value)


def convergence_csv(records: list[ConvergenceRecord]) -> str:
    lines = ["apex,alpha,sup_error,y_star,t_star"]
    ordered = sorted(records, key=lambda r: (r.apex, r.alpha))
    for r in ordered:
        lines.append(
            ",".join(
                (_fmt(r.apex), _fmt(r.alpha), _fmt(r.sup_error), _fmt(r.y_star), _fmt(r.t_star))
            )
        )
    return "\n".join(lines) + "\n"


def contrast_csv(rows: list[dict]) -> str:
    lines = ["apex,path,t,y,error,in_cone"]
    for r in rows:
        lines.append(
            ",".join(
                (
                    _fmt(r["apex"]),
                    r["path"],
                    _fmt(r["t"]),
                    _fmt(r["y"]),
                    _fmt(r["error"]),
                    str(r["in_cone"]).lower(),
                )
            )
        )
    return "\n".join(lines) + "\n"


def domination_csv(report: dict) -> str:
    lines = ["apex,maximal,hl_maximal,ratio"]
    for r in report["rows"]:
        lines.append(
            ",".join(
                (_fmt(r["apex"]), _fmt(r["maximal"]), _fmt(r["hl_maximal"]), _fmt(r["ratio"]))
            )
        )
    return "\n".join(lines) + "\n"


def _jsonable(obj):
    if isinstance(obj, ConvergenceRecord):
        return {
            "apex": list(obj.apex),
            "alpha": obj.alpha,
            "sup_error": obj.sup_error,
            "y_star": list(obj.y_star),
            "t_star": obj.t_star,
        }
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def to_json(payload) -> str:
    """Deterministic JSON: sorted keys, no timestamps, round-trip floats."""
    return json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n"
