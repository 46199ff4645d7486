"""Scaling experiments, log-log exponent fits and reproducible reports.

Each experiment id maps to a runner that fills a grid of rows, some
measured quantities, the exponent (or bound) it is compared against, and
named pass/fail checks.  Wall-clock timings are kept apart from everything
else so that two runs with one configuration give identical summaries.
"""
import csv
import io
import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt
from typing import NamedTuple

import numpy as np

from . import __version__
from .cover import (
    cover_min_heights,
    densest_planes_count,
    enum_primitive_lattices,
    subdivide,
)
from .lattice import (
    count_points_in_box,
    from_generators,
    orthogonal_complement,
    primitive_points_up_to_sign,
    random_primitive_lattice,
)
from .polynomial import parse_polynomial
from .projection import best_projection, parametrized_curve
from .projective import (
    count_proj_space,
    iter_proj_vectors,
    lattice_from_plane,
    plane_from_lattice,
)
from .variety import (
    count_affine_points,
    count_proj_points,
    parallel_lines,
    projective,
    union_of_planes_variety,
)

__all__ = [
    "FitResult",
    "ExperimentReport",
    "ExperimentError",
    "fit_exponent",
    "parse_config",
    "run_experiment",
    "EXPERIMENTS",
    "DEFAULTS",
    "projection_corpus",
]


class ExperimentError(ValueError):
    pass


class FitResult(NamedTuple):
    slope: float
    intercept: float
    max_residual: float


def fit_exponent(samples):
    """Least-squares line through ``(log x, log y)``; the slope is the
    fitted exponent."""
    samples = list(samples)
    if len(samples) < 2:
        raise ValueError("need at least two samples to fit an exponent")
    if any(x <= 0 or y <= 0 for x, y in samples):
        raise ValueError("samples must be positive")
    lx = np.log([float(x) for x, _ in samples])
    ly = np.log([float(y) for _, y in samples])
    if np.ptp(lx) == 0:
        raise ValueError("x values must not all coincide")
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = np.abs(ly - (slope * lx + intercept))
    return FitResult(float(slope), float(intercept), float(resid.max()))


def _fit_summary(samples):
    if len(samples) < 3:
        return {"status": "insufficient data", "points": len(samples)}
    f = fit_exponent(samples)
    return {
        "status": "ok",
        "points": len(samples),
        "slope": round(f.slope, 6),
        "intercept": round(f.intercept, 6),
        "max_residual": round(f.max_residual, 6),
    }


# configuration


def _parse_value(text):
    text = text.strip()
    if "," in text:
        return [_parse_value(t) for t in text.split(",") if t.strip()]
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    return text


def parse_config(text):
    """``key = value`` lines; ``#`` comments; comma-separated lists."""
    cfg = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ExperimentError(f"config line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        cfg[key.strip().replace("-", "_")] = _parse_value(value)
    return cfg


def _as_list(v):
    return v if isinstance(v, list) else [v]


# reports


@dataclass
class ExperimentReport:
    experiment: str
    config: dict
    columns: list
    rows: list = field(default_factory=list)
    measured: dict = field(default_factory=dict)
    targets: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)
    elapsed_ms: list = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self):
        return not self.errors and bool(self.checks) and all(self.checks.values())

    def add_row(self, row, started):
        self.rows.append(row)
        self.elapsed_ms.append(round((time.perf_counter() - started) * 1000, 3))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns + ["elapsed_ms"])
        for row, ms in zip(self.rows, self.elapsed_ms):
            w.writerow([_cell(row.get(c)) for c in self.columns] + [ms])
        return buf.getvalue()

    def summary(self):
        """Deterministic content first; wall-clock data only under ``timing``."""
        return {
            "experiment": self.experiment,
            "version": self.version,
            "config": self.config,
            "measured": self.measured,
            "targets": self.targets,
            "checks": self.checks,
            "errors": self.errors,
            "passed": self.passed,
            "timing": {
                "elapsed_ms": self.elapsed_ms,
                "total_ms": round(sum(self.elapsed_ms), 3),
            },
        }

    def summary_json(self):
        return json.dumps(self.summary(), indent=2, sort_keys=True, default=str) + "\n"

    def summary_text(self):
        lines = [f"experiment {self.experiment} (szlattice {self.version})"]
        for k, v in self.measured.items():
            lines.append(f"  measured {k}: {v}")
        for k, v in self.targets.items():
            lines.append(f"  target   {k}: {v}")
        for k, ok in self.checks.items():
            lines.append(f"  {'PASS' if ok else 'FAIL'} {k}")
        for e in self.errors:
            lines.append(f"  ERROR {e}")
        lines.append("RESULT " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"

    def write(self, out_dir):
        import os

        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "report.csv"), "w", encoding="utf-8") as fh:
            fh.write(self.to_csv())
        with open(os.path.join(out_dir, "summary.json"), "w", encoding="utf-8") as fh:
            fh.write(self.summary_json())
        with open(os.path.join(out_dir, "summary.txt"), "w", encoding="utf-8") as fh:
            fh.write(self.summary_text())


def _cell(v):
    if isinstance(v, float):
        return repr(round(v, 9))
    return "" if v is None else v


# experiment runners


def _cover_coverage(cfg, rep):
    """Every point of P^n(Q, B) lies on a plane of the cover, for every B.

    Planes are recorded with the least height of a point that produced them,
    so the cover for height B is the set of planes with that height <= B.
    Coverage is then checked from the other side: enumerate the rational
    points on each plane and require that each point x of height h is met
    by some plane present at height h.
    """
    bmax = cfg["b_max"]
    for n in _as_list(cfg["n_values"]):
        for k in range(1, n):
            started = time.perf_counter()
            best = cover_min_heights(n, k, bmax)
            first_cover = {}
            for basis, h0 in best.items():
                L = from_generators(basis)
                for p in primitive_points_up_to_sign(L, bmax):
                    c = p.coords
                    if h0 < first_cover.get(c, bmax + 1):
                        first_cover[c] = h0
            for B in range(1, bmax + 1):
                pts = 0
                missed = 0
                for v in iter_proj_vectors(n, B):
                    pts += 1
                    if first_cover.get(v, bmax + 1) > max(B, max(map(abs, v))):
                        missed += 1
                planes = sum(1 for h0 in best.values() if h0 <= B)
                rep.add_row({"n": n, "k": k, "B": B, "points": pts, "count": planes, "uncovered": missed}, started)
                started = time.perf_counter()
                rep.checks[f"covered n={n} k={k} B={B}"] = missed == 0
    rep.targets["uncovered"] = 0


def _cover_scaling(cfg, rep):
    n, k = cfg["n"], cfg["k"]
    bs = sorted(_as_list(cfg["b_values"]))
    started = time.perf_counter()
    best = cover_min_heights(n, k, bs[-1])
    dets = {basis: from_generators(basis).det_sq for basis in best}
    sizes, maxdets = [], []
    for B in bs:
        members = [b for b, h in best.items() if h <= B]
        size = len(members)
        md = max(dets[b] for b in members)
        sizes.append((B, size))
        maxdets.append((B, md))
        rep.add_row({"n": n, "k": k, "B": B, "count": size, "max_det_sq": md}, started)
        started = time.perf_counter()
    target = Fraction((n + 1) * (n - k), n)
    det_target = Fraction(2 * (n - k), n)
    fit = _fit_summary(sizes)
    dfit = _fit_summary(maxdets)
    rep.measured["cover_size_exponent"] = fit
    rep.measured["max_det_sq_exponent"] = dfit
    rep.targets["cover_size_exponent"] = float(target)
    rep.targets["cover_size_exponent_range"] = [cfg["slope_min"], cfg["slope_max"]]
    rep.targets["max_det_sq_exponent_at_most"] = float(det_target) + cfg["det_slope_tolerance"]
    if fit["status"] == "ok":
        rep.checks["cover size exponent in range"] = cfg["slope_min"] <= fit["slope"] <= cfg["slope_max"]
    else:
        rep.errors.append("cover size fit: insufficient data")
    if dfit["status"] == "ok":
        rep.checks["max det_sq exponent bounded"] = (
            dfit["slope"] <= float(det_target) + cfg["det_slope_tolerance"]
        )


def _densest_sublinear(cfg, rep):
    n, k, B = cfg["n"], cfg["k"], cfg["b"]
    ds = sorted(_as_list(cfg["d_values"]))
    samples = []
    for d in ds:
        started = time.perf_counter()
        _, N = densest_planes_count(n, k, d, B, cfg["hsq_limit"])
        samples.append((d, N))
        rep.add_row({"n": n, "k": k, "B": B, "d": d, "count": N}, started)
    fit = _fit_summary(samples)
    cap = cfg["max_slope"]
    rep.measured["d_exponent"] = fit
    rep.targets["d_exponent"] = n / (n + 1)
    rep.targets["d_exponent_at_most"] = cap
    if fit["status"] == "ok":
        rep.checks["d exponent at most cap"] = fit["slope"] <= cap
    else:
        rep.errors.append("d exponent fit: insufficient data")
    (d0, n0), (d1, n1) = samples[0], samples[-1]
    bound = cfg["ratio_factor"] * n0 * (d1 / d0) ** cap
    rep.measured["largest_count"] = n1
    rep.targets["largest_count_at_most"] = round(bound, 3)
    rep.checks["largest count within factor of smallest"] = n1 <= bound


def _lattice_point_bound(cfg, rep):
    rng = random.Random(cfg["seed"])
    ambient, rank, hsq = cfg["ambient"], cfg["rank"], cfg["hsq_max"]
    bs = _as_list(cfg["b_values"])
    worst = 0.0
    for i in range(cfg["samples"]):
        started = time.perf_counter()
        L = _random_lattice_bounded_det(rng, ambient, rank, hsq)
        for B in bs:
            c = count_points_in_box(L, B)
            ratio = c * sqrt(L.det_sq) / B**rank
            worst = max(worst, ratio)
            rep.add_row({"sample": i, "lattice": str(L), "det_sq": L.det_sq, "B": B, "count": c, "normalized": ratio}, started)
            started = time.perf_counter()
    rep.measured["max_normalized_count"] = round(worst, 6)
    rep.targets["constant"] = cfg["constant"]
    rep.checks["count * det / B^rank bounded by constant"] = worst <= cfg["constant"]


def _random_lattice_bounded_det(rng, ambient, rank, hsq):
    while True:
        L = random_primitive_lattice(rng, ambient, rank, bound=4)
        if L.det_sq <= hsq:
            return L


def _duality(cfg, rep):
    rng = random.Random(cfg["seed"])
    bad = 0
    total = 0
    for ambient in _as_list(cfg["ambients"]):
        started = time.perf_counter()
        mism = 0
        for _ in range(cfg["samples"]):
            rank = rng.randint(1, ambient - 1)
            L = random_primitive_lattice(rng, ambient, rank, bound=cfg.get("entry_bound", 4))
            if orthogonal_complement(L).det_sq != L.det_sq:
                mism += 1
        total += cfg["samples"]
        bad += mism
        rep.add_row({"ambient": ambient, "count": cfg["samples"], "mismatches": mism}, started)
    rep.measured["mismatches"] = bad
    rep.targets["mismatches"] = 0
    rep.checks[f"det_sq preserved by complement ({total} lattices)"] = bad == 0


def _subdivision(cfg, rep):
    for k in _as_list(cfg["k_values"]):
        for H in _as_list(cfg["h_values"]):
            started = time.perf_counter()
            S = subdivide(H, k, prec=cfg.get("prec", 160))
            v = S.verify()
            rep.add_row({"k": k, "H": H, "count": S.K, "K_cap": round(k * H ** (1 / k), 6), "all_invariants": all(v.values())}, started)
            for name, ok in v.items():
                rep.checks[f"k={k} H={H} {name}"] = ok
    rep.targets["declared_bits"] = cfg.get("prec", 160) - 40


def _parallel_lines(cfg, rep):
    for B in _as_list(cfg["b_values"]):
        for d in range(1, B + 1):
            started = time.perf_counter()
            c = count_affine_points(parallel_lines(d), B)
            expect = d * (2 * B + 1)
            rep.add_row({"B": B, "d": d, "count": c, "expected": expect}, started)
            rep.checks[f"B={B} d={d}"] = c == expect


def _brute_proj_count(n, B, forms=()):
    # raw integer tuples: keep primitive ones on the variety, halve for sign
    fns = [f.compile() for f in forms]
    hits = 0
    for v in itertools.product(range(-B, B + 1), repeat=n + 1):
        if not any(v):
            continue
        g = 0
        for a in v:
            g = _gcd(g, a)
        if g != 1:
            continue
        if all(f(*v) == 0 for f in fns):
            hits += 1
    assert hits % 2 == 0
    return hits // 2


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _projective_small(cfg, rep):
    cases = [
        ("#P^1(Q,1)", 1, 1, None, 4),
        ("#P^2(Q,1)", 2, 1, None, 13),
        ("conic x0^2 + x1^2 - x2^2", 2, 1, "x0^2 + x1^2 - x2^2", 4),
        ("hyperplane x0", 2, 1, "x0", 4),
    ]
    for name, n, B, poly, expected in cases:
        started = time.perf_counter()
        if poly is None:
            got = count_proj_space(n, B)
            oracle = _brute_proj_count(n, B)
        else:
            p = parse_polynomial(poly, n + 1)
            got = count_proj_points(projective(n, p), B)
            oracle = _brute_proj_count(n, B, [p])
        rep.add_row({"case": name, "n": n, "B": B, "count": got, "oracle": oracle, "expected": expected}, started)
        rep.checks[name] = got == oracle == expected


def _roundtrip(cfg, rep):
    for ambient, rank in cfg["cases"]:
        started = time.perf_counter()
        lattices = enum_primitive_lattices(ambient, rank, cfg["hsq"]).lattices
        bad = 0
        for L in lattices:
            P = plane_from_lattice(L)
            if lattice_from_plane(P) != L or plane_from_lattice(lattice_from_plane(P)) != P:
                bad += 1
        rep.add_row({"ambient": ambient, "rank": rank, "count": len(lattices), "failures": bad}, started)
        rep.checks[f"round trip ambient={ambient} rank={rank}"] = bad == 0 and len(lattices) > 0


def _union_of_lines(cfg, rep):
    B = cfg["b"]
    samples = []
    for d in sorted(_as_list(cfg["d_values"])):
        started = time.perf_counter()
        planes, N = densest_planes_count(2, 1, d, B, cfg["hsq_limit"])
        V = union_of_planes_variety(planes)
        c = count_proj_points(V, B)
        samples.append((d, N))
        rep.add_row({"d": d, "B": B, "count": N, "curve_count": c}, started)
        rep.checks[f"union count equals curve count d={d}"] = c == N
    fit = _fit_summary(samples)
    rep.measured["d_exponent"] = fit
    rep.targets["d_exponent"] = 2 / 3
    rep.targets["d_exponent_at_most"] = cfg["max_slope"]
    if fit["status"] == "ok":
        rep.checks["d exponent at most cap"] = fit["slope"] <= cfg["max_slope"]
    else:
        rep.errors.append("d exponent fit: insufficient data")


def projection_corpus(seed=20240601, size=25, max_deg=4, coeff=3):
    """The twisted cubic followed by seeded random curves ``(t, f(t), g(t))``."""
    rng = random.Random(seed)
    corpus = [("twisted cubic", parametrized_curve([0, 0, 1], [0, 0, 0, 1]))]
    while len(corpus) < size:
        df, dg = rng.randint(0, max_deg), rng.randint(1, max_deg)
        f = [rng.randint(-coeff, coeff) for _ in range(df + 1)]
        g = [rng.randint(-coeff, coeff) for _ in range(dg + 1)]
        if df and not f[-1]:
            f[-1] = 1
        if not g[-1]:
            g[-1] = -1
        corpus.append((f"t -> (t, {f}, {g})", parametrized_curve(f, g)))
    return corpus


def _projection_degree(cfg, rep):
    corpus = projection_corpus(cfg["seed"], cfg["corpus_size"])
    for name, C in corpus:
        started = time.perf_counter()
        choice = best_projection(C, check=False)
        d, dp = C.declared_degree, choice.d_prime
        rep.add_row({"curve": name, "degree": d, "count": dp, "drop": choice.drop,
                     "degrees": " ".join(str(choice.degrees.get(i, "-")) for i in range(3))}, started)
        rep.checks[f"{name}: d' <= d and d'^2 >= d"] = dp <= d and dp * dp >= d
    tc = corpus[0][1]
    degs = sorted(best_projection(tc).degrees.values())
    rep.measured["twisted_cubic_degrees"] = degs
    rep.targets["twisted_cubic_degrees"] = [2, 3, 3]
    rep.checks["twisted cubic projections {2,3,3}"] = degs == [2, 3, 3]
    rep.checks["twisted cubic best d' = 3"] = best_projection(tc).d_prime == 3


def _lattice_count_duality(cfg, rep):
    for hsq in _as_list(cfg["hsq_values"]):
        started = time.perf_counter()
        lines = enum_primitive_lattices(3, 1, hsq)
        planes = enum_primitive_lattices(3, 2, hsq, method="search")
        rep.add_row({"hsq": hsq, "count": len(lines), "rank2_count": len(planes),
                     "radius_sq": planes.radius_sq, "complete": planes.complete}, started)
        rep.checks[f"hsq={hsq} rank 1 count = rank 2 count"] = len(lines) == len(planes) and planes.complete


EXPERIMENTS = {
    "cover-coverage": (_cover_coverage, ["n", "k", "B", "points", "count", "uncovered"]),
    "cover-scaling": (_cover_scaling, ["n", "k", "B", "count", "max_det_sq"]),
    "densest-sublinear": (_densest_sublinear, ["n", "k", "B", "d", "count"]),
    "lattice-point-bound": (_lattice_point_bound, ["sample", "lattice", "det_sq", "B", "count", "normalized"]),
    "duality": (_duality, ["ambient", "count", "mismatches"]),
    "subdivision": (_subdivision, ["k", "H", "count", "K_cap", "all_invariants"]),
    "parallel-lines": (_parallel_lines, ["B", "d", "count", "expected"]),
    "projective-small": (_projective_small, ["case", "n", "B", "count", "oracle", "expected"]),
    "roundtrip": (_roundtrip, ["ambient", "rank", "count", "failures"]),
    "union-of-lines": (_union_of_lines, ["d", "B", "count", "curve_count"]),
    "projection-degree": (_projection_degree, ["curve", "degree", "count", "drop", "degrees"]),
    "lattice-count-duality": (_lattice_count_duality, ["hsq", "count", "rank2_count", "radius_sq", "complete"]),
}

DEFAULTS = {
    "cover-coverage": {"n_values": [2, 3], "b_max": 8},
    "cover-scaling": {"n": 2, "k": 1, "b_values": [4, 8, 16, 32, 64],
                      "slope_min": 1.2, "slope_max": 1.8, "det_slope_tolerance": 0.3},
    "densest-sublinear": {"n": 2, "k": 1, "b": 50, "d_values": [1, 2, 4, 8, 16, 32, 64],
                          "max_slope": 0.75, "ratio_factor": 2, "hsq_limit": 1 << 16},
    "lattice-point-bound": {"seed": 1, "samples": 200, "ambient": 3, "rank": 2,
                            "hsq_max": 100, "b_values": [10, 100], "constant": 20},
    "duality": {"seed": 2, "samples": 1000, "ambients": [3, 4]},
    "subdivision": {"k_values": [2, 3, 4], "h_values": [10, 100, 1000, 10000], "prec": 160},
    "parallel-lines": {"b_values": [5, 10, 20]},
    "projective-small": {},
    "roundtrip": {"hsq": 25, "cases": [[3, 2], [4, 3]]},
    "union-of-lines": {"b": 30, "d_values": [2, 4, 8, 16], "max_slope": 0.75, "hsq_limit": 1 << 16},
    "projection-degree": {"seed": 20240601, "corpus_size": 25},
    "lattice-count-duality": {"hsq_values": [4, 25, 100]},
}


def run_experiment(experiment, config=None):
    """Run ``experiment`` with ``DEFAULTS`` overridden by ``config``.

    Invalid configurations and unreachable parameters are recorded in the
    report's ``errors`` instead of propagating.
    """
    if experiment not in EXPERIMENTS:
        raise ExperimentError(
            f"unknown experiment {experiment!r}; choose from {', '.join(sorted(EXPERIMENTS))}"
        )
    runner, columns = EXPERIMENTS[experiment]
    cfg = dict(DEFAULTS[experiment])
    for key, value in (config or {}).items():
        if key in ("id", "experiment"):
            continue
        cfg[key] = value
    if isinstance(cfg.get("cases"), list) and cfg["cases"] and not isinstance(cfg["cases"][0], list):
        flat = cfg["cases"]
        cfg["cases"] = [flat[i:i + 2] for i in range(0, len(flat), 2)]
    rep = ExperimentReport(experiment, cfg, list(columns))
    try:
        runner(cfg, rep)
    except (ValueError, KeyError) as exc:
        rep.errors.append(f"{type(exc).__name__}: {exc}")
    return rep

