"""Batch analysis: per-record contextuality reports, aggregate statistics,
deterministic CSV serialisation, and the self-verification harness."""

from __future__ import annotations

import csv
import itertools
import math
import random
from dataclasses import dataclass
from multiprocessing import Pool

from . import cbd, fractions, prlike, stats
from .errors import ContextualityError, UndefinedStatisticError
from .prlike import ContextualityReport, PrLikeModel
from .records import ProbabilityRecord
from .schema import SchemaInstance, build_model

LP_ORACLE_TOL = 1e-6
IDENTITY_TOL = 1e-12

FEATURE_NAMES = (
    "euclidean_dist",
    "bias_diff",
    "nouns_entropy",
    "adjectives_entropy",
    "cosine_similarity",
)

REPORT_COLUMNS = ("id", "sf", "delta", "cf", "cnt1", "sheaf", "cbd", "error")


@dataclass(frozen=True)
class RecordReport:
    id: str
    report: ContextualityReport | None
    error: str | None


def _analyze_one(args) -> RecordReport:
    record, with_lp = args
    try:
        inst = SchemaInstance(record.nouns, record.adjectives)
        pr = build_model(inst, record.p_first)
        report = prlike.analyze(pr, compute_cf_lp=with_lp)
        if with_lp:
            sf_lp = fractions.signalling_fraction(prlike.to_empirical(pr)).fraction
            if abs(sf_lp - report.sf) > LP_ORACLE_TOL:
                return RecordReport(
                    record.id, None, f"LP cross-check failed: SF_LP={sf_lp!r} vs analytic {report.sf!r}"
                )
            if abs(report.cf - 1.0) > LP_ORACLE_TOL:
                return RecordReport(
                    record.id, None, f"LP cross-check failed: CF_LP={report.cf!r} not 1"
                )
        return RecordReport(record.id, report, None)
    except ContextualityError as exc:
        return RecordReport(record.id, None, str(exc))


def analyze_batch(records, with_lp: bool = False, jobs: int = 1) -> list[RecordReport]:
    """One report per record, in input order regardless of parallelism.

    Degenerate records (duplicate nouns or adjectives, out-of-range
    probabilities) become error rows; processing continues.
    """
    work = [(r, with_lp) for r in records]
    if jobs <= 1 or len(work) < 2:
        return [_analyze_one(item) for item in work]
    with Pool(processes=jobs) as pool:
        return pool.map(_analyze_one, work, chunksize=max(1, len(work) // (4 * jobs)))


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_report_csv(rows: list[RecordReport], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for row in rows:
        if row.report is None:
            writer.writerow([row.id, "", "", "", "", "", "", row.error or ""])
        else:
            r = row.report
            writer.writerow(
                [row.id, _fmt(r.sf), _fmt(r.delta), _fmt(r.cf), _fmt(r.cnt1), _fmt(r.sheaf_flag), _fmt(r.cbd_flag), ""]
            )


def read_report_csv(fh) -> list[RecordReport]:
    rows = []
    for entry in csv.DictReader(fh):
        if entry["error"]:
            rows.append(RecordReport(entry["id"], None, entry["error"]))
            continue
        rows.append(
            RecordReport(
                entry["id"],
                ContextualityReport(
                    sf=float(entry["sf"]),
                    delta=float(entry["delta"]),
                    cf=float(entry["cf"]),
                    cnt1=float(entry["cnt1"]),
                    sheaf_flag=entry["sheaf"] == "1",
                    cbd_flag=entry["cbd"] == "1",
                ),
                None,
            )
        )
    return rows


@dataclass(frozen=True)
class HistogramResult:
    edges: tuple[float, ...]
    counts: tuple[int, ...]
    contextual: tuple[bool, ...]  # bin centre below the contextuality cut


@dataclass(frozen=True)
class AggregateSummary:
    n_records: int
    n_analyzed: int
    n_errors: int
    sheaf_fraction: float
    cbd_fraction: float
    sf_histogram: HistogramResult
    delta_histogram: HistogramResult
    grid: stats.Histogram2D
    correlations: list[tuple]  # (feature, target, kendall, spearman, pearson)
    r2: list[tuple]  # (feature, target, degree, r2)
    sweep: list[tuple] | None  # (percentile, n, sheaf fraction, cbd fraction)


def _histogram(values, lo, hi, bins, cut) -> HistogramResult:
    edges = [lo + (hi - lo) * i / bins for i in range(bins + 1)]
    counts = [0] * bins
    for v in values:
        if not lo <= v <= hi:
            continue
        idx = min(int((v - lo) / (hi - lo) * bins), bins - 1)
        counts[idx] += 1
    contextual = tuple((edges[i] + edges[i + 1]) / 2.0 < cut for i in range(bins))
    return HistogramResult(tuple(edges), tuple(counts), contextual)


def aggregate(
    rows: list[RecordReport],
    records: list[ProbabilityRecord],
    degrees=(1, 2, 3),
    percentiles=(1.0, 5.0, 10.0, 25.0, 50.0, 100.0),
    hist_bins: int = 50,
    grid_bins: int = 200,
    rank: int = 3,
) -> AggregateSummary:
    """Fractions, histograms, the (sf, delta) grid, and per-feature
    correlation / regression tables against both measures."""
    ok = [row.report for row in rows if row.report is not None]
    if not ok:
        raise UndefinedStatisticError("no analyzable records")
    n = len(ok)
    sheaf_fraction = sum(1 for r in ok if r.sheaf_flag) / n
    cbd_fraction = sum(1 for r in ok if r.cbd_flag) / n

    sf_values = [r.sf for r in ok]
    delta_values = [r.delta for r in ok]
    sf_histogram = _histogram(sf_values, 0.0, 1.0, hist_bins, 1.0 / (2.0 * rank))
    delta_histogram = _histogram(delta_values, 0.0, 2.0 * rank, hist_bins, 2.0)
    grid = stats.sf_delta_grid(list(zip(sf_values, delta_values)), bins=grid_bins, rank=rank)

    by_id = {record.id: record for record in records}
    paired = []  # (FeatureVector, report)
    for row in rows:
        if row.report is None:
            continue
        record = by_id.get(row.id)
        if record is not None and record.features is not None:
            paired.append((record.features.feature_vector(), row.report))

    correlations = []
    r2_rows = []
    sweep = None
    if paired:
        targets = {
            "sf": [r.sf for _, r in paired],
            "delta": [r.delta for _, r in paired],
        }
        flag_targets = {
            "sheaf_flag": [1.0 if r.sheaf_flag else 0.0 for _, r in paired],
            "cbd_flag": [1.0 if r.cbd_flag else 0.0 for _, r in paired],
        }
        for feature in FEATURE_NAMES:
            values = [getattr(fv, feature) for fv, _ in paired]
            if any(v is None for v in values):
                continue
            for target_name, target in targets.items():
                correlations.append(
                    (
                        feature,
                        target_name,
                        _try_stat(stats.kendall, values, target),
                        _try_stat(stats.spearman, values, target),
                        _try_stat(stats.pearson, values, target),
                    )
                )
                for degree in degrees:
                    r2_rows.append(
                        (feature, target_name, degree, _try_stat(lambda v, t: stats.polyfit_r2(v, t, degree), values, target))
                    )
            for target_name, target in flag_targets.items():
                # Point-biserial correlation is Pearson against the 0/1 flag.
                correlations.append(
                    (feature, target_name, None, None, _try_stat(stats.pearson, values, target))
                )
        cosines = [fv.cosine_similarity for fv, _ in paired]
        if all(c is not None for c in cosines):
            sweep_input = [(r.sheaf_flag, r.cbd_flag, c) for (_, r), c in zip(paired, cosines)]
            sweep = stats.similarity_sweep(sweep_input, percentiles)

    return AggregateSummary(
        n_records=len(rows),
        n_analyzed=n,
        n_errors=len(rows) - n,
        sheaf_fraction=sheaf_fraction,
        cbd_fraction=cbd_fraction,
        sf_histogram=sf_histogram,
        delta_histogram=delta_histogram,
        grid=grid,
        correlations=correlations,
        r2=r2_rows,
        sweep=sweep,
    )


def _try_stat(fn, x, y):
    try:
        return fn(x, y)
    except UndefinedStatisticError:
        return None


def write_histogram_csv(hist: HistogramResult, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["lo", "hi", "count", "contextual"])
    for i, count in enumerate(hist.counts):
        writer.writerow([_fmt(hist.edges[i]), _fmt(hist.edges[i + 1]), count, _fmt(hist.contextual[i])])


def write_grid_csv(grid: stats.Histogram2D, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["sf_lo", "sf_hi", "delta_lo", "delta_hi", "count", "region"])
    bins = grid.counts.shape[0]
    for i in range(bins):
        for j in range(grid.counts.shape[1]):
            writer.writerow(
                [
                    _fmt(float(grid.sf_edges[i])),
                    _fmt(float(grid.sf_edges[i + 1])),
                    _fmt(float(grid.delta_edges[j])),
                    _fmt(float(grid.delta_edges[j + 1])),
                    int(grid.counts[i, j]),
                    grid.region[i, j],
                ]
            )


def write_correlations_csv(correlations, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["feature", "target", "kendall", "spearman", "pearson"])
    for feature, target, k, s, p in correlations:
        writer.writerow([feature, target, _fmt(k), _fmt(s), _fmt(p)])


def write_r2_csv(r2_rows, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["feature", "target", "degree", "r2"])
    for feature, target, degree, value in r2_rows:
        writer.writerow([feature, target, degree, _fmt(value)])


def write_sweep_csv(sweep, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["percentile", "n", "sheaf_fraction", "cbd_fraction"])
    for percentile, count, sheaf, cbd_frac in sweep:
        writer.writerow([_fmt(percentile), count, _fmt(sheaf), _fmt(cbd_frac)])


# ---------------------------------------------------------------------------
# Self-verification: analytic formulas against their independent oracles.
# ---------------------------------------------------------------------------


def _s_odd_enumerated(values) -> float:
    best = -math.inf
    for signs in itertools.product((1.0, -1.0), repeat=len(values)):
        if sum(1 for s in signs if s < 0) % 2 == 1:
            best = max(best, sum(s * v for s, v in zip(signs, values)))
    return best


@dataclass(frozen=True)
class SelftestResult:
    passed: bool
    lines: tuple[str, ...]
    failures: tuple[str, ...]


def selftest(seed: int = 0, trials: int = 1000) -> SelftestResult:
    """Seeded property checks of every analytic shortcut in the toolkit.

    Verifies, on random models: LP-computed fractions against the analytic
    values on PR-box supports; the direct-influence bounds; the CNT1
    identity between the analytic and empirical-table routes; and the
    closed-form s_odd against direct enumeration.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    lines = []
    failures = []

    lp_trials = trials
    max_sf_dev = 0.0
    max_cf_dev = 0.0
    for _ in range(lp_trials):
        n = rng.choice((3, 4))
        pr = PrLikeModel(tuple(rng.uniform(-1, 1) for _ in range(n)))
        model = prlike.to_empirical(pr)
        sf_lp = fractions.signalling_fraction(model).fraction
        cf_lp = fractions.contextual_fraction(model).fraction
        sf_dev = abs(sf_lp - prlike.sf_analytic(pr))
        cf_dev = abs(cf_lp - 1.0)
        max_sf_dev = max(max_sf_dev, sf_dev)
        max_cf_dev = max(max_cf_dev, cf_dev)
        if sf_dev > LP_ORACLE_TOL or cf_dev > LP_ORACLE_TOL:
            failures.append(f"LP mismatch at eps={pr.epsilons!r}: SF_LP={sf_lp!r} CF_LP={cf_lp!r}")
    lines.append(
        f"lp-vs-analytic: {lp_trials} trials, max |SF_LP - max|eps|| = {max_sf_dev:.3e}, "
        f"max |CF_LP - 1| = {max_cf_dev:.3e}"
    )

    max_bound_violation = 0.0
    max_cnt1_dev = 0.0
    for _ in range(trials):
        n = rng.choice((3, 4, 5, 6))
        k = rng.randrange(0, (n + 1) // 2)
        anti = frozenset(rng.sample(range(1, n + 1), 2 * k + 1))
        pr = PrLikeModel(tuple(rng.uniform(-1, 1) for _ in range(n)), anti)
        canonical = prlike.canonicalize(pr)
        delta = prlike.delta_analytic(canonical)
        lower, upper = prlike.delta_bounds(pr)
        violation = max(lower - delta, delta - upper, 0.0)
        max_bound_violation = max(max_bound_violation, violation)
        if violation > IDENTITY_TOL:
            failures.append(f"delta bounds violated at eps={pr.epsilons!r} anti={sorted(anti)}")
        cnt1_dev = abs(prlike.cnt1_via_cbd(pr) - (2.0 - delta))
        max_cnt1_dev = max(max_cnt1_dev, cnt1_dev)
        if cnt1_dev > IDENTITY_TOL:
            failures.append(f"CNT1 identity violated at eps={pr.epsilons!r} anti={sorted(anti)}")
    lines.append(f"delta-bounds: {trials} trials, max violation = {max_bound_violation:.3e}")
    lines.append(f"cnt1-identity: {trials} trials, max |CNT1 - (2 - delta)| = {max_cnt1_dev:.3e}")

    max_sodd_dev = 0.0
    for _ in range(trials):
        length = rng.randrange(2, 9)
        values = [rng.uniform(-2, 2) for _ in range(length)]
        if rng.random() < 0.15:
            values[rng.randrange(length)] = 0.0
        dev = abs(cbd.s_odd(values) - _s_odd_enumerated(values))
        max_sodd_dev = max(max_sodd_dev, dev)
        if dev > IDENTITY_TOL:
            failures.append(f"s_odd mismatch at {values!r}")
    lines.append(f"s-odd: {trials} trials, max |closed-form - enumeration| = {max_sodd_dev:.3e}")

    return SelftestResult(passed=not failures, lines=tuple(lines), failures=tuple(failures))
