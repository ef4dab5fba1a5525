"""Monte Carlo experiments over the binomial random hypergraph model, CSV
emission, and the randomized prefix-size checker."""

from __future__ import annotations

import csv
import io
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, TextIO

from .budget import Budget
from .decomp import (
    exact_min_partition,
    max_independent_set,
    star_decomposition,
    upper_bound_pipeline,
)
from .errors import ConfigError, VerificationError
from .hypercore import Hypergraph, Prefix, extension_set, verify_partition
from .randmodel import SampleConfig, parse_probability, sample_hypergraph
from .turan import extremal_construction

METHODS = ("greedy", "star", "exact")
CSV_HEADER = ["n", "r", "p", "seed", "trial", "method", "blocks", "q_bound",
              "ratio", "turan_exact", "runtime_ms"]

# the exact method refuses configurations expecting more edges than this
MAX_EXACT_EXPECTED_EDGES = 40


@dataclass(frozen=True)
class ExperimentRecord:
    n: int
    r: int
    p: str
    seed: int
    trial_index: int
    method: str
    block_count: int
    q_bound: int
    ratio: Fraction
    # greedy: Turán witness exact; star: independent set exact; exact: optimal
    turan_exact: bool
    runtime_ms: float

    def csv_row(self) -> list[str]:
        return [
            str(self.n), str(self.r), self.p, str(self.seed), str(self.trial_index),
            self.method, str(self.block_count), str(self.q_bound),
            fixed_decimal(self.ratio), "true" if self.turan_exact else "false",
            f"{self.runtime_ms:.3f}",
        ]


def fixed_decimal(x: Fraction, digits: int = 12) -> str:
    """``x`` rounded half-to-even to ``digits`` fractional digits, exactly."""
    scaled = round(Fraction(x) * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def check_method(n: int, r: int, p, method: str) -> None:
    if method not in METHODS:
        raise ConfigError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "star" and r != 2:
        raise ConfigError("method 'star' needs r = 2")
    if method == "greedy" and r < 3:
        raise ConfigError("method 'greedy' needs r >= 3")
    if method == "exact":
        expected = parse_probability(p) * math.comb(n, r)
        if expected > MAX_EXACT_EXPECTED_EDGES:
            raise ConfigError(
                f"method 'exact' is limited to about {MAX_EXACT_EXPECTED_EDGES} expected "
                f"edges; n={n}, r={r}, p={p} expects {float(expected):.1f}"
            )


def decompose(H: Hypergraph, method: str, budget: Budget | None = None):
    """Run one decomposition method; returns (partition, q_bound, exact_flag)."""
    if method == "greedy":
        part, report = upper_bound_pipeline(H)
        return part, report.q, report.turan_exact
    if method == "star":
        mis = max_independent_set(H, budget)
        return star_decomposition(H, mis.vertices), H.n - len(mis), mis.exact
    if method == "exact":
        res = exact_min_partition(H, "all_blocks", budget)
        if H.r >= 3:
            q = math.comb(H.n, H.r - 1) - extremal_construction(H.n, H.r).ex_value
        else:
            q = H.n - len(max_independent_set(H, budget))
        return res.partition, q, res.status == "optimal"
    raise ConfigError(f"unknown method {method!r}")


def _run_trial(args) -> ExperimentRecord:
    n, r, p, seed, trial, method, zero_runtime, budget = args
    start = time.perf_counter()
    H = sample_hypergraph(SampleConfig(n, r, p, seed, trial))
    part, q, exact = decompose(H, method, budget)
    report = verify_partition(H, part)
    if not report.valid:
        raise VerificationError(
            f"trial {trial}: {method} partition failed verification", report)
    elapsed = 0.0 if zero_runtime else (time.perf_counter() - start) * 1000
    denom = math.comb(n, r - 1)
    return ExperimentRecord(
        n, r, str(p), seed, trial, method, part.block_count, q,
        Fraction(part.block_count, denom) if denom else Fraction(0), exact, elapsed,
    )


def run_experiment(n: int, r: int, p, trials: int, seed: int, method: str,
                   workers: int = 1, zero_runtime: bool = False,
                   budget: Budget | None = None) -> list[ExperimentRecord]:
    """One verified record per trial index ``0..trials-1``, in that order
    whatever the worker count."""
    check_method(n, r, p, method)
    SampleConfig(n, r, p, seed)  # validates n, r, p, seed
    jobs = [(n, r, p, seed, t, method, zero_runtime, budget) for t in range(trials)]
    if workers <= 1 or trials <= 1:
        return [_run_trial(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_trial, jobs))


def write_csv(records: Iterable[ExperimentRecord], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.csv_row())


def records_to_csv(records: Iterable[ExperimentRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


@dataclass(frozen=True)
class PrefixBoundReport:
    n: int
    r: int
    p: str
    threshold: float
    samples_drawn: int
    violations: int
    witnesses: tuple = field(default_factory=tuple)
    # sampled prefixes only: zero violations is evidence, not a proof
    note: str = "sampled prefixes only; zero violations is statistical evidence"

    def to_dict(self) -> dict:
        return {
            "n": self.n, "r": self.r, "p": self.p, "threshold": self.threshold,
            "samples_drawn": self.samples_drawn, "violations": self.violations,
            "witnesses": [{"prefix": w[0], "extension": w[1]} for w in self.witnesses],
            "note": self.note,
        }


def prefix_threshold(n: int, r: int) -> float:
    return (r + 1) * math.log2(n)


def prefix_violates(H: Hypergraph, P: Prefix) -> tuple[bool, frozenset[int]]:
    """Whether ``P`` extends to a complete block whose last part is at least
    as large as the largest prefix part."""
    ext = extension_set(H, P)
    return len(ext) >= max(len(a) for a in P.parts), ext


def check_prefix_bound(n: int, r: int, p, seed: int, samples: int,
                       H: Hypergraph | None = None,
                       max_witnesses: int = 10) -> PrefixBoundReport:
    """Sample prefixes whose size product reaches ``(r+1) log2 n`` and count
    those that extend to a complete block with ``|A_r| >= |A_{r-1}|``.

    Prefix sampler: part sizes are drawn independently and uniformly from
    ``1..ceil(threshold)`` and the draw is rejected unless their product is
    at least the threshold and their sum is at most ``n``; the parts are then
    consecutive slices of a uniformly random ordering of ``1..n``. ``H`` is
    drawn from the random model (trial 0) unless supplied.
    """
    if samples < 1:
        raise ConfigError("samples must be at least 1")
    if n < 2 or r < 2:
        raise ConfigError("need n >= 2 and r >= 2")
    if H is None:
        H = sample_hypergraph(SampleConfig(n, r, p, seed, 0))
    threshold = prefix_threshold(n, r)
    cap = math.ceil(threshold)
    rng = random.Random(f"prefix-bound/{seed}")
    drawn = violations = 0
    witnesses = []
    attempts = 0
    max_attempts = 10_000 * samples
    while drawn < samples and attempts < max_attempts:
        attempts += 1
        sizes = sorted(rng.randint(1, cap) for _ in range(r - 1))
        if math.prod(sizes) < threshold or sum(sizes) > n:
            continue
        order = rng.sample(range(1, n + 1), sum(sizes))
        parts, at = [], 0
        for k in sizes:
            parts.append(frozenset(order[at:at + k]))
            at += k
        P = Prefix(tuple(parts))
        drawn += 1
        bad, ext = prefix_violates(H, P)
        if bad:
            violations += 1
            if len(witnesses) < max_witnesses:
                witnesses.append((P.as_lists(), sorted(ext)))
    return PrefixBoundReport(n, r, str(p), threshold, drawn, violations, tuple(witnesses))
