"""Benchmark protocol: delta calibration, warmup plus timed rounds, reports.

A bench run executes each workload item ``warmup`` times untimed, then
``rounds`` timed repetitions, reports the arithmetic mean of the timed
rounds only, and fails loudly if any round disagrees on the distances
(the runs are supposed to be value-deterministic).  Records are plain
dicts that echo every configuration field so a report line can be
replayed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .batch import BATCH_ALGOS, baseline_batch, build_query_graph, multi_bids, vc_sssp_batch
from .engine import StepPolicy
from .graph import CsrGraph
from .ppsp import STRATEGIES, ppsp

DEFAULT_WARMUP = 1
DEFAULT_ROUNDS = 5


class BenchError(RuntimeError):
    """Internal inconsistency: rounds of one workload disagreed."""


def work_cost(steps: int, relaxations: int, settled: int) -> float:
    """Deterministic stand-in for wall time when calibrating delta.

    Counts scanned arcs plus a per-step and per-expansion overhead term.
    Being schedule-independent, it makes the calibration reproducible,
    unlike wall-clock timing.
    """
    return float(relaxations + 16 * steps + settled)


def auto_delta(
    graph: CsrGraph,
    cost_fn,
    initial: float | None = None,
    patience: int = 2,
    max_doublings: int = 40,
) -> tuple[float, list[tuple[float, float]]]:
    """Pick a step width by doubling from max_weight/1024.

    ``cost_fn(delta)`` runs the workload sample once and returns its
    cost.  Doubling stops after ``patience`` consecutive values fail to
    improve on the best seen.  Returns the best delta and the
    (delta, cost) trail.
    """
    if initial is None:
        initial = max(1.0, graph.max_weight() / 1024.0)
    best_delta, best_cost = initial, float("inf")
    trail: list[tuple[float, float]] = []
    delta, stale = initial, 0
    for _ in range(max_doublings):
        cost = float(cost_fn(delta))
        trail.append((delta, cost))
        if cost < best_cost:
            best_delta, best_cost = delta, cost
            stale = 0
        else:
            stale += 1
            if stale >= patience:
                break
        delta *= 2.0
    return best_delta, trail


@dataclass
class BenchConfig:
    """What to run and how to time it."""

    mode: str  # "query" or "batch"
    pairs: np.ndarray
    strategy: str = "bids"  # query mode: one of STRATEGIES
    algo: str = "multi"  # batch mode: one of BATCH_ALGOS
    delta: float | str = "auto"
    warmup: int = DEFAULT_WARMUP
    rounds: int = DEFAULT_ROUNDS
    threads: int = 1
    seed: int = 0
    radius: float | None = None
    label: str = ""


@dataclass
class BenchReport:
    resolved_delta: float
    records: list[dict] = field(default_factory=list)


def _query_runner(graph, cfg, s, t):
    kwargs = {}
    if cfg.radius is not None:
        kwargs["radius"] = cfg.radius

    def run(delta):
        ans = ppsp(
            graph, s, t, cfg.strategy,
            policy=StepPolicy(delta), threads=cfg.threads, **kwargs,
        )
        return np.asarray([ans.distance]), ans.steps, ans.relaxations, ans.settled_copies

    return run

def _batch_runner(graph, cfg, qg):
    def run(delta):
        policy = StepPolicy(delta)
        if cfg.algo == "multi":
            ans = multi_bids(graph, qg, policy=policy, threads=cfg.threads)
        elif cfg.algo == "vc":
            ans = vc_sssp_batch(graph, qg, policy=policy, threads=cfg.threads)
        else:
            ans = baseline_batch(graph, qg, cfg.algo, policy=policy, threads=cfg.threads)
        return ans.distances, ans.steps, ans.relaxations, ans.settled_copies

    return run


def run_bench(graph: CsrGraph, cfg: BenchConfig) -> BenchReport:
    """Execute the configured workload under the warmup+rounds protocol."""
    if cfg.mode not in ("query", "batch"):
        raise ValueError("mode must be 'query' or 'batch'")
    if cfg.warmup < 0 or cfg.rounds < 1:
        raise ValueError("need warmup >= 0 and rounds >= 1")
    if cfg.mode == "query" and cfg.strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}")
    if cfg.mode == "batch" and cfg.algo not in BATCH_ALGOS:
        raise ValueError(f"algo must be one of {BATCH_ALGOS}")
    pairs = np.asarray(cfg.pairs, dtype=np.int64).reshape(-1, 2)

    if cfg.mode == "query":
        runners = [(f"{s}->{t}", _query_runner(graph, cfg, int(s), int(t)), {"source": int(s), "target": int(t)})
                   for s, t in pairs]
    else:
        qg = build_query_graph(pairs, graph.n)
        runners = [(cfg.algo, _batch_runner(graph, cfg, qg), {"n_pairs": int(pairs.shape[0])})]

    if cfg.delta == "auto":
        def sample_cost(delta):
            return sum(work_cost(*run(delta)[1:]) for _, run, _ in runners)

        delta, _ = auto_delta(graph, sample_cost)
    else:
        delta = float(cfg.delta)

    report = BenchReport(resolved_delta=delta)
    for name, run, meta in runners:
        for _ in range(cfg.warmup):
            baseline = run(delta)[0]
        times = []
        last = None
        for _ in range(cfg.rounds):
            t0 = time.perf_counter()
            out = run(delta)
            times.append(time.perf_counter() - t0)
            if last is not None and not np.array_equal(last[0], out[0]):
                raise BenchError(f"{name}: distances changed between timed rounds")
            last = out
        if cfg.warmup and not np.array_equal(baseline, last[0]):
            raise BenchError(f"{name}: warmup and timed distances disagree")
        distances, steps, relaxations, settled = last
        record = {
            "kind": cfg.mode,
            "workload": name,
            "strategy": cfg.strategy if cfg.mode == "query" else cfg.algo,
            "delta": delta,
            "requested_delta": cfg.delta,
            "threads": cfg.threads,
            "seed": cfg.seed,
            "warmup_rounds": cfg.warmup,
            "timed_rounds": cfg.rounds,
            "round_times": times,
            "mean_time": sum(times) / len(times),
            "distances": distances.tolist(),
            "steps": steps,
            "relaxations": relaxations,
            "settled_copies": settled,
        }
        record.update(meta)
        if cfg.label:
            record["label"] = cfg.label
        report.records.append(record)
    return report
