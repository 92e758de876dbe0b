"""Exhaustive sweep over every base g for a prime p, aggregated per m-class.

Work is cut into fixed contiguous g-chunks. Each chunk reduces to exact integer
sums, so the merged result does not depend on how many workers ran or in what
order chunks finished. Completed chunks can be checkpointed to JSON.
"""

from __future__ import annotations

import hashlib
import json
import logging
import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Optional

import numpy as np

from dlogmap._kernels import NSTATS, STAT_FIELDS, sweep_rows
from dlogmap.asymptotics import Prediction, model_for_class, predict
from dlogmap.numtheory import PrimeContext, classify_m

log = logging.getLogger(__name__)

WORKERS_ENV = "DLOGMAP_WORKERS"
DEFAULT_CHUNK = 1024
CHECKPOINT_FORMAT = "dlogmap-checkpoint"
CHECKPOINT_VERSION = 1

# Observed quantities reported per class, in table order.
REPORT_FIELDS = (
    "components",
    "cyclic_nodes",
    "image_nodes",
    "avg_cycle",
    "avg_tail",
    "max_cycle",
    "max_tail",
)
_PER_NODE = {"avg_cycle": "sum_cycle_over_nodes", "avg_tail_per_node": "sum_tail_over_nodes"}

EXTREMAL_STATISTICS = ("longest_cycle", "longest_tail", "max_cycle_equals_one")


class SweepError(RuntimeError):
    pass


class CheckpointError(SweepError):
    """Checkpoint file unreadable, tampered with, or from a different run."""


@dataclass
class ClassSummary:
    """Exact running totals of GraphStats over the graphs of one class.

    ``m == 0`` stands for every graph of the sweep combined.
    """

    p: int
    m: int
    graph_count: int = 0
    sums: dict[str, int] = field(default_factory=lambda: dict.fromkeys(STAT_FIELDS, 0))

    @property
    def n(self) -> int:
        return self.p - 1

    def add_rows(self, rows: np.ndarray) -> None:
        self.graph_count += int(rows.shape[0])
        for i, name in enumerate(STAT_FIELDS):
            self.sums[name] += sum(int(v) for v in rows[:, i])

    def merge(self, other: "ClassSummary") -> "ClassSummary":
        if (self.p, self.m) != (other.p, other.m):
            raise ValueError("can only merge summaries of the same (p, m)")
        return ClassSummary(
            self.p,
            self.m,
            self.graph_count + other.graph_count,
            {k: self.sums[k] + other.sums[k] for k in STAT_FIELDS},
        )

    def mean(self, name: str) -> Fraction:
        """Class mean of a statistic.

        Counts and maxima are equal-weight means over graphs; ``avg_cycle`` and
        ``avg_tail_per_node`` are per-node averages. ``avg_tail`` is the mean
        tail length over tail nodes only (0 when the class has none), which is
        the convention used by the reference tables.
        """
        if not self.graph_count:
            raise ZeroDivisionError(f"class m={self.m} holds no graphs")
        if name == "avg_tail":
            tails = self.sums["tail_nodes"]
            return Fraction(self.sums["sum_tail_over_nodes"], tails) if tails else Fraction(0)
        if name in _PER_NODE:
            return Fraction(self.sums[_PER_NODE[name]], self.graph_count * self.n)
        return Fraction(self.sums[name], self.graph_count)

    @property
    def means(self) -> dict[str, Fraction]:
        return {k: self.mean(k) for k in REPORT_FIELDS} if self.graph_count else {}

    @property
    def predicted(self) -> Optional[Prediction]:
        model = model_for_class(self.m)
        if model is None or (model == "binary" and self.n % 2):
            return None
        return predict(model, self.n)

    def pct_error(self, name: str) -> Optional[float]:
        pred = self.predicted
        expected = None if pred is None else getattr(pred, "avg_tail" if name == "avg_tail_per_node" else name)
        if not expected or not self.graph_count:
            return None
        return abs(float(self.mean(name)) - expected) / expected * 100

    @property
    def pct_errors(self) -> dict[str, Optional[float]]:
        return {k: self.pct_error(k) for k in REPORT_FIELDS}

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "graph_count": self.graph_count, "sums": dict(self.sums)}

    @classmethod
    def from_dict(cls, d: dict) -> "ClassSummary":
        sums = {k: int(d["sums"][k]) for k in STAT_FIELDS}
        return cls(int(d["p"]), int(d["m"]), int(d["graph_count"]), sums)


@dataclass(frozen=True)
class ExtremalRecord:
    p: int
    statistic: str
    value: int
    witnesses: tuple[int, ...]


@dataclass
class _Extremes:
    longest_cycle: int = -1
    cycle_witnesses: list[int] = field(default_factory=list)
    longest_tail: int = -1
    tail_witnesses: list[int] = field(default_factory=list)
    fixed_only: list[int] = field(default_factory=list)

    def update(self, gs: np.ndarray, rows: np.ndarray) -> None:
        if not len(gs):
            return
        for col, attr, wattr in (
            (STAT_FIELDS.index("max_cycle"), "longest_cycle", "cycle_witnesses"),
            (STAT_FIELDS.index("max_tail"), "longest_tail", "tail_witnesses"),
        ):
            best = int(rows[:, col].max())
            hits = [int(g) for g in gs[rows[:, col] == best]]
            if best > getattr(self, attr):
                setattr(self, attr, best)
                setattr(self, wattr, hits)
            elif best == getattr(self, attr):
                getattr(self, wattr).extend(hits)
        self.fixed_only.extend(int(g) for g in gs[rows[:, STAT_FIELDS.index("max_cycle")] == 1])

    def merge(self, other: "_Extremes") -> "_Extremes":
        out = _Extremes()
        for attr, wattr in (("longest_cycle", "cycle_witnesses"), ("longest_tail", "tail_witnesses")):
            a, b = getattr(self, attr), getattr(other, attr)
            best = max(a, b)
            setattr(out, attr, best)
            setattr(
                out,
                wattr,
                sorted((getattr(self, wattr) if a == best else []) + (getattr(other, wattr) if b == best else [])),
            )
        out.fixed_only = sorted(self.fixed_only + other.fixed_only)
        return out

    def records(self, p: int) -> list[ExtremalRecord]:
        if self.longest_cycle < 0:
            return []
        return [
            ExtremalRecord(p, "longest_cycle", self.longest_cycle, tuple(sorted(self.cycle_witnesses))),
            ExtremalRecord(p, "longest_tail", self.longest_tail, tuple(sorted(self.tail_witnesses))),
            ExtremalRecord(p, "max_cycle_equals_one", len(self.fixed_only), tuple(sorted(self.fixed_only))),
        ]

    def to_dict(self) -> dict:
        return {
            "longest_cycle": self.longest_cycle,
            "cycle_witnesses": self.cycle_witnesses,
            "longest_tail": self.longest_tail,
            "tail_witnesses": self.tail_witnesses,
            "fixed_only": self.fixed_only,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "_Extremes":
        return cls(
            int(d["longest_cycle"]),
            [int(g) for g in d["cycle_witnesses"]],
            int(d["longest_tail"]),
            [int(g) for g in d["tail_witnesses"]],
            [int(g) for g in d["fixed_only"]],
        )


@dataclass
class ChunkResult:
    start: int
    end: int
    classes: dict[int, ClassSummary]
    extremes: _Extremes

    def to_dict(self) -> dict:
        return {
            "start": self.start,
            "end": self.end,
            "classes": [s.to_dict() for s in self.classes.values()],
            "extremes": self.extremes.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ChunkResult":
        summaries = [ClassSummary.from_dict(s) for s in d["classes"]]
        return cls(int(d["start"]), int(d["end"]), {s.m: s for s in summaries}, _Extremes.from_dict(d["extremes"]))


@dataclass
class SweepResult:
    """Per-class and combined summaries plus extremal records for one prime."""

    p: int
    g_start: int
    g_end: int
    class_filter: Optional[tuple[int, ...]]
    classes: dict[int, ClassSummary]
    combined: ClassSummary
    records: list[ExtremalRecord]
    complete: bool

    def __iter__(self):
        # unpacks as (classes, combined, records)
        return iter((self.classes, self.combined, self.records))

    @property
    def full_range(self) -> bool:
        return self.g_start == 1 and self.g_end == self.p - 1 and self.class_filter is None

    @property
    def partial(self) -> bool:
        return not (self.complete and self.full_range)

    def record(self, statistic: str) -> ExtremalRecord:
        for r in self.records:
            if r.statistic == statistic:
                return r
        raise KeyError(statistic)


def resolve_workers(workers: Optional[int] = None) -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SweepError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
    if workers is None:
        return os.cpu_count() or 1
    if workers < 1:
        raise ValueError("workers must be >= 1")
    return workers


def _chunks(g_start: int, g_end: int, size: int) -> list[tuple[int, int]]:
    return [(a, min(a + size - 1, g_end)) for a in range(g_start, g_end + 1, size)]


def process_chunk(p: int, start: int, end: int, class_filter: Optional[tuple[int, ...]] = None) -> ChunkResult:
    """Classify and analyze every g in [start, end] (inclusive)."""
    ctx = PrimeContext.from_prime(p)
    gs_all = np.arange(start, end + 1, dtype=np.int64)
    ms = np.array([classify_m(int(g), ctx) for g in gs_all], dtype=np.int64)
    keep = np.ones(len(gs_all), bool) if class_filter is None else np.isin(ms, class_filter)
    gs, ms = gs_all[keep], ms[keep]
    rows = np.zeros((len(gs), NSTATS), np.int64)
    if len(gs):
        sweep_rows(p, gs, rows)

    image = rows[:, STAT_FIELDS.index("image_nodes")]
    bad = np.nonzero(image * ms != p - 1)[0]
    if len(bad):
        g = int(gs[bad[0]])
        raise SweepError(f"p={p} g={g}: image nodes {int(image[bad[0]])} != (p-1)/m with m={int(ms[bad[0]])}")

    classes: dict[int, ClassSummary] = {}
    for m in sorted(set(int(v) for v in ms)):
        s = ClassSummary(p, m)
        s.add_rows(rows[ms == m])
        classes[m] = s
    extremes = _Extremes()
    extremes.update(gs, rows)
    return ChunkResult(start, end, classes, extremes)


def _process_chunk_args(args):
    return process_chunk(*args)


# ---------------------------------------------------------------- checkpoints


def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _run_key(p, g_start, g_end, class_filter, chunk_size) -> dict:
    return {
        "p": p,
        "g_start": g_start,
        "g_end": g_end,
        "classes": list(class_filter) if class_filter is not None else None,
        "chunk_size": chunk_size,
    }


def load_checkpoint(path: Path, key: dict) -> dict[int, ChunkResult]:
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError:
        return {}
    except (OSError, ValueError) as exc:
        raise CheckpointError(f"{path}: unreadable checkpoint ({exc})") from exc
    try:
        if doc["format"] != CHECKPOINT_FORMAT or doc["version"] != CHECKPOINT_VERSION:
            raise CheckpointError(f"{path}: not a version {CHECKPOINT_VERSION} dlogmap checkpoint")
        payload = doc["payload"]
        if _digest(payload) != doc["sha256"]:
            raise CheckpointError(f"{path}: checksum mismatch")
        if payload["run"] != key:
            raise CheckpointError(f"{path}: checkpoint belongs to a different run {payload['run']}")
        chunks = [ChunkResult.from_dict(c) for c in payload["chunks"]]
    except CheckpointError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"{path}: malformed checkpoint ({exc!r})") from exc
    return {c.start: c for c in chunks}


def save_checkpoint(path: Path, key: dict, done: dict[int, ChunkResult]) -> None:
    payload = {"run": key, "chunks": [done[a].to_dict() for a in sorted(done)]}
    doc = {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "sha256": _digest(payload),
        "payload": payload,
    }
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        tmp.write_text(json.dumps(doc, sort_keys=True))
        os.replace(tmp, path)
    except OSError as exc:
        raise SweepError(f"{path}: cannot write checkpoint ({exc})") from exc


# ---------------------------------------------------------------- driver


def _reduce(p: int, chunks: Iterable[ChunkResult]) -> tuple[dict[int, ClassSummary], ClassSummary, _Extremes]:
    classes: dict[int, ClassSummary] = {}
    extremes = _Extremes()
    for c in sorted(chunks, key=lambda c: c.start):
        for m, s in c.classes.items():
            classes[m] = classes[m].merge(s) if m in classes else s
        extremes = extremes.merge(c.extremes)
    combined = ClassSummary(p, 0)
    for m in sorted(classes):
        combined = combined.merge(ClassSummary(p, 0, classes[m].graph_count, classes[m].sums))
    return dict(sorted(classes.items())), combined, extremes


def run_sweep(
    p: int,
    g_range: Optional[tuple[int, int]] = None,
    classes: Optional[Iterable[int]] = None,
    workers: Optional[int] = None,
    checkpoint_path: Optional[os.PathLike] = None,
    chunk_size: int = DEFAULT_CHUNK,
    max_chunks: Optional[int] = None,
) -> SweepResult:
    """Sweep g over ``g_range`` (inclusive, default 1..p-1).

    ``classes`` restricts analysis to the listed m values. ``max_chunks`` stops
    after that many newly computed chunks, leaving an incomplete result (and
    checkpoint) that a later call resumes.
    """
    ctx = PrimeContext.from_prime(p)
    g_start, g_end = g_range if g_range is not None else (1, p - 1)
    if not 1 <= g_start <= g_end <= p - 1:
        raise ValueError(f"g range [{g_start}, {g_end}] not within 1..{p - 1}")
    class_filter = None
    if classes is not None:
        class_filter = tuple(sorted(set(int(m) for m in classes)))
        for m in class_filter:
            if m not in ctx.class_counts:
                raise ValueError(f"{m} does not divide p - 1 = {p - 1}")
    if chunk_size < 1:
        raise ValueError("chunk_size must be >= 1")
    workers = resolve_workers(workers)

    key = _run_key(p, g_start, g_end, class_filter, chunk_size)
    all_chunks = _chunks(g_start, g_end, chunk_size)
    done = load_checkpoint(checkpoint_path, key) if checkpoint_path else {}
    todo = [(a, b) for a, b in all_chunks if a not in done]
    if max_chunks is not None:
        todo = todo[:max_chunks]
    log.info("p=%d: %d chunks, %d cached, %d to run on %d workers", p, len(all_chunks), len(done), len(todo), workers)

    tasks = [(p, a, b, class_filter) for a, b in todo]
    for chunk in _map(tasks, workers):
        done[chunk.start] = chunk
        if checkpoint_path:
            save_checkpoint(checkpoint_path, key, done)

    classes_out, combined, extremes = _reduce(p, done.values())
    complete = len(done) == len(all_chunks)
    return SweepResult(p, g_start, g_end, class_filter, classes_out, combined, extremes.records(p), complete)


def _map(tasks: list, workers: int) -> Iterator[ChunkResult]:
    if workers == 1 or len(tasks) <= 1:
        for t in tasks:
            yield _process_chunk_args(t)
        return
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        yield from pool.map(_process_chunk_args, tasks)
