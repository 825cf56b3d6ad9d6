"""Benchmark harness: seeded synthetic workloads comparing incremental
canonical-tree updates against the rescan-and-rebuild baseline.

Absolute timings are hardware-bound; the interesting outputs are relative:
how increment cost scales with the base size for each strategy.
"""

from __future__ import annotations

import hashlib
import random
import time
from bisect import bisect_left
from dataclasses import dataclass, replace
from fractions import Fraction

from . import mining
from .errors import BenchConfigError
from .transactions import MinSupport
from .tree import CanTree

STRATEGY_CANTREE = "cantree-incremental"
STRATEGY_REBUILD = "rebuild-baseline"
PHASES = ("initial-build", "increment-apply", "mine")

REPORT_HEADER = "strategy,base_size,phase,repetition,elapsed_ms,workload_checksum"


@dataclass(frozen=True)
class BenchConfig:
    """Workload knobs. Defaults are the documented desk-scale configuration.

    The default transaction length range (3..6) is calibrated so the mine
    phase stays substantial (a couple hundred itemsets at the large base)
    without swamping the rebuild-vs-increment contrast the harness exists to
    measure; wider transactions make the shared mining cost dominate both
    strategies' totals.
    """

    base_sizes: tuple[int, ...] = (10000, 100000)
    increment_size: int = 1000
    alphabet_size: int = 200
    items_min: int = 3
    items_max: int = 6
    min_support: MinSupport = MinSupport(fraction=Fraction(1, 100))
    repetitions: int = 3
    seed: int = 42

    def __post_init__(self):
        object.__setattr__(self, "base_sizes", tuple(self.base_sizes))
        object.__setattr__(self, "min_support", MinSupport.coerce(self.min_support))
        if not self.base_sizes or any(b < 1 for b in self.base_sizes):
            raise BenchConfigError(f"base_sizes must all be >= 1, got {self.base_sizes}")
        for value, what in ((self.increment_size, "increment_size"),
                            (self.alphabet_size, "alphabet_size"),
                            (self.items_min, "items_min")):
            if value < 1:
                raise BenchConfigError(f"{what} must be >= 1, got {value}")
        if not self.items_min <= self.items_max <= self.alphabet_size:
            raise BenchConfigError(
                f"need items_min <= items_max <= alphabet_size, got "
                f"{self.items_min}..{self.items_max} over {self.alphabet_size}"
            )
        if self.repetitions < 3:
            raise BenchConfigError(f"repetitions must be >= 3, got {self.repetitions}")

    @classmethod
    def parse(cls, text: str) -> "BenchConfig":
        """Parse ``key=value`` lines; ``#`` comments and blank lines ignored.

        Keys: base_sizes (comma-separated), increment_size, alphabet_size,
        items_per_transaction (``min..max``), minsup (``N`` or ``P%``),
        repetitions, seed. Omitted keys keep their defaults.
        """
        kwargs = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise BenchConfigError(f"line {lineno}: expected key=value, got {line!r}")
            key, value = key.strip(), value.strip()
            try:
                if key == "base_sizes":
                    kwargs["base_sizes"] = tuple(int(v) for v in value.split(","))
                elif key == "increment_size":
                    kwargs["increment_size"] = int(value)
                elif key == "alphabet_size":
                    kwargs["alphabet_size"] = int(value)
                elif key == "items_per_transaction":
                    lo, sep2, hi = value.partition("..")
                    if not sep2:
                        raise ValueError("expected min..max")
                    kwargs["items_min"] = int(lo)
                    kwargs["items_max"] = int(hi)
                elif key == "minsup":
                    kwargs["min_support"] = MinSupport.parse(value)
                elif key == "repetitions":
                    kwargs["repetitions"] = int(value)
                elif key == "seed":
                    kwargs["seed"] = int(value)
                else:
                    raise BenchConfigError(f"line {lineno}: unknown key {key!r}")
            except ValueError as exc:
                raise BenchConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
        return cls(**kwargs)

    def with_seed(self, seed: int) -> "BenchConfig":
        return replace(self, seed=seed)


@dataclass(frozen=True)
class BenchRow:
    strategy: str
    base_size: int
    phase: str
    repetition: int
    elapsed_ms: float
    workload_checksum: str


def report_csv(rows) -> str:
    lines = [REPORT_HEADER]
    lines += [
        f"{r.strategy},{r.base_size},{r.phase},{r.repetition},{r.elapsed_ms:.3f},{r.workload_checksum}"
        for r in rows
    ]
    return "".join(line + "\n" for line in lines)


def generate_workload(config: BenchConfig, base_size: int):
    """Seeded synthetic data for one base size.

    Returns (base, increment, checksum): item-list transactions plus a hash
    identifying the generated data, so reruns can prove the workload was
    byte-identical. Item popularity is Zipf-like (weight 1/rank, exponent 1);
    the name-to-rank assignment is shuffled so that popularity does not
    correlate with canonical order. Transaction lengths are uniform in
    [items_min, items_max]; lengths close to alphabet_size draw slowly.
    """
    rng = random.Random(f"{config.seed}:{base_size}")
    width = len(str(config.alphabet_size - 1))
    names = [f"api{i:0{width}d}" for i in range(config.alphabet_size)]
    ranked = names[:]
    rng.shuffle(ranked)
    cumulative = []
    total = 0.0
    for r in range(1, config.alphabet_size + 1):
        total += 1.0 / r
        cumulative.append(total)

    def draw():
        length = rng.randint(config.items_min, config.items_max)
        chosen = []
        seen = set()
        while len(chosen) < length:
            name = ranked[bisect_left(cumulative, rng.random() * total)]
            if name not in seen:
                seen.add(name)
                chosen.append(name)
        return chosen

    rows = [draw() for _ in range(base_size + config.increment_size)]
    base, increment = rows[:base_size], rows[base_size:]
    payload = "\n".join(";".join(r) for r in rows)
    checksum = hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]
    return base, increment, checksum


def _timed(fn):
    start = time.perf_counter()
    result = fn()
    return (time.perf_counter() - start) * 1000.0, result


def run_bench(config: BenchConfig) -> list[BenchRow]:
    """Execute the configured workload.

    Per base size and repetition, each strategy runs three timed phases:
    building from the base data, applying one increment (incremental insert
    for the canonical tree; full rescan-and-rebuild over base plus increment
    for the baseline), and mining the updated state. Returns one row per
    (strategy, base_size, phase, repetition), phases sequential and
    single-threaded so timings stay uncontended.
    """
    rows = []
    for base_size in config.base_sizes:
        base, increment, checksum = generate_workload(config, base_size)
        full = base + increment

        def emit(strategy, phase, rep, elapsed):
            rows.append(BenchRow(strategy, base_size, phase, rep, elapsed, checksum))

        for rep in range(config.repetitions):
            def build_tree():
                tree = CanTree()
                tree.insert_batch(base)
                return tree

            elapsed, tree = _timed(build_tree)
            emit(STRATEGY_CANTREE, "initial-build", rep, elapsed)
            elapsed, _ = _timed(lambda: tree.insert_batch(increment))
            emit(STRATEGY_CANTREE, "increment-apply", rep, elapsed)
            elapsed, _ = _timed(lambda: mining.mine_frequent_itemsets(tree, config.min_support))
            emit(STRATEGY_CANTREE, "mine", rep, elapsed)

            minsup_base = config.min_support.resolve(len(base))
            minsup_full = config.min_support.resolve(len(full))
            elapsed, _ = _timed(lambda: mining.build_baseline_tree(base, minsup_base))
            emit(STRATEGY_REBUILD, "initial-build", rep, elapsed)
            elapsed, built = _timed(lambda: mining.build_baseline_tree(full, minsup_full))
            emit(STRATEGY_REBUILD, "increment-apply", rep, elapsed)
            header, rank = built
            elapsed, _ = _timed(lambda: mining.mine_baseline_tree(header, rank, minsup_full))
            emit(STRATEGY_REBUILD, "mine", rep, elapsed)
    return rows
