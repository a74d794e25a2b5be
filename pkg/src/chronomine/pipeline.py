"""End-to-end discriminant chronicle mining.

The pipeline mines multisets frequent in the positive sequences, emits the
ones already discriminant without any temporal constraint as-is, and for
the rest learns discriminant temporal constraints from their duration
tables.  Every candidate is re-scored at sequence level before emission, so
the output contract is simple: every returned chronicle is discriminant at
the configured thresholds.
"""

from __future__ import annotations

import math
import os
import zlib
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from .errors import ConfigError
from .itemsets import decode_to_multisets, encode, mine_frequent_itemsets
from .model import Chronicle, MinedChronicle, SequenceDataset, growth_rate
from .rules import build_duration_table, induce_rules, reevaluate, translate

#: Workers for the per-multiset loop; unset or 1 means run sequentially.
THREADS_ENV_VAR = "CHRONOMINE_THREADS"


@dataclass(frozen=True)
class DcmConfig:
    """Mining parameters.

    ``sigma_min`` below 1 is a fraction of the positive set (converted by
    ceiling); otherwise it is an absolute sequence count.  ``strict_growth``
    switches the constraint-free shortcut test from >= to a strict >.
    """

    sigma_min: float = 2
    g_min: float = 2.0
    min_size: int = 2
    max_size: int | None = None
    occurrence_cap: int | None = 10_000
    seed: int = 0
    strict_growth: bool = False

    def __post_init__(self):
        if self.sigma_min <= 0:
            raise ConfigError(f"sigma_min must be positive, got {self.sigma_min}")
        if self.g_min < 1:
            raise ConfigError(f"g_min must be >= 1, got {self.g_min}")
        if self.min_size < 1:
            raise ConfigError(f"min_size must be >= 1, got {self.min_size}")
        if self.max_size is not None and self.max_size < self.min_size:
            raise ConfigError(
                f"max_size {self.max_size} smaller than min_size {self.min_size}"
            )
        if self.occurrence_cap is not None and self.occurrence_cap < 1:
            raise ConfigError(f"occurrence_cap must be >= 1, got {self.occurrence_cap}")

    def resolve_sigma(self, n_positives: int) -> int:
        """Absolute support threshold for a positive set of the given size."""
        if self.sigma_min < 1:
            return max(1, math.ceil(self.sigma_min * n_positives))
        return max(1, math.ceil(self.sigma_min))


def _type_counters(dataset: SequenceDataset) -> tuple[list[Counter], list[Counter]]:
    pos = [Counter(ev.event_type for ev in s.events) for s in dataset.positives]
    neg = [Counter(ev.event_type for ev in s.events) for s in dataset.negatives]
    return pos, neg


def _unconstrained_supports(
    multiset: tuple[str, ...], pos_counters: list[Counter], neg_counters: list[Counter]
) -> tuple[int, int]:
    """Supports of the constraint-free chronicle: plain multiset containment."""
    need = Counter(multiset)
    supp_pos = sum(
        1 for c in pos_counters if all(c.get(t, 0) >= k for t, k in need.items())
    )
    supp_neg = sum(
        1 for c in neg_counters if all(c.get(t, 0) >= k for t, k in need.items())
    )
    return supp_pos, supp_neg


def _passes_growth(supp_pos: int, supp_neg: int, g_min: float, strict: bool) -> bool:
    if strict:
        return supp_pos > g_min * supp_neg
    return supp_pos >= g_min * supp_neg


def check_multiset_discriminancy(
    multiset: tuple[str, ...], dataset: SequenceDataset, config: DcmConfig
) -> bool:
    """Whether the bare multiset already passes the growth comparison."""
    pos_counters, neg_counters = _type_counters(dataset)
    supp_pos, supp_neg = _unconstrained_supports(multiset, pos_counters, neg_counters)
    return _passes_growth(supp_pos, supp_neg, config.g_min, config.strict_growth)


def _multiset_seed(base_seed: int, multiset: tuple[str, ...]) -> int:
    # Stable per-multiset seed so results do not depend on scheduling order.
    return (base_seed * 1_000_003 + zlib.crc32("|".join(multiset).encode())) & 0x7FFFFFFF


def _mine_one(
    multiset: tuple[str, ...],
    dataset: SequenceDataset,
    config: DcmConfig,
    sigma: int,
    supp_pos: int,
    supp_neg: int,
) -> list[MinedChronicle]:
    """Process one frequent multiset: shortcut or constraint learning."""
    if _passes_growth(supp_pos, supp_neg, config.g_min, config.strict_growth):
        return [
            MinedChronicle(
                chronicle=Chronicle.unconstrained(multiset),
                supp_pos=supp_pos,
                supp_neg=supp_neg,
            )
        ]
    table = build_duration_table(multiset, dataset, cap=config.occurrence_cap)
    rules = induce_rules(
        table, config.g_min, sigma, seed=_multiset_seed(config.seed, multiset)
    )
    out = []
    for rule in rules:
        mined = reevaluate(translate(rule, multiset), dataset)
        if mined.supp_pos >= sigma and mined.growth_rate >= config.g_min:
            out.append(mined)
    return out


_WORKER_STATE: tuple | None = None


def _init_worker(dataset, config, sigma):
    global _WORKER_STATE
    _WORKER_STATE = (dataset, config, sigma)


def _run_worker(task):
    multiset, supp_pos, supp_neg = task
    dataset, config, sigma = _WORKER_STATE
    return _mine_one(multiset, dataset, config, sigma, supp_pos, supp_neg)


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _output_order(mined: MinedChronicle):
    return (
        -mined.growth_rate,
        -mined.supp_pos,
        mined.chronicle.items,
        tuple(
            (c.from_index, c.to_index, c.lower, c.upper)
            for c in mined.chronicle.constraints
        ),
    )


def dcm(dataset: SequenceDataset, config: DcmConfig | None = None) -> list[MinedChronicle]:
    """Mine all discriminant chronicles of the dataset.

    Frequency is counted in the positive set only; negatives are consulted
    for discriminancy.  Output is sorted by descending growth rate, then
    descending positive support, then multiset.
    """
    if config is None:
        config = DcmConfig()
    if not dataset.positives:
        raise ValueError("no positive sequences")
    sigma = config.resolve_sigma(len(dataset.positives))

    transactions = encode(dataset.positives)
    if config.max_size is not None:
        # items meaning "at least k occurrences" with k beyond the size cap
        # can never contribute to an admissible multiset
        transactions = [
            replace(
                tx,
                items=frozenset(
                    it for it in tx.items if it.occurrence_index <= config.max_size
                ),
            )
            for tx in transactions
        ]
    itemsets = mine_frequent_itemsets(transactions, sigma, max_items=config.max_size)
    multisets = [
        ms
        for ms in decode_to_multisets(itemsets)
        if len(ms) >= config.min_size
        and (config.max_size is None or len(ms) <= config.max_size)
    ]
    multisets.sort()

    pos_counters, neg_counters = _type_counters(dataset)
    tasks = []
    for ms in multisets:
        supp_pos, supp_neg = _unconstrained_supports(ms, pos_counters, neg_counters)
        tasks.append((ms, supp_pos, supp_neg))

    workers = _worker_count()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(
            max_workers=min(workers, len(tasks)),
            initializer=_init_worker,
            initargs=(dataset, config, sigma),
        ) as pool:
            chunks = list(pool.map(_run_worker, tasks, chunksize=8))
    else:
        chunks = [
            _mine_one(ms, dataset, config, sigma, sp, sn) for ms, sp, sn in tasks
        ]

    unique: dict[Chronicle, MinedChronicle] = {}
    for chunk in chunks:
        for mined in chunk:
            unique.setdefault(mined.chronicle, mined)
    return sorted(unique.values(), key=_output_order)
