"""Occurrence matching: decide and enumerate where a chronicle occurs in a
sequence, and count sequence-level support.

An occurrence maps every chronicle item to a distinct event of the same
type so that all temporal constraints hold.  The mapping need not follow
the time order of the sequence.  Items of the same type are
interchangeable, so occurrences that differ only by permuting equal-typed
items denote the same sub-sequence; the matcher emits one canonical
representative per sub-sequence: within each run of equal-typed items the
mapped events are taken in (timestamp, position) order.  Constraints are
evaluated on that canonical assignment.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .model import Chronicle, Sequence

#: Enumeration stops (with a warning) after this many occurrences in one
#: sequence; occurrence counts are worst-case exponential in pattern size.
DEFAULT_OCCURRENCE_CAP = 10_000


class OccurrenceCapWarning(RuntimeWarning):
    """Raised (as a warning) when enumeration is truncated by the cap."""


@dataclass(frozen=True)
class Occurrence:
    """One canonical occurrence: per-item event positions and timestamps."""

    sid: str
    mapping: tuple[int, ...]
    timestamps: tuple[float, ...]


def _search(chronicle: Chronicle, sequence: Sequence) -> Iterator[tuple[tuple[int, ...], tuple[float, ...]]]:
    """Yield canonical (mapping, timestamps) pairs by backtracking.

    Items are assigned in multiset order; candidate events are pre-bucketed
    by type, and a partial assignment is abandoned as soon as any constraint
    among already-mapped items fails.  Buckets of different types are
    disjoint, so injectivity only needs enforcing within a type, which the
    strictly-increasing bucket index for equal-typed runs already does.
    """
    items = chronicle.items
    m = len(items)
    if m == 0:
        yield (), ()
        return

    events = sequence.events
    buckets: dict[str, list[int]] = {}
    for pos, ev in enumerate(events):
        buckets.setdefault(ev.event_type, []).append(pos)

    for etype, count in Counter(items).items():
        if len(buckets.get(etype, ())) < count:
            return

    # incoming[k] = constraints whose later endpoint is item k
    incoming: list[list[tuple[int, float, float]]] = [[] for _ in range(m)]
    for tc in chronicle.constraints:
        incoming[tc.to_index].append((tc.from_index, tc.lower, tc.upper))

    mapping = [0] * m
    times = [0.0] * m

    def extend(k: int, start: int) -> Iterator[tuple[tuple[int, ...], tuple[float, ...]]]:
        bucket = buckets[items[k]]
        checks = incoming[k]
        for bi in range(start, len(bucket)):
            pos = bucket[bi]
            t = events[pos].timestamp
            if any(not (lo <= t - times[i] <= hi) for i, lo, hi in checks):
                continue
            mapping[k] = pos
            times[k] = t
            if k + 1 == m:
                yield tuple(mapping), tuple(times)
            else:
                next_start = bi + 1 if items[k + 1] == items[k] else 0
                yield from extend(k + 1, next_start)

    yield from extend(0, 0)


def _enumerate_capped(
    chronicle: Chronicle, sequence: Sequence, cap: int | None
) -> tuple[list[Occurrence], bool]:
    """Enumerate occurrences up to ``cap``; returns (occurrences, truncated)."""
    out: list[Occurrence] = []
    for mapping, times in _search(chronicle, sequence):
        if cap is not None and len(out) >= cap:
            return out, True
        out.append(Occurrence(sequence.sid, mapping, times))
    return out, False


def enumerate_occurrences(
    chronicle: Chronicle, sequence: Sequence, cap: int | None = DEFAULT_OCCURRENCE_CAP
) -> list[Occurrence]:
    """All canonical occurrences of ``chronicle`` in ``sequence``.

    Enumeration is exhaustive and deterministic.  If ``cap`` is not None and
    the sequence holds more occurrences, the list is truncated and an
    OccurrenceCapWarning is emitted.
    """
    occurrences, truncated = _enumerate_capped(chronicle, sequence, cap)
    if truncated:
        warnings.warn(
            f"occurrence cap {cap} reached in sequence {sequence.sid!r}; "
            "enumeration truncated",
            OccurrenceCapWarning,
            stacklevel=2,
        )
    return occurrences


def occurs(chronicle: Chronicle, sequence: Sequence) -> bool:
    """True iff at least one occurrence exists (stops at the first witness)."""
    return next(_search(chronicle, sequence), None) is not None


def support(chronicle: Chronicle, sequences: Iterable[Sequence]) -> int:
    """Number of sequences containing the chronicle (each counted once)."""
    return sum(1 for s in sequences if occurs(chronicle, s))
