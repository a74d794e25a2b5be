"""Dataset ingestion, result serialization, and case-crossover preparation.

Datasets travel as flat CSV with header ``sid,event,timestamp,label`` (one
row per event, label constant per sid).  Mining results serialize to JSON,
CSV, or Graphviz DOT; infinite constraint bounds are encoded as JSON null,
never as sentinel numbers.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, TextIO

from .errors import ConfigError, InputError
from .model import (
    NEGATIVE,
    POSITIVE,
    Chronicle,
    Event,
    MinedChronicle,
    Sequence,
    SequenceDataset,
)

DATASET_HEADER = ["sid", "event", "timestamp", "label"]
TIMELINE_HEADER = ["sid", "event", "timestamp"]

EXPORT_FORMATS = ("json", "csv", "dot")


# ---------------------------------------------------------------------------
# dataset CSV

def load_csv(path) -> SequenceDataset:
    """Read a labeled event CSV into a dataset.

    Raises InputError with the offending line number for malformed rows and
    with the sid for label inconsistencies.
    """
    events: dict[str, list[Event]] = {}
    labels: dict[str, str] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != DATASET_HEADER:
            raise InputError(
                f"{path}: expected header {','.join(DATASET_HEADER)!r}, got {header}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise InputError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
            sid, etype, raw_ts, label = row
            try:
                timestamp = float(raw_ts)
            except ValueError:
                raise InputError(f"{path}:{lineno}: bad timestamp {raw_ts!r}") from None
            if label not in (POSITIVE, NEGATIVE):
                raise InputError(f"{path}:{lineno}: bad label {label!r}")
            if sid in labels and labels[sid] != label:
                raise InputError(f"{path}: sequence {sid!r} carries inconsistent labels")
            labels[sid] = label
            events.setdefault(sid, []).append(Event(etype, timestamp))
    sequences = [
        Sequence(sid=sid, events=tuple(evs), label=labels[sid])
        for sid, evs in events.items()
    ]
    return SequenceDataset.from_sequences(sequences)


def save_dataset_csv(dataset: SequenceDataset, path) -> None:
    """Inverse of load_csv; timestamps keep full precision."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(DATASET_HEADER)
        for seq in dataset.sequences:
            for ev in seq.events:
                writer.writerow([seq.sid, ev.event_type, repr(ev.timestamp), seq.label])


def load_timeline_csv(path) -> dict[str, list[Event]]:
    """Read an unlabeled per-patient event CSV (header sid,event,timestamp)."""
    timelines: dict[str, list[Event]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != TIMELINE_HEADER:
            raise InputError(
                f"{path}: expected header {','.join(TIMELINE_HEADER)!r}, got {header}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise InputError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            sid, etype, raw_ts = row
            try:
                timestamp = float(raw_ts)
            except ValueError:
                raise InputError(f"{path}:{lineno}: bad timestamp {raw_ts!r}") from None
            timelines.setdefault(sid, []).append(Event(etype, timestamp))
    return timelines


# ---------------------------------------------------------------------------
# chronicle serialization

def _bound_to_json(value: float):
    return None if math.isinf(value) else value


def _bound_from_json(value, default: float) -> float:
    if value is None:
        return default
    return float(value)


def chronicle_to_obj(mined: MinedChronicle) -> dict:
    c = mined.chronicle
    return {
        "items": list(c.items),
        "constraints": [
            {
                "from": tc.from_index,
                "to": tc.to_index,
                "lower": _bound_to_json(tc.lower),
                "upper": _bound_to_json(tc.upper),
            }
            for tc in c.constraints
        ],
        "supp_pos": mined.supp_pos,
        "supp_neg": mined.supp_neg,
        "growth": None if math.isinf(mined.growth_rate) else mined.growth_rate,
    }


def chronicle_from_obj(obj: Mapping) -> Chronicle:
    """Parse the JSON chronicle shape back into a Chronicle.

    Supports (and growth) are ignored if present; they are recomputed by
    whoever needs them.
    """
    try:
        items = tuple(str(x) for x in obj["items"])
        raw = [
            (
                int(c["from"]),
                int(c["to"]),
                _bound_from_json(c.get("lower"), -math.inf),
                _bound_from_json(c.get("upper"), math.inf),
            )
            for c in obj.get("constraints", [])
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed chronicle object: {exc}") from None
    try:
        return Chronicle.build(items, raw)
    except ValueError as exc:
        raise InputError(f"invalid chronicle: {exc}") from None


def load_chronicles_json(path) -> list[Chronicle]:
    """Read one chronicle object or a list of them from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: not valid JSON ({exc})") from None
    objs = data if isinstance(data, list) else [data]
    return [chronicle_from_obj(o) for o in objs]


# ---------------------------------------------------------------------------
# result export

def _interval_text(lower: float, upper: float) -> str:
    fmt = lambda v: "-inf" if v == -math.inf else ("inf" if v == math.inf else f"{v:g}")
    return f"[{fmt(lower)},{fmt(upper)}]"


def render_json(results: Iterable[MinedChronicle]) -> str:
    return json.dumps([chronicle_to_obj(m) for m in results], indent=2)


def render_csv(results: Iterable[MinedChronicle]) -> str:
    import io as stringio

    buf = stringio.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["items", "constraints", "supp_pos", "supp_neg", "growth"])
    for m in results:
        c = m.chronicle
        constraints = ";".join(
            f"{tc.from_index}->{tc.to_index}:{_interval_text(tc.lower, tc.upper)}"
            for tc in c.constraints
        )
        growth = "inf" if math.isinf(m.growth_rate) else f"{m.growth_rate:g}"
        writer.writerow(["|".join(c.items), constraints, m.supp_pos, m.supp_neg, growth])
    return buf.getvalue()


def render_dot(results: Iterable[MinedChronicle]) -> str:
    """One digraph per chronicle: nodes are event types, edges carry the
    constraint interval; unconstrained pairs draw no edge."""
    lines = []
    for idx, m in enumerate(results):
        c = m.chronicle
        growth = "inf" if math.isinf(m.growth_rate) else f"{m.growth_rate:g}"
        lines.append(f"digraph chronicle_{idx} {{")
        lines.append("  rankdir=LR;")
        lines.append(
            f'  label="supp+={m.supp_pos} supp-={m.supp_neg} growth={growth}";'
        )
        for pos, etype in enumerate(c.items):
            lines.append(f'  e{pos} [label="{etype}"];')
        for tc in c.constraints:
            lines.append(
                f'  e{tc.from_index} -> e{tc.to_index} '
                f'[label="{_interval_text(tc.lower, tc.upper)}"];'
            )
        lines.append("}")
    return "\n".join(lines) + ("\n" if lines else "")


_RENDERERS = {"json": render_json, "csv": render_csv, "dot": render_dot}


def render(results: Iterable[MinedChronicle], fmt: str) -> str:
    if fmt not in _RENDERERS:
        raise ConfigError(f"unknown format {fmt!r}; choose one of {EXPORT_FORMATS}")
    return _RENDERERS[fmt](list(results))


def export(results: Iterable[MinedChronicle], fmt: str, out: TextIO | str | None) -> None:
    """Render results and write them to a path, a file object, or stdout."""
    text = render(results, fmt)
    if out is None:
        import sys

        sys.stdout.write(text)
    elif isinstance(out, str):
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


# ---------------------------------------------------------------------------
# case-crossover windowing

@dataclass(frozen=True)
class CrossoverConfig:
    """Window layout for the self-controlled split.

    Each patient's first ``outcome`` event anchors two adjacent windows of
    ``window`` days each, ending ``gap`` days before the outcome: the later
    one becomes the patient's positive sequence, the earlier one the
    negative sequence.
    """

    outcome: str
    gap: float = 3.0
    window: float = 90.0

    def __post_init__(self):
        if self.gap < 0:
            raise ConfigError(f"gap must be >= 0, got {self.gap}")
        if self.window <= 0:
            raise ConfigError(f"window length must be > 0, got {self.window}")


def crossover_split(
    timelines: Mapping[str, Iterable[Event]], cfg: CrossoverConfig
) -> SequenceDataset:
    """Build a labeled dataset from per-patient timelines.

    Window boundaries are half-open [start, end) so no event lands in both
    windows.  Patients without an outcome event are skipped with a warning.
    """
    sequences = []
    for sid in sorted(timelines):
        events = sorted(timelines[sid], key=lambda e: (e.timestamp, e.event_type))
        outcome_times = [e.timestamp for e in events if e.event_type == cfg.outcome]
        if not outcome_times:
            warnings.warn(f"patient {sid!r} has no {cfg.outcome!r} event; skipped")
            continue
        t0 = outcome_times[0]
        pos_start = t0 - cfg.gap - cfg.window
        neg_start = t0 - cfg.gap - 2 * cfg.window
        pos_events = tuple(e for e in events if pos_start <= e.timestamp < t0 - cfg.gap)
        neg_events = tuple(e for e in events if neg_start <= e.timestamp < pos_start)
        sequences.append(Sequence(sid=f"{sid}+", events=pos_events, label=POSITIVE))
        sequences.append(Sequence(sid=f"{sid}-", events=neg_events, label=NEGATIVE))
    return SequenceDataset.from_sequences(sequences)
