import json
import math

import pytest

from chronomine import (
    Chronicle,
    CrossoverConfig,
    Event,
    MinedChronicle,
    chronicle_from_obj,
    crossover_split,
    load_chronicles_json,
    load_csv,
    render,
    save_dataset_csv,
)
from chronomine.errors import ConfigError, InputError
from chronomine.io import render_csv, render_dot, render_json

from conftest import REFERENCE_ROWS


def write_reference_csv(path):
    lines = ["sid,event,timestamp,label"]
    for sid, events, label in REFERENCE_ROWS:
        for etype, t in events:
            lines.append(f"{sid},{etype},{t},{label}")
    path.write_text("\n".join(lines) + "\n")


class TestLoadCsv:
    def test_reference_file(self, tmp_path, reference_dataset):
        path = tmp_path / "data.csv"
        write_reference_csv(path)
        ds = load_csv(path)
        assert len(ds.positives) == 3 and len(ds.negatives) == 3
        assert ds == reference_dataset

    def test_roundtrip_preserves_dataset(self, tmp_path, reference_dataset):
        path = tmp_path / "out.csv"
        save_dataset_csv(reference_dataset, path)
        assert load_csv(path) == reference_dataset

    def test_header_only_gives_empty_dataset(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("sid,event,timestamp,label\n")
        ds = load_csv(path)
        assert ds.sequences == ()

    def test_duplicate_rows_kept_as_distinct_events(self, tmp_path):
        path = tmp_path / "dup.csv"
        path.write_text(
            "sid,event,timestamp,label\ns,A,1,+\ns,A,1,+\n"
        )
        ds = load_csv(path)
        assert len(ds.positives[0].events) == 2

    def test_malformed_timestamp_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("sid,event,timestamp,label\ns,A,1,+\ns,A,xx,+\n")
        with pytest.raises(InputError, match=":3"):
            load_csv(path)

    def test_inconsistent_label_names_sid(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("sid,event,timestamp,label\ns7,A,1,+\ns7,B,2,-\n")
        with pytest.raises(InputError, match="s7"):
            load_csv(path)

    def test_wrong_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("id,event,time,label\n")
        with pytest.raises(InputError, match="header"):
            load_csv(path)


class TestRender:
    @pytest.fixture()
    def translated_result(self):
        chronicle = Chronicle.build(
            ("A", "B", "C"), [(0, 1, -math.inf, 5), (1, 2, -math.inf, 2)]
        )
        return MinedChronicle(chronicle, 3, 1)

    def test_json_encodes_infinite_bounds_as_null(self, translated_result):
        data = json.loads(render_json([translated_result]))
        assert data[0]["constraints"] == [
            {"from": 0, "to": 1, "lower": None, "upper": 5.0},
            {"from": 1, "to": 2, "lower": None, "upper": 2.0},
        ]
        assert data[0]["supp_pos"] == 3

    def test_json_infinite_growth_is_null(self):
        m = MinedChronicle(Chronicle.unconstrained(("A", "B")), 2, 0)
        data = json.loads(render_json([m]))
        assert data[0]["growth"] is None

    def test_empty_results_render_as_empty_array(self):
        assert json.loads(render_json([])) == []
        assert render([], "json") == "[]"

    def test_csv_renders_one_row_per_chronicle(self, translated_result):
        text = render_csv([translated_result])
        lines = text.strip().splitlines()
        assert lines[0] == "items,constraints,supp_pos,supp_neg,growth"
        # the constraints field holds commas, so the csv writer quotes it
        assert lines[1] == 'A|B|C,"0->1:[-inf,5];1->2:[-inf,2]",3,1,3'

    def test_dot_counts_nodes_and_edges(self, five_item_chronicle):
        mined = MinedChronicle(five_item_chronicle, 2, 1)
        text = render_dot([mined])
        assert text.count("[label=") == 5 + 5  # 5 nodes + 5 constraint edges
        assert "e2 -> e3" in text

    def test_unknown_format_rejected(self):
        with pytest.raises(ConfigError):
            render([], "yaml")


class TestChronicleJson:
    def test_roundtrip(self, five_item_chronicle, tmp_path):
        mined = MinedChronicle(five_item_chronicle, 2, 1)
        path = tmp_path / "c.json"
        path.write_text(render_json([mined]))
        (parsed,) = load_chronicles_json(path)
        assert parsed == five_item_chronicle

    def test_single_object_accepted(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"items": ["A", "B"], "constraints": []}))
        (parsed,) = load_chronicles_json(path)
        assert parsed == Chronicle.unconstrained(("A", "B"))

    def test_malformed_object_rejected(self):
        with pytest.raises(InputError):
            chronicle_from_obj({"constraints": []})
        with pytest.raises(InputError):
            chronicle_from_obj({"items": ["B", "A"]})


class TestCrossover:
    def test_window_arithmetic(self):
        cfg = CrossoverConfig(outcome="SEIZURE", gap=3, window=90)
        timeline = {
            "pat": [
                Event("SEIZURE", 200),
                Event("DRUG", 107),  # first instant inside the positive window
                Event("DRUG", 196.5),
                Event("DRUG", 106.9),  # last instant inside the negative window
                Event("DRUG", 17),
                Event("DRUG", 16.9),  # before both windows
                Event("DRUG", 197),  # at t0 - gap: excluded (half-open)
            ]
        }
        ds = crossover_split(timeline, cfg)
        (pos,) = ds.positives
        (neg,) = ds.negatives
        assert pos.sid == "pat+" and neg.sid == "pat-"
        assert sorted(e.timestamp for e in pos.events) == [107.0, 196.5]
        assert sorted(e.timestamp for e in neg.events) == [17.0, 106.9]

    def test_first_outcome_anchors_windows(self):
        cfg = CrossoverConfig(outcome="X", gap=0, window=10)
        timeline = {"p": [Event("X", 50), Event("X", 100), Event("A", 45)]}
        ds = crossover_split(timeline, cfg)
        assert [e.timestamp for e in ds.positives[0].events] == [45.0]

    def test_two_patients_give_two_pairs(self):
        cfg = CrossoverConfig(outcome="X", gap=1, window=5)
        timelines = {
            "a": [Event("X", 10), Event("E", 6)],
            "b": [Event("X", 20), Event("E", 16)],
        }
        ds = crossover_split(timelines, cfg)
        assert len(ds.positives) == 2 and len(ds.negatives) == 2

    def test_patient_without_outcome_skipped_with_warning(self):
        cfg = CrossoverConfig(outcome="X", gap=1, window=5)
        timelines = {"a": [Event("X", 10)], "b": [Event("E", 3)]}
        with pytest.warns(UserWarning, match="'b'"):
            ds = crossover_split(timelines, cfg)
        assert len(ds.positives) == 1

    def test_bad_config_rejected(self):
        with pytest.raises(ConfigError):
            CrossoverConfig(outcome="X", gap=-1)
        with pytest.raises(ConfigError):
            CrossoverConfig(outcome="X", window=0)
