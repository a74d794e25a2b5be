import json

import pytest

from chronomine.cli import main

from test_io import write_reference_csv

SPEC = {
    "n_pos": 40,
    "n_neg": 40,
    "horizon": 90,
    "noise_types": ["C", "D", "E"],
    "noise_events": 3,
    "patterns": [
        {
            "chronicle": {
                "items": ["A", "B"],
                "constraints": [{"from": 0, "to": 1, "lower": 10, "upper": 20}],
            },
            "p_pos": 0.9,
            "p_neg": 0.05,
        }
    ],
}


@pytest.fixture()
def dataset_csv(tmp_path):
    path = tmp_path / "data.csv"
    write_reference_csv(path)
    return path


class TestMine:
    def test_json_output(self, dataset_csv, tmp_path, capsys):
        out = tmp_path / "out.json"
        code = main(
            [
                "mine",
                "--input",
                str(dataset_csv),
                "--min-support",
                "2",
                "--min-growth",
                "2",
                "--output",
                str(out),
            ]
        )
        assert code == 0
        results = json.loads(out.read_text())
        assert isinstance(results, list)
        assert "discriminant chronicles" in capsys.readouterr().err

    def test_empty_result_still_succeeds(self, tmp_path, capsys):
        path = tmp_path / "flat.csv"
        path.write_text(
            "sid,event,timestamp,label\np,A,1,+\np,B,2,+\nn,A,1,-\nn,B,2,-\n"
        )
        code = main(["mine", "--input", str(path), "--min-support", "1", "--min-growth", "2"])
        assert code == 0
        assert json.loads(capsys.readouterr().out) == []

    def test_dot_format(self, dataset_csv, capsys):
        code = main(
            ["mine", "--input", str(dataset_csv), "--min-support", "2", "--format", "dot"]
        )
        assert code == 0
        text = capsys.readouterr().out
        assert text == "" or text.startswith("digraph")

    def test_missing_input_is_exit_1(self, tmp_path):
        assert main(["mine", "--input", str(tmp_path / "nope.csv")]) == 1

    def test_bad_growth_is_exit_2(self, dataset_csv):
        assert main(["mine", "--input", str(dataset_csv), "--min-growth", "0.5"]) == 2

    def test_bad_size_bounds_is_exit_2(self, dataset_csv):
        assert (
            main(
                [
                    "mine",
                    "--input",
                    str(dataset_csv),
                    "--min-size",
                    "3",
                    "--max-size",
                    "2",
                ]
            )
            == 2
        )


class TestGenerateAndMatch:
    def test_generate_then_mine_then_match(self, tmp_path, capsys):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps(SPEC))
        data_path = tmp_path / "data.csv"
        assert (
            main(
                ["generate", "--spec", str(spec_path), "--seed", "3", "--output", str(data_path)]
            )
            == 0
        )
        assert data_path.read_text().startswith("sid,event,timestamp,label")

        out_path = tmp_path / "mined.json"
        assert (
            main(
                [
                    "mine",
                    "--input",
                    str(data_path),
                    "--min-support",
                    "0.1",
                    "--min-growth",
                    "2",
                    "--output",
                    str(out_path),
                ]
            )
            == 0
        )
        mined = json.loads(out_path.read_text())
        assert mined

        assert main(["match", str(out_path), "--input", str(data_path)]) == 0
        matched = json.loads(capsys.readouterr().out)
        assert [m["items"] for m in matched] == [m["items"] for m in mined]
        # supports reported by match agree with the miner's annotations
        assert [(m["supp_pos"], m["supp_neg"]) for m in matched] == [
            (m["supp_pos"], m["supp_neg"]) for m in mined
        ]

    def test_generate_to_stdout(self, tmp_path, capsys):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps(SPEC))
        assert main(["generate", "--spec", str(spec_path)]) == 0
        assert capsys.readouterr().out.startswith("sid,event,timestamp,label")

    def test_bad_spec_is_exit_1(self, tmp_path):
        spec_path = tmp_path / "spec.json"
        spec_path.write_text("{")
        assert main(["generate", "--spec", str(spec_path)]) == 1

    def test_infeasible_spec_is_exit_2(self, tmp_path):
        bad = dict(SPEC)
        bad["patterns"] = [
            {
                "chronicle": {
                    "items": ["A", "B"],
                    "constraints": [{"from": 0, "to": 1, "lower": 500, "upper": 600}],
                },
                "p_pos": 1.0,
                "p_neg": 0.0,
            }
        ]
        spec_path = tmp_path / "spec.json"
        spec_path.write_text(json.dumps(bad))
        assert main(["generate", "--spec", str(spec_path)]) == 2


class TestCrossover:
    def test_windows_to_dataset(self, tmp_path, capsys):
        timeline = tmp_path / "timeline.csv"
        timeline.write_text(
            "sid,event,timestamp\n"
            "pat1,SEIZ,200\npat1,DRUG,150\npat1,DRUG,50\n"
            "pat2,SEIZ,300\npat2,DRUG,250\n"
        )
        code = main(
            [
                "crossover",
                "--input",
                str(timeline),
                "--outcome",
                "SEIZ",
                "--gap",
                "3",
                "--window",
                "90",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert out[0] == "sid,event,timestamp,label"
        body = [line.split(",") for line in out[1:]]
        assert ["pat1+", "DRUG", "150.0", "+"] in body
        assert ["pat1-", "DRUG", "50.0", "-"] in body
        assert ["pat2+", "DRUG", "250.0", "+"] in body

    def test_negative_gap_is_exit_2(self, tmp_path):
        timeline = tmp_path / "timeline.csv"
        timeline.write_text("sid,event,timestamp\np,X,10\n")
        assert (
            main(
                [
                    "crossover",
                    "--input",
                    str(timeline),
                    "--outcome",
                    "X",
                    "--gap",
                    "-1",
                ]
            )
            == 2
        )
