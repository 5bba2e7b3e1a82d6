import json

import numpy as np
import pytest

from neurotrace.cli import main
from neurotrace.trace import WeightsUpdated, read_trace


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    return code


def train_args(tmp_path, tag, epochs="5", extra=()):
    return [
        "train",
        "--dataset", "iris",
        "--layers", "8",
        "--activation", "sigmoid",
        "--lr", "0.5",
        "--epochs", epochs,
        "--seed", "7",
        "--out-trace", str(tmp_path / f"{tag}.jsonl"),
        "--out-metrics", str(tmp_path / f"{tag}.csv"),
        *extra,
    ]


class TestTrain:
    def test_exit_zero_and_metric_rows(self, tmp_path, capsys):
        assert main(train_args(tmp_path, "a", epochs="10")) == 0
        lines = (tmp_path / "a.csv").read_text().strip().splitlines()
        assert lines[0] == "epoch,loss,accuracy,val_loss,val_accuracy"
        assert len(lines) == 11
        out = capsys.readouterr().out
        assert out.startswith("final:") and "accuracy=" in out

    def test_identical_invocations_identical_traces(self, tmp_path):
        assert main(train_args(tmp_path, "one")) == 0
        assert main(train_args(tmp_path, "two")) == 0
        assert (tmp_path / "one.jsonl").read_bytes() == (tmp_path / "two.jsonl").read_bytes()
        assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "two.csv").read_bytes()

    def test_zero_lr_exits_2(self, tmp_path, capsys):
        code = main(["train", "--dataset", "iris", "--lr", "0", "--epochs", "5"])
        assert code == 2
        assert "learning_rate" in capsys.readouterr().err

    def test_unknown_dataset_exits_3(self, capsys):
        assert main(["train", "--dataset", "mystery", "--epochs", "1"]) == 3

    def test_val_fraction_fills_val_columns(self, tmp_path):
        assert main(train_args(tmp_path, "v", epochs="3", extra=("--val-fraction", "0.2"))) == 0
        row = (tmp_path / "v.csv").read_text().strip().splitlines()[1]
        assert row.count(",") == 4
        assert all(cell for cell in row.split(","))

    def test_regression_leaves_accuracy_blank(self, tmp_path):
        code = main([
            "train", "--dataset", "diabetes", "--layers", "4", "--activation", "relu",
            "--lr", "0.1", "--epochs", "3", "--seed", "1",
            "--out-metrics", str(tmp_path / "d.csv"),
        ])
        assert code == 0
        row = (tmp_path / "d.csv").read_text().strip().splitlines()[1]
        assert row.split(",")[2] == ""


class TestValidate:
    def test_fresh_trace_validates(self, tmp_path, capsys):
        main(train_args(tmp_path, "ok", epochs="3"))
        assert main(["validate", str(tmp_path / "ok.jsonl")]) == 0
        assert "ok" in capsys.readouterr().out

    def test_corrupted_w_post_exits_1(self, tmp_path, capsys):
        main(train_args(tmp_path, "bad", epochs="2"))
        path = tmp_path / "bad.jsonl"
        lines = path.read_text().strip().splitlines()
        for i, line in enumerate(lines):
            obj = json.loads(line)
            if obj["type"] == "WEIGHTS_UPDATED":
                obj["w_post"][0][0] += 1e-3
                lines[i] = json.dumps(obj, separators=(",", ":"))
                break
        path.write_text("\n".join(lines) + "\n")
        assert main(["validate", str(path)]) == 1
        assert "update-algebra" in capsys.readouterr().err

    def test_truncated_file_exits_3(self, tmp_path, capsys):
        main(train_args(tmp_path, "trunc", epochs="2"))
        path = tmp_path / "trunc.jsonl"
        content = path.read_text()
        path.write_text(content[: len(content) // 2])
        assert main(["validate", str(path)]) == 3
        assert "line" in capsys.readouterr().err

    def test_missing_file_exits_3(self):
        assert main(["validate", "/nonexistent/trace.jsonl"]) == 3


class TestInspect:
    def test_iris_summary(self, capsys):
        assert main(["inspect", "iris"]) == 0
        out = capsys.readouterr().out
        assert "samples: 150" in out
        assert "task: classification" in out
        assert "classes: 3" in out

    def test_diabetes_summary(self, capsys):
        assert main(["inspect", "diabetes"]) == 0
        out = capsys.readouterr().out
        assert "task: regression" in out
        assert "features: 6" in out

    def test_malformed_csv_exits_3(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1\n")
        assert main(["inspect", str(path)]) == 3
        assert "row 2" in capsys.readouterr().err

    def test_csv_path_summary(self, tmp_path, capsys):
        path = tmp_path / "pets.csv"
        path.write_text("size,age,species\n" + "\n".join(f"{i},{i},{'cat' if i % 2 else 'dog'}" for i in range(10)))
        assert main(["inspect", str(path)]) == 0
        assert "name: pets" in capsys.readouterr().out


class TestPredict:
    def test_wrong_arity_exits_2(self, capsys):
        code = main([
            "predict", "--dataset", "iris", "--epochs", "1", "--inputs", "1,2,3",
        ])
        assert code == 2

    def test_probabilities_sum_to_one(self, capsys):
        code = main([
            "predict", "--dataset", "iris", "--layers", "8", "--lr", "0.5",
            "--epochs", "20", "--seed", "7", "--inputs", "5.1,3.5,1.4,0.2",
        ])
        assert code == 0
        result = json.loads(capsys.readouterr().out)
        assert sum(result["probabilities"].values()) == pytest.approx(1.0, abs=1e-9)
        assert result["label"] in result["probabilities"]

    def test_trace_predict_matches_fresh_run(self, tmp_path, capsys):
        # lr=0 run: epoch-0 forward outputs equal predictions from the dump
        args = train_args(tmp_path, "frozen", epochs="1")
        args[args.index("--lr") + 1] = "1e-9"
        assert main(args) == 0
        capsys.readouterr()
        code = main([
            "predict", "--dataset", "iris", "--trace", str(tmp_path / "frozen.jsonl"),
            "--inputs", "5.1,3.5,1.4,0.2",
        ])
        assert code == 0
        from_trace = json.loads(capsys.readouterr().out)

        code = main([
            "predict", "--dataset", "iris", "--layers", "8", "--lr", "1e-9",
            "--epochs", "1", "--seed", "7", "--inputs", "5.1,3.5,1.4,0.2",
        ])
        assert code == 0
        fresh = json.loads(capsys.readouterr().out)
        assert from_trace["label"] == fresh["label"]
        for k in fresh["probabilities"]:
            assert from_trace["probabilities"][k] == pytest.approx(fresh["probabilities"][k], abs=1e-9)

    def test_trace_predict_replays_epoch0_forward(self, tmp_path, capsys):
        # independent replay: train 1 epoch at lr ~ 0, then forward the traced
        # w_pre snapshots by hand and compare with predict on a training row
        from neurotrace.data import builtin_iris
        from neurotrace.nn import NetworkConfig, NetworkParams, forward
        from neurotrace.data.ingest import apply_norm_stats

        args = train_args(tmp_path, "replay", epochs="1")
        args[args.index("--lr") + 1] = "1e-12"
        assert main(args) == 0
        events = read_trace(tmp_path / "replay.jsonl")
        updates = {e.layer: e for e in events if isinstance(e, WeightsUpdated)}
        params = NetworkParams(
            [np.asarray(updates[l].w_pre) for l in (1, 2)],
            [np.asarray(updates[l].b_pre) for l in (1, 2)],
        )
        iris = builtin_iris()
        raw = iris.raw_X[0]
        config = NetworkConfig((4, 8, 3), "sigmoid", 1e-12, 1, "classification", seed=7)
        x = apply_norm_stats(raw.reshape(1, -1), iris.norm_stats)
        expected = forward(params, x[0], config).output[0]

        capsys.readouterr()
        code = main([
            "predict", "--dataset", "iris", "--trace", str(tmp_path / "replay.jsonl"),
            "--inputs", ",".join(str(v) for v in raw),
        ])
        assert code == 0
        got = json.loads(capsys.readouterr().out)["probabilities"]
        for k, label in enumerate(iris.schema.class_labels):
            assert got[label] == pytest.approx(expected[k], abs=1e-9)


def test_exit_codes_stay_in_documented_set(tmp_path):
    codes = set()
    codes.add(main(["inspect", "iris"]))
    codes.add(main(["train", "--dataset", "iris", "--lr", "0", "--epochs", "1"]))
    codes.add(main(["validate", "/nonexistent"]))
    path = tmp_path / "t.jsonl"
    main(train_args(tmp_path, "t", epochs="1"))
    codes.add(main(["validate", str(path)]))
    assert codes <= {0, 1, 2, 3}
