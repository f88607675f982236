import json

import pytest

from dccsearch import cli, confgraph


def run_cli(capsys, *argv):
    cli.main(list(argv))
    return capsys.readouterr().out


class TestConstruct:
    def test_stdout(self, capsys):
        out = run_cli(capsys, "construct", "--n", "3", "--priority", "trivial")
        lines = out.splitlines()
        assert lines[0] == "3 1 2"
        assert lines[1:] == ["000", "011"]

    def test_to_file(self, tmp_path, capsys):
        path = tmp_path / "code.txt"
        run_cli(capsys, "construct", "--n", "6", "--priority", "vt-equivalent",
                "--out", str(path))
        assert path.read_text().splitlines()[0] == "6 1 10"


class TestTable:
    def test_csv(self, capsys):
        out = run_cli(capsys, "table", "--priorities", "trivial",
                      "--n-min", "6", "--n-max", "7")
        assert "priority,n,s,size,matches_best" in out
        assert "trivial,6,1,8,False" in out

    def test_json(self, capsys):
        out = run_cli(capsys, "table", "--priorities", "vt-equivalent",
                      "--n-min", "6", "--n-max", "6", "--json")
        rows = json.loads(out)
        assert rows[0]["size"] == 10


class TestOverlap:
    def test_identical(self, tmp_path, capsys):
        path = tmp_path / "code.txt"
        run_cli(capsys, "vt", "--n", "6", "--out", str(path))
        out = run_cli(capsys, "overlap", "--a", str(path), "--b", str(path))
        assert out.strip() == "1.000000"


class TestBaseline:
    def test_histogram(self, capsys):
        out = run_cli(capsys, "baseline", "--n", "6", "--trials", "50", "--seed", "0")
        assert out.startswith("size,count")


class TestGraphBuild:
    def test_binary_out(self, tmp_path, capsys):
        path = tmp_path / "g.dccg"
        out = run_cli(capsys, "graph", "build", "--n", "4", "--out", str(path))
        assert "n=4 s=1" in out
        loaded = confgraph.load_graph(path)
        assert loaded.vertex_count == 16


class TestVt:
    def test_stdout(self, capsys):
        out = run_cli(capsys, "vt", "--n", "3")
        assert out.splitlines() == ["3 1 2", "000", "101"]


class TestSearchRun:
    def test_mock_run(self, tmp_path, capsys):
        config = tmp_path / "config.json"
        config.write_text(json.dumps(
            {"num_islands": 2, "budget": 4, "post_optimal_budget": 2,
             "reset_interval": 100}
        ))
        script = tmp_path / "script.json"
        script.write_text(json.dumps(["    return 0.0\n"]))
        snapshot = tmp_path / "db.json"
        out = run_cli(capsys, "search", "run", "--config", str(config),
                      "--seed", "5", "--mock", str(script),
                      "--snapshot", str(snapshot))
        state = json.loads(out)
        assert state["processed"] == 4
        assert snapshot.exists()

    def test_requires_endpoint_without_mock(self, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"num_islands": 2, "budget": 2}))
        with pytest.raises(SystemExit):
            cli.main(["search", "run", "--config", str(config), "--seed", "1"])
