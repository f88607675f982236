import subprocess
import sys

import pytest


def build_graph_file(tmp_path, n, s):
    """Produce a graph file through the construction engine's CLI."""
    path = tmp_path / f"g{n}_{s}.dccg"
    subprocess.run(
        [
            sys.executable, "-m", "dccsearch.cli",
            "graph", "build", "--n", str(n), "--s", str(s), "--out", str(path),
        ],
        check=True,
        capture_output=True,
    )
    return path


@pytest.fixture(scope="session")
def graph_file_31(tmp_path_factory):
    return build_graph_file(tmp_path_factory.mktemp("graphs"), 3, 1)


@pytest.fixture(scope="session")
def graph_file_61(tmp_path_factory):
    return build_graph_file(tmp_path_factory.mktemp("graphs"), 6, 1)
