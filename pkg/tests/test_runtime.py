"""
Test cases for process plumbing and run manifests.
"""

import argparse
import time

import pytest

from thinarray import __version__
from thinarray.emulator.persistence import ModelFormatError
from thinarray.manifest import RunManifest, manifest_path, read_manifest
from thinarray.network.config import ConfigError
from thinarray.runtime import (EXIT_RUNTIME, EXIT_USAGE, THREADS_ENV_VAR, UsageError, exit_code_for,
                               ordered_map, prepare_output, resolve_threads)


class TestResolveThreads:
    """Test cases for worker-count resolution"""

    def test_default_is_one(self, monkeypatch):
        monkeypatch.delenv(THREADS_ENV_VAR, raising=False)
        assert resolve_threads(None) == 1

    def test_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "6")
        assert resolve_threads(None) == 6

    def test_flag_wins_over_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "6")
        assert resolve_threads(2) == 2

    def test_non_integer_environment(self, monkeypatch):
        monkeypatch.setenv(THREADS_ENV_VAR, "abc")
        with pytest.raises(UsageError, match=THREADS_ENV_VAR):
            resolve_threads(None)

    def test_zero_rejected(self):
        with pytest.raises(UsageError):
            resolve_threads(0)


class TestOrderedMap:
    """Test cases for the order-preserving map"""

    def test_serial(self):
        assert ordered_map(lambda x: x * x, range(5)) == [0, 1, 4, 9, 16]

    def test_parallel_keeps_input_order(self):
        def slow_for_small(x):
            time.sleep(0.01 * (5 - x))
            return x

        assert ordered_map(slow_for_small, range(5), workers=5) == [0, 1, 2, 3, 4]


class TestPrepareOutput:
    """Test cases for output path checks"""

    def test_creates_parent_directories(self, tmp_path):
        target = tmp_path / "a" / "b" / "out.csv"
        prepare_output(str(target))
        assert target.parent.is_dir()
        assert not target.exists()

    def test_keeps_existing_content(self, tmp_path):
        target = tmp_path / "out.csv"
        target.write_text("keep", encoding='utf-8')
        prepare_output(str(target))
        assert target.read_text(encoding='utf-8') == "keep"

    def test_directory_rejected(self, tmp_path):
        with pytest.raises(UsageError, match="directory"):
            prepare_output(str(tmp_path))


class TestExitCodes:
    """Test cases for the exception-to-exit-code mapping"""

    @pytest.mark.parametrize("error", [UsageError("x"), ConfigError("x"), ModelFormatError("x"),
                                       FileNotFoundError("x")])
    def test_usage_errors(self, error):
        assert exit_code_for(error) == EXIT_USAGE

    @pytest.mark.parametrize("error", [RuntimeError("x"), ValueError("x"), MemoryError()])
    def test_runtime_errors(self, error):
        assert exit_code_for(error) == EXIT_RUNTIME


class TestRunManifest:
    """Test cases for run manifests"""

    def test_write_and_read(self, tmp_path):
        args = argparse.Namespace(seed=4, n_iter=10, out="x.csv", func=print)
        manifest = RunManifest.from_args("gen-dataset", args, config_digest="abc")
        output = tmp_path / "x.csv"
        path = manifest.write(str(output))
        assert path == manifest_path(str(output))
        assert path.name == "x.csv.manifest.json"

        document = read_manifest(str(output))
        assert document["command"] == "gen-dataset"
        assert document["seed"] == 4
        assert document["config_digest"] == "abc"
        assert document["tool_version"] == __version__
        assert document["flags"] == {"n_iter": 10, "out": "x.csv", "seed": 4}
        assert document["outputs"] == {"primary": "x.csv"}
        assert document["started_at"] <= document["finished_at"]

    def test_command_without_seed(self):
        manifest = RunManifest.from_args("describe", argparse.Namespace(dataset="d.csv"))
        assert manifest.seed is None

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_manifest(str(tmp_path / "none.csv"))
