"""Fixtures: real CSVs produced through the simulator's CLI, plus broken ones."""

import subprocess
import sys

import pytest


def _simulate(tmp_path, name, *args):
    out = tmp_path / name
    cmd = [sys.executable, "-m", "qdba.cli", "sweep", *args, "--out", str(out)]
    subprocess.run(cmd, check=True, capture_output=True, text=True)
    return out


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("csv")
    common = ["--n", "4", "--traitors", "1", "--shots", "100", "--workers", "1"]
    _simulate(tmp, "noise.csv", "noise", *common, "--iters", "15", "--points", "5", "--seed", "31")
    _simulate(tmp, "traitors.csv", "traitors", *common, "--iters", "10", "--seed", "32")
    _simulate(tmp, "size.csv", "size", "--n", "5", "--traitors", "1", "--shots", "100",
              "--workers", "1", "--iters", "10", "--seed", "33")
    _simulate(tmp, "shots.csv", "shots", *common, "--axis", "100,200,400", "--iters", "10",
              "--seed", "34")
    _simulate(tmp, "hist_emdd.csv", "histogram", "--n", "4", "--preset", "emdd",
              "--iters", "3", "--samples", "1024", "--seed", "35")
    _simulate(tmp, "hist_plain.csv", "histogram", "--n", "4", "--preset", "noiseless",
              "--iters", "3", "--samples", "1024", "--seed", "36")
    return tmp
