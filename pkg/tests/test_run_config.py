import argparse
import io
import json
import math

import numpy as np
import pytest

from src.errors import SpecParseError
from src.report_writer import ReportWriter, format_cell, jsonable
from src.run_config import OutputFormat, RunConfig, Subcommand


def namespace(**overrides):
    values = dict(subcommand="bm", seed=0, format="json", budget=None, rel_slack=1e-9,
                  abs_slack=1e-12, workers=1, output=None)
    values.update(overrides)
    return argparse.Namespace(**values)


def test_defaults():
    config = RunConfig.from_args(namespace(), environ={})
    assert config.subcommand is Subcommand.BM
    assert config.format is OutputFormat.JSON
    assert config.budget == 10 ** 8
    assert config.suites_dir.name == "suites"
    assert config.lemma1_tolerance.abs == 0.0


def test_budget_precedence():
    assert RunConfig.from_args(namespace(), environ={"KHBM_BUDGET": "50"}).budget == 50
    assert RunConfig.from_args(namespace(budget=7), environ={"KHBM_BUDGET": "50"}).budget == 7
    with pytest.raises(SpecParseError):
        RunConfig.from_args(namespace(), environ={"KHBM_BUDGET": "1e3"})


def test_jsonable_spells_infinity():
    data = jsonable({"q": math.inf, "v": np.array([1.0, -math.inf]), "ok": np.bool_(True), "k": np.int64(3)})
    assert data == {"q": "inf", "v": [1.0, "-inf"], "ok": True, "k": 3}


def test_format_cell():
    assert format_cell(0.1) == "0.10000000000000001"
    assert format_cell(None) == ""
    assert format_cell(True) == "true"
    assert format_cell(math.inf) == "inf"


def test_json_is_sorted():
    text = ReportWriter().render_json({"b": 1, "a": 2})
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": 2, "b": 1}


def test_write_to_stream_and_file(tmp_path):
    stream = io.StringIO()
    assert ReportWriter(stream=stream).write("x\n")
    assert stream.getvalue() == "x\n"
    target = tmp_path / "out.csv"
    assert ReportWriter(output=target).write("y\n")
    assert target.read_text() == "y\n"
