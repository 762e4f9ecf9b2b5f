"""Tests for the stdout storage backend."""

import json

import pytest

from macroelast.storage import StdoutStorage
from . import convergence_rows, report_document


class TestStdoutStorage:
    def test_prints_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        StdoutStorage().store(report_document())
        assert json.loads(capsys.readouterr().out) == report_document()

    def test_prints_rows_as_csv(self, capsys: pytest.CaptureFixture[str]) -> None:
        StdoutStorage().store({"mesh": "builtin:square", "rows": convergence_rows()})
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "level,h,err_sigma_L2,err_u_L2,order_sigma,order_u"
        assert len(out.splitlines()) == 3

    def test_load_returns_empty(self) -> None:
        assert StdoutStorage().load() == {}
