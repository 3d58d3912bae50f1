"""
Tests for Graph/state.py and Graph/config.py — run configuration and settings.
"""
import pytest
from pydantic import ValidationError

from Graph.config import ExplorationLimits, get_settings
from Graph.state import CoreEdgeModel, RunConfig


class TestRunConfig:

    def test_defaults(self):
        config = RunConfig(generators=" xy ", command="core")
        assert config.generators == "xy"
        assert config.output == "json"
        assert config.node_budget is None

    def test_rejects_blank_generators(self):
        with pytest.raises(ValidationError):
            RunConfig(generators="  ", command="core")

    def test_rejects_unknown_command(self):
        with pytest.raises(ValidationError):
            RunConfig(generators="xy", command="plot")

    def test_rejects_negative_cut(self):
        with pytest.raises(ValidationError):
            RunConfig(generators="xy", command="boundary", cut=-1)


class TestCoreEdgeModel:

    def test_aliases(self):
        edge = CoreEdgeModel.model_validate({"from": 0, "label": "x", "to": 1})
        assert edge.model_dump(by_alias=True) == {"from": 0, "label": "x", "to": 1}


class TestSettings:

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("FGS_NODE_BUDGET", "7")
        get_settings.cache_clear()
        assert get_settings().node_budget == 7
        assert ExplorationLimits.from_settings().node_budget == 7

    def test_explicit_override_wins(self):
        assert ExplorationLimits.from_settings(node_budget=5).node_budget == 5

    def test_none_override_is_ignored(self):
        assert ExplorationLimits.from_settings(node_budget=None).node_budget == get_settings().node_budget
