import json
import time

import pytest

from pfrees.budget import Budget
from pfrees.certificates import CertificateManager
from pfrees.data_manager import DataManager, Settings, load_settings
from pfrees.error_handler import (
    EXIT_BUDGET,
    EXIT_INTERNAL,
    EXIT_USAGE,
    BudgetExceededError,
    InvariantError,
    ParseError,
    ValidationError,
    error_handler,
)


def test_defaults_and_file_override(tmp_path):
    assert load_settings(environ={}).budget_seconds == 60.0
    path = tmp_path / "pfrees.toml"
    path.write_text('budget_seconds = 5\njobs = 2\ncertificate_dir = "certs"\n')
    settings = load_settings(str(path), environ={})
    assert (settings.budget_seconds, settings.jobs, settings.certificate_dir) == (5, 2, "certs")


def test_environment_budget_wins(tmp_path):
    path = tmp_path / "pfrees.toml"
    path.write_text("budget_seconds = 5\n")
    assert load_settings(str(path), environ={"PFREES_BUDGET": "12.5"}).budget_seconds == 12.5
    with pytest.raises(ParseError):
        load_settings(environ={"PFREES_BUDGET": "soon"})


def test_settings_file_errors(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("budget_seconds = \n")
    with pytest.raises(ParseError):
        load_settings(str(bad), environ={})
    unknown = tmp_path / "unknown.toml"
    unknown.write_text("colour = 'blue'\n")
    with pytest.raises(ParseError):
        load_settings(str(unknown), environ={})


def test_override_ignores_none():
    settings = Settings().override(log_level=None, jobs=3)
    assert settings.jobs == 3 and settings.log_level == "INFO"


def test_data_manager(tmp_path):
    manager = DataManager(str(tmp_path))
    manager.save_json("x.json", {"a": 1})
    assert manager.load_json("x.json") == {"a": 1}
    (tmp_path / "broken.json").write_text("{")
    with pytest.raises(ParseError):
        manager.load_json("broken.json")
    assert DataManager().load_claims()["schema"] == 1


def test_certificates(tmp_path):
    manager = CertificateManager(str(tmp_path / "certs"))
    path = manager.save("some-claim", "be_complex", {"n": 3, "sign": "unsigned", "order": "reversed"})
    data = manager.load(path)
    assert data["schema"] == 1 and data["claim"] == "some-claim" and data["payload"]["n"] == 3
    listed = manager.get_certificate_files()
    assert [c["claim"] for c in listed] == ["some-claim"]
    other = tmp_path / "other.json"
    other.write_text(json.dumps({"schema": 99}))
    with pytest.raises(ParseError):
        manager.load(str(other))


def test_budget():
    with pytest.raises(ValidationError):
        Budget(0)
    Budget.unlimited().check()
    budget = Budget(0.001)
    time.sleep(0.01)
    assert budget.exhausted()
    with pytest.raises(BudgetExceededError) as info:
        budget.check(partial=[1, 2], what="test")
    assert info.value.partial == [1, 2]
    assert Budget.coerce(budget) is budget
    assert Budget.coerce(2).seconds == 2


def test_exit_codes():
    assert error_handler.exit_code(ParseError("x")) == EXIT_USAGE
    assert error_handler.exit_code(BudgetExceededError("x")) == EXIT_BUDGET
    assert error_handler.exit_code(InvariantError("x")) == EXIT_INTERNAL


def test_handle_error_message(tmp_path):
    error_handler.configure(str(tmp_path / "log.txt"), "DEBUG")
    message = error_handler.handle_error(ValidationError("t must be even"), {"command": "pf"})
    assert message == "Error: Invalid input - t must be even"
    assert "t must be even" in (tmp_path / "log.txt").read_text()
