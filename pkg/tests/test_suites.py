import pytest

from src.run_config import RunConfig, Subcommand
from src.suite_loader import Suite, SuiteLoader
from src.suite_runner import SuiteRunner

CONFIG = RunConfig(subcommand=Subcommand.ACCEPTANCE)
LOADER = SuiteLoader(CONFIG.suites_dir)


def test_every_criterion_has_a_suite():
    assert LOADER.get_suite_count() == 10
    assert [s.id for s in LOADER.get_all_suites()] == [f"suite_{i:03d}" for i in range(1, 11)]
    assert len({s.check["type"] for s in LOADER.get_all_suites()}) == 10


def test_unknown_check_type_fails_cleanly():
    suite = Suite({"id": "x", "title": "x", "criterion": "x", "check": {"type": "astrology"}})
    result = SuiteRunner(CONFIG).run_suite(suite)
    assert not result.success
    assert result.error == "unknown check type"


def test_library_errors_become_failed_results():
    suite = Suite({"id": "x", "title": "x", "criterion": "x",
                   "check": {"type": "two_valued_equivalence", "t_values": [0.75]}})
    result = SuiteRunner(CONFIG).run_suite(suite)
    assert not result.success
    assert result.error.startswith("DomainError")


def test_missing_directory_loads_nothing(tmp_path):
    assert SuiteLoader(tmp_path / "absent").get_suite_count() == 0


def test_broken_suite_file_is_skipped(tmp_path):
    (tmp_path / "suite_001.json").write_text("{not json")
    (tmp_path / "suite_002.json").write_text(
        '{"id": "suite_002", "title": "t", "criterion": "c", "check": {"type": "constants"}}'
    )
    loader = SuiteLoader(tmp_path)
    assert [s.id for s in loader.get_all_suites()] == ["suite_002"]


@pytest.mark.slow
@pytest.mark.parametrize("suite_id", [f"suite_{i:03d}" for i in range(1, 11)])
def test_acceptance_suite(suite_id):
    result = SuiteRunner(CONFIG).run_suite(LOADER.get_suite(suite_id))
    assert result.success, result.to_dict()
