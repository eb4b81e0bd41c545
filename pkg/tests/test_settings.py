"""Tests for Settings loading, saving and the environment override."""

from unittest.mock import patch

import pytest
import yaml

from forddisc.errors import InvalidArgumentError
from forddisc.settings import (
    HARD_MAX_ORDER,
    MAX_ORDER_ENV,
    OracleConfig,
    RunConfig,
    Settings,
    VerifyGrid,
    detect_thread_count,
)


@pytest.fixture
def clean_env(monkeypatch):
    monkeypatch.delenv(MAX_ORDER_ENV, raising=False)
    return monkeypatch


def test_defaults(clean_env):
    """Test the default settings"""
    settings = Settings.get_defaults()
    assert settings.stream_max_order == 26
    assert settings.oracle == OracleConfig()
    assert settings.grid.block_primes == [5, 7, 11, 13, 17, 19, 23]
    assert settings.grid.construction_n_max == 16
    assert settings.grid.oracle_m_max == 20
    assert settings.grid.weighted_n_max == 17
    assert settings.threads >= 1


def test_save_and_load_roundtrip(tmp_path, clean_env):
    """Test saving and loading a YAML file"""
    path = tmp_path / "nested" / "config.yaml"
    original = Settings(stream_max_order=20, threads=3, grid=VerifyGrid(lemma_k_max=6))
    original.save(path)
    assert yaml.safe_load(path.read_text())["stream_max_order"] == 20
    assert Settings.load(path) == original


def test_missing_file_gives_defaults(tmp_path, clean_env):
    """Test defaults when the file is absent"""
    assert Settings.load(tmp_path / "absent.yaml").stream_max_order == 26


def test_broken_file_falls_back_with_warning(tmp_path, clean_env, caplog):
    """Test the fallback on a broken file"""
    path = tmp_path / "config.yaml"
    path.write_text("stream_max_order: [unclosed\n")
    settings = Settings.load(path)
    assert settings.stream_max_order == 26
    assert "Using defaults" in caplog.text


def test_unknown_keys_are_ignored(clean_env, caplog):
    """Test that unknown keys are logged and dropped"""
    settings = Settings.from_dict({"stream_max_order": 12, "colour": "blue", "oracle": {"max_word_length": 10}})
    assert settings.stream_max_order == 12
    assert settings.oracle.max_word_length == 10
    assert "colour" in caplog.text


def test_invalid_values_are_rejected():
    """Test validation of settings and run configs"""
    with pytest.raises(InvalidArgumentError):
        Settings(stream_max_order=HARD_MAX_ORDER + 1)
    with pytest.raises(InvalidArgumentError):
        Settings(threads=0)
    with pytest.raises(InvalidArgumentError):
        OracleConfig(max_debruijn_order=0)
    with pytest.raises(InvalidArgumentError):
        RunConfig(subcommand="scaling", threads=0, settings=Settings())


def test_environment_override(clean_env):
    """Test the streaming cap override"""
    clean_env.setenv(MAX_ORDER_ENV, "18")
    assert Settings.get_defaults().stream_max_order == 18


@pytest.mark.parametrize("raw", ["abc", "0", str(HARD_MAX_ORDER + 1)])
def test_environment_override_rejects_bad_values(clean_env, raw):
    """Test bad override values"""
    clean_env.setenv(MAX_ORDER_ENV, raw)
    with pytest.raises(InvalidArgumentError):
        Settings.get_defaults()


def test_environment_applies_after_file(tmp_path, clean_env):
    """Test that the override wins over the file"""
    path = tmp_path / "config.yaml"
    Settings(stream_max_order=20, threads=1).save(path)
    clean_env.setenv(MAX_ORDER_ENV, "14")
    assert Settings.load(path).stream_max_order == 14


def test_thread_count_detection():
    """Test thread detection via psutil"""
    with patch("forddisc.settings.psutil.cpu_count") as mock_count:
        mock_count.side_effect = lambda logical=True: None if not logical else 8
        assert detect_thread_count() == 8
        mock_count.side_effect = lambda logical=True: None
        assert detect_thread_count() == 1


def test_run_config_flags():
    """Test run config flags"""
    config = RunConfig(subcommand="analyze", order=5, flags=frozenset({"blocks"}), settings=Settings())
    assert config.has("blocks")
    assert not config.has("check")


def test_run_config_workers_fall_back_to_settings():
    """Test that an unset thread count defers to the configured one"""
    settings = Settings(threads=3)
    assert RunConfig(subcommand="scaling", settings=settings).workers == 3
    assert RunConfig(subcommand="scaling", threads=2, settings=settings).workers == 2
