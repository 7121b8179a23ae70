"""配置加载与日志初始化测试"""

import logging

import pytest
import yaml

from src.config.settings import get_config, load_config, reset_config
from src.utils.logger import setup_logger


def _write(path, data):
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return str(path)


def test_defaults_when_file_missing(tmp_path):
    config = load_config(str(tmp_path / "absent.yaml"))
    assert config['arithmetic']['seed'] == 20240611
    assert config['novikov'] == {'direction': 'positive', 'order': 20}
    assert get_config() is config


def test_file_merges_into_defaults(tmp_path):
    path = _write(tmp_path / "c.yaml", {'novikov': {'order': 7}, 'extra': {'x': 1}})
    config = load_config(path)
    assert config['novikov'] == {'direction': 'positive', 'order': 7}
    assert config['extra'] == {'x': 1}


def test_defaults_not_shared_between_loads(tmp_path):
    load_config(str(tmp_path / "absent.yaml"))['arithmetic']['seed'] = 1
    reset_config()
    assert load_config(str(tmp_path / "absent.yaml"))['arithmetic']['seed'] == 20240611


def test_environment_overrides_file(tmp_path, monkeypatch):
    path = _write(tmp_path / "c.yaml", {'arithmetic': {'seed': 5}, 'logging': {'level': 'INFO'}})
    monkeypatch.setenv('TFC_SEED', '42')
    monkeypatch.setenv('TFC_LOG_LEVEL', 'debug')
    config = load_config(path)
    assert config['arithmetic']['seed'] == 42
    assert config['logging']['level'] == 'DEBUG'


def test_bad_seed_ignored(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv('TFC_SEED', 'abc')
    config = load_config(str(tmp_path / "absent.yaml"))
    assert config['arithmetic']['seed'] == 20240611
    captured = capsys.readouterr()
    assert 'TFC_SEED' in captured.err
    assert captured.out == ""


@pytest.mark.parametrize("text", ["- a\n- b\n", "key: [unclosed\n"])
def test_unusable_file_falls_back(tmp_path, capsys, text):
    path = tmp_path / "c.yaml"
    path.write_text(text, encoding="utf-8")
    config = load_config(str(path))
    assert config['skein']['workers'] == 4
    assert '警告' in capsys.readouterr().err


def test_setup_logger_file_only(tmp_path):
    log_file = tmp_path / "logs" / "run.log"
    logger = setup_logger('tfc-settings-test', level='warning', log_file=str(log_file), console=False)
    try:
        assert logger.level == logging.WARNING
        assert len(logger.handlers) == 1
        logger.warning("写入")
        logger.handlers[0].flush()
        assert "写入" in log_file.read_text(encoding="utf-8")
    finally:
        setup_logger('tfc-settings-test', console=False)


def test_setup_logger_unknown_level_defaults_to_info():
    logger = setup_logger('tfc-settings-test', level='nope', console=True)
    try:
        assert logger.level == logging.INFO
        assert len(logger.handlers) == 1
    finally:
        setup_logger('tfc-settings-test', console=False)
