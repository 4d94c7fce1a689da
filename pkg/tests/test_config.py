"""
Test suite for configuration, run options and output rendering
"""

import sys
import os
import io
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.config import Config, DevelopmentConfig, TestingConfig, get_config
from src.core.models import RunConfig
from src.utils.output_writer import OutputWriter


def test_get_config_environments(monkeypatch):
    """Test configuration selection by environment name"""
    print("\n=== Testing Config Selection ===")

    assert get_config('testing') is TestingConfig
    assert get_config('development') is DevelopmentConfig
    assert get_config('unknown') is Config

    monkeypatch.setenv('ARTIN_ENV', 'testing')
    assert get_config() is TestingConfig
    assert TestingConfig.BALL_CAP == 50000
    print("✓ Environments resolved")


def test_default_values_are_valid():
    """Test defaults and validation"""
    print("\n=== Testing Config Defaults ===")

    assert Config.validate_config()
    assert Config.M2_VERTEX_CAP == 20
    assert Config.TOLERANCE == 1e-9
    assert Path(Config.GRAPH_DIR).name == 'graphs'
    print("✓ Defaults valid")


def test_validate_config_rejects_bad_values(monkeypatch):
    """Test that non-positive caps are reported"""
    print("\n=== Testing Config Validation ===")

    monkeypatch.setattr(Config, 'BALL_CAP', 0)
    monkeypatch.setattr(Config, 'RADIUS', -1)
    with pytest.raises(ValueError) as excinfo:
        Config.validate_config()
    assert 'BALL_CAP' in str(excinfo.value) and 'RADIUS' in str(excinfo.value)
    print(f"✓ {excinfo.value}")


def test_run_config_validation():
    """Test option validation before any computation"""
    print("\n=== Testing RunConfig ===")

    config = RunConfig(command='classify', input_path=Path('graphs/pentagon.graph'))
    assert config.radius == 3 and config.sample == 'all'
    assert RunConfig(command='cube-table', epsilons=(1.0, 0.5)).input_path is None
    assert RunConfig(command='delta', input_path=Path('x'), sample='landmarks').sample == 'landmarks'
    assert RunConfig(command='qi', input_path=Path('x'), radius=3, interior=2).interior == 2

    bad_options = [
        dict(command='draw', input_path=Path('x')),
        dict(command='classify'),
        dict(command='cube-table', epsilons=()),
        dict(command='cube-table', epsilons=(0.0,)),
        dict(command='ball', input_path=Path('x'), radius=-1),
        dict(command='ball', input_path=Path('x'), cap=0),
        dict(command='delta', input_path=Path('x'), sample=-5),
        dict(command='ball', input_path=Path('x'), fmt='xml'),
        dict(command='ball', input_path=Path('x'), kind='salvetti'),
        dict(command='ball', input_path=Path('x'), oracle='magic'),
        dict(command='qi', input_path=Path('x'), radius=2, interior=3),
        dict(command='qi', input_path=Path('x'), radius=2, interior=2),
        dict(command='qi', input_path=Path('x'), radius=0, interior=None),
        dict(command='cube-table', epsilons=(float('nan'),)),
        dict(command='cube-table', epsilons=(0.5, float('inf'))),
        dict(command='certify', input_path=Path('x'), epsilons=(0.1, 0.2)),
        dict(command='delta', input_path=Path('x'), sample=True),
    ]
    for options in bad_options:
        with pytest.raises(ValueError):
            RunConfig(**options)
    print(f"✓ {len(bad_options)} invalid option sets rejected")


def test_output_writer_rendering(tmp_path):
    """Test JSON and CSV rendering and file output"""
    print("\n=== Testing OutputWriter ===")

    text = OutputWriter.render_json({'b': 1, 'a': [1.5, None], 'ü': True})
    assert text == '{\n  "a": [\n    1.5,\n    null\n  ],\n  "b": 1,\n  "ü": true\n}\n'

    csv_text = OutputWriter.render_csv(('x', 'y'), [(0.1, 2), (1.0, 'z')])
    assert csv_text == "x,y\n0.1,2\n1.0,z\n"

    stream = io.StringIO()
    assert OutputWriter().write("hello", stream=stream) is None
    assert stream.getvalue() == "hello\n"

    target = tmp_path / 'deep' / 'out.csv'
    saved = OutputWriter(target).write_csv(('x',), [(1,)])
    assert saved == str(target)
    assert target.read_bytes() == b"x\n1\n"

    with pytest.raises(OSError):
        OutputWriter(tmp_path).write("x")
    print("✓ Rendering and writing")
