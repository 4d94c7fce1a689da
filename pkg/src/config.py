"""Configuration management for the Artin hyperbolicity toolkit"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Get project root directory (parent of src)
BASE_DIR = Path(__file__).resolve().parent.parent


def _env_float(key: str, default: str) -> float:
    return float(os.getenv(key, default))


def _env_int(key: str, default: str) -> int:
    return int(os.getenv(key, default))


class Config:
    """Base configuration class"""

    # Numeric tolerance shared by PD/PSD tests and hyperboloid checks
    TOLERANCE = _env_float('ARTIN_TOLERANCE', '1e-9')

    # Resource caps
    CLOSURE_CAP = _env_int('ARTIN_CLOSURE_CAP', '50000')
    ENUMERATION_CAP = _env_int('ARTIN_ENUMERATION_CAP', '10000')
    BALL_CAP = _env_int('ARTIN_BALL_CAP', '250000')
    M2_VERTEX_CAP = _env_int('ARTIN_M2_VERTEX_CAP', '20')
    DELTA_BUDGET = _env_int('ARTIN_DELTA_BUDGET', '300000')
    # Quadruples drawn when an exact scan would exceed DELTA_BUDGET
    DELTA_SAMPLE = _env_int('ARTIN_DELTA_SAMPLE', '2000')

    # Run defaults
    SEED = _env_int('ARTIN_SEED', '1729')
    EPSILON = _env_float('ARTIN_EPSILON', '0.1')
    RADIUS = _env_int('ARTIN_RADIUS', '3')
    CERTIFICATE_RADIUS = _env_int('ARTIN_CERTIFICATE_RADIUS', '2')

    # Fixture graphs and schema documents
    GRAPH_DIR = os.getenv('ARTIN_GRAPH_DIR', str(BASE_DIR / 'graphs'))
    SCHEMA_DIR = os.getenv('ARTIN_SCHEMA_DIR', str(BASE_DIR / 'schemas'))

    LOG_LEVEL = os.getenv('ARTIN_LOG_LEVEL', 'WARNING').upper()

    @classmethod
    def validate_config(cls):
        """Validate that numeric settings are usable"""
        positive_keys = [
            'TOLERANCE', 'CLOSURE_CAP', 'ENUMERATION_CAP', 'BALL_CAP',
            'M2_VERTEX_CAP', 'DELTA_BUDGET', 'DELTA_SAMPLE', 'EPSILON',
        ]
        non_negative_keys = ['RADIUS', 'CERTIFICATE_RADIUS', 'SEED']
        bad_keys = [key for key in positive_keys if getattr(cls, key) <= 0]
        bad_keys += [key for key in non_negative_keys if getattr(cls, key) < 0]

        if bad_keys:
            raise ValueError(
                f"Invalid configuration values: {', '.join(bad_keys)}"
            )

        return True


class DevelopmentConfig(Config):
    """Development configuration"""
    LOG_LEVEL = os.getenv('ARTIN_LOG_LEVEL', 'INFO').upper()


class TestingConfig(Config):
    """Testing configuration"""
    BALL_CAP = 50000
    LOG_LEVEL = 'DEBUG'


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'default': Config,
}


def get_config(env=None):
    """Get configuration based on environment"""
    if env is None:
        env = os.getenv('ARTIN_ENV', 'default')
    return config.get(env, config['default'])
