"""Core modules for the Artin Hyperbolicity Toolkit"""

from .errors import CapExceededError, ConsistencyError, ParseError
from .models import (
    Certificate,
    CertificateItem,
    ClassificationReport,
    ConditionCheck,
    DeltaEstimate,
    ProjectionReport,
    QuasiIsometryFit,
    RunConfig,
)

__all__ = [
    'CapExceededError',
    'ConsistencyError',
    'ParseError',
    'Certificate',
    'CertificateItem',
    'ClassificationReport',
    'ConditionCheck',
    'DeltaEstimate',
    'ProjectionReport',
    'QuasiIsometryFit',
    'RunConfig',
]
