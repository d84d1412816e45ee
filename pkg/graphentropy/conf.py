"""
App-level settings for graphentropy.

Values come from ``settings.GRAPH_ENTROPY`` when Django is configured and
fall back to ``DEFAULTS`` otherwise, so the numerical modules can be used
as a plain library.
"""

from typing import Any

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    'DENSE_EIGEN_CAP': 4096,
    'EIGEN_METHOD': 'lapack',
    'EIGEN_TOL': 1e-12,
    'ZERO_TOL': 1e-8,
    'TAU_MIN': 1e-3,
    'TAU_MAX': 1e3,
    'TAU_POINTS': 200,
    'TAU_LOG': True,
    'SWEEP_SAMPLES': 10,
    'SWEEP_SEED': 0,
    'MAX_DRAWS_FACTOR': 10,
    'ENSEMBLE_WORKERS': 1,
    'ORACLE_MAX_N': 1024,
    'ORACLE_TAUS': (0.1, 1.0, 10.0),
    'BOUNDS_SAMPLES': 25,
    'BOUNDS_SEED': 1,
}


def get_setting(name: str) -> Any:
    """Return a graphentropy setting, preferring the project's overrides"""
    if name not in DEFAULTS:
        raise KeyError(f"Unknown graphentropy setting '{name}'")
    try:
        overrides = getattr(settings, 'GRAPH_ENTROPY', {})
    except ImproperlyConfigured:
        overrides = {}
    return overrides.get(name, DEFAULTS[name])
