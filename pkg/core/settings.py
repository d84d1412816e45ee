"""
Django settings for the graph entropy project.
"""

import os
from pathlib import Path
from dotenv import load_dotenv
from decouple import config, Csv

# Load environment variables from .env file
load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-graph-entropy-local')
DEBUG = os.getenv('DEBUG', 'False').lower() in ['true', '1', 'yes', 'on']

# Application definition
INSTALLED_APPS = [
    'graphentropy',
]

# Command-line only: no models, no database
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = True
USE_TZ = True

# Numerical settings; every key can be overridden with GRAPH_ENTROPY_<KEY>
GRAPH_ENTROPY = {
    'DENSE_EIGEN_CAP': config('GRAPH_ENTROPY_DENSE_EIGEN_CAP', default=4096, cast=int),
    'EIGEN_METHOD': config('GRAPH_ENTROPY_EIGEN_METHOD', default='lapack'),
    'EIGEN_TOL': config('GRAPH_ENTROPY_EIGEN_TOL', default=1e-12, cast=float),
    'ZERO_TOL': config('GRAPH_ENTROPY_ZERO_TOL', default=1e-8, cast=float),
    'TAU_MIN': config('GRAPH_ENTROPY_TAU_MIN', default=1e-3, cast=float),
    'TAU_MAX': config('GRAPH_ENTROPY_TAU_MAX', default=1e3, cast=float),
    'TAU_POINTS': config('GRAPH_ENTROPY_TAU_POINTS', default=200, cast=int),
    'TAU_LOG': config('GRAPH_ENTROPY_TAU_LOG', default=True, cast=bool),
    'SWEEP_SAMPLES': config('GRAPH_ENTROPY_SWEEP_SAMPLES', default=10, cast=int),
    'SWEEP_SEED': config('GRAPH_ENTROPY_SWEEP_SEED', default=0, cast=int),
    'MAX_DRAWS_FACTOR': config('GRAPH_ENTROPY_MAX_DRAWS_FACTOR', default=10, cast=int),
    'ENSEMBLE_WORKERS': config('GRAPH_ENTROPY_ENSEMBLE_WORKERS', default=1, cast=int),
    'ORACLE_MAX_N': config('GRAPH_ENTROPY_ORACLE_MAX_N', default=1024, cast=int),
    'ORACLE_TAUS': config(
        'GRAPH_ENTROPY_ORACLE_TAUS', default='0.1,1,10', cast=Csv(cast=float, post_process=tuple)
    ),
    'BOUNDS_SAMPLES': config('GRAPH_ENTROPY_BOUNDS_SAMPLES', default=25, cast=int),
    'BOUNDS_SEED': config('GRAPH_ENTROPY_BOUNDS_SEED', default=1, cast=int),
}

LOG_LEVEL = config('LOG_LEVEL', default='INFO')

# Logs go to stderr so CSV on stdout stays machine-readable
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
        'graphentropy': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
