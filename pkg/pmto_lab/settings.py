import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Security settings
SECRET_KEY = os.environ.get('SECRET_KEY', 'django-insecure-pmto-lab-dev-key')
DEBUG = os.environ.get('DEBUG', 'True') == 'True'
ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    # Third party apps
    'rest_framework',

    # Local apps
    'core',
    'surrogates',
    'evolution',
    'benchmarks',
    'experiments',
]

# Only serializers, renderers and parsers are used; no auth apps are installed.
REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [],
    'UNAUTHENTICATED_USER': None,
}

# Experiments write CSV/JSON files; nothing is stored in a database.
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Logging
PMTO_LOG_LEVEL = os.environ.get('PMTO_LOG_LEVEL', 'INFO')
PMTO_LOG_FILE = os.environ.get('PMTO_LOG_FILE', '')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': PMTO_LOG_LEVEL,
            'propagate': False,
        }
        for app in ('core', 'surrogates', 'evolution', 'benchmarks', 'experiments')
    },
}

if PMTO_LOG_FILE:
    LOGGING['handlers']['file'] = {
        'level': 'INFO',
        'class': 'logging.FileHandler',
        'filename': PMTO_LOG_FILE,
        'formatter': 'plain',
    }
    for logger in LOGGING['loggers'].values():
        logger['handlers'].append('file')

# Defaults for every experiment; a config file or --set overrides them.
PMTO_SETTINGS = {
    'N_INIT': 200,
    'N_TOT': 2000,
    'INITIAL_TASKS': 20,
    'BETA': 1.0,
    'TOP_P': 70,
    'TRIALS': 20,
    'SEED': 0,
    'GP_EPOCHS_INITIAL': 500,
    'GP_EPOCHS_WARM': 100,
    'GP_LEARNING_RATE': 0.01,
    'EA_POPULATION': 100,
    'EA_GENERATIONS': 50,
    'SBX_ETA': 15.0,
    'SBX_PROB': 0.9,
    'PM_ETA': 20.0,
    'PM_PROB': 0.9,
    'ACQ_CANDIDATES': 1024,
    'ACQ_REFINE_STEPS': 16,
    'EVAL_GRID_SIZES': {2: 100 ** 2, 5: 10 ** 5},
    'EVAL_GRID_DEFAULT': 10 ** 4,
    'EVAL_GRID_SEED': 12345,
    'MINIMAX_BUDGET': 2000,
    'MINIMAX_SPLIT': 0.7,
    'ROBUSTNESS_ERRORS': 800,
}
