"""
Django settings for the finspace project.

There is no web surface: the project exists to host the ``posets`` app, its
management commands and its test suite.
"""

from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# Never served; the key only satisfies Django's startup checks.
SECRET_KEY = "django-insecure-finspace-local-only"

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "rest_framework",
    "posets",
]


# Database
# Only the test runner touches it; all computations are in memory.

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# Logging

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
        },
    },
    "loggers": {
        "posets": {
            "handlers": ["console"],
            "level": "WARNING",
            "propagate": False,
        },
    },
}


# Finite-space engine

FINSPACE = {
    "DEFAULT_SEED": 20190715,
    "RANDOM_SUITE_SIZE": 500,
    "RANDOM_MAX_SIZE": 8,
    "FPP_N_JOBS": 1,
    "MAX_MAXIMAL_ELEMENTS": 20,
    "CRITERION_DEPTH": 1,
}
