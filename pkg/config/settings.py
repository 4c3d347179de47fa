"""
Django settings for the Casimir-Polder dynamics project.
"""

from pathlib import Path

from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only used by Django internals; no sessions or signing happen here.
SECRET_KEY = config("DJANGO_SECRET_KEY", default="django-insecure-casimir-polder-local")

DEBUG = config("DJANGO_DEBUG", default=False, cast=bool)

ALLOWED_HOSTS: list[str] = []

# Application definition
INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.auth",
    # Third-party apps
    "rest_framework",
    # Local apps (Modular Monolith)
    "apps.core",
    "apps.casimir",
    "apps.analytics",
]

# No persistence: every command is a pure computation.
DATABASES: dict = {}

# Internationalization
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Django REST Framework (serializers and JSON rendering only)
REST_FRAMEWORK = {
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "UNICODE_JSON": True,
    "COMPACT_JSON": False,
    "STRICT_JSON": True,
}

# Run defaults for the management commands
CASIMIR = {
    "LIGHTCONE_EPS": config("CASIMIR_LIGHTCONE_EPS", default=1e-3, cast=float),
    "ABS_TOL": config("CASIMIR_ABS_TOL", default=1e-10, cast=float),
    "SWEEP_WORKERS": config("CASIMIR_SWEEP_WORKERS", default=1, cast=int),
    "FIGURES_DIR": config("CASIMIR_FIGURES_DIR", default="figures"),
}

# Logging
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {module} {process:d} {message}",
            "style": "{",
        },
        "simple": {
            "format": "{levelname} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
    "loggers": {
        "django": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": False,
        },
        "apps": {
            "handlers": ["console"],
            "level": "DEBUG" if DEBUG else "INFO",
            "propagate": False,
        },
    },
}
