import os
from pathlib import Path

import environ

# Initialize environment variables
env = environ.Env(
    DEBUG=(bool, False),
)

BASE_DIR = Path(__file__).resolve().parent.parent

# Take environment variables from .env file
environ.Env.read_env(os.path.join(BASE_DIR, ".env"))

# ========================
# SECURITY CONFIGURATION
# ========================
# Проект не поднимает веб-сервер, ключ нужен только для инициализации Django
SECRET_KEY = env("SECRET_KEY", default="xl-degree-local-only")
DEBUG = env("DEBUG")

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    "apps.xl",
]

# Командам управления база данных не нужна
DATABASES = {}

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True
