#!/usr/bin/env python
"""
Configuration file for pytest.
This file is automatically loaded by pytest before running tests.
"""

import os
import sys
import django
import pytest
from pathlib import Path

# Add the project directory to sys.path
project_dir = Path(__file__).resolve().parent.parent
sys.path.append(str(project_dir))

# Tests log to the console only
os.environ.setdefault("XL_LOG_TO_FILE", "false")

# Set the Django settings module
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings")

# Setup Django
django.setup()

from apps.xl.services.field_service import make_field  # noqa: E402
from apps.xl.services.polynomial_service import plant_solution, random_system  # noqa: E402


@pytest.fixture
def gf13():
    return make_field(13)


@pytest.fixture
def gf3109():
    return make_field(3109)


@pytest.fixture
def planted_gf13(gf13):
    """Засеянная система над GF(13): n=2, c=1, d=3, корень (4, 9)."""
    point = (4, 9)
    system = plant_solution(random_system(2, 1, 3, gf13, seed=7), point)
    return system, point
