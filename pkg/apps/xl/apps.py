"""
Конфигурация приложения xl.
"""

from django.apps import AppConfig


class XlConfig(AppConfig):
    name = "apps.xl"
    verbose_name = "XL и обыкновенные мультиномиальные коэффициенты"
