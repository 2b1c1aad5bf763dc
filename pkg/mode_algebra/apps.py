"""
Конфигурация приложения mode_algebra.
"""
from django.apps import AppConfig


class ModeAlgebraConfig(AppConfig):
    """
    Конфигурация приложения mode_algebra.
    """
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'mode_algebra'
    verbose_name = '🧮 АЛГЕБРА МОД'
