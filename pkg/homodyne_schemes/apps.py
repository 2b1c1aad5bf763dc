"""
Конфигурация приложения homodyne_schemes.
"""
from django.apps import AppConfig


class HomodyneSchemesConfig(AppConfig):
    """
    Конфигурация приложения homodyne_schemes.
    """
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'homodyne_schemes'
    verbose_name = '📡 ГОМОДИННЫЕ СХЕМЫ'
