"""
Конфигурация приложения state_engine.
"""
from django.apps import AppConfig


class StateEngineConfig(AppConfig):
    """
    Конфигурация приложения state_engine.
    """
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'state_engine'
    verbose_name = '🌊 КВАНТОВЫЕ СОСТОЯНИЯ'
