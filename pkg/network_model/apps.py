"""
Конфигурация приложения network_model.
"""
from django.apps import AppConfig


class NetworkModelConfig(AppConfig):
    """
    Конфигурация приложения network_model.
    """
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'network_model'
    verbose_name = '🔀 ОПТИЧЕСКИЕ СХЕМЫ'
