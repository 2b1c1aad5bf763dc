"""
Конфигурация приложения fock_oracle.
"""
from django.apps import AppConfig


class FockOracleConfig(AppConfig):
    """
    Конфигурация приложения fock_oracle.
    """
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'fock_oracle'
    verbose_name = '🔬 ФОКОВСКИЙ ОРАКУЛ'
