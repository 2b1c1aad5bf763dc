"""
Конфигурация приложения noise_spectra.
"""
from django.apps import AppConfig


class NoiseSpectraConfig(AppConfig):
    """
    Конфигурация приложения noise_spectra.
    """
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'noise_spectra'
    verbose_name = '📈 СПЕКТРЫ ШУМА'
