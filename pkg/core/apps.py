"""
Конфигурация приложения core.
"""
import logging

from django.apps import AppConfig
from django.conf import settings

logger = logging.getLogger(__name__)


class CoreConfig(AppConfig):
    """
    Конфигурация приложения core.
    """
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'core'
    verbose_name = '⚙️ ОБЩИЕ НАСТРОЙКИ'

    def ready(self):
        """
        Инициализация приложения.
        """
        self.check_numeric_settings()

    def check_numeric_settings(self):
        """
        Предупреждает о неизвестных ключах в settings.HOMODYNE.
        """
        from core.conf import DEFAULTS

        unknown = set(getattr(settings, 'HOMODYNE', {})) - set(DEFAULTS)
        for name in sorted(unknown):
            logger.warning(f"Неизвестная настройка HOMODYNE['{name}'] будет проигнорирована")
