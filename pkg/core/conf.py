"""
Доступ к численным настройкам проекта.
"""
from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

# Значения по умолчанию, если модуль используется без настроек Django
DEFAULTS = {
    'CANONICAL_ZERO_THRESHOLD': 1e-13,
    'UNITARITY_TOLERANCE': 1e-12,
    'ZERO_MEAN_TOLERANCE': 1e-12,
    'IMAGINARY_TOLERANCE': 1e-12,
    'RELATION_TOLERANCE': 1e-10,
    'HEISENBERG_TOLERANCE': 1e-12,
    'FOCK_DIMENSION_CEILING': 1_000_000,
    'FOCK_TAIL_TOLERANCE': 1e-12,
    'MC_BATCH_SIZE': 100_000,
    'SWEEP_WORKERS': 1,
}


def get_setting(name):
    """
    Возвращает значение из settings.HOMODYNE с fallback на DEFAULTS.
    """
    try:
        overrides = getattr(settings, 'HOMODYNE', {})
    except ImproperlyConfigured:
        overrides = {}
    return overrides.get(name, DEFAULTS[name])
