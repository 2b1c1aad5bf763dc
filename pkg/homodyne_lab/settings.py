import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent

# Ключ нужен Django даже без веб-части
SECRET_KEY = os.environ.get('SECRET_KEY', 'dev-key-change-in-production')

DEBUG = os.environ.get('DEBUG', 'false').lower() == 'true'

ALLOWED_HOSTS = []

# Приложения проекта
INSTALLED_APPS = [
    'core',
    'mode_algebra',
    'network_model',
    'state_engine',
    'homodyne_schemes',
    'noise_spectra',
    'fock_oracle',
]

# База данных не используется: все вычисления в памяти
DATABASES = {}

# Локализация
LANGUAGE_CODE = 'ru-ru'
TIME_ZONE = 'Europe/Moscow'
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Директория для логов
LOG_DIR = Path(os.environ.get('LOG_DIR', BASE_DIR / 'logs'))
LOG_LEVEL = os.environ.get('LOG_LEVEL', 'WARNING').upper()

# Настройки логирования
from core.logging_config import LOGGING_DICT
LOGGING = LOGGING_DICT

# Численные допуски и ограничения расчетов
HOMODYNE = {
    'CANONICAL_ZERO_THRESHOLD': 1e-13,
    'UNITARITY_TOLERANCE': 1e-12,
    'ZERO_MEAN_TOLERANCE': 1e-12,
    'IMAGINARY_TOLERANCE': 1e-12,
    'RELATION_TOLERANCE': 1e-10,
    'HEISENBERG_TOLERANCE': 1e-12,
    'FOCK_DIMENSION_CEILING': int(os.environ.get('FOCK_DIMENSION_CEILING', 1_000_000)),
    'FOCK_TAIL_TOLERANCE': float(os.environ.get('FOCK_TAIL_TOLERANCE', 1e-12)),
    'MC_BATCH_SIZE': int(os.environ.get('MC_BATCH_SIZE', 100_000)),
    'SWEEP_WORKERS': int(os.environ.get('SWEEP_WORKERS', 1)),
}
