"""Настройка Django перед сбором тестов приложений (tests.py)."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'homodyne_lab.settings')
django.setup()
