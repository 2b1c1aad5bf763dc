"""
Приложение homodyne_schemes - схемы гомодинного детектирования и
классическая обработка отсчетов детекторов.
"""
