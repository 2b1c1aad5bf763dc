"""
Приложение state_engine - состояния мод источников и точные средние
нормально упорядоченных полиномов.
"""
