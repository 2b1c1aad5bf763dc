"""
Приложение network_model - топологии интерферометров и разрешение
портов в линейные комбинации мод источников.
"""
