"""
Приложение mode_algebra - точная алгебра бозонных операторов
в нормально упорядоченной форме.
"""
