"""
Приложение fock_oracle - независимая проверка в усеченном фоковском
пространстве.
"""
