"""
Приложение noise_spectra - спектральные плотности шума, пересчет к
сигналу и моделирование счета фотонов.
"""
