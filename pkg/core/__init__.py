"""
Приложение core - общая инфраструктура проекта.
Содержит исключения, доступ к настройкам, формат файлов конфигурации,
вывод CSV и команды управления.
"""
