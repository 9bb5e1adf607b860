# Testy dla komponentów Celery
