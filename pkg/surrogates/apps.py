from django.apps import AppConfig

class SurrogatesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'surrogates'
    verbose_name = 'Gaussian Process Surrogates'
