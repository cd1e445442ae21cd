from django.apps import AppConfig


class KappaConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "tukey_privacy.kappa"
    verbose_name = "Depth Selection"
