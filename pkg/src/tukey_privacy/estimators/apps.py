from django.apps import AppConfig


class EstimatorsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "tukey_privacy.estimators"
    verbose_name = "Private Estimators"
