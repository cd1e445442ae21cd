from django.apps import AppConfig


class KernelsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "tukey_privacy.kernels"
    verbose_name = "Private Kernels"
