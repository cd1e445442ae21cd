from django.apps import AppConfig


class GeometryConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "tukey_privacy.geometry"
    verbose_name = "Exact Geometry"
