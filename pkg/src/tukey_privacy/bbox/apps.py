from django.apps import AppConfig


class BboxConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "tukey_privacy.bbox"
    verbose_name = "Bounding Boxes"
