from django.apps import AppConfig


class PipelineConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "tukey_privacy.pipeline"
    verbose_name = "Private Kernel Pipeline"

    def ready(self):
        # Import generators to trigger registration via @register_generator decorator
        from tukey_privacy.pipeline import generators  # noqa: F401
