from django.apps import AppConfig


class PosetsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "posets"
    verbose_name = "Finite posets and the C-construction"
