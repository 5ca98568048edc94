from django.apps import AppConfig


class GridrouteConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'gridroute'
    verbose_name = 'Grid routing'
