from django.urls import include, path
from rest_framework.routers import DefaultRouter

from .views import CompiledCircuitViewSet, HealthCheckView, ProjectMetadataView

router = DefaultRouter()
router.register(r"circuits", CompiledCircuitViewSet, basename="compiled-circuit")

urlpatterns = [
    path("health/", HealthCheckView.as_view(), name="health-check"),
    path("meta/", ProjectMetadataView.as_view(), name="project-metadata"),
    path("api/", include(router.urls)),
]
