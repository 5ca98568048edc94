import logging

from django.conf import settings
from django.http import HttpResponse
from django.utils import timezone
from rest_framework import status, viewsets
from rest_framework.decorators import action
from rest_framework.response import Response
from rest_framework.views import APIView

from .models import CompiledCircuit
from .serializers import (
    FORMAT_VERSION,
    CompiledCircuitSerializer,
    HealthCheckSerializer,
    ProjectMetadataSerializer,
)
from .services.documents import DocumentError, parse_data
from .services.render import RenderError, RenderSpec, render

logger = logging.getLogger(__name__)


class HealthCheckView(APIView):
    """Lightweight endpoint to confirm the API is running."""

    authentication_classes: list = []
    permission_classes: list = []

    def get(self, request):
        serializer = HealthCheckSerializer(
            {"status": "ok", "timestamp": timezone.now()}
        )
        return Response(serializer.data)


class ProjectMetadataView(APIView):
    """Expose basic project metadata for client bootstrapping."""

    authentication_classes: list = []
    permission_classes: list = []

    def get(self, request):
        serializer = ProjectMetadataSerializer(
            {
                "name": "Gridroute",
                "version": "0.1.0",
                "format_version": FORMAT_VERSION,
                "debug": settings.DEBUG,
            }
        )
        return Response(serializer.data)


class CompiledCircuitViewSet(viewsets.ReadOnlyModelViewSet):
    """
    API endpoint to browse stored circuits.

    Provides list and detail views (read-only).
    Filter with ?kind=reorder, ?model=NANTC or ?dim=3.
    """

    queryset = CompiledCircuit.objects.all()
    serializer_class = CompiledCircuitSerializer
    filterset_fields = ["kind", "model", "dim"]
    ordering_fields = ["created_at", "depth", "size"]
    ordering = ["-created_at"]

    @action(detail=True, methods=["get"], url_path="render", url_name="render")
    def render_svg(self, request, pk=None):
        """SVG diagram of a 2D circuit; ?start=, ?stop= and ?panel_size= pick timesteps."""
        stored = self.get_object()
        try:
            spec = RenderSpec(
                start=int(request.query_params.get("start", 0)),
                stop=_optional_int(request.query_params.get("stop")),
                panel_size=_optional_int(request.query_params.get("panel_size")),
            )
            svg = render(parse_data(stored.document), spec)
        except ValueError:
            return Response(
                {"error": "start, stop and panel_size must be integers"},
                status=status.HTTP_400_BAD_REQUEST,
            )
        except (DocumentError, RenderError) as e:
            logger.warning("cannot render circuit %s: %s", stored.pk, e)
            return Response({"error": str(e)}, status=status.HTTP_400_BAD_REQUEST)
        return HttpResponse(svg, content_type="image/svg+xml")


def _optional_int(value):
    return None if value in (None, "") else int(value)
