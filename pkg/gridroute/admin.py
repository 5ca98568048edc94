from django.contrib import admin

from .models import CompiledCircuit


@admin.register(CompiledCircuit)
class CompiledCircuitAdmin(admin.ModelAdmin):
    """Admin interface for stored circuits."""

    list_display = [
        "name",
        "kind",
        "model",
        "dim",
        "side",
        "depth",
        "size",
        "width",
        "created_at",
    ]
    list_filter = ["kind", "model", "dim"]
    search_fields = ["name"]
    readonly_fields = ["depth", "size", "width", "created_at"]
    ordering = ["-created_at"]
    date_hierarchy = "created_at"

    fieldsets = (
        (
            "Identification",
            {
                "fields": ("name", "kind", "model"),
            },
        ),
        (
            "Grid",
            {
                "fields": ("dim", "side"),
            },
        ),
        (
            "Cost",
            {
                "fields": ("depth", "size", "width", "created_at"),
            },
        ),
        (
            "Document",
            {
                "fields": ("document",),
                "classes": ("collapse",),
            },
        ),
    )

    def has_add_permission(self, request):
        """Circuits are stored by the compile commands (--save) only."""
        return False
