from django.db import models


class CompiledCircuit(models.Model):
    """
    A generated circuit stored as its JSON document.
    The metric columns are copied from the cost report at save time.
    """

    KIND_CHOICES = [
        ("control", "Controlled-U"),
        ("fanout", "Fanout"),
        ("reorder", "Reorder"),
        ("interact", "Interaction round"),
        ("ccac", "Compiled CCAC circuit"),
        ("other", "Other"),
    ]
    MODEL_CHOICES = [
        ("NANTC", "NANTC"),
        ("CCAC", "CCAC"),
        ("CCNTC", "CCNTC"),
    ]

    name = models.CharField(max_length=200, help_text="Label given when the circuit was saved")
    kind = models.CharField(
        max_length=20, choices=KIND_CHOICES, default="other", db_index=True
    )
    model = models.CharField(max_length=10, choices=MODEL_CHOICES, db_index=True)
    dim = models.PositiveSmallIntegerField(help_text="Grid dimension")
    side = models.PositiveIntegerField(
        null=True, blank=True, help_text="Grid side (m for control/fanout, n for routing)"
    )
    depth = models.PositiveIntegerField(help_text="Physical timesteps after expansion")
    size = models.PositiveIntegerField(help_text="Physical operations after expansion")
    width = models.PositiveIntegerField()
    document = models.JSONField(help_text="Complete circuit document")
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["-created_at"]
        verbose_name = "Compiled Circuit"
        verbose_name_plural = "Compiled Circuits"
        indexes = [
            models.Index(fields=["-created_at"], name="circuit_created_idx"),
            models.Index(fields=["kind", "-created_at"], name="circuit_kind_created_idx"),
        ]

    @classmethod
    def from_circuit(cls, circuit, name: str = "") -> "CompiledCircuit":
        """Store a generated circuit with its metrics; the name defaults to its kind."""
        from .services.circuit_ir import cost_report
        from .services.documents import document_data

        meta = circuit.meta
        kind = meta.get("kind", "other")
        if kind not in dict(cls.KIND_CHOICES):
            kind = "other"
        report = cost_report(circuit)
        return cls.objects.create(
            name=name or f"{kind} {meta.get('m', meta.get('n', ''))}".strip(),
            kind=kind,
            model=circuit.model,
            dim=circuit.dim,
            side=meta.get("m", meta.get("n")),
            depth=report.depth,
            size=report.size,
            width=report.width,
            document=document_data(circuit),
        )

    def __str__(self):
        return f"{self.name} ({self.kind}, {self.model}, depth {self.depth})"
