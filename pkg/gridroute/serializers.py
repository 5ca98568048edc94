from collections import OrderedDict

from rest_framework import serializers

from .models import CompiledCircuit
from .services.circuit_ir import (
    CCAC,
    CU,
    FANOUT,
    GATE_NAMES,
    GRID_MODELS,
    MCX,
    MEASURE,
    MODELS,
    PAULI,
    TIMESTEP_KINDS,
    AdaptiveCircuit,
    BasicOp,
    CircuitError,
    ClassicalCondition,
    GateSpec,
    Timestep,
    validate,
)

FORMAT_VERSION = "1.0.0"

# Violations that make a document unreadable; locality problems are left to `verify`.
STRUCTURAL_CODES = ("causality", "duplicate-measurement", "adaptive")


class HealthCheckSerializer(serializers.Serializer):
    status = serializers.CharField()
    timestamp = serializers.DateTimeField()


class ProjectMetadataSerializer(serializers.Serializer):
    name = serializers.CharField()
    version = serializers.CharField()
    format_version = serializers.CharField()
    debug = serializers.BooleanField()


class AddressField(serializers.Field):
    """A CCAC qubit index or a grid point given as an array of integers."""

    default_error_messages = {
        "invalid": "Expected a non-negative integer or a non-empty array of non-negative integers.",
    }

    def to_internal_value(self, data):
        if isinstance(data, int) and not isinstance(data, bool) and data >= 0:
            return data
        if (
            isinstance(data, list)
            and data
            and all(isinstance(c, int) and not isinstance(c, bool) and c >= 0 for c in data)
        ):
            return tuple(data)
        self.fail("invalid")

    def to_representation(self, value):
        return list(value) if isinstance(value, tuple) else value


class ConditionSerializer(serializers.Serializer):
    x_parity_of = serializers.ListField(child=serializers.IntegerField(min_value=0), default=list)
    z_parity_of = serializers.ListField(child=serializers.IntegerField(min_value=0), default=list)

    def validate(self, attrs):
        condition = ClassicalCondition(
            x_parity_of=frozenset(attrs["x_parity_of"]),
            z_parity_of=frozenset(attrs["z_parity_of"]),
        )
        if condition.is_empty:
            raise serializers.ValidationError("A condition needs at least one measurement id.")
        return condition

    def to_representation(self, condition):
        return OrderedDict(
            [
                ("x_parity_of", sorted(condition.x_parity_of)),
                ("z_parity_of", sorted(condition.z_parity_of)),
            ]
        )


class OpSerializer(serializers.Serializer):
    """
    One operation: {"gate", "qubits", "matrix"?, "condition"?, "measurement_id"?}.

    Control and target counts of MCX, CU and FANOUT follow from the number of
    qubits; CU carries its matrix as four [re, im] pairs in row-major order.
    """

    gate = serializers.ChoiceField(choices=GATE_NAMES)
    qubits = serializers.ListField(child=AddressField(), min_length=1)
    matrix = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2),
        min_length=4,
        max_length=4,
        required=False,
        allow_null=True,
    )
    condition = ConditionSerializer(required=False, allow_null=True)
    measurement_id = serializers.IntegerField(min_value=0, required=False, allow_null=True)

    def validate(self, attrs):
        name = attrs["gate"]
        qubits = tuple(attrs["qubits"])
        record = {"name": name, "matrix": attrs.get("matrix")}
        if name in (MCX, CU):
            record["controls"] = len(qubits) - 1
        elif name == FANOUT:
            record["targets"] = len(qubits) - 1
        try:
            return BasicOp(
                gate=GateSpec.from_record(record),
                qubits=qubits,
                condition=attrs.get("condition"),
                measurement_id=attrs.get("measurement_id"),
            )
        except CircuitError as e:
            raise serializers.ValidationError(str(e)) from e

    def to_representation(self, operation):
        data = OrderedDict(
            [
                ("gate", operation.gate.name),
                ("qubits", [AddressField().to_representation(q) for q in operation.qubits]),
            ]
        )
        record = operation.gate.to_record()
        if record["matrix"] is not None:
            data["matrix"] = record["matrix"]
        if operation.gate.name == PAULI:
            data["condition"] = ConditionSerializer().to_representation(operation.condition)
        if operation.gate.name == MEASURE:
            data["measurement_id"] = operation.measurement_id
        return data


class TimestepSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=TIMESTEP_KINDS, default="physical")
    ops = OpSerializer(many=True)

    def validate(self, attrs):
        return Timestep(ops=tuple(attrs["ops"]), kind=attrs["kind"])


class CircuitDocumentSerializer(serializers.Serializer):
    """
    The JSON circuit document.

    Output starts with "format_version" followed by the fields in declaration
    order, so equal circuits serialize to identical bytes.
    """

    format_version = serializers.CharField(write_only=True)
    model = serializers.ChoiceField(choices=MODELS)
    dim = serializers.IntegerField(min_value=1)
    shape = serializers.ListField(child=serializers.IntegerField(min_value=1), default=list)
    inputs = serializers.ListField(child=AddressField(), default=list)
    meta = serializers.JSONField(default=dict)
    timesteps = TimestepSerializer(many=True)

    def validate_format_version(self, value):
        major = str(value).split(".")[0]
        if major != FORMAT_VERSION.split(".")[0]:
            raise serializers.ValidationError(
                f"Unsupported format version {value}; this reader understands {FORMAT_VERSION}."
            )
        return value

    def validate_meta(self, value):
        if not isinstance(value, dict):
            raise serializers.ValidationError("Expected a JSON object.")
        return value

    def validate(self, attrs):
        model, dim = attrs["model"], attrs["dim"]
        shape = tuple(attrs["shape"])
        if model in GRID_MODELS and shape and len(shape) != dim:
            raise serializers.ValidationError({"shape": [f"Expected {dim} extents, got {len(shape)}."]})
        if model == CCAC and shape:
            raise serializers.ValidationError({"shape": ["CCAC circuits have no grid shape."]})
        try:
            circuit = AdaptiveCircuit(
                model=model,
                dim=dim,
                timesteps=tuple(attrs["timesteps"]),
                inputs=tuple(attrs["inputs"]),
                shape=shape,
                meta=attrs["meta"],
            )
        except CircuitError as e:
            raise serializers.ValidationError(str(e)) from e

        problems = [v for v in validate(circuit) if v.code in STRUCTURAL_CODES]
        if problems:
            raise serializers.ValidationError({"timesteps": [str(v) for v in problems]})
        return circuit

    def to_representation(self, instance):
        data = super().to_representation(instance)
        return OrderedDict([("format_version", FORMAT_VERSION)] + list(data.items()))


class MoveSerializer(serializers.Serializer):
    row = serializers.IntegerField(min_value=0)
    column = serializers.IntegerField(min_value=0)


class ReorderSpecSerializer(serializers.Serializer):
    """{"n": 8, "moves": [{"row": 6, "column": 7}, ...]}"""

    n = serializers.IntegerField(min_value=1)
    moves = MoveSerializer(many=True, default=list)

    def validate_moves(self, value):
        rows = [m["row"] for m in value]
        if len(set(rows)) != len(rows):
            raise serializers.ValidationError("Each row may move at most once.")
        return value


class InteractionSpecSerializer(serializers.Serializer):
    """{"n": 4, "items": [op, ...]} with integer qubit indices."""

    n = serializers.IntegerField(min_value=1)
    items = OpSerializer(many=True, default=list)


class CompiledCircuitSerializer(serializers.ModelSerializer):
    """Serializer for stored circuits."""

    class Meta:
        model = CompiledCircuit
        fields = [
            "id",
            "name",
            "kind",
            "model",
            "dim",
            "side",
            "depth",
            "size",
            "width",
            "document",
            "created_at",
        ]
        read_only_fields = fields
