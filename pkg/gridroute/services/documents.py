"""
Circuit documents

Reading and writing the JSON interchange format. The schema itself lives in
gridroute.serializers; this module turns bytes into circuits and back and
reports malformed input as DocumentError with a field-path detail mapping.
"""

import io
import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Union

from django.conf import settings
from rest_framework.exceptions import ParseError
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from .circuit_ir import SINGLE_QUBIT_GATES, AdaptiveCircuit, CircuitError, GateSpec
from .teleport_route import InteractionItem, InteractionSpec, ReorderSpec, RoutingError

logger = logging.getLogger(__name__)

Raw = Union[bytes, str]


class DocumentError(Exception):
    """
    Raised for documents that cannot be read.

    `detail` maps field paths to error messages, nested the way the
    document is (lists are indexed by position).
    """

    def __init__(self, message: str, detail: Any = None):
        super().__init__(message)
        self.detail = detail if detail is not None else {}


def _load_json(raw: Raw) -> Any:
    if isinstance(raw, str):
        raw = raw.encode("utf-8")
    try:
        return JSONParser().parse(io.BytesIO(raw))
    except ParseError as e:
        raise DocumentError(f"malformed JSON: {e.detail}") from e


def _validated(serializer_class, data: Any, what: str):
    serializer = serializer_class(data=data)
    if not serializer.is_valid():
        logger.debug("rejected %s: %s", what, serializer.errors)
        raise DocumentError(f"invalid {what}: {_first_error(serializer.errors)}", detail=serializer.errors)
    return serializer.validated_data


def _first_error(errors: Any, path: str = "") -> str:
    if isinstance(errors, Mapping):
        for key, value in errors.items():
            return _first_error(value, f"{path}.{key}" if path else str(key))
    if isinstance(errors, list):
        for i, value in enumerate(errors):
            if isinstance(value, (Mapping, list)):
                if value:
                    return _first_error(value, f"{path}[{i}]")
            else:
                return f"{path}: {value}" if path else str(value)
    return f"{path}: {errors}" if path else str(errors)


def document_data(circuit: AdaptiveCircuit) -> Dict[str, Any]:
    """The document as plain JSON data (format_version first)."""
    from ..serializers import CircuitDocumentSerializer

    return CircuitDocumentSerializer(circuit).data


def serialize(circuit: AdaptiveCircuit) -> bytes:
    """Canonical document bytes; equal circuits give identical output."""
    return JSONRenderer().render(document_data(circuit), renderer_context={"indent": 2})


def parse(raw: Raw) -> AdaptiveCircuit:
    """
    Read a circuit document.

    Raises:
        DocumentError: On malformed JSON, an unsupported format version,
            schema errors or a condition on a measurement not yet taken.
    """
    from ..serializers import CircuitDocumentSerializer

    return _validated(CircuitDocumentSerializer, _load_json(raw), "circuit document")


def parse_data(data: Mapping[str, Any]) -> AdaptiveCircuit:
    """Like parse, for a document already decoded from JSON."""
    from ..serializers import CircuitDocumentSerializer

    return _validated(CircuitDocumentSerializer, data, "circuit document")


def parse_reorder_spec(raw: Raw) -> ReorderSpec:
    from ..serializers import ReorderSpecSerializer

    data = _validated(ReorderSpecSerializer, _load_json(raw), "reorder spec")
    try:
        return ReorderSpec(n=data["n"], moves={m["row"]: m["column"] for m in data["moves"]})
    except RoutingError as e:
        raise DocumentError(f"invalid reorder spec: {e}", detail={"moves": [str(e)]}) from e


def parse_interaction_spec(raw: Raw) -> InteractionSpec:
    from ..serializers import InteractionSpecSerializer

    data = _validated(InteractionSpecSerializer, _load_json(raw), "interaction spec")
    items = [
        InteractionItem(qubits=o.qubits, gate=o.gate, condition=o.condition, measurement_id=o.measurement_id)
        for o in data["items"]
    ]
    if any(not isinstance(q, int) for item in items for q in item.qubits):
        raise DocumentError("interaction items address data qubits by index", detail={"items": ["Expected integer qubits."]})
    try:
        return InteractionSpec(n=data["n"], items=tuple(items))
    except RoutingError as e:
        raise DocumentError(f"invalid interaction spec: {e}", detail={"items": [str(e)]}) from e


def output_path(path: Union[str, Path]) -> Path:
    """Relative paths resolve against GRIDROUTE_OUTPUT_DIR."""
    path = Path(path)
    if path.is_absolute():
        return path
    return Path(getattr(settings, "GRIDROUTE_OUTPUT_DIR", ".")) / path


def _read(path: Union[str, Path]) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from e


def load(path: Union[str, Path]) -> AdaptiveCircuit:
    return parse(_read(path))


def load_reorder_spec(path: Union[str, Path]) -> ReorderSpec:
    return parse_reorder_spec(_read(path))


def load_interaction_spec(path: Union[str, Path]) -> InteractionSpec:
    return parse_interaction_spec(_read(path))


def dump(circuit: AdaptiveCircuit, path: Union[str, Path]) -> Path:
    target = output_path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(serialize(circuit))
    except OSError as e:
        raise DocumentError(f"cannot write {target}: {e.strerror}") from e
    logger.info("wrote %s", target)
    return target


def check_round_trip(circuit: AdaptiveCircuit) -> None:
    """Raise DocumentError if the circuit does not survive serialization."""
    try:
        again = parse(serialize(circuit))
    except CircuitError as e:
        raise DocumentError(str(e)) from e
    if again != circuit:
        raise DocumentError("circuit changed across serialization")


def parse_gate(text: str) -> GateSpec:
    """
    A controlled payload given on the command line.

    Either a single-qubit gate name ("X", "H", ...) or a JSON 2x2 matrix as
    four [re, im] pairs in row-major order, e.g. '[[0,0],[1,0],[1,0],[0,0]]'.

    Raises:
        DocumentError: If the name is unknown or the matrix is malformed or
            not unitary.
    """
    name = text.strip()
    if name.upper() in SINGLE_QUBIT_GATES:
        return GateSpec.named(name.upper())
    data = _load_json(name)
    if (
        not isinstance(data, list)
        or len(data) != 4
        or any(not isinstance(v, list) or len(v) != 2 for v in data)
    ):
        raise DocumentError(f"gate must be one of {', '.join(SINGLE_QUBIT_GATES)} or four [re, im] pairs")
    try:
        return GateSpec.cu(tuple(complex(float(re), float(im)) for re, im in data))
    except (TypeError, ValueError, CircuitError) as e:
        raise DocumentError(f"invalid gate matrix: {e}") from e
