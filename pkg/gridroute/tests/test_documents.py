import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase, override_settings

from gridroute.services.circuit_ir import CCNTC, CU, AdaptiveCircuit, GateSpec
from gridroute.services.documents import (
    DocumentError,
    check_round_trip,
    dump,
    load,
    parse,
    parse_gate,
    parse_interaction_spec,
    parse_reorder_spec,
    serialize,
)
from gridroute.services.ring_compactor import control_circuit
from gridroute.services.teleport_route import InteractionItem, InteractionSpec, ReorderSpec, interact, reorder


def document(**overrides):
    data = {"format_version": "1.0.0", "model": "CCAC", "dim": 1, "timesteps": []}
    data.update(overrides)
    return json.dumps(data)


class RoundTripTests(SimpleTestCase):
    def test_generated_circuits_survive(self):
        circuits = [
            control_circuit(3),
            control_circuit(3, gate=GateSpec.named("T")),
            reorder(ReorderSpec(n=4, moves={2: 3, 3: 1})),
            interact(
                InteractionSpec(
                    n=3,
                    items=(InteractionItem(qubits=(0, 2), gate=GateSpec.named("CNOT")),),
                )
            ),
            AdaptiveCircuit(model=CCNTC, dim=2, shape=(3, 3)),
        ]
        for circuit in circuits:
            self.assertEqual(parse(serialize(circuit)), circuit)
            check_round_trip(circuit)

    def test_output_is_canonical(self):
        raw = serialize(control_circuit(3))
        self.assertTrue(raw.startswith(b'{\n  "format_version": "1.0.0"'))
        self.assertEqual(raw, serialize(parse(raw)))

    def test_cu_matrix_is_written_as_pairs(self):
        data = json.loads(serialize(control_circuit(3, gate=GateSpec.named("H"))))
        cu = [o for ts in data["timesteps"] for o in ts["ops"] if o["gate"] == CU]
        self.assertEqual(len(cu), 1)
        self.assertEqual(len(cu[0]["matrix"]), 4)

    def test_dump_and_load(self):
        with tempfile.TemporaryDirectory() as tmp, override_settings(GRIDROUTE_OUTPUT_DIR=tmp):
            path = dump(control_circuit(3), "nested/control.json")
            self.assertEqual(path, Path(tmp) / "nested" / "control.json")
            self.assertEqual(load(path), control_circuit(3))


class RejectionTests(SimpleTestCase):
    def test_malformed_json(self):
        with self.assertRaisesMessage(DocumentError, "malformed JSON"):
            parse(b"{not json")

    def test_newer_major_version(self):
        with self.assertRaises(DocumentError) as ctx:
            parse(document(format_version="2.0.0"))
        self.assertIn("format_version", ctx.exception.detail)

    def test_missing_timesteps(self):
        with self.assertRaises(DocumentError) as ctx:
            parse(json.dumps({"format_version": "1.0.0", "model": "CCAC", "dim": 1}))
        self.assertIn("timesteps", ctx.exception.detail)

    def test_unknown_gate_reports_its_path(self):
        raw = document(timesteps=[{"ops": [{"gate": "FOO", "qubits": [0]}]}])
        with self.assertRaisesMessage(DocumentError, "timesteps[0].ops[0].gate"):
            parse(raw)

    def test_condition_on_a_later_measurement(self):
        raw = document(
            timesteps=[
                {"ops": [{"gate": "PAULI", "qubits": [1], "condition": {"x_parity_of": [0]}}]},
                {"ops": [{"gate": "MEASURE", "qubits": [0], "measurement_id": 0}]},
            ]
        )
        with self.assertRaisesMessage(DocumentError, "causality"):
            parse(raw)

    def test_grid_address_in_ccac_is_left_to_validate(self):
        raw = document(timesteps=[{"ops": [{"gate": "H", "qubits": [[0, 0]]}]}])
        self.assertEqual(parse(raw).timesteps[0].ops[0].qubits, ((0, 0),))

    def test_shape_must_match_dim(self):
        with self.assertRaises(DocumentError) as ctx:
            parse(document(model="CCNTC", dim=2, shape=[3]))
        self.assertIn("shape", ctx.exception.detail)

    def test_missing_file(self):
        with self.assertRaisesMessage(DocumentError, "cannot read"):
            load("/nonexistent/circuit.json")


class SpecDocumentTests(SimpleTestCase):
    def test_reorder_spec(self):
        spec = parse_reorder_spec('{"n": 8, "moves": [{"row": 6, "column": 7}, {"row": 7, "column": 6}]}')
        self.assertEqual(spec, ReorderSpec(n=8, moves={6: 7, 7: 6}))

    def test_reorder_spec_rejects_shared_columns(self):
        with self.assertRaises(DocumentError):
            parse_reorder_spec('{"n": 4, "moves": [{"row": 1, "column": 2}, {"row": 3, "column": 2}]}')

    def test_reorder_spec_rejects_repeated_rows(self):
        with self.assertRaises(DocumentError):
            parse_reorder_spec('{"n": 4, "moves": [{"row": 1, "column": 2}, {"row": 1, "column": 3}]}')

    def test_interaction_spec(self):
        spec = parse_interaction_spec(
            '{"n": 3, "items": [{"gate": "H", "qubits": [1]}, {"gate": "CNOT", "qubits": [0, 2]}]}'
        )
        self.assertEqual([item.qubits for item in spec.items], [(1,), (0, 2)])

    def test_interaction_spec_needs_indices(self):
        with self.assertRaises(DocumentError):
            parse_interaction_spec('{"n": 3, "items": [{"gate": "H", "qubits": [[0, 1]]}]}')

    def test_interaction_spec_rejects_late_singletons(self):
        with self.assertRaises(DocumentError):
            parse_interaction_spec(
                '{"n": 3, "items": [{"gate": "CNOT", "qubits": [0, 2]}, {"gate": "H", "qubits": [1]}]}'
            )


class ParseGateTests(SimpleTestCase):
    def test_names(self):
        self.assertEqual(parse_gate("h"), GateSpec.named("H"))
        self.assertEqual(parse_gate(" X "), GateSpec.named("X"))

    def test_matrix(self):
        gate = parse_gate("[[0,0],[1,0],[1,0],[0,0]]")
        self.assertEqual(gate.name, CU)
        self.assertEqual(gate.matrix, (0j, 1 + 0j, 1 + 0j, 0j))

    def test_non_unitary_matrix(self):
        with self.assertRaises(DocumentError):
            parse_gate("[[1,0],[1,0],[0,0],[1,0]]")

    def test_unknown_name(self):
        with self.assertRaises(DocumentError):
            parse_gate("FOO")
