import xml.etree.ElementTree as ET

from django.test import SimpleTestCase

from gridroute.services.circuit_ir import CCNTC, AdaptiveCircuit
from gridroute.services.render import RenderError, RenderSpec, render
from gridroute.services.ring_compactor import control_circuit
from gridroute.services.teleport_route import ReorderSpec, reorder

SVG = "{http://www.w3.org/2000/svg}"


def parse_svg(raw):
    return ET.fromstring(raw.decode("utf-8"))


def with_class(root, tag, prefix):
    return [e for e in root.iter(SVG + tag) if e.get("class", "").startswith(prefix)]


class RenderTests(SimpleTestCase):
    def test_empty_grid(self):
        root = parse_svg(render(AdaptiveCircuit(model=CCNTC, dim=2, shape=(3, 3))))
        self.assertEqual(len(with_class(root, "g", "panel")), 1)
        qubits = with_class(root, "circle", "qubit")
        self.assertEqual(len(qubits), 9)
        self.assertTrue(all(q.get("class") == "qubit unused" for q in qubits))
        self.assertEqual(list(root.iter(SVG + "line")), [])

    def test_reorder_arrows(self):
        circuit = reorder(ReorderSpec(n=8, moves={6: 7, 7: 6}))
        root = parse_svg(render(circuit))
        self.assertEqual(len(with_class(root, "line", "chain")), 4)
        self.assertEqual(len(with_class(root, "line", "swap")), 2)
        self.assertEqual(len(with_class(root, "circle", "qubit data")), 8)
        self.assertEqual(len(with_class(root, "circle", "qubit")), 64)

    def test_panels(self):
        circuit = reorder(ReorderSpec(n=8, moves={6: 7, 7: 6}))
        root = parse_svg(render(circuit, RenderSpec(panel_size=8)))
        panels = with_class(root, "g", "panel")
        self.assertEqual(len(panels), 2)
        self.assertEqual(panels[1].get("transform"), f"translate({int(root.get('width')) // 2},0)")

    def test_window(self):
        circuit = reorder(ReorderSpec(n=8, moves={6: 7, 7: 6}))
        root = parse_svg(render(circuit, RenderSpec(start=0, stop=1)))
        self.assertEqual(len(with_class(root, "g", "panel")), 1)
        self.assertFalse(with_class(root, "line", "chain"))

    def test_rejects_three_dimensions(self):
        with self.assertRaises(RenderError):
            render(control_circuit(3, dim=3))

    def test_rejects_reversed_range(self):
        with self.assertRaises(RenderError):
            render(control_circuit(3), RenderSpec(start=5, stop=2))

    def test_rejects_range_past_the_end(self):
        circuit = control_circuit(3)
        with self.assertRaises(RenderError):
            render(circuit, RenderSpec(stop=len(circuit.timesteps) + 1))
