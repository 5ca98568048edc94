from django.test import SimpleTestCase

from gridroute.services.circuit_ir import FANOUT, LOGICAL, MCX, NANTC, SWAP, GateSpec, Timestep, cost_report, timestep_layers, validate
from gridroute.services.grid_geom import control_layout, is_adjacent
from gridroute.services.ring_compactor import (
    STAGE_DEPTH,
    CompactionError,
    compaction_plan,
    control_circuit,
    control_circuit_kd,
    control_clockwise,
    fanout_circuit,
    rotate,
)
from gridroute.services.verification import verify


class BuildingBlockTests(SimpleTestCase):
    def test_control_clockwise_range(self):
        with self.assertRaises(CompactionError):
            control_clockwise(0, 5)
        with self.assertRaises(CompactionError):
            control_clockwise(2, 5)

    def test_control_clockwise_fills_the_even_positions(self):
        ts = control_clockwise(1, 7)
        targets = {o.qubits[-1] for o in ts.ops}
        self.assertEqual(len(targets), 8)
        for o in ts.ops:
            self.assertEqual(o.gate.name, MCX)
            for c in o.qubits[:-1]:
                self.assertTrue(is_adjacent(c, o.qubits[-1]))

    def test_rotate_pairs_neighbours(self):
        ts = rotate(0, 5)
        self.assertEqual(len(ts.ops), 8)
        for o in ts.ops:
            self.assertTrue(is_adjacent(*o.qubits))

    def test_centre_cannot_rotate(self):
        with self.assertRaises(CompactionError):
            rotate(2, 5)

    def test_uncompute_mirrors_compute(self):
        plan = compaction_plan(5)
        self.assertEqual(plan.uncompute_suffix, plan.compute[::-1])


class ControlCircuitTests(SimpleTestCase):
    def test_side_must_be_odd(self):
        with self.assertRaises(CompactionError):
            control_circuit(4)

    def test_payload_must_be_single_qubit(self):
        with self.assertRaises(CompactionError):
            control_circuit(3, gate=GateSpec.named("SWAP"))

    def test_costs(self):
        expected = {3: (49, 49), 5: (89, 129), 7: (129, 369)}
        for m, (depth, size) in expected.items():
            report = cost_report(control_circuit(m))
            self.assertEqual((report.depth, report.size), (depth, size), m)

    def test_every_stage_runs_on_the_same_clock(self):
        for m in (3, 5, 7, 9):
            plan = compaction_plan(m)
            for stage in plan.stages:
                self.assertEqual(sum(len(timestep_layers(ts)) for ts in stage), STAGE_DEPTH, m)
            self.assertEqual(cost_report(control_circuit(m)).depth, STAGE_DEPTH * (m - 1) + 9)

    def test_depth_is_affine_from_the_smallest_grid(self):
        depths = [cost_report(control_circuit(m)).depth for m in range(3, 18, 2)]
        steps = {b - a for a, b in zip(depths, depths[1:])}
        self.assertEqual(steps, {2 * STAGE_DEPTH})
        per_m = [d / m for d, m in zip(depths, range(3, 18, 2))]
        self.assertLessEqual(max(per_m) / min(per_m), 2)

    def test_circuits_are_valid(self):
        for m in (3, 5, 7, 9):
            circuit = control_circuit(m)
            self.assertEqual(circuit.model, NANTC)
            self.assertEqual(validate(circuit), [])
            self.assertTrue(all(ts.kind == LOGICAL for ts in circuit.timesteps))

    def test_inputs_are_controls_then_target(self):
        circuit = control_circuit(5)
        layout = control_layout(5)
        self.assertEqual(circuit.inputs, tuple(layout.ordered_controls()) + (layout.target,))

    def test_and_is_computed(self):
        for m in (3, 5):
            report = verify(control_circuit(m))
            self.assertTrue(report.passed, report.to_text())
        self.assertEqual(report.checked, 2**9)

    def test_other_payloads(self):
        for name in ("H", "T", "Z"):
            report = verify(control_circuit(3, gate=GateSpec.named(name)))
            self.assertTrue(report.passed, report.to_text())
            self.assertEqual(report.checked, 16)

    def test_dense_check_agrees(self):
        report = verify(control_circuit(3, gate=GateSpec.named("H")), "dense")
        self.assertTrue(report.passed, report.to_text())

    def test_dropping_a_toffoli_is_caught(self):
        circuit = control_circuit(3)
        first = circuit.timesteps[0]
        broken = circuit.with_timesteps((Timestep(ops=first.ops[1:], kind=first.kind),) + circuit.timesteps[1:])
        report = verify(broken)
        self.assertFalse(report.passed)
        self.assertGreater(report.failure_count, 0)


class HigherDimensionTests(SimpleTestCase):
    def test_three_dimensions(self):
        circuit = control_circuit(3, 3)
        self.assertEqual(circuit.dim, 3)
        self.assertEqual(validate(circuit), [])
        report = verify(circuit)
        self.assertTrue(report.passed, report.to_text())

    def test_kd_needs_three_dimensions(self):
        with self.assertRaises(CompactionError):
            control_circuit_kd(3, 2)


class FanoutCircuitTests(SimpleTestCase):
    def test_copies_reach_every_control(self):
        for m in (3, 5):
            circuit = fanout_circuit(m)
            self.assertEqual(validate(circuit), [])
            report = verify(circuit)
            self.assertTrue(report.passed, report.to_text())

    def test_meta(self):
        circuit = fanout_circuit(5)
        self.assertEqual(circuit.meta, {"kind": "fanout", "m": 5, "dim": 2})

    def test_spread_pass_mirrors_the_control_ops(self):
        for m in (3, 5, 7):
            control, fanout = control_circuit(m), fanout_circuit(m)
            spread = fanout.timesteps[: len(control.timesteps)]
            for forward, backward in zip(reversed(control.timesteps), spread):
                ands = sorted(o.gate.arity for o in forward.ops if o.gate.name != SWAP)
                copies = sorted(o.gate.arity for o in backward.ops if o.gate.name != SWAP)
                self.assertEqual(ands, copies)
                self.assertTrue(all(o.gate.name in (FANOUT, SWAP) for o in backward.ops))
            # a fanout is one CNOT per target, an AND needs a routed Gray-code walk
            self.assertLess(cost_report(fanout).size, cost_report(control).size)
