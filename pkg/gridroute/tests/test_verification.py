from django.test import SimpleTestCase, override_settings

from gridroute.services.circuit_ir import NANTC, AdaptiveCircuit
from gridroute.services.ring_compactor import control_circuit, fanout_circuit
from gridroute.services.verification import MAX_LISTED_FAILURES, VerificationError, verify


class VerifyTests(SimpleTestCase):
    def test_control_is_checked_exhaustively(self):
        report = verify(control_circuit(3))
        self.assertTrue(report.passed)
        self.assertEqual(report.simulator, "boolean")
        self.assertEqual(report.checked, 32)
        self.assertTrue(report.to_text().startswith("PASSED: control circuit, boolean simulator, 32 checks"))

    @override_settings(GRIDROUTE_EXHAUSTIVE_LIMIT=2)
    def test_sampling_above_the_exhaustive_limit(self):
        report = verify(control_circuit(3), shots=10, seed=7)
        self.assertTrue(report.passed)
        # the all-ones row is always added
        self.assertEqual(report.checked, 11)

    def test_same_seed_same_report(self):
        with override_settings(GRIDROUTE_EXHAUSTIVE_LIMIT=2):
            first = verify(fanout_circuit(5), shots=8, seed=3).to_dict()
            second = verify(fanout_circuit(5), shots=8, seed=3).to_dict()
        self.assertEqual(first, second)

    def test_broken_circuit_fails(self):
        circuit = control_circuit(3)
        report = verify(circuit.with_timesteps(circuit.timesteps[1:]))
        self.assertFalse(report.passed)
        self.assertGreater(report.failure_count, 0)
        self.assertLessEqual(len(report.failures), MAX_LISTED_FAILURES)
        self.assertTrue(report.to_text().startswith("FAILED"))
        self.assertEqual(report.to_dict()["failure_count"], report.failure_count)

    def test_unsupported_simulator_is_a_failure(self):
        report = verify(control_circuit(3), "stabilizer")
        self.assertFalse(report.passed)
        self.assertIn("cannot check control circuits", report.failures[0])

    def test_violations_fail_the_report(self):
        circuit = control_circuit(3)
        clipped = AdaptiveCircuit(
            model=circuit.model,
            dim=circuit.dim,
            timesteps=circuit.timesteps,
            inputs=circuit.inputs,
            shape=(2, 2),
            meta=circuit.meta,
        )
        report = verify(clipped)
        self.assertTrue(report.violations)
        self.assertFalse(report.passed)

    def test_unknown_generator(self):
        with self.assertRaises(VerificationError):
            verify(AdaptiveCircuit(model=NANTC, dim=2))

    def test_unknown_simulator(self):
        with self.assertRaises(VerificationError):
            verify(control_circuit(3), "tensor")
