import numpy as np
from django.test import SimpleTestCase, override_settings

from gridroute.services.circuit_ir import (
    CCNTC,
    CNOT,
    CU,
    MEASURE,
    AdaptiveCircuit,
    BasicOp,
    ClassicalCondition,
    GateSpec,
    Timestep,
    controlled,
    mcx,
    op,
)
from gridroute.services.sim_engine import (
    AdaptiveExecutionError,
    BooleanDevice,
    BooleanState,
    DenseDevice,
    DenseState,
    RandomOutcomes,
    ReplayController,
    ScriptedOutcomes,
    SimulationError,
    StabilizerState,
    TeleportController,
    check_density_matrix,
    density_matrix,
    execute_adaptive,
    partial_trace_to,
    run_boolean,
    run_boolean_batch,
    run_dense,
    run_stabilizer,
    trace_distance,
)


def circuit(*timesteps):
    return AdaptiveCircuit(model=CCNTC, dim=2, timesteps=tuple(Timestep(ops=tuple(ops)) for ops in timesteps))


def measure(q, mid):
    return BasicOp(gate=GateSpec.named(MEASURE), qubits=(q,), measurement_id=mid)


TOFFOLI = circuit([mcx([(0, 1), (1, 0)], (1, 1))])


class BooleanTests(SimpleTestCase):
    def test_toffoli_truth_table(self):
        for a in (0, 1):
            for b in (0, 1):
                state = run_boolean(TOFFOLI, BooleanState(bits={(0, 1): a, (1, 0): b}))
                self.assertEqual(state.bits.get((1, 1), 0), a & b)

    def test_batch_matches_single_runs(self):
        rows = np.array([[a, b, t] for a in (0, 1) for b in (0, 1) for t in (0, 1)], dtype=bool)
        batch = run_boolean_batch(TOFFOLI, [(0, 1), (1, 0), (1, 1)], rows)
        np.testing.assert_array_equal(batch.column((1, 1)), rows[:, 2] ^ (rows[:, 0] & rows[:, 1]))

    def test_target_vector_takes_the_payload(self):
        c = circuit([controlled(GateSpec.named("H"), [(0, 1), (1, 0)], (1, 1))])
        fired = run_boolean(
            c, BooleanState(bits={(0, 1): 1, (1, 0): 1}, target=(1, 1), target_vector=[1, 0])
        )
        np.testing.assert_allclose(fired.target_vector, np.array([1, 1]) / np.sqrt(2))
        idle = run_boolean(
            c, BooleanState(bits={(0, 1): 1, (1, 0): 0}, target=(1, 1), target_vector=[1, 0])
        )
        np.testing.assert_allclose(idle.target_vector, [1, 0])

    def test_non_permutation_gate_is_rejected(self):
        with self.assertRaises(SimulationError):
            run_boolean(circuit([op("H", (0, 0))]), BooleanState())
        with self.assertRaises(SimulationError):
            run_boolean_batch(circuit([op("H", (0, 0))]), [], np.zeros((1, 0), dtype=bool))

    def test_measure_and_correct(self):
        c = circuit(
            [op("X", (0, 0))],
            [measure((0, 0), 0)],
            [BasicOp(gate=GateSpec.named("PAULI"), qubits=((0, 1),), condition=ClassicalCondition(x_parity_of=frozenset({0})))],
        )
        device = BooleanDevice(BooleanState())
        record = device.run(c)
        self.assertEqual(record, {0: 1})
        self.assertEqual(device.state.bits[(0, 1)], 1)


class StabilizerTests(SimpleTestCase):
    def bell(self):
        state = StabilizerState([(0, 0), (1, 0)])
        state.h((0, 0))
        state.cnot((0, 0), (1, 0))
        return state

    def test_bell_pair_outcomes_agree(self):
        for outcome in (0, 1):
            state = self.bell()
            self.assertIsNone(state.peek((1, 0)))
            self.assertEqual(state.measure((0, 0), ScriptedOutcomes({0: outcome}), 0), outcome)
            self.assertEqual(state.peek((1, 0)), outcome)

    def test_stabilizers_of_bell_pair(self):
        self.assertEqual(sorted(self.bell().stabilizers()), ["+XX", "+ZZ"])

    def test_deterministic_measurement(self):
        state = StabilizerState([(0, 0)])
        state.pauli((0, 0), 1, 0)
        self.assertEqual(state.measure((0, 0), RandomOutcomes(1)), 1)

    def test_impossible_scripted_outcome(self):
        state = StabilizerState([(0, 0)])
        with self.assertRaises(SimulationError):
            state.measure((0, 0), ScriptedOutcomes({0: 1}), 0)

    def test_s_squared_is_z(self):
        state = StabilizerState([(0, 0)])
        state.h((0, 0))
        state.s((0, 0))
        state.s((0, 0))
        state.h((0, 0))
        self.assertEqual(state.peek((0, 0)), 1)

    def test_non_clifford_gate(self):
        with self.assertRaises(SimulationError):
            run_stabilizer(circuit([op("T", (0, 0))]))

    def test_controlled_z_payload(self):
        cz = BasicOp(gate=GateSpec.cu(GateSpec.named("Z").unitary()), qubits=((0, 0), (1, 0)))
        # H CZ H on the target is a CNOT
        state, _ = run_stabilizer(
            circuit([op("X", (0, 0)), op("H", (1, 0))], [cz], [op("H", (1, 0))])
        )
        self.assertEqual(state.peek((1, 0)), 1)
        self.assertEqual(cz.gate.name, CU)


class DenseTests(SimpleTestCase):
    def test_bell_pair(self):
        state, _ = run_dense(circuit([op("H", (0, 0))], [op(CNOT, (0, 0), (1, 0))]))
        np.testing.assert_allclose(state.vector(), np.array([1, 0, 0, 1]) / np.sqrt(2), atol=1e-12)

    def test_measurement_collapses(self):
        c = circuit([op("H", (0, 0))], [op(CNOT, (0, 0), (1, 0))], [measure((0, 0), 0)])
        state, record = run_dense(c, outcome_source=ScriptedOutcomes({0: 1}))
        self.assertEqual(record, {0: 1})
        np.testing.assert_allclose(np.abs(state.vector()), [0, 0, 0, 1], atol=1e-12)

    def test_reduced_requires_clean_ancillas(self):
        state = DenseState([(0, 0), (1, 0)], np.array([0, 1, 0, 0], dtype=complex))
        np.testing.assert_allclose(state.reduced([(1, 0)]), [0, 1])
        with self.assertRaises(SimulationError):
            state.reduced([(0, 0)])

    def test_unnormalized_input(self):
        with self.assertRaises(SimulationError):
            DenseState([(0, 0)], np.array([1, 1], dtype=complex))

    @override_settings(GRIDROUTE_DENSE_QUBIT_LIMIT=2)
    def test_qubit_limit(self):
        with self.assertRaises(SimulationError):
            run_dense(circuit([op("H", (0, 0)), op("H", (1, 0)), op("H", (2, 0))]))


class DensityMatrixTests(SimpleTestCase):
    def test_trace_distance_of_orthogonal_states(self):
        zero = density_matrix([1, 0])
        one = density_matrix([0, 1])
        self.assertAlmostEqual(trace_distance(zero, one), 1.0)
        self.assertAlmostEqual(trace_distance(zero, zero), 0.0)

    def test_partial_trace_of_bell_pair(self):
        rho = density_matrix(np.array([1, 0, 0, 1]) / np.sqrt(2))
        np.testing.assert_allclose(partial_trace_to(rho, 0), np.eye(2) / 2, atol=1e-12)
        np.testing.assert_allclose(partial_trace_to(rho, 1), np.eye(2) / 2, atol=1e-12)

    def test_partial_trace_keeps_the_right_qubit(self):
        rho = density_matrix(np.kron([0, 1], [1, 0]))
        np.testing.assert_allclose(partial_trace_to(rho, 0), density_matrix([0, 1]))
        np.testing.assert_allclose(partial_trace_to(rho, 1), density_matrix([1, 0]))

    def test_invalid_density_matrices(self):
        with self.assertRaises(SimulationError):
            check_density_matrix(np.array([[1, 1], [0, 0]], dtype=complex))
        with self.assertRaises(SimulationError):
            check_density_matrix(np.eye(2, dtype=complex))
        check_density_matrix(density_matrix([0.6, 0.8]))


class AdaptiveExecutionTests(SimpleTestCase):
    line = [(0, 0), (1, 0), (2, 0)]

    def test_teleport_controller_moves_the_state(self):
        psi = np.array([0.6, 0.8j])
        for seed in range(6):
            device = DenseDevice(DenseState(self.line, np.kron(psi, [1, 0, 0, 0])), RandomOutcomes(seed))
            transcript = execute_adaptive(TeleportController(self.line), device, model=CCNTC)
            record = transcript.record
            moved = device.state.tensor[record[0], record[1], :]
            self.assertAlmostEqual(abs(np.vdot(moved, psi)), 1.0)
            self.assertEqual(transcript.depth, 6)

    def test_teleport_controller_needs_even_hops(self):
        with self.assertRaises(AdaptiveExecutionError):
            TeleportController([(0, 0), (1, 0)])

    def test_replay_controller(self):
        addresses = [(0, 1), (1, 0), (1, 1)]
        start = np.zeros(8, dtype=complex)
        start[0b110] = 1
        device = DenseDevice(DenseState(addresses, start))
        transcript = execute_adaptive(ReplayController(TOFFOLI), device, model=CCNTC)
        self.assertEqual(transcript.depth, 9)
        self.assertAlmostEqual(abs(device.state.vector()[0b111]), 1.0)

    def test_invalid_proposal_is_rejected(self):
        class FarCnot:
            def next_timestep(self, history):
                return Timestep(ops=(op(CNOT, (0, 0), (2, 0)),))

        with self.assertRaises(AdaptiveExecutionError) as ctx:
            execute_adaptive(FarCnot(), BooleanDevice(BooleanState()), model=CCNTC)
        self.assertEqual(ctx.exception.violations[0].code, "non-adjacent")

    def test_controller_that_never_halts(self):
        class Idle:
            def next_timestep(self, history):
                return Timestep()

        with self.assertRaises(AdaptiveExecutionError):
            execute_adaptive(Idle(), BooleanDevice(BooleanState()), max_steps=5)
