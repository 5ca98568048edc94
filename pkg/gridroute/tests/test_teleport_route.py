from django.test import SimpleTestCase

from gridroute.services.circuit_ir import (
    CCAC,
    CCNTC,
    CNOT,
    MEASURE,
    PAULI,
    SWAP,
    AdaptiveCircuit,
    CircuitBuilder,
    ClassicalCondition,
    GateSpec,
    Timestep,
    cost_report,
    mcx,
    op,
    validate,
)
from gridroute.services.teleport_route import (
    INTERACT_DEPTH,
    REORDER_DEPTH,
    InteractionItem,
    InteractionSpec,
    ReorderSpec,
    RoutingError,
    emit_bell_pair,
    emit_chain,
    interact,
    interaction_rounds,
    pairing,
    reorder,
    rounds_circuit,
    simulate_ccac,
    touched_qubit_bound,
)
from gridroute.services.verification import verify


def item(name, *qubits, **kwargs):
    return InteractionItem(qubits=qubits, gate=GateSpec.named(name), **kwargs)


def example_ccac():
    """H, CNOT, measure the control, then correct the target on the outcome."""
    return rounds_circuit(
        2,
        [
            [item("H", 0)],
            [item(CNOT, 0, 1)],
            [item(MEASURE, 0, measurement_id=0)],
            [item(PAULI, 1, condition=ClassicalCondition(x_parity_of=frozenset({0})))],
        ],
    )


class ReorderSpecTests(SimpleTestCase):
    def test_columns_must_be_distinct(self):
        with self.assertRaises(RoutingError):
            ReorderSpec(n=4, moves={1: 2, 3: 2})

    def test_moves_stay_on_the_grid(self):
        with self.assertRaises(RoutingError):
            ReorderSpec(n=4, moves={1: 4})

    def test_column_zero_needs_the_rows_below_moved(self):
        with self.assertRaises(RoutingError):
            ReorderSpec(n=4, moves={2: 0, 1: 1})
        ReorderSpec(n=4, moves={0: 1, 1: 2, 2: 0})

    def test_bound_counts_horizontal_moves(self):
        spec = ReorderSpec(n=8, moves={6: 7, 7: 6})
        self.assertEqual(spec.horizontal_moves, 2)
        self.assertEqual(touched_qubit_bound(spec), 40)


class ChainTests(SimpleTestCase):
    def test_bell_pair_needs_neighbours(self):
        block = CircuitBuilder(CCNTC, 2).block(2)
        with self.assertRaises(RoutingError):
            emit_bell_pair((0, 0), (2, 0), block)

    def test_chain_must_be_straight(self):
        block = CircuitBuilder(CCNTC, 2).block(7)
        with self.assertRaises(RoutingError):
            emit_chain([(0, 0), (1, 0), (1, 1)], block)

    def test_single_hop_is_a_swap(self):
        builder = CircuitBuilder(CCNTC, 2)
        block = builder.block(7, fixed=True)
        self.assertEqual(emit_chain([(0, 0), (1, 0)], block), {})
        self.assertEqual([o.gate.name for o in block.layers[6]], [SWAP])

    def test_odd_chain_measures_the_even_prefix(self):
        builder = CircuitBuilder(CCNTC, 2)
        block = builder.block(7, fixed=True)
        measured = emit_chain([(c, 0) for c in range(4)], block)
        self.assertEqual(set(measured), {(0, 0), (1, 0)})
        self.assertEqual(block.layers[5][0].qubits, ((2, 0),))
        self.assertEqual(block.layers[6][0].qubits, ((2, 0), (3, 0)))


class ReorderTests(SimpleTestCase):
    spec = ReorderSpec(n=8, moves={6: 7, 7: 6})

    def test_depth_is_independent_of_n(self):
        for n in (2, 4, 8, 16):
            circuit = reorder(ReorderSpec(n=n, moves={n - 1: 1}))
            self.assertEqual(cost_report(circuit).depth, REORDER_DEPTH)
        self.assertEqual(REORDER_DEPTH, 16)

    def test_empty_reorder_keeps_the_clock(self):
        circuit = reorder(ReorderSpec(n=5))
        self.assertEqual(cost_report(circuit).depth, REORDER_DEPTH)
        self.assertEqual(circuit.qubits(), set())

    def test_circuit_is_valid(self):
        self.assertEqual(validate(reorder(self.spec)), [])

    def test_touched_qubits(self):
        circuit = reorder(self.spec)
        # two full rows and two full columns less their shared points
        self.assertEqual(len(circuit.qubits()), 27)
        self.assertLessEqual(len(circuit.qubits()), touched_qubit_bound(self.spec))
        self.assertEqual(cost_report(circuit).width, 64)

    def test_states_arrive(self):
        report = verify(reorder(self.spec), shots=8)
        self.assertTrue(report.passed, report.to_text())

    def test_swap_rows(self):
        report = verify(reorder(ReorderSpec(n=2, moves={0: 1, 1: 0})), shots=8)
        self.assertTrue(report.passed, report.to_text())

    def test_meta_records_the_moves(self):
        circuit = reorder(self.spec)
        self.assertEqual(circuit.meta["kind"], "reorder")
        self.assertEqual(circuit.meta["moves"], [[6, 7], [7, 6]])
        self.assertEqual(circuit.inputs, tuple((0, j) for j in range(8)))


class InteractionTests(SimpleTestCase):
    spec = InteractionSpec(n=3, items=(item("H", 1), item(CNOT, 0, 2)))

    def test_singletons_come_first(self):
        with self.assertRaises(RoutingError):
            InteractionSpec(n=3, items=(item(CNOT, 0, 2), item("H", 1)))

    def test_items_may_not_overlap(self):
        with self.assertRaises(RoutingError):
            InteractionSpec(n=3, items=(item("H", 0), item(CNOT, 0, 2)))

    def test_pairing_keeps_column_zero_for_unpaired(self):
        self.assertEqual(pairing(self.spec).moves, {0: 1, 2: 2})
        full = InteractionSpec(n=4, items=(item(CNOT, 0, 3), item(CNOT, 2, 1)))
        self.assertEqual(pairing(full).moves, {0: 0, 3: 1, 1: 2, 2: 3})

    def test_depth(self):
        circuit = interact(self.spec)
        self.assertEqual(cost_report(circuit).depth, INTERACT_DEPTH)
        self.assertEqual(INTERACT_DEPTH, 33)
        self.assertEqual(validate(circuit), [])

    def test_matches_direct_run(self):
        report = verify(interact(self.spec), shots=4)
        self.assertTrue(report.passed, report.to_text())

    def test_singletons_keep_the_clock(self):
        circuit = interact(InteractionSpec(n=3, items=(item("H", 0), item("X", 2))))
        self.assertEqual(cost_report(circuit).depth, INTERACT_DEPTH)
        # only the round itself touches qubits
        self.assertEqual(circuit.qubits(), {(0, 0), (0, 2)})


class CcacTests(SimpleTestCase):
    def test_rounds_follow_timesteps(self):
        rounds = interaction_rounds(example_ccac())
        self.assertEqual([len(r.items) for r in rounds], [1, 1, 1, 1])
        self.assertEqual(rounds[1].items[0].qubits, (0, 1))

    def test_wide_operations_are_rejected(self):
        ccac = AdaptiveCircuit(model=CCAC, dim=1, timesteps=(Timestep(ops=(mcx([0, 1], 2),)),))
        with self.assertRaises(RoutingError):
            interaction_rounds(ccac)

    def test_grid_circuits_are_rejected(self):
        grid = AdaptiveCircuit(model=CCNTC, dim=2, timesteps=(Timestep(ops=(op("H", (0, 0)),)),))
        with self.assertRaises(RoutingError):
            simulate_ccac(grid)

    def test_compiled_depth(self):
        compiled = simulate_ccac(example_ccac())
        self.assertEqual(cost_report(compiled).depth, 4 * INTERACT_DEPTH)
        self.assertEqual(compiled.meta["measurements"], [[0, 0]])
        self.assertEqual(validate(compiled), [])

    def test_depth_grows_by_one_constant_per_round(self):
        mixed = [[item("H", 2), item(CNOT, 0, 1)], [item("X", 0)], []]
        ratios = set()
        for depth in (2, 5, 10):
            ccac = rounds_circuit(3, [mixed[t % 3] for t in range(depth)])
            ratios.add(cost_report(simulate_ccac(ccac)).depth / depth)
        self.assertEqual(ratios, {INTERACT_DEPTH})

    def test_compiled_matches_source(self):
        report = verify(simulate_ccac(example_ccac()), shots=6)
        self.assertTrue(report.passed, report.to_text())

    def test_correction_uses_the_compiled_measurement(self):
        compiled = simulate_ccac(example_ccac())
        paulis = [o for o in compiled.ops() if o.gate.name == PAULI and o.qubits == (0, 1)]
        self.assertTrue(any(o.condition.x_parity_of == frozenset({0}) for o in paulis))
        measures = [o for o in compiled.ops() if o.gate.name == MEASURE]
        self.assertEqual(len(measures), 1)
