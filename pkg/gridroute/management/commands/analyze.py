"""
Lightcone report for one qubit of a non-adaptive circuit.

Usage:
    python manage.py analyze control.json --target 2,2
"""

import argparse

from django.core.management.base import CommandError

from gridroute.services.analyze import influence_set
from gridroute.services.documents import load

from ._base import GridrouteCommand


def parse_point(text: str):
    try:
        point = tuple(int(c) for c in text.split(","))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e
    return point


class Command(GridrouteCommand):
    help = "Backward lightcone of a qubit and the distance bound it implies"

    def add_arguments(self, parser):
        parser.add_argument("circuit", type=str, help="NANTC circuit document")
        parser.add_argument("--target", type=parse_point, required=True, help="Observed qubit, e.g. 2,2")
        parser.add_argument("--format", choices=("text", "json"), default="text")

    def run(self, **options):
        circuit = load(options["circuit"])
        target = options["target"]
        if len(target) != circuit.dim:
            raise CommandError(f"--target needs {circuit.dim} coordinates")
        certificate = influence_set(circuit, target)
        inputs_reached = sorted(q for q in circuit.inputs if q in certificate.influence)
        data = {
            "target": list(target),
            "influence": len(certificate.influence),
            "inputs_reached": [list(q) for q in inputs_reached],
            "active_ops": len(certificate.active_ops),
            "depth_bound": certificate.depth_bound,
            "depth": certificate.radius,
            "within_radius": certificate.within_radius(),
        }
        if options["format"] == "json":
            self.write_json(data)
            return

        self.stdout.write(self.style.SUCCESS(f"Lightcone of {target}"))
        self.stdout.write(f"Influencing qubits: {data['influence']} ({len(inputs_reached)} inputs)")
        self.stdout.write(f"Active operations: {data['active_ops']}")
        self.stdout.write(f"Depth lower bound: {certificate.depth_bound}, circuit depth: {certificate.radius}")
        if not data["within_radius"]:
            self.stdout.write(self.style.WARNING("Influence reaches beyond the circuit depth"))
