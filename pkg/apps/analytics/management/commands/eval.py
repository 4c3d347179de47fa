"""
Management command to evaluate energies and forces at a single point.

Usage:
    python manage.py eval --k0 1 --k0p 2 --d 10 --t 5
    python manage.py eval --k0 1 --k0p 2 --d 10 --t 5 --format json
"""

from django.core.management.base import BaseCommand

import apps
from apps.analytics.cli import (add_output_arguments, add_physics_arguments,
                                emit, exit_codes, validated_config)
from apps.analytics.exporters import format_number, render_json_payload
from apps.analytics.scan import COLUMNS, evaluate_row
from apps.analytics.serializers import EvalRequestSerializer
from apps.casimir.dynamics import dimensionless_args

FIELDS = ("k0", "k0p", "d", "t", "mu", "c", "lightcone_eps", "format", "out")
REPORT_COLUMNS = COLUMNS + ("x0", "x0p")


class Command(BaseCommand):
    help = "Evaluate dressed, bare and partially dressed energies and forces at one point"

    def add_arguments(self, parser):
        add_physics_arguments(parser)
        parser.add_argument("--d", type=float, required=True, help="Atom-wall distance")
        parser.add_argument("--t", type=float, help="Time since the frequency switch (default 0)")
        add_output_arguments(parser)

    def handle(self, *args, **options):
        config = validated_config(EvalRequestSerializer, options, FIELDS)

        with exit_codes():
            reduced = dimensionless_args(config.params, config.point)
            row = evaluate_row(config.params, config.point, config.lightcone_eps)
            row.update(x0=reduced.x0, x0p=reduced.x0p)

            if config.output_format == "json":
                meta = {
                    "params": {
                        "k0": config.params.k0,
                        "k0p": config.params.k0p,
                        "mu": config.params.mu,
                        "c": config.params.c,
                    },
                    "point": {"d": config.point.d, "t": config.point.t},
                    "lightcone_eps": config.lightcone_eps,
                    "version": apps.__version__,
                }
                text = render_json_payload({"meta": meta, "rows": [row]})
            else:
                text = (
                    "# " + ",".join(REPORT_COLUMNS) + "\n"
                    + ",".join(format_number(row[name]) for name in REPORT_COLUMNS) + "\n"
                )
            emit(self, text, config.out)
