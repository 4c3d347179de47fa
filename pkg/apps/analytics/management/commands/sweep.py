"""
Management command to sweep energies and forces over time or distance.

Usage:
    python manage.py sweep --k0 1 --k0p 2 --d 10 --tmin 0 --tmax 19.9 --steps 400
    python manage.py sweep --k0 1 --k0p 2 --variable distance --t 5 --dmin 2 --dmax 20
    python manage.py sweep ... --format json --out sweep.json
"""

from django.core.management.base import BaseCommand

from apps.analytics.cli import (add_output_arguments, add_physics_arguments,
                                emit, exit_codes, validated_config)
from apps.analytics.exporters import render_csv, render_json
from apps.analytics.scan import GridVariable, run_sweep
from apps.analytics.serializers import SweepRequestSerializer

FIELDS = (
    "k0", "k0p", "mu", "c", "lightcone_eps", "format", "out",
    "variable", "d", "t", "tmin", "tmax", "dmin", "dmax", "steps",
    "include_lightcone", "workers",
)


class Command(BaseCommand):
    help = "Tabulate energies, forces and the relative force difference over a grid"

    def add_arguments(self, parser):
        add_physics_arguments(parser)
        parser.add_argument(
            "--variable",
            choices=GridVariable.values,
            help="Swept coordinate (default time)",
        )
        parser.add_argument("--d", type=float, help="Fixed distance of a time sweep")
        parser.add_argument("--t", type=float, help="Fixed time of a distance sweep")
        parser.add_argument("--tmin", type=float, help="First time of a time sweep")
        parser.add_argument("--tmax", type=float, help="Last time of a time sweep")
        parser.add_argument("--dmin", type=float, help="First distance of a distance sweep")
        parser.add_argument("--dmax", type=float, help="Last distance of a distance sweep")
        parser.add_argument("--steps", type=int, help="Number of grid points (default 400)")
        parser.add_argument(
            "--include-lightcone",
            action="store_true",
            default=None,
            help="Keep light-cone rows with NaN instead of excluding them",
        )
        parser.add_argument("--workers", type=int, help="Worker processes for row evaluation")
        add_output_arguments(parser)

    def handle(self, *args, **options):
        config = validated_config(SweepRequestSerializer, options, FIELDS)

        with exit_codes():
            table = run_sweep(
                config.params,
                config.fixed,
                config.grid,
                lightcone_eps=config.lightcone_eps,
                workers=config.workers,
            )
            text = render_json(table) if config.output_format == "json" else render_csv(table)
            emit(self, text, config.out)

        if table.meta.excluded:
            self.stderr.write(
                self.style.WARNING(
                    f"Excluded {len(table.meta.excluded)} light-cone grid point(s)"
                )
            )
