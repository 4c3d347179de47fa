"""
Management command to reproduce the force traces of the frequency-switch
scenario (k0 = 1, k0' = 2, d = 10 by default).

Writes into the output directory:
    fig1.csv     t in [0, 2d/c): before the back-reaction time
    fig2.csv     t in (2d/c, 10d/c]: after it
    fig3.csv     relative force difference over both regimes
    figures.gp   gnuplot script plotting the three files

Usage:
    python manage.py figures
    python manage.py figures --out build/figures --steps 800
"""

from pathlib import Path

from django.core.management.base import BaseCommand

from apps.analytics.cli import (add_physics_arguments, exit_codes,
                                validated_config)
from apps.analytics.exporters import (atomic_write, render_gnuplot_script,
                                      write_csv)
from apps.analytics.scan import GridSpec, GridVariable, analyze_trace, run_sweep
from apps.analytics.serializers import FiguresRequestSerializer
from apps.casimir.dynamics import back_reaction_time

FIELDS = ("k0", "k0p", "mu", "c", "lightcone_eps", "d", "steps", "tol", "workers", "out")

# Offset of the first/last sample from the light cone, as a fraction of 2d/c.
LIGHTCONE_MARGIN = 0.005
SETTLING_WINDOW = 10.0  # in units of d/c
LATE_TIME = 10.0  # in units of d/c


class Command(BaseCommand):
    help = "Write the force-trace CSV files and a gnuplot script"

    def add_arguments(self, parser):
        add_physics_arguments(parser, required=False)
        parser.add_argument("--d", type=float, help="Atom-wall distance (default 10)")
        parser.add_argument("--steps", type=int, help="Grid points per trace (default 400)")
        parser.add_argument("--tol", type=float, help="Settling tolerance (default 0.05)")
        parser.add_argument("--workers", type=int, help="Worker processes for row evaluation")
        parser.add_argument("--out", type=str, help="Output directory (default from settings)")

    def handle(self, *args, **options):
        config = validated_config(FiguresRequestSerializer, options, FIELDS)
        p = config.params
        d = config.point.d
        unit = d / p.c
        cone = back_reaction_time(d, p.c)

        grids = {
            "fig1.csv": GridSpec(GridVariable.TIME, 0.0, cone * (1 - LIGHTCONE_MARGIN), config.steps),
            "fig2.csv": GridSpec(GridVariable.TIME, cone * (1 + LIGHTCONE_MARGIN), LATE_TIME * unit, config.steps),
            "fig3.csv": GridSpec(GridVariable.TIME, 0.0, LATE_TIME * unit, 2 * config.steps + 1),
        }

        with exit_codes():
            out_dir = Path(config.out)
            out_dir.mkdir(parents=True, exist_ok=True)

            tables = {}
            for name, grid in grids.items():
                table = run_sweep(p, d, grid, lightcone_eps=config.lightcone_eps, workers=config.workers)
                write_csv(table, out_dir / name)
                tables[name] = table
                self.stdout.write(f"  {name}: {len(table)} rows, {len(table.meta.excluded)} excluded")

            script = render_gnuplot_script(
                [
                    ("fig1.csv", "Force before the back-reaction time",
                     [("F_d", "dressed"), ("F_b", "bare"), ("F_p", "partially dressed")]),
                    ("fig2.csv", "Force after the back-reaction time",
                     [("F_d", "dressed"), ("F_b", "bare"), ("F_p", "partially dressed")]),
                    ("fig3.csv", "Relative force difference (F_p - F_d) / F_d",
                     [("relF", "relative difference")]),
                ]
            )
            atomic_write(out_dir / "figures.gp", script)

        early = analyze_trace(tables["fig1.csv"], "F_p", window=SETTLING_WINDOW * unit, tol=config.tol)
        self.stdout.write(f"  F_p sign changes before 2d/c: {len(early.sign_changes)}")
        for column in ("F_b", "F_p"):
            late = analyze_trace(tables["fig2.csv"], column, window=SETTLING_WINDOW * unit, tol=config.tol)
            self.stdout.write(f"  {column} settling time: {late.settling_time!r}")

        self.stdout.write(self.style.SUCCESS(f"Figures written to {out_dir}"))
