"""
Management command to check the closed-form kernels against the quadrature
oracle and finite differences.

Usage:
    python manage.py validate
    python manage.py validate --grid full --out report.json
"""

from django.core.management.base import BaseCommand, CommandError

from apps.analytics.cli import EXIT_VALIDATION, emit, exit_codes, validated_config
from apps.analytics.exporters import render_json_payload
from apps.analytics.serializers import ValidateRequestSerializer
from apps.casimir.validation import run_validation

FIELDS = ("grid", "tol", "out")


class Command(BaseCommand):
    help = "Validate the closed-form kernels; exits 5 if any check fails"

    def add_arguments(self, parser):
        parser.add_argument("--grid", choices=["small", "full"], help="Check grid (default small)")
        parser.add_argument("--tol", type=float, help="Oracle absolute tolerance (default from settings)")
        parser.add_argument("--out", type=str, help="Report path (default stdout)")

    def handle(self, *args, **options):
        config = validated_config(ValidateRequestSerializer, options, FIELDS)

        with exit_codes():
            report = run_validation(config.validation_grid, config.quadrature)
            emit(self, render_json_payload(report.to_dict()), config.out)

        for check in report.checks:
            status = self.style.SUCCESS("PASS") if check.passed else self.style.ERROR("FAIL")
            self.stderr.write(f"{status} {check.name}: max deviation {check.max_deviation:.3e}")

        if not report.passed:
            failed = ", ".join(check.name for check in report.checks if not check.passed)
            raise CommandError(f"Validation failed: {failed}", returncode=EXIT_VALIDATION)
