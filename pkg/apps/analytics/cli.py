"""
Casimir-Polder Dynamics - Command Helpers
=========================================
Shared flag parsing, exit codes and output handling of the management
commands.
"""

import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Optional

from django.core.management.base import BaseCommand, CommandError

from apps.core.exceptions import (DomainError, LightConeProximity,
                                  NoConvergence, NonFiniteInput)

from .exporters import atomic_write
from .serializers import RunConfig

logger = logging.getLogger(__name__)

EXIT_USAGE = 2
EXIT_LIGHTCONE = 3
EXIT_IO = 4
EXIT_VALIDATION = 5


def add_physics_arguments(parser, required: bool = True) -> None:
    parser.add_argument("--k0", type=float, required=required, help="Wavenumber after the switch (w0/c)")
    parser.add_argument("--k0p", type=float, required=required, help="Wavenumber before the switch (w0'/c)")
    parser.add_argument("--mu", type=float, help="Transition dipole magnitude (default 1)")
    parser.add_argument("--c", type=float, help="Speed of light (default 1)")
    parser.add_argument(
        "--lightcone-eps",
        type=float,
        help="Half-width of the excluded window around a = 1 (default from settings)",
    )


def add_output_arguments(parser) -> None:
    parser.add_argument("--format", choices=["csv", "json"], help="Output format (default csv)")
    parser.add_argument("--out", type=str, help="Output path (default stdout)")


def validated_config(serializer_class, options: dict, fields: Iterable[str]) -> RunConfig:
    """Run the flags through a serializer; invalid input exits with code 2."""
    data = {name: options[name] for name in fields if options.get(name) is not None}
    serializer = serializer_class(data=data)
    if not serializer.is_valid():
        problems = "; ".join(
            f"--{name.replace('_', '-')}: {' '.join(str(message) for message in messages)}"
            if name != "non_field_errors"
            else " ".join(str(message) for message in messages)
            for name, messages in serializer.errors.items()
        )
        raise CommandError(f"Invalid arguments: {problems}", returncode=EXIT_USAGE)
    return serializer.save()


@contextmanager
def exit_codes():
    """Translate library errors into CommandError with the documented exit codes."""
    try:
        yield
    except CommandError:
        raise
    except LightConeProximity as exc:
        raise CommandError(
            f"Point lies on the light cone: a={exc.a!r} is inside the excluded window "
            f"|a - {exc.m!r}| <= {exc.eps!r}",
            returncode=EXIT_LIGHTCONE,
        ) from exc
    except (DomainError, NonFiniteInput) as exc:
        raise CommandError(f"Invalid arguments: {exc}", returncode=EXIT_USAGE) from exc
    except NoConvergence as exc:
        raise CommandError(str(exc), returncode=EXIT_VALIDATION) from exc
    except OSError as exc:
        raise CommandError(f"I/O error: {exc}", returncode=EXIT_IO) from exc


def emit(command: BaseCommand, text: str, out: Optional[str]) -> None:
    """Write ``text`` atomically to ``out``, or to stdout when no path is given."""
    if out:
        path = atomic_write(Path(out), text)
        logger.info("Wrote %s", path)
        return
    command.stdout.write(text, ending="")
