"""
Casimir-Polder Dynamics - Command Input Serializers
===================================================
Validation of command-line flags. Each serializer's ``save()`` returns a
frozen RunConfig.
"""

import math
from dataclasses import dataclass
from typing import Optional

from django.conf import settings
from rest_framework import serializers

from apps.casimir.dynamics import EvalPoint, PhysicalParams
from apps.casimir.oracle import QuadratureConfig

from .scan import GridSpec, GridVariable


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one command invocation."""

    params: Optional[PhysicalParams] = None
    point: Optional[EvalPoint] = None
    grid: Optional[GridSpec] = None
    fixed: Optional[float] = None
    steps: int = 400
    quadrature: Optional[QuadratureConfig] = None
    lightcone_eps: float = 1e-3
    output_format: str = "csv"
    out: Optional[str] = None
    workers: int = 1
    tol: float = 0.05
    validation_grid: str = "small"


def _defaults() -> dict:
    return settings.CASIMIR


# =============================================================================
# BASE
# =============================================================================


class PositiveFloatField(serializers.FloatField):
    """Finite float strictly greater than zero."""

    default_error_messages = {
        "not_positive": "Ensure this value is greater than 0.",
        "not_finite": "Ensure this value is finite.",
    }

    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if not math.isfinite(value):
            self.fail("not_finite")
        if value <= 0:
            self.fail("not_positive")
        return value


class PhysicalParamsSerializer(serializers.Serializer):
    k0 = PositiveFloatField()
    k0p = PositiveFloatField()
    mu = PositiveFloatField(default=1.0)
    c = PositiveFloatField(default=1.0)
    lightcone_eps = PositiveFloatField(required=False)
    format = serializers.ChoiceField(choices=["csv", "json"], default="csv")
    out = serializers.CharField(required=False, allow_null=True, default=None)

    def validate_lightcone_eps(self, value):
        if value >= 1:
            raise serializers.ValidationError("The light-cone window must be narrower than 1.")
        return value

    def physical_params(self) -> PhysicalParams:
        data = self.validated_data
        return PhysicalParams(k0=data["k0"], k0p=data["k0p"], mu=data["mu"], c=data["c"])

    def common(self) -> dict:
        data = self.validated_data
        return {
            "params": self.physical_params(),
            "lightcone_eps": data.get("lightcone_eps", _defaults()["LIGHTCONE_EPS"]),
            "output_format": data["format"],
            "out": data["out"],
        }


# =============================================================================
# COMMANDS
# =============================================================================


class EvalRequestSerializer(PhysicalParamsSerializer):
    d = PositiveFloatField()
    t = serializers.FloatField(min_value=0.0, default=0.0)

    def validate_t(self, value):
        if not math.isfinite(value):
            raise serializers.ValidationError("Ensure this value is finite.")
        return value

    def create(self, validated_data) -> RunConfig:
        return RunConfig(point=EvalPoint(d=validated_data["d"], t=validated_data["t"]), **self.common())


class SweepRequestSerializer(PhysicalParamsSerializer):
    variable = serializers.ChoiceField(choices=GridVariable.choices, default=GridVariable.TIME)
    d = PositiveFloatField(required=False)
    t = serializers.FloatField(min_value=0.0, required=False)
    tmin = serializers.FloatField(min_value=0.0, required=False)
    tmax = serializers.FloatField(min_value=0.0, required=False)
    dmin = PositiveFloatField(required=False)
    dmax = PositiveFloatField(required=False)
    steps = serializers.IntegerField(min_value=2, default=400)
    include_lightcone = serializers.BooleanField(default=False)
    workers = serializers.IntegerField(min_value=1, required=False)

    def validate(self, attrs):
        if attrs["variable"] == GridVariable.TIME:
            required = ("d", "tmin", "tmax")
            lower, upper = "tmin", "tmax"
        else:
            required = ("t", "dmin", "dmax")
            lower, upper = "dmin", "dmax"
        missing = [name for name in required if attrs.get(name) is None]
        if missing:
            raise serializers.ValidationError(
                {name: "This field is required for a %s sweep." % attrs["variable"] for name in missing}
            )
        if not attrs[lower] < attrs[upper]:
            raise serializers.ValidationError({upper: f"Must be greater than {lower}."})
        for name in (lower, upper, "t"):
            if attrs.get(name) is not None and not math.isfinite(attrs[name]):
                raise serializers.ValidationError({name: "Ensure this value is finite."})
        return attrs

    def create(self, validated_data) -> RunConfig:
        if validated_data["variable"] == GridVariable.TIME:
            bounds = (validated_data["tmin"], validated_data["tmax"])
            fixed = validated_data["d"]
        else:
            bounds = (validated_data["dmin"], validated_data["dmax"])
            fixed = validated_data["t"]
        grid = GridSpec(
            variable=validated_data["variable"],
            start=bounds[0],
            stop=bounds[1],
            steps=validated_data["steps"],
            exclude_lightcone=not validated_data["include_lightcone"],
        )
        return RunConfig(
            grid=grid,
            fixed=fixed,
            workers=validated_data.get("workers", _defaults()["SWEEP_WORKERS"]),
            **self.common(),
        )


class FiguresRequestSerializer(PhysicalParamsSerializer):
    k0 = PositiveFloatField(default=1.0)
    k0p = PositiveFloatField(default=2.0)
    d = PositiveFloatField(default=10.0)
    steps = serializers.IntegerField(min_value=10, default=400)
    tol = PositiveFloatField(default=0.05)
    workers = serializers.IntegerField(min_value=1, required=False)

    def create(self, validated_data) -> RunConfig:
        return RunConfig(
            point=EvalPoint(d=validated_data["d"]),
            steps=validated_data["steps"],
            workers=validated_data.get("workers", _defaults()["SWEEP_WORKERS"]),
            tol=validated_data["tol"],
            out=validated_data["out"] or _defaults()["FIGURES_DIR"],
            **{key: value for key, value in self.common().items() if key != "out"},
        )


class ValidateRequestSerializer(serializers.Serializer):
    grid = serializers.ChoiceField(choices=["small", "full"], default="small")
    tol = serializers.FloatField(min_value=1e-14, max_value=1e-4, required=False)
    out = serializers.CharField(required=False, allow_null=True, default=None)

    def create(self, validated_data) -> RunConfig:
        return RunConfig(
            quadrature=QuadratureConfig(abs_tol=validated_data.get("tol", _defaults()["ABS_TOL"])),
            validation_grid=validated_data["grid"],
            output_format="json",
            out=validated_data["out"],
        )
