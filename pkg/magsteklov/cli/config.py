"""
Run configuration of the command-line front end.

Values are merged from three layers: the RunConfig defaults, an optional
flat JSON object (`--config`), and the flags given on the command line.
Later layers win. Anything pydantic rejects is re-raised as
ConfigurationError so the front end can exit with the usage status.
"""

import json
import math
import re
from pathlib import Path
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, PositiveInt, ValidationError, field_validator, \
    model_validator

from magsteklov import exc
from magsteklov.models import (
    Ball4Config,
    Ball4Multiplicity,
    PolynomialProfile,
    RiccatiConfig,
    SeriesConfig,
    Sign,
    SolverPolicy,
    SpectralModel,
)

Command = Literal["spectrum", "frustration", "cheeger", "bounds", "verify", "figures"]
OutputFormat = Literal["csv", "json", "svg"]
BoundCheck = Literal[
    "upper", "reilly", "max-principle", "l2", "asymptotic", "monotonicity", "gauge", "comparison", "jammes",
    "neumann",
]

# decimals kept on generated grid points, so 0:0.1:1 gives 0.3 and not 0.30000000000000004
_GRID_DECIMALS = 12
_TERM = re.compile(r"(?P<sign>[+-])(?P<coef>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\*?(?P<var>r(?:\^(?P<exp>\d+))?)?")


def _range_fields(text: Union[str, float, int]) -> dict[str, float]:
    if isinstance(text, (int, float)):
        return {"start": float(text), "stop": float(text)}
    parts = [p.strip() for p in str(text).split(":")]
    try:
        numbers = [float(p) for p in parts]
    except ValueError as error:
        raise ValueError(f"Cannot read a range from {text!r}") from error
    if len(numbers) == 1:
        return {"start": numbers[0], "stop": numbers[0]}
    if len(numbers) == 3:
        return {"start": numbers[0], "step": numbers[1], "stop": numbers[2]}
    raise ValueError(f"A range is 'start:step:stop' or a single value, got {text!r}")


class TRange(BaseModel):
    """
    Uniform grid start, start + step, ..., stop.

    Parsed from "start:step:stop" or from a single value.

    >>> len(TRange.parse("0:0.1:5").values())
    51
    >>> TRange.parse("2").values()
    [2.0]
    """
    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    step: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def _check_order(self) -> 'TRange':
        if self.stop < self.start:
            raise ValueError(f"The range stop {self.stop} lies below its start {self.start}")
        return self

    @classmethod
    def parse(cls, text: Union[str, float, int]) -> 'TRange':
        """Reads "a:step:b" or a single number."""
        return cls.model_validate(_range_fields(text))

    def values(self) -> list[float]:
        """The grid points, stop included when it lies on the grid."""
        count = math.floor((self.stop - self.start) / self.step + 1e-9)
        return [round(self.start + i * self.step, _GRID_DECIMALS) for i in range(count + 1)]

    def __str__(self) -> str:
        if self.start == self.stop:
            return repr(self.start)
        return f"{self.start!r}:{self.step!r}:{self.stop!r}"


def parse_polynomial(text: str) -> PolynomialProfile:
    """
    Reads a polynomial in r such as "r^2", "1", "0.5*r^3 - 2r" into a profile.

    >>> parse_polynomial("r^2 - 1").coefficients
    (-1.0, 0.0, 1.0)
    """
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("The angular profile is empty")
    if compact[0] not in "+-":
        compact = "+" + compact

    coefficients: dict[int, float] = {}
    position = 0
    while position < len(compact):
        match = _TERM.match(compact, position)
        if match is None or not (match["coef"] or match["var"]):
            raise ValueError(f"Cannot read the polynomial {text!r} at position {position}")
        coef = float(match["coef"]) if match["coef"] else 1.0
        exponent = int(match["exp"] or 1) if match["var"] else 0
        coefficients[exponent] = coefficients.get(exponent, 0.0) + (coef if match["sign"] == "+" else -coef)
        position = match.end()

    degree = max(coefficients)
    return PolynomialProfile(coefficients=tuple(coefficients.get(i, 0.0) for i in range(degree + 1)))


class RunConfig(BaseModel):
    """Parameters of one command-line run; every field has a documented default."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command = "spectrum"
    model: SpectralModel = SpectralModel.DISK2
    t: TRange = TRange(start=1.0, stop=1.0)
    k_max: NonNegativeInt = 5
    output_format: OutputFormat = "csv"
    output: Optional[Path] = None
    multiplicity: Ball4Multiplicity = Ball4Multiplicity.CLUSTER
    verbose: NonNegativeInt = 0
    quick: bool = False
    config_file: Optional[Path] = None

    # tolerance overrides
    series_tail_tol: float = Field(default=SeriesConfig().tail_tol, gt=0)
    riccati_rel_tol: float = Field(default=RiccatiConfig().rel_tol, gt=0)
    riccati_abs_tol: float = Field(default=RiccatiConfig().abs_tol, gt=0)
    riccati_threshold_b: float = Field(default=SolverPolicy().riccati_threshold_b, ge=0)
    cancellation_ratio: float = Field(default=Ball4Config().cancellation_ratio, gt=0, lt=1)

    # frustration
    g: str = "r^2"
    r0: float = Field(default=1.0, gt=0)
    r_inner: float = Field(default=0.0, ge=0)
    punctured: bool = False

    # cheeger and bounds
    s_grid: TRange = TRange(start=0.0, step=0.05, stop=1.0)
    check: BoundCheck = "upper"
    k: NonNegativeInt = 0
    sign: Sign = Sign.PLUS
    n: PositiveInt = 1

    @field_validator("t", "s_grid", mode="before")
    @classmethod
    def _read_range(cls, value: Any) -> Any:
        if isinstance(value, (str, int, float)):
            return _range_fields(value)
        return value

    @field_validator("g")
    @classmethod
    def _read_profile(cls, value: str) -> str:
        parse_polynomial(value)
        return value

    @model_validator(mode="after")
    def _check_radii(self) -> 'RunConfig':
        if self.r_inner >= self.r0:
            raise ValueError(f"r_inner={self.r_inner} must lie below r0={self.r0}")
        return self

    @property
    def profile(self) -> PolynomialProfile:
        """The angular profile g of the frustration command."""
        return parse_polynomial(self.g)

    def solver_policy(self) -> SolverPolicy:
        """Solver settings with the tolerance overrides applied."""
        return SolverPolicy(
            riccati_threshold_b=self.riccati_threshold_b,
            series=SeriesConfig(tail_tol=self.series_tail_tol),
            riccati=RiccatiConfig(rel_tol=self.riccati_rel_tol, abs_tol=self.riccati_abs_tol),
        )

    def ball4_config(self) -> Ball4Config:
        """4-ball settings with the tolerance overrides applied."""
        return Ball4Config(cancellation_ratio=self.cancellation_ratio, multiplicity=self.multiplicity)


def read_config_file(path: Path) -> dict[str, Any]:
    """
    Loads the flat key/value JSON object of a config file.

    Raises:
        exc.ConfigurationError: If the file is missing, malformed or not an object.
    """
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as error:
        raise exc.ConfigurationError(f"Cannot read config file {path}: {error}") from error
    except json.JSONDecodeError as error:
        raise exc.ConfigurationError(f"Config file {path} is not valid JSON: {error}") from error
    if not isinstance(data, dict):
        raise exc.ConfigurationError(f"Config file {path} must hold a JSON object")
    return data


def load_config(flags: dict[str, Any]) -> RunConfig:
    """
    Builds the RunConfig from the given flags on top of the config file they name.

    Raises:
        exc.ConfigurationError: If the merged values do not validate.
    """
    layers: dict[str, Any] = {}
    config_file = flags.get("config_file")
    if config_file is not None:
        layers.update(read_config_file(config_file))
    layers.update({key: value for key, value in flags.items() if value is not None})
    try:
        return RunConfig.model_validate(layers)
    except ValidationError as error:
        problems = "; ".join(f"{'.'.join(str(p) for p in e['loc']) or 'config'}: {e['msg']}" for e in error.errors())
        raise exc.ConfigurationError(f"Invalid configuration: {problems}") from error
