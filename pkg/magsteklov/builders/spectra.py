"""
Spectrum table assembly.

This module provides the machinery to create labeled, sorted spectrum tables
of the four models. It uses the Builder pattern to separate the common
assembly steps (sorting with a deterministic tiebreak, nonnegativity
checks, error attribution) from the per-model eigenvalue formulas.
"""

import logging
from abc import ABC, abstractmethod
from typing import Iterable, Optional

from pydantic import ConfigDict, NonNegativeInt, validate_call

from magsteklov import exc
from magsteklov.engines import ModeSolver, StandardModeSolver
from magsteklov.models import (
    Ball4Config,
    Ball4Multiplicity,
    FieldStrength,
    ModeLabel,
    RadialODEParams,
    Sign,
    SpectralModel,
    SpectrumEntry,
    SpectrumTable,
)

from .hopf import ball4_steklov_value

logger = logging.getLogger(__name__)

# Largest negative rounding tolerated before a value counts as a negative eigenvalue
_STEKLOV_NEGATIVE_TOL = 1e-10
_LAPLACIAN_NEGATIVE_TOL = 1e-12


def angular_labels(model: SpectralModel, k_max: int) -> list[ModeLabel]:
    """(k, sign) labels up to k_max with k = 0 listed once."""
    labels = [ModeLabel.angular(model, 0, Sign.PLUS)]
    for k in range(1, k_max + 1):
        labels += [ModeLabel.angular(model, k, Sign.MINUS), ModeLabel.angular(model, k, Sign.PLUS)]
    return labels


def hopf_labels(model: SpectralModel, k_max: int) -> list[ModeLabel]:
    """(p1, p2) labels with p1 + p2 <= k_max."""
    return [ModeLabel.hopf(model, p1, k - p1) for k in range(k_max + 1) for p1 in range(k + 1)]


class SpectrumBuilder(ABC):
    """
    Abstract base class for spectrum tables.

    Provides a template method 'build' that handles the common assembly
    steps, while delegating the eigenvalues of the individual modes to
    subclasses.
    """

    @classmethod
    @abstractmethod
    def model(cls) -> SpectralModel:
        """Returns the model whose spectrum this builder assembles."""

    @classmethod
    def labels(cls, k_max: int) -> list[ModeLabel]:
        """Returns every mode label up to k_max."""
        if cls.model().uses_hopf_labels:
            return hopf_labels(cls.model(), k_max)
        return angular_labels(cls.model(), k_max)

    def build(self, t: FieldStrength, k_max: int) -> SpectrumTable:
        """
        The main entry point to create a sorted spectrum table.

        Args:
            t: The field strength.
            k_max: Every mode with k <= k_max is included.

        Returns:
            The table, sorted nondecreasing with the label as tiebreak.

        Raises:
            exc.ModeError: If a single mode fails; wraps the numerical error.
        """
        labels = self.labels(k_max)
        entries = [
            self._entry(label, value, multiplicity)
            for label, (value, multiplicity) in zip(labels, self._build(t, labels))
        ]
        entries.sort(key=lambda e: (e.value, e.label.sort_key))
        # Keep it safe: Every label made it into the table
        assert len(entries) == len(labels), "Mode lost during table assembly"

        logger.info("Built %s table at t=%s with k_max=%d (%d entries)", self.model().value, t, k_max, len(entries))
        return SpectrumTable(t=t, model=self.model(), entries=tuple(entries), k_max=k_max)

    @abstractmethod
    def _build(self, t: FieldStrength, labels: list[ModeLabel]) -> Iterable[tuple[float, int]]:
        """
        Internal implementation of the eigenvalues: one (value, multiplicity)
        per label, in label order.
        """
        raise NotImplementedError()

    def _entry(self, label: ModeLabel, value: float, multiplicity: int) -> SpectrumEntry:
        tolerance = _STEKLOV_NEGATIVE_TOL if self.model().is_steklov else _LAPLACIAN_NEGATIVE_TOL
        if value < -tolerance:
            raise exc.ModeError(label, exc.NegativeEigenvalue(f"Eigenvalue {value} is negative", value=value))
        return SpectrumEntry(label=label, value=max(value, 0.0), multiplicity=multiplicity)


class DiskSteklovBuilder(SpectrumBuilder):
    """Magnetic Steklov spectrum of the unit disk for the potential t(-y dx + x dy)."""

    def __init__(self, solver: Optional[ModeSolver] = None):
        self._solver = solver or StandardModeSolver()

    @classmethod
    def model(cls) -> SpectralModel:
        return SpectralModel.DISK2

    def _build(self, t: FieldStrength, labels: list[ModeLabel]) -> Iterable[tuple[float, int]]:
        modes = [RadialODEParams.disk(label.k, label.sign or Sign.PLUS, t) for label in labels]
        try:
            values = self._solver.steklov_values(modes)
        except exc.NumericalError:
            values = []
            for label, params in zip(labels, modes):
                try:
                    values.append(self._solver.steklov_value(params))
                except exc.NumericalError as error:
                    raise exc.ModeError(label, error) from error
        return [(value, 1) for value in values]


class CircleLaplacianBuilder(SpectrumBuilder):
    """Magnetic Laplacian on the unit circle: lambda = (k +- t)^2."""

    @classmethod
    def model(cls) -> SpectralModel:
        return SpectralModel.CIRCLE

    def _build(self, t: FieldStrength, labels: list[ModeLabel]) -> Iterable[tuple[float, int]]:
        return [((label.k + (label.sign or Sign.PLUS).factor * t) ** 2, 1) for label in labels]


class Ball4SteklovBuilder(SpectrumBuilder):
    """Magnetic Steklov spectrum of the unit 4-ball for t times the Hopf potential."""

    def __init__(self, config: Ball4Config = Ball4Config()):
        self._config = config

    @classmethod
    def model(cls) -> SpectralModel:
        return SpectralModel.BALL4

    def _build(self, t: FieldStrength, labels: list[ModeLabel]) -> Iterable[tuple[float, int]]:
        results = []
        for label in labels:
            p1, p2 = label.p1 or 0, label.p2 or 0
            try:
                value = ball4_steklov_value(p1, p2, t, self._config)
            except exc.NumericalError as error:
                raise exc.ModeError(label, error) from error
            results.append((value, self._config.multiplicity.of(label.k)))
        return results


class Sphere3LaplacianBuilder(SpectrumBuilder):
    """Magnetic Laplacian on S^3: lambda = k(k+2) + 2(2p - k)t + t^2 with p = p1."""

    def __init__(self, multiplicity: Ball4Multiplicity = Ball4Multiplicity.CLUSTER):
        self._multiplicity = multiplicity

    @classmethod
    def model(cls) -> SpectralModel:
        return SpectralModel.SPHERE3

    def _build(self, t: FieldStrength, labels: list[ModeLabel]) -> Iterable[tuple[float, int]]:
        return [
            (label.k * (label.k + 2) + 2 * (2 * (label.p1 or 0) - label.k) * t + t * t,
             self._multiplicity.of(label.k))
            for label in labels
        ]


_ARBITRARY = ConfigDict(arbitrary_types_allowed=True)


@validate_call(config=_ARBITRARY)
def disk_steklov_spectrum(t: float, k_max: NonNegativeInt, solver: Optional[ModeSolver] = None) -> SpectrumTable:
    """Magnetic Steklov spectrum of the unit disk up to k_max."""
    return DiskSteklovBuilder(solver).build(t, k_max)


@validate_call
def circle_laplacian_spectrum(t: float, k_max: NonNegativeInt) -> SpectrumTable:
    """
    Magnetic Laplacian spectrum of the unit circle up to k_max.

    >>> circle_laplacian_spectrum(0.0, 2).values()
    [0.0, 1.0, 1.0, 4.0, 4.0]
    """
    return CircleLaplacianBuilder().build(t, k_max)


@validate_call
def ball4_steklov_spectrum(t: float, k_max: NonNegativeInt, config: Ball4Config = Ball4Config()) -> SpectrumTable:
    """Magnetic Steklov spectrum of the unit 4-ball up to k_max."""
    return Ball4SteklovBuilder(config).build(t, k_max)


@validate_call
def sphere3_laplacian_spectrum(
    t: float, k_max: NonNegativeInt, multiplicity: Ball4Multiplicity = Ball4Multiplicity.CLUSTER
) -> SpectrumTable:
    """Magnetic Laplacian spectrum of S^3 up to k_max."""
    return Sphere3LaplacianBuilder(multiplicity).build(t, k_max)


def builder_for(
    model: SpectralModel,
    solver: Optional[ModeSolver] = None,
    ball4: Ball4Config = Ball4Config(),
) -> SpectrumBuilder:
    """Returns the builder of a model."""
    if model is SpectralModel.DISK2:
        return DiskSteklovBuilder(solver)
    if model is SpectralModel.CIRCLE:
        return CircleLaplacianBuilder()
    if model is SpectralModel.BALL4:
        return Ball4SteklovBuilder(ball4)
    return Sphere3LaplacianBuilder(ball4.multiplicity)
