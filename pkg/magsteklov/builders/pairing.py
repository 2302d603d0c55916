"""
Truncation sufficiency and square-root pairing of spectra.

A table truncated at k_max can only vouch for its lowest values: every
omitted mode has k > k_max, and the level minima L(k) grow monotonically
once k exceeds the field strength. The check below demands two safety levels
of strict growth and that the requested rank lies below L(k_max).
"""

import logging
import math
from typing import Optional

from pydantic import PositiveInt, validate_call

from magsteklov import exc
from magsteklov.engines import ModeSolver
from magsteklov.models import FieldStrength, GapRow, SpectrumTable

from .spectra import DiskSteklovBuilder, SpectrumBuilder

logger = logging.getLogger(__name__)

# k_max growth attempts before giving up on a rank
_MAX_ENLARGEMENTS = 6


def check_truncation(table: SpectrumTable, n: int) -> None:
    """
    Verifies that the n lowest values (with multiplicity) of a table are final.

    Raises:
        exc.TruncationInsufficient: If the level minima do not grow over the
            last two levels or the n-th value is not below L(k_max).
    """
    k_max = table.k_max
    if k_max < 2:
        raise exc.TruncationInsufficient(f"k_max={k_max} leaves no safety levels", k_max=k_max, n=n)

    levels = table.level_minima()
    tail = [levels[k_max - 2], levels[k_max - 1], levels[k_max]]
    if not tail[0] < tail[1] < tail[2]:
        raise exc.TruncationInsufficient(
            f"Level minima are not increasing at k_max={k_max}: {tail}", k_max=k_max, n=n)

    values = table.values()
    if len(values) < n or not values[n - 1] < tail[2]:
        raise exc.TruncationInsufficient(
            f"Rank {n} is not below the last level minimum {tail[2]} at k_max={k_max}", k_max=k_max, n=n)


def auto_k_max(t: FieldStrength, n: int) -> int:
    """
    First truncation tried for rank n.

    >>> auto_k_max(0.0, 1)
    5
    >>> auto_k_max(400.0, 1)
    465
    """
    return math.ceil(abs(t)) + math.ceil(3 * math.sqrt(abs(t))) + n + 4


def sufficient_table(
    builder: SpectrumBuilder, t: FieldStrength, n: int, k_max: Optional[int] = None
) -> SpectrumTable:
    """
    Builds a table that passes check_truncation for rank n.

    Starts at k_max (or auto_k_max) and enlarges it by half on every failure.
    """
    k = k_max if k_max is not None else auto_k_max(t, n)
    for _ in range(_MAX_ENLARGEMENTS):
        table = builder.build(t, k)
        try:
            check_truncation(table, n)
            return table
        except exc.TruncationInsufficient as error:
            logger.info("Truncation k_max=%d insufficient for rank %d at t=%s: %s", k, n, t, error)
            k += max(4, k // 2)
    raise exc.TruncationInsufficient(f"No sufficient truncation found for rank {n} at t={t}", n=n, t=t)


@validate_call
def paired_gap_table(steklov: SpectrumTable, boundary: SpectrumTable, n: PositiveInt) -> list[GapRow]:
    """
    Pairs the k-th sorted Steklov value with the square root of the k-th
    sorted boundary eigenvalue, for k = 1..n (with multiplicity).

    Raises:
        exc.InvalidParams: If the tables belong to different field strengths.
        exc.TruncationInsufficient: If either table cannot vouch for rank n.
    """
    if steklov.t != boundary.t:
        raise exc.InvalidParams(f"Tables at different field strengths: {steklov.t} and {boundary.t}")
    check_truncation(steklov, n)
    check_truncation(boundary, n)

    sigmas = steklov.values()[:n]
    lambdas = boundary.values()[:n]
    rows = []
    for index, (sigma, lam) in enumerate(zip(sigmas, lambdas), start=1):
        root = math.sqrt(max(lam, 0.0))
        rows.append(GapRow(index=index, sigma=sigma, sqrt_lambda=root, gap=sigma - root))
    return rows


def lowest_disk_steklov(t: FieldStrength, solver: Optional[ModeSolver] = None) -> float:
    """The first magnetic Steklov eigenvalue of the unit disk, with automatic truncation."""
    return sufficient_table(DiskSteklovBuilder(solver), t, 1).entries[0].value
