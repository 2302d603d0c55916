"""
Spectrum building tools.

This package assembles labeled spectrum tables of the disk and 4-ball
Steklov problems and of the boundary magnetic Laplacians, evaluates the
4-ball closed forms and pairs spectra under a truncation check.
"""

from .hopf import ball4_hopf_factors, ball4_hopf_quotient, ball4_profile, ball4_steklov_value
from .pairing import auto_k_max, check_truncation, lowest_disk_steklov, paired_gap_table, sufficient_table
from .spectra import (
    Ball4SteklovBuilder,
    CircleLaplacianBuilder,
    DiskSteklovBuilder,
    SpectrumBuilder,
    Sphere3LaplacianBuilder,
    ball4_steklov_spectrum,
    builder_for,
    circle_laplacian_spectrum,
    disk_steklov_spectrum,
    sphere3_laplacian_spectrum,
)

__all__ = [
    'Ball4SteklovBuilder',
    'CircleLaplacianBuilder',
    'DiskSteklovBuilder',
    'SpectrumBuilder',
    'Sphere3LaplacianBuilder',
    'auto_k_max',
    'ball4_hopf_factors',
    'ball4_hopf_quotient',
    'ball4_profile',
    'ball4_steklov_spectrum',
    'ball4_steklov_value',
    'builder_for',
    'check_truncation',
    'circle_laplacian_spectrum',
    'disk_steklov_spectrum',
    'lowest_disk_steklov',
    'paired_gap_table',
    'sphere3_laplacian_spectrum',
    'sufficient_table',
]
