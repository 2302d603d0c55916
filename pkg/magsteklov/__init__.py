"""
Magnetic Steklov and boundary magnetic-Laplacian spectra of the unit 2-ball
and 4-ball, with frustration, Cheeger and bound checks.
"""

__version__ = "0.1.0"
