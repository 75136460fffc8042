"""
pfrees: exact computations with Pfaffian ideals.
Sub-Pfaffian ideals of skew-symmetric matrices, their Rees algebras,
free resolutions, (c,e)-diagonals and Koszul certificates over QQ.
"""

__version__ = "0.1.0"
