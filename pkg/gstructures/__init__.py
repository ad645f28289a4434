"""
gstructures
Exact exterior calculus for SU(2), SU(3) and G2 structures
"""

__version__ = "1.0.0"
