"""
Additive-code linearity toolkit.

Decides, from a generator matrix alone, whether an additive code over F_{q^2}
is monomially equivalent to an F_{q^2}-linear code, and ships the supporting
finite-field, linear-algebra, quasi-cyclic and duality tooling.
"""

__version__ = "1.0.0"
