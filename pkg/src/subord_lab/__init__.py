"""Numerical checks of the Bergman/Hardy subordination principle on model domains."""
from .domain import Domain, complex_ellipsoid, lift_domain, parse_domain, unit_ball, unit_disc
from .errors import (ArgumentError, DegenerateSequenceError, DomainError, NoBezoutError, NumericError,
                     RejectedInputError, SingularityError, SubordLabError, UnsupportedError)
from .functions import HoloFunction, KernelPower, Polynomial
from .quadrature import Estimate, QuadSpec
from .spaces import Bergman, Hardy

__version__ = "0.1.0"

__all__ = [
    "ArgumentError", "Bergman", "DegenerateSequenceError", "Domain", "DomainError", "Estimate", "Hardy",
    "HoloFunction", "KernelPower", "NoBezoutError", "NumericError", "Polynomial", "QuadSpec",
    "RejectedInputError", "SingularityError", "SubordLabError", "UnsupportedError", "complex_ellipsoid",
    "lift_domain", "parse_domain", "unit_ball", "unit_disc",
]
