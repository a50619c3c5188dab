"""Workbench for r-wise fractional L-intersecting set families."""
from .bounds import BoundReport, PrimeSelection, asymptotic_bound, exact_bound, pnt_estimates, select_primes
from .construct import all_s_subsets, sunflower_family
from .core import (
    Family,
    FamilyError,
    Fraction,
    FractionError,
    InstanceParams,
    LSpec,
    ViolationWitness,
    check_tuple,
    lspec,
    matches_fraction,
    parse_fraction,
    parse_lspec,
    verify_family,
)
from .fileio import format_family, parse_family, read_family, write_family

__version__ = "0.1.0"
