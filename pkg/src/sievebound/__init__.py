# -*- coding: utf-8 -*-
"""Numerical verification of the sieve-decomposition loss bounds that certify
the exponent 1/2 + 1/700 for large square divisors of shifted primes."""

from .buchstab import (
    BuchstabTable,
    build_table,
    omega,
    omega_lower,
    omega_simple_upper,
    omega_upper,
)
from .losses import LossReport, loss_A, loss_B, loss_C, scan, verify
from .params import ConstraintViolated, SieveParams, default_params, parse_real, validate
from .quadrature import DEFAULT_BUDGETS, IntegralEstimate, integrate, integrate_all
from .regions import (
    DOMAIN_NAMES,
    RegionSpec,
    UnknownDomain,
    can_partition,
    class_masks,
    classify_pair,
    domain,
    region_I,
    region_II,
)
from .witness import WitnessRecord, find_witnesses, is_prime_u64, is_witness

__version__ = "0.1.0"

__all__ = [
    "BuchstabTable",
    "ConstraintViolated",
    "DEFAULT_BUDGETS",
    "DOMAIN_NAMES",
    "IntegralEstimate",
    "LossReport",
    "RegionSpec",
    "SieveParams",
    "UnknownDomain",
    "WitnessRecord",
    "build_table",
    "can_partition",
    "class_masks",
    "classify_pair",
    "default_params",
    "domain",
    "find_witnesses",
    "integrate",
    "integrate_all",
    "is_prime_u64",
    "is_witness",
    "loss_A",
    "loss_B",
    "loss_C",
    "omega",
    "omega_lower",
    "omega_simple_upper",
    "omega_upper",
    "parse_real",
    "region_I",
    "region_II",
    "scan",
    "validate",
    "verify",
]
