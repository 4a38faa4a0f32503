"""Exact arithmetic substrate: Laurent polynomials, rational functions, series, partitions."""
from fractions import Fraction as BigRational

from .laurent import REGISTRY, VarRegistry, LaurentPoly, lp, var, ZERO, ONE
from .ratfunc import RatFunc, omega_product, conjugate
from .zseries import ZSeries, expand_at_origin, truncate
from .partitions import (
    Partition,
    PartitionTuple,
    EMPTY,
    arm_leg,
    arm,
    leg,
    z_factor,
    enumerate_partitions,
    enumerate_tuples,
    partitions_list,
    partitions_upto,
)

__all__ = [
    "BigRational", "REGISTRY", "VarRegistry", "LaurentPoly", "lp", "var", "ZERO", "ONE",
    "RatFunc", "omega_product", "conjugate", "ZSeries", "expand_at_origin", "truncate",
    "Partition", "PartitionTuple", "EMPTY", "arm_leg", "arm", "leg", "z_factor",
    "enumerate_partitions", "enumerate_tuples", "partitions_list", "partitions_upto",
]
