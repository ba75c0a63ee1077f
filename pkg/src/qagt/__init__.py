"""Exact checks of the five-dimensional pure SU(2) AGT relation.

Submodules
----------
exact       univariate polynomials and rational functions over Q
partitions  integer partitions and Young-diagram statistics
params      rational sample points ``(q, t, sigma)``
nekrasov    K-theoretic Nekrasov partition function and its recursion
integral    iterated-residue form of the graded parts ``Z_n``
dvir        deformed Virasoro Verma module, Gram matrices, Whittaker vector
cli         ``qagt run`` / ``qagt show`` verification campaigns
"""

from .exact import BigRational, Polynomial, RationalFunction
from .params import NonGenericError, ParamPoint, sample_points
from .partitions import Partition, enumerate_partitions, partition_pairs

__version__ = "0.1.0"

__all__ = [
    "BigRational",
    "NonGenericError",
    "ParamPoint",
    "Partition",
    "Polynomial",
    "RationalFunction",
    "enumerate_partitions",
    "partition_pairs",
    "sample_points",
    "__version__",
]
