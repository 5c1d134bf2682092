"""Exact and certified arithmetic kernel."""

from otlck.exactnum.algebraic import (
    ComplexAlgebraic,
    RealAlgebraic,
    alg_equal,
    isolate_complex_roots,
    isolate_real_roots,
    modulus_polynomial,
    modulus_squared,
    refine,
)
from otlck.exactnum.interval import CBox, RInterval, eval_interval
from otlck.exactnum.poly import (
    RationalPolynomial,
    composed_product,
    count_real_roots,
    gcd,
    resultant,
    squarefree_part,
)
from otlck.exactnum.precision import DEFAULT, Precision, PrecisionExhausted

__all__ = [
    "CBox",
    "ComplexAlgebraic",
    "DEFAULT",
    "Precision",
    "PrecisionExhausted",
    "RInterval",
    "RationalPolynomial",
    "RealAlgebraic",
    "alg_equal",
    "composed_product",
    "count_real_roots",
    "eval_interval",
    "gcd",
    "isolate_complex_roots",
    "isolate_real_roots",
    "modulus_polynomial",
    "modulus_squared",
    "refine",
    "resultant",
    "squarefree_part",
]
