"""
Operator package: assembly and application of the discrete nonlocal operator.

Module Organization
-------------------
- applier: OperatorApplier, assemble, apply, row_sums, BoundaryMode
- strategies: dense, on_the_fly and fft_convolution apply strategies
- pairs: blocked pair-weight helpers shared with the functionals
"""

from fracdecay.operator.applier import BoundaryMode, OperatorApplier, apply, assemble, row_sums
from fracdecay.operator.strategies import (
    APPLY_STRATEGIES, ApplyStrategy, DenseStrategy, FFTConvolutionStrategy, OnTheFlyStrategy,
    DEFAULT_MEMORY_BUDGET_BYTES, resolve_strategy,
)

__all__ = [
    'BoundaryMode',
    'OperatorApplier',
    'apply',
    'assemble',
    'row_sums',
    'APPLY_STRATEGIES',
    'ApplyStrategy',
    'DenseStrategy',
    'FFTConvolutionStrategy',
    'OnTheFlyStrategy',
    'DEFAULT_MEMORY_BUDGET_BYTES',
    'resolve_strategy',
]
