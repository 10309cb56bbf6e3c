"""
Walk engines: expected maximum of the urn walk and its with-replacement twin.

This package handles:
- The urn walk model and prefix-maximum evaluation
- Exact enumeration (exhaustive, recursive and iterative combinations) with pruning
- The dynamic-programming oracle
- The with-replacement walk, finite horizon and limit
- Monte Carlo estimates of both
- Partitioned enumeration on a worker pool
"""

from .core import (
    Color,
    ExactValue,
    Ratio,
    StepSequence,
    WalkConfig,
    WalkTrace,
    max_prefix,
    permutation_group_size,
    sequence_count,
)
from .enumeration import (
    EnumerationKind,
    EnumerationMethod,
    EnumerationReport,
    InfeasibleError,
    PartialTrace,
    SkipRange,
    enumerate_combinations_iterative,
    enumerate_combinations_recursive,
    enumerate_exhaustive,
    prune_horizon,
    prune_lexicographic,
    run_method,
)
from .iid import IidWalkConfig, expected_max_iid, expected_max_iid_limit
from .montecarlo import SampleReport, sample_iid_walk, sample_urn_walk
from .oracle import expected_max_dp

__all__ = [
    'Color', 'ExactValue', 'Ratio', 'StepSequence', 'WalkConfig', 'WalkTrace',
    'max_prefix', 'permutation_group_size', 'sequence_count',
    'EnumerationKind', 'EnumerationMethod', 'EnumerationReport', 'InfeasibleError',
    'PartialTrace', 'SkipRange',
    'enumerate_combinations_iterative', 'enumerate_combinations_recursive', 'enumerate_exhaustive',
    'prune_horizon', 'prune_lexicographic', 'run_method',
    'IidWalkConfig', 'expected_max_iid', 'expected_max_iid_limit',
    'SampleReport', 'sample_iid_walk', 'sample_urn_walk',
    'expected_max_dp',
]
