"""Hyper-Kloosterman sums over finite fields and the group theory around their monodromy."""
from .field import FieldCtx, FieldError, ff_dlog, ff_make, ff_trace
from .cyclotomic import CycloInt, CycloRing, ReductionCtx, gauss_sum, make_reduction, split_prime
from .kloosterman import (
    KlTable,
    galois_twist_check,
    kl_all_float,
    kl_raw_all,
    kl_raw_direct,
    kl_reduce_all,
    reduction_for,
    sato_tate_stats,
    trace_field,
    weil_bound_check,
)
from .matgroup import (
    InertiaElement,
    MatFin,
    elem_m,
    elem_u,
    group_closure,
    inertia_compose,
    inertia_matrix,
    invariant_bilinear,
    normalizer_power_check,
    unipotent_order,
)
from .classify import GroupDescriptor, candidate_survey, geometric_exclusions, group_order, m_lower, out_order

__version__ = "0.1.0"
