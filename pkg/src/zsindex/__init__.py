"""Index of minimal zero-sum sequences over finite cyclic groups."""

__version__ = "0.1.0"

from .modarith import (
    IntervalScan,
    Modulus,
    NotAUnitError,
    RationalBound,
    coprime_in_interval,
    factorize,
    inverse,
    residue,
    units,
)
from .zseq import (
    IndexResult,
    NotZeroSumError,
    ResidueSeq,
    canonical_rep,
    g_norm,
    index,
    is_minimal_zero_sum,
    is_zero_sum,
    unit_equivalent,
)
from .canon import GcdPattern, NormalizedQuadruple, classify, denormalize, normalize
from .certs import (
    Certificate,
    OmegaDiagnostics,
    RenumberFailure,
    check_halfplane,
    check_sum_3n,
    compute_k1,
    omega_diagnostics,
    renumber,
    search_interval,
    search_M,
    search_small_a,
)
from .enumgen import EnumFilter, enumerate_orbit_reps, enumerate_quadruples, random_instance
from .harness import (
    InstanceRecord,
    VerificationReport,
    WaterfallConfig,
    find_min_index_at_least,
    lemma29_audit,
    sweep,
    verify_instance,
)
